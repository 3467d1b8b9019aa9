#include "cascade/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "cascade/error.hpp"

namespace cascade {

namespace {

std::vector<std::size_t> indices_from_json(const Json& j) {
  return j.get<std::vector<std::size_t>>();
}

std::vector<Rational> rationals_from_json(const Json& j, const std::string& f) {
  const RVector v = vector_from_json(j, f);
  return {v.begin(), v.end()};
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string point_list(const std::vector<Vertex>& vs) {
  std::string out;
  for (const auto& v : vs) {
    if (!out.empty()) out += " ";
    out += to_string(v.coords);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

RunReport make_report(const Geometry& geometry, const FinalCompromise& final,
                      const DriverConfig& config,
                      std::map<std::string, double> timings_ms) {
  RunReport r;
  r.big_m = config.big_m;
  r.strict_sp = config.strict_sp;
  r.vertices = geometry.vertices;
  r.efficient = geometry.compromises.per_level_dex;
  r.n_hat_dex = geometry.compromises.n_hat_dex;
  r.sorting_sets = geometry.candidates;
  r.trace = final.trace;
  r.final_x = final.x;
  r.final_objectives = final.objective_values;
  r.timings_ms = std::move(timings_ms);
  return r;
}

Json to_json(const Vertex& v) {
  return {{"x", to_json(v.coords)}, {"tight", v.tight}};
}

Json to_json(const std::vector<Vertex>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Json to_json(const Face& face, std::size_t index) {
  return {{"index", index},
          {"Q", face.Q},
          {"dim", face.dim},
          {"vertices", to_json(face.vertices)},
          {"efficient_for", face.efficient_for},
          {"barycenter", to_json(face.barycenter)}};
}

Json to_json(const MolpTrace& t) {
  return {{"start", t.start == StartSource::Given ? "given" : "phase1"},
          {"x0", to_json(t.x0)},
          {"lambda", to_json(t.weights.lambda)},
          {"aux_objective", to_json(t.aux_objective)},
          {"aux_box", to_json(t.aux_box)},
          {"aux_retries", t.aux_retries},
          {"weighted_objective", to_json(t.weighted_objective)},
          {"beta_history", rationals_to_json(t.beta_history)},
          {"steps", t.steps}};
}

Json to_json(const SessionTrace& t) {
  Json levels = Json::array();
  for (const auto& l : t.levels) {
    Json values = Json::array();
    for (const auto& v : l.objective_values) values.push_back(to_json(v));
    levels.push_back({{"level", l.level},
                      {"lower", to_json(l.lower)},
                      {"upper", to_json(l.upper)},
                      {"molp", to_json(l.molp)},
                      {"compromise", to_json(l.compromise)},
                      {"objective_values", values}});
  }
  Json slacks = Json::array();
  for (const auto& s : t.slacks) {
    slacks.push_back({{"level", s.level},
                      {"l", to_json(s.l)},
                      {"r", to_json(s.r)},
                      {"lower", to_json(s.lower)},
                      {"upper", to_json(s.upper)}});
  }
  return {{"sorting_index", t.sorting_index},
          {"spdex", to_json(t.spdex)},
          {"card_spdex", t.card_spdex},
          {"initial_lower", to_json(t.initial_lower)},
          {"initial_upper", to_json(t.initial_upper)},
          {"levels", levels},
          {"slacks", slacks}};
}

Json to_json(const RunReport& r) {
  Json efficient = Json::array();
  for (const auto& set : r.efficient) efficient.push_back(to_json(set));
  Json faces = Json::array();
  for (std::size_t i = 0; i < r.sorting_sets.size(); ++i)
    faces.push_back(to_json(r.sorting_sets[i], i + 1));
  Json objectives = Json::array();
  for (const auto& v : r.final_objectives) objectives.push_back(to_json(v));
  return {{"bigM", to_json(r.big_m)},
          {"strict_sp", r.strict_sp},
          {"vertices", to_json(r.vertices)},
          {"efficient", efficient},
          {"n_hat_dex", to_json(r.n_hat_dex)},
          {"sorting_sets", faces},
          {"trace", to_json(r.trace)},
          {"final", {{"x", to_json(r.final_x)}, {"objective_values", objectives}}},
          {"timings_ms", r.timings_ms}};
}

Vertex vertex_from_json(const Json& j) {
  return Vertex{vector_from_json(j.at("x"), "vertex.x"),
                indices_from_json(j.at("tight"))};
}

std::vector<Vertex> vertices_from_json(const Json& j) {
  std::vector<Vertex> out;
  for (const auto& v : j) out.push_back(vertex_from_json(v));
  return out;
}

Face face_from_json(const Json& j) {
  Face f;
  f.Q = indices_from_json(j.at("Q"));
  f.dim = j.at("dim").get<std::size_t>();
  f.vertices = vertices_from_json(j.at("vertices"));
  f.efficient_for = j.at("efficient_for").get<std::set<std::size_t>>();
  f.barycenter = vector_from_json(j.at("barycenter"), "face.barycenter");
  return f;
}

MolpTrace molp_trace_from_json(const Json& j) {
  MolpTrace t;
  const std::string start = j.at("start").get<std::string>();
  if (start != "given" && start != "phase1") {
    throw Error(ErrorCode::ParseError, "molp.start: unknown \"" + start + "\"");
  }
  t.start = start == "given" ? StartSource::Given : StartSource::PhaseOne;
  t.x0 = vector_from_json(j.at("x0"), "molp.x0");
  t.weights.lambda = vector_from_json(j.at("lambda"), "molp.lambda");
  t.aux_objective = rational_from_json(j.at("aux_objective"), "molp.aux_objective");
  t.aux_box = rational_from_json(j.at("aux_box"), "molp.aux_box");
  t.aux_retries = j.at("aux_retries").get<std::size_t>();
  t.weighted_objective =
      rational_from_json(j.at("weighted_objective"), "molp.weighted_objective");
  t.beta_history = rationals_from_json(j.at("beta_history"), "molp.beta_history");
  t.steps = j.at("steps").get<std::size_t>();
  return t;
}

SessionTrace session_trace_from_json(const Json& j) {
  SessionTrace t;
  t.sorting_index = j.at("sorting_index").get<std::size_t>();
  t.spdex = vertices_from_json(j.at("spdex"));
  t.card_spdex = j.at("card_spdex").get<std::size_t>();
  t.initial_lower = vector_from_json(j.at("initial_lower"), "trace.initial_lower");
  t.initial_upper = vector_from_json(j.at("initial_upper"), "trace.initial_upper");
  for (const auto& l : j.at("levels")) {
    LevelRecord rec;
    rec.level = l.at("level").get<std::size_t>();
    rec.lower = vector_from_json(l.at("lower"), "level.lower");
    rec.upper = vector_from_json(l.at("upper"), "level.upper");
    rec.molp = molp_trace_from_json(l.at("molp"));
    rec.compromise = vector_from_json(l.at("compromise"), "level.compromise");
    for (const auto& v : l.at("objective_values"))
      rec.objective_values.push_back(vector_from_json(v, "level.objective_values"));
    t.levels.push_back(std::move(rec));
  }
  for (const auto& s : j.at("slacks")) {
    t.slacks.push_back(SlackRecord{s.at("level").get<std::size_t>(),
                                   vector_from_json(s.at("l"), "slack.l"),
                                   vector_from_json(s.at("r"), "slack.r"),
                                   vector_from_json(s.at("lower"), "slack.lower"),
                                   vector_from_json(s.at("upper"), "slack.upper")});
  }
  return t;
}

RunReport report_from_json(const Json& j) {
  try {
    RunReport r;
    r.big_m = rational_from_json(j.at("bigM"), "bigM");
    r.strict_sp = j.at("strict_sp").get<bool>();
    r.vertices = vertices_from_json(j.at("vertices"));
    for (const auto& set : j.at("efficient"))
      r.efficient.push_back(vertices_from_json(set));
    r.n_hat_dex = vertices_from_json(j.at("n_hat_dex"));
    for (const auto& f : j.at("sorting_sets")) r.sorting_sets.push_back(face_from_json(f));
    r.trace = session_trace_from_json(j.at("trace"));
    r.final_x = vector_from_json(j.at("final").at("x"), "final.x");
    for (const auto& v : j.at("final").at("objective_values"))
      r.final_objectives.push_back(vector_from_json(v, "final.objective_values"));
    r.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("report: ") + e.what());
  }
}

std::string render_vertices(const std::vector<Vertex>& vertices) {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& v : vertices) width = std::max(width, to_string(v.coords).size());
  for (const auto& v : vertices) {
    out << "  " << pad(to_string(v.coords), width + 2) << "tight:";
    for (std::size_t r : v.tight) out << " " << r + 1;
    out << "\n";
  }
  return out.str();
}

std::string render_faces(const std::vector<Face>& faces) {
  std::ostringstream out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    out << "  [" << i + 1 << "] dim " << f.dim << "  " << point_list(f.vertices)
        << "  Q = {";
    for (std::size_t k = 0; k < f.Q.size(); ++k) out << (k ? ", " : "") << f.Q[k] + 1;
    out << "}\n";
  }
  return out.str();
}

std::string render_table(const RunReport& r) {
  std::ostringstream out;
  out << "Vertices (" << r.vertices.size() << ")\n" << render_vertices(r.vertices);
  out << "Efficient extreme points\n";
  for (std::size_t p = 0; p < r.efficient.size(); ++p)
    out << "  level " << p + 1 << ": " << point_list(r.efficient[p]) << "\n";
  out << "Common efficient extreme points: " << point_list(r.n_hat_dex) << "\n";
  out << "Sorting sets\n" << render_faces(r.sorting_sets);
  out << "Chosen sorting set: " << r.trace.sorting_index
      << "  SP^dex = " << point_list(r.trace.spdex) << "\n";
  out << "  l(1) = " << to_string(r.trace.initial_lower)
      << "  u(1) = " << to_string(r.trace.initial_upper) << "\n";

  const char* head[] = {"level", "lower", "upper", "start", "lambda", "compromise"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& l : r.trace.levels) {
    rows.push_back({std::to_string(l.level), to_string(l.lower), to_string(l.upper),
                    (l.molp.start == StartSource::Given ? "" : "*") + to_string(l.molp.x0),
                    to_string(l.molp.weights.lambda), to_string(l.compromise)});
  }
  std::vector<std::size_t> width(6);
  for (std::size_t c = 0; c < 6; ++c) {
    width[c] = std::string(head[c]).size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  out << "Levels (* = phase-1 start)\n  ";
  for (std::size_t c = 0; c < 5; ++c) out << pad(head[c], width[c] + 2);
  out << head[5];
  out << "\n";
  for (const auto& row : rows) {
    out << "  ";
    for (std::size_t c = 0; c < 5; ++c) out << pad(row[c], width[c] + 2);
    out << row[5];
    out << "\n";
  }
  for (const auto& s : r.trace.slacks) {
    out << "  slacks after level " << s.level << ": l = " << to_string(s.l)
        << ", r = " << to_string(s.r) << " -> [" << to_string(s.lower) << ", "
        << to_string(s.upper) << "]\n";
  }
  out << "Final compromise: " << to_string(r.final_x) << "\n";
  for (std::size_t p = 0; p < r.final_objectives.size(); ++p)
    out << "  F" << p + 1 << " = " << to_string(r.final_objectives[p]) << "\n";
  if (!r.timings_ms.empty()) {
    out << "Timings (ms):";
    for (const auto& [k, v] : r.timings_ms) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", v);
      out << " " << k << "=" << buf;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace cascade

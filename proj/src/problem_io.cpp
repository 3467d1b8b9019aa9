#include "cascade/problem_io.hpp"

#include <fstream>
#include <sstream>

#include "cascade/error.hpp"

namespace cascade {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) bad(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(field, std::string("missing \"") + key + "\"");
  return *it;
}

std::size_t count_from_json(const Json& value, const std::string& field) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    bad(field, "expected a non-negative integer");
  }
  return value.get<std::size_t>();
}

std::string index_field(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

void check_length(std::size_t got, std::size_t want, const std::string& field) {
  if (got != want) {
    throw Error(ErrorCode::DimensionMismatch,
                field + ": expected " + std::to_string(want) +
                    " entries, found " + std::to_string(got));
  }
}

DmSlacks slack_from_json(const Json& value, std::size_t level,
                         const std::string& field) {
  DmSlacks s;
  s.level = level;
  if (value.is_object() && value.contains("level")) {
    s.level = count_from_json(value["level"], field + ".level");
  }
  s.lower = vector_from_json(member(value, "l", field), field + ".l");
  s.upper = vector_from_json(member(value, "r", field), field + ".r");
  return s;
}

}  // namespace

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) +
                                           ", column " + std::to_string(col) +
                                           ": malformed JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json_text(buf.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.message());
  }
}

Rational rational_from_json(const Json& value, const std::string& field) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) {
      return Rational(mpz_class(std::to_string(value.get<unsigned long long>())));
    }
    return Rational(mpz_class(std::to_string(value.get<long long>())));
  }
  if (value.is_number_float()) {
    bad(field, "floating-point literal " + value.dump() +
                   " is not exact; write it as a \"p/q\" string");
  }
  if (!value.is_string()) bad(field, "expected an integer or \"p/q\" string");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const Error& e) {
    bad(field, e.message());
  }
}

RVector vector_from_json(const Json& value, const std::string& field) {
  if (!value.is_array()) bad(field, "expected an array");
  RVector out(value.size());
  for (std::size_t i = 0; i < value.size(); ++i)
    out[i] = rational_from_json(value[i], index_field(field, i));
  return out;
}

RMatrix matrix_from_json(const Json& value, const std::string& field) {
  if (!value.is_array()) bad(field, "expected an array of rows");
  std::vector<RVector> rows;
  for (std::size_t i = 0; i < value.size(); ++i)
    rows.push_back(vector_from_json(value[i], index_field(field, i)));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    check_length(rows[i].size(), cols, index_field(field, i));
  return RMatrix::from_rows(rows, cols);
}

SortingChoice sorting_choice_from_json(const Json& value,
                                       const std::string& field) {
  if (value.is_string() && value.get<std::string>() == "auto") {
    return SortingChoice::automatic();
  }
  if (value.is_number_integer() && value.get<long long>() >= 1) {
    return SortingChoice::at(value.get<std::size_t>());
  }
  bad(field, "expected \"auto\" or a positive integer");
}

Json to_json(const Rational& value) { return to_string(value); }

Json to_json(const RVector& value) {
  Json out = Json::array();
  for (const auto& v : value) out.push_back(to_string(v));
  return out;
}

Json to_json(const RMatrix& value) {
  Json out = Json::array();
  for (std::size_t i = 0; i < value.rows(); ++i) out.push_back(to_json(value.row(i)));
  return out;
}

Json to_json(const SortingChoice& choice) {
  if (!choice.index) return "auto";
  return *choice.index;
}

ProblemFile problem_from_json(const Json& doc) {
  ProblemFile file;
  MlProblem& p = file.problem;

  const Json& cons = member(doc, "constraints", "problem");
  p.A = matrix_from_json(member(cons, "A", "constraints"), "constraints.A");
  p.b = vector_from_json(member(cons, "b", "constraints"), "constraints.b");
  check_length(p.b.size(), p.A.rows(), "constraints.b");
  const std::size_t n = p.A.cols();

  const Json& levels = member(doc, "levels", "problem");
  if (!levels.is_array() || levels.empty()) {
    bad("levels", "expected a nonempty array");
  }
  for (std::size_t q = 0; q < levels.size(); ++q) {
    const std::string field = index_field("levels", q);
    p.num_vars.push_back(
        count_from_json(member(levels[q], "num_vars", field), field + ".num_vars"));
    const Json& rows = member(levels[q], "objectives", field);
    const std::string obj_field = field + ".objectives";
    if (!rows.is_array() || rows.empty()) bad(obj_field, "expected a nonempty array");
    std::vector<RVector> c;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      c.push_back(vector_from_json(rows[i], index_field(obj_field, i)));
      check_length(c.back().size(), n, index_field(obj_field, i));
    }
    p.levels.push_back(LevelObjectives{q + 1, RMatrix::from_rows(c, n)});
  }
  p.validate();

  if (doc.contains("config")) {
    const Json& cfg = doc["config"];
    if (!cfg.is_object()) bad("config", "expected an object");
    ProblemConfig& c = file.config;
    if (cfg.contains("bigM")) c.big_m = rational_from_json(cfg["bigM"], "config.bigM");
    if (cfg.contains("sorting_choice")) {
      c.sorting = sorting_choice_from_json(cfg["sorting_choice"],
                                           "config.sorting_choice");
    }
    if (cfg.contains("initial_points")) {
      c.initial_points = initial_points_from_json(cfg["initial_points"]);
      for (std::size_t i = 0; i < c.initial_points.size(); ++i) {
        if (c.initial_points[i]) {
          check_length(c.initial_points[i]->size(), n,
                       index_field("config.initial_points", i));
        }
      }
    }
    if (cfg.contains("slacks")) c.slacks = slacks_from_json(cfg["slacks"]);
    if (cfg.contains("strict_sp")) {
      if (!cfg["strict_sp"].is_boolean()) bad("config.strict_sp", "expected a boolean");
      c.strict_sp = cfg["strict_sp"].get<bool>();
    }
  }
  return file;
}

Json problem_to_json(const ProblemFile& file) {
  const MlProblem& p = file.problem;
  Json doc;
  Json levels = Json::array();
  for (std::size_t q = 0; q < p.levels.size(); ++q) {
    levels.push_back({{"num_vars", p.num_vars[q]},
                      {"objectives", to_json(p.levels[q].c)}});
  }
  doc["levels"] = levels;
  doc["constraints"] = {{"A", to_json(p.A)}, {"b", to_json(p.b)}};

  const ProblemConfig& c = file.config;
  Json cfg = Json::object();
  if (c.big_m) cfg["bigM"] = to_json(*c.big_m);
  if (c.sorting) cfg["sorting_choice"] = to_json(*c.sorting);
  if (!c.initial_points.empty()) {
    Json pts = Json::array();
    for (const auto& x : c.initial_points) pts.push_back(x ? to_json(*x) : Json());
    cfg["initial_points"] = pts;
  }
  if (!c.slacks.empty()) {
    Json sl = Json::array();
    for (const auto& s : c.slacks) {
      sl.push_back({{"level", s.level}, {"l", to_json(s.lower)}, {"r", to_json(s.upper)}});
    }
    cfg["slacks"] = sl;
  }
  if (c.strict_sp) cfg["strict_sp"] = *c.strict_sp;
  if (!cfg.empty()) doc["config"] = cfg;
  return doc;
}

ProblemFile load_problem(const std::string& path) {
  return problem_from_json(read_json_file(path));
}

std::vector<DmSlacks> slacks_from_json(const Json& doc) {
  const Json& list =
      doc.is_object() ? member(doc, "slacks", "slacks file") : doc;
  if (!list.is_array()) bad("slacks", "expected an array");
  std::vector<DmSlacks> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(slack_from_json(list[i], i + 1, index_field("slacks", i)));
  return out;
}

std::vector<std::optional<RVector>> initial_points_from_json(const Json& doc) {
  const Json& list =
      doc.is_object() ? member(doc, "initial_points", "init file") : doc;
  if (!list.is_array()) bad("initial_points", "expected an array");
  std::vector<std::optional<RVector>> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].is_null()) {
      out.emplace_back();
    } else {
      out.emplace_back(vector_from_json(list[i], index_field("initial_points", i)));
    }
  }
  return out;
}

BatchConfig batch_config(const ProblemConfig& config) {
  BatchConfig out;
  if (config.big_m) out.driver.big_m = *config.big_m;
  if (config.strict_sp) out.driver.strict_sp = *config.strict_sp;
  if (config.sorting) out.sorting = *config.sorting;
  out.initial_points = config.initial_points;
  out.slacks = config.slacks;
  return out;
}

}  // namespace cascade

#include "cascade/service.hpp"

#include <vector>

#include "cascade/error.hpp"
#include "cascade/report.hpp"

namespace cascade {

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    if (path[i] == '/') {
      ++i;
      continue;
    }
    const std::size_t j = path.find('/', i);
    const std::size_t end = j == std::string_view::npos ? path.size() : j;
    parts.emplace_back(path.substr(i, end - i));
    i = end;
  }
  return parts;
}

int status_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError: return 400;
    case ErrorCode::PhaseError: return 409;
    default: return 422;
  }
}

ServiceResponse failure(int status, std::string error, std::string message) {
  return {status, Json{{"error", std::move(error)}, {"message", std::move(message)}}};
}

Json parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return Json::object();
  }
  Json doc = parse_json_text(body);
  if (!doc.is_object()) {
    throw Error(ErrorCode::ParseError, "request body must be a JSON object");
  }
  return doc;
}

Json bounds_json(const RVector& lower, const RVector& upper) {
  return {{"lower", to_json(lower)}, {"upper", to_json(upper)}};
}

}  // namespace

Json session_view(const std::string& id, const Session& s) {
  const Geometry& g = s.geometry();
  const MlProblem& p = s.problem();
  const SessionTrace& t = s.trace();
  const bool chosen = s.phase() != Phase::AwaitSortingSet;

  Json efficient = Json::array();
  for (const auto& set : g.compromises.per_level_dex) efficient.push_back(to_json(set));
  Json faces = Json::array();
  for (std::size_t i = 0; i < g.candidates.size(); ++i)
    faces.push_back(to_json(g.candidates[i], i + 1));
  Json compromises = Json::array();
  for (const auto& rec : t.levels) {
    Json values = Json::array();
    for (const auto& v : rec.objective_values) values.push_back(to_json(v));
    compromises.push_back({{"level", rec.level},
                           {"x", to_json(rec.compromise)},
                           {"lambda", to_json(rec.molp.weights.lambda)},
                           {"objective_values", values}});
  }

  Json view{{"id", id},
            {"phase", std::string(phase_name(s.phase()))},
            {"level", s.current_level()},
            {"levels", p.level_count()},
            {"num_vars", p.num_vars},
            {"bigM", to_json(s.config().big_m)},
            {"strict_sp", s.config().strict_sp},
            {"vertices", to_json(g.vertices)},
            {"efficient", efficient},
            {"n_hat_dex", to_json(g.compromises.n_hat_dex)},
            {"sorting_sets", faces},
            {"compromises", compromises},
            {"trace", to_json(t)}};
  view["sorting_index"] = chosen ? Json(t.sorting_index) : Json();
  view["initial_bounds"] =
      chosen ? bounds_json(t.initial_lower, t.initial_upper) : Json();
  view["bounds"] = chosen ? bounds_json(s.lower(), s.upper()) : Json();
  if (s.phase() == Phase::Done) {
    const FinalCompromise f = s.final_compromise();
    Json values = Json::array();
    for (const auto& v : f.objective_values) values.push_back(to_json(v));
    view["final"] = {{"x", to_json(f.x)}, {"objective_values", values}};
  } else {
    view["final"] = Json();
  }
  return view;
}

Json error_body(const Error& e) {
  Json body{{"error", std::string(error_name(e.code()))}, {"message", e.message()}};
  if (!e.step().empty()) body["step"] = e.step();
  if (const auto* v = dynamic_cast<const DmBoundsViolation*>(&e)) {
    const bool lower = v->side() == DmBoundsViolation::Side::Lower;
    body["violation"] = {{"component", "x" + std::to_string(v->variable() + 1)},
                         {"index", v->variable() + 1},
                         {"side", lower ? "lower" : "upper"},
                         {"proposed", v->proposed()},
                         {"limit", v->limit()},
                         {"excess", v->excess()}};
  }
  return body;
}

SessionService::SessionService(ServiceOptions options)
    : options_(std::move(options)) {}

std::size_t SessionService::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

void SessionService::expire_idle() {
  std::lock_guard lock(mutex_);
  expire_idle_locked();
}

void SessionService::expire_idle_locked() {
  const auto now = options_.clock();
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_used > options_.idle_expiry) {
      it = sessions_.erase(it);
    } else {
      ++it;
    }
  }
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  expire_idle_locked();
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  it->second->last_used = options_.clock();
  return it->second;
}

bool SessionService::erase(const std::string& id) {
  std::lock_guard lock(mutex_);
  expire_idle_locked();
  return sessions_.erase(id) > 0;
}

ServiceResponse SessionService::create(std::string_view body) {
  ProblemFile file = problem_from_json(parse_json_text(body));
  DriverConfig config;
  config.big_m = file.config.big_m.value_or(options_.default_big_m);
  config.strict_sp = file.config.strict_sp.value_or(false);
  auto entry = std::make_shared<Entry>();
  entry->session = std::make_unique<Session>(std::move(file.problem), config);

  std::string id;
  {
    std::lock_guard lock(mutex_);
    expire_idle_locked();
    id = std::to_string(next_id_++);
    entry->last_used = options_.clock();
    sessions_[id] = entry;
  }
  std::lock_guard lock(entry->mutex);
  return {201, session_view(id, *entry->session)};
}

ServiceResponse SessionService::handle(std::string_view method,
                                       std::string_view path,
                                       std::string_view body) {
  const std::vector<std::string> parts = split_path(path);
  if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
    return failure(404, "NotFound", "no route " + std::string(path));
  }
  try {
    if (parts.size() == 1) {
      if (method != "POST") return failure(405, "MethodNotAllowed", "use POST");
      return create(body);
    }

    const std::string& id = parts[1];
    if (parts.size() == 2 && method == "DELETE") {
      if (!erase(id)) return failure(404, "NotFound", "no session " + id);
      return {204, Json()};
    }
    auto entry = find(id);
    if (!entry) return failure(404, "NotFound", "no session " + id);
    std::lock_guard lock(entry->mutex);
    Session& session = *entry->session;

    if (parts.size() == 2) {
      if (method != "GET") return failure(405, "MethodNotAllowed", "use GET or DELETE");
      return {200, session_view(id, session)};
    }

    const std::string& action = parts[2];
    if (action != "sorting-set" && action != "solve" && action != "slacks") {
      return failure(404, "NotFound", "no route " + std::string(path));
    }
    if (method != "POST") return failure(405, "MethodNotAllowed", "use POST");
    const Json doc = parse_body(body);

    if (action == "sorting-set") {
      if (!doc.contains("index")) {
        throw Error(ErrorCode::ParseError, "missing \"index\"");
      }
      session.choose_sorting_set(sorting_choice_from_json(doc["index"], "index"));
      return {200, session_view(id, session)};
    }
    if (action == "solve") {
      std::optional<RVector> init;
      if (doc.contains("init") && !doc["init"].is_null()) {
        init = vector_from_json(doc["init"], "init");
      }
      const RVector x = session.solve_current_level(init);
      Json view = session_view(id, session);
      view["compromise"] = to_json(x);
      return {200, view};
    }
    DmSlacks slacks;
    slacks.level = session.current_level();
    if (doc.contains("level")) {
      if (!doc["level"].is_number_unsigned()) {
        throw Error(ErrorCode::ParseError, "level: expected a positive integer");
      }
      slacks.level = doc["level"].get<std::size_t>();
    }
    if (!doc.contains("l") || !doc.contains("r")) {
      throw Error(ErrorCode::ParseError, "slacks need \"l\" and \"r\"");
    }
    slacks.lower = vector_from_json(doc["l"], "l");
    slacks.upper = vector_from_json(doc["r"], "r");
    session.apply_dm_slacks(slacks);
    return {200, session_view(id, session)};
  } catch (const Error& e) {
    return {status_for(e), error_body(e)};
  } catch (const std::exception& e) {
    return failure(500, "InternalError", e.what());
  }
}

}  // namespace cascade

#include "cascade/driver.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cascade/error.hpp"

namespace cascade {

namespace {

std::string level_step(std::string_view what, std::size_t level) {
  return "Phase 2, level " + std::to_string(level) + " " + std::string(what);
}

bool same_vertex_set(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  if (a.size() != b.size()) return false;
  std::vector<RVector> x, y;
  for (const auto& v : a) x.push_back(v.coords);
  for (const auto& v : b) y.push_back(v.coords);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

std::vector<RVector> all_objective_values(const MlProblem& problem,
                                          const RVector& x) {
  std::vector<RVector> out;
  for (const auto& level : problem.levels) out.push_back(level.values(x));
  return out;
}

}  // namespace

std::size_t MlProblem::first_var(std::size_t level) const {
  if (level == 0 || level > num_vars.size()) {
    throw Error(ErrorCode::InvalidProblem,
                "no level " + std::to_string(level));
  }
  return std::accumulate(num_vars.begin(), num_vars.begin() + (level - 1),
                         std::size_t{0});
}

void MlProblem::validate() const {
  if (levels.empty()) {
    throw Error(ErrorCode::InvalidProblem, "need at least one level");
  }
  if (num_vars.size() != levels.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(levels.size()) + " levels but " +
                    std::to_string(num_vars.size()) + " variable counts");
  }
  const std::size_t total =
      std::accumulate(num_vars.begin(), num_vars.end(), std::size_t{0});
  if (total != n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "level variable counts sum to " + std::to_string(total) +
                    ", A has " + std::to_string(n()) + " columns");
  }
  if (b.size() != m()) {
    throw Error(ErrorCode::DimensionMismatch,
                "b has " + std::to_string(b.size()) + " entries, A has " +
                    std::to_string(m()) + " rows");
  }
  for (std::size_t p = 0; p < levels.size(); ++p) {
    if (num_vars[p] == 0) {
      throw Error(ErrorCode::InvalidProblem,
                  "level " + std::to_string(p + 1) + " owns no variables");
    }
    if (levels[p].level != p + 1) {
      throw Error(ErrorCode::InvalidProblem,
                  "level " + std::to_string(p + 1) + " is numbered " +
                      std::to_string(levels[p].level));
    }
    if (levels[p].count() == 0) {
      throw Error(ErrorCode::InvalidProblem,
                  "level " + std::to_string(p + 1) + " has no objectives");
    }
    if (levels[p].c.cols() != n()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "level " + std::to_string(p + 1) + " objectives have " +
                      std::to_string(levels[p].c.cols()) +
                      " coefficients, expected " + std::to_string(n()));
    }
  }
}

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::AwaitSortingSet: return "AwaitSortingSet";
    case Phase::AwaitSolve: return "AwaitSolve";
    case Phase::AwaitSlacks: return "AwaitSlacks";
    case Phase::Done: return "Done";
  }
  return "?";
}

std::shared_ptr<const Geometry> analyze(const MlProblem& problem) {
  problem.validate();
  Polytope poly(problem.A, problem.b);
  std::vector<Vertex> vertices = enumerate_vertices(poly);
  std::vector<std::vector<Vertex>> per_level;
  for (const auto& level : problem.levels)
    per_level.push_back(efficient_extreme_points(level, poly, vertices));
  CompromiseSet cs =
      compromise_faces(poly, vertices, problem.levels, std::move(per_level));
  std::vector<Face> candidates = sorting_sets(cs);
  return std::make_shared<const Geometry>(
      Geometry{std::move(poly), std::move(vertices), std::move(cs),
               std::move(candidates)});
}

std::pair<RVector, RVector> initial_bounds(const std::vector<Vertex>& spdex) {
  if (spdex.empty()) {
    throw Error(ErrorCode::EmptySortingSet, "sorting set has no vertices");
  }
  RVector lo = spdex.front().coords;
  RVector hi = lo;
  for (const auto& v : spdex) {
    for (std::size_t j = 0; j < lo.size(); ++j) {
      if (v.coords[j] < lo[j]) lo[j] = v.coords[j];
      if (v.coords[j] > hi[j]) hi[j] = v.coords[j];
    }
  }
  return {lo, hi};
}

Session::Session(MlProblem problem, DriverConfig config,
                 std::shared_ptr<const Geometry> geometry)
    : problem_(std::move(problem)), config_(std::move(config)) {
  problem_.validate();
  if (sgn(config_.big_m) <= 0) {
    throw Error(ErrorCode::InvalidProblem, "bigM must be positive");
  }
  geometry_ = geometry ? std::move(geometry) : analyze(problem_);
}

const Face* Session::sorting_set() const noexcept {
  if (!state_.face) return nullptr;
  return &geometry_->candidates[*state_.face];
}

void Session::require_phase(Phase expected, std::string_view operation) const {
  if (state_.phase != expected) {
    throw Error(ErrorCode::PhaseError,
                std::string(operation) + " needs phase " +
                    std::string(phase_name(expected)) + ", session is in " +
                    std::string(phase_name(state_.phase)));
  }
}

Region Session::level_region(const RVector& lower, const RVector& upper) const {
  const Polytope& poly = geometry_->poly;
  Region region =
      poly.region(coordinate_upper(geometry_->vertices)).with_box(lower, upper);
  if (config_.strict_sp && state_.face) {
    const auto& Q = geometry_->candidates[*state_.face].Q;
    RVector rhs(Q.size());
    for (std::size_t i = 0; i < Q.size(); ++i) rhs[i] = poly.b_tilde()[Q[i]];
    region = region.with_equalities(poly.A_tilde().select_rows(Q), rhs);
  }
  return region;
}

void Session::choose_sorting_set(SortingChoice choice) {
  require_phase(Phase::AwaitSortingSet, "choose_sorting_set");
  const auto& candidates = geometry_->candidates;
  const auto& n_hat = geometry_->compromises.n_hat_dex;

  std::size_t index = 1;
  if (choice.index) {
    index = *choice.index;
    if (index == 0 || index > candidates.size()) {
      throw Error(ErrorCode::InvalidSortingIndex,
                  "sorting set " + std::to_string(index) + " requested, " +
                      std::to_string(candidates.size()) + " available");
    }
  }
  if (n_hat.size() < 2) {
    throw Error(ErrorCode::AssumptionViolated,
                "|N^dex| >= 2 fails: |N^dex| = " +
                    std::to_string(n_hat.size()));
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::AssumptionViolated, "SP nonempty fails: no faces");
  }
  const Face& face = candidates[index - 1];
  if (same_vertex_set(face.vertices, n_hat)) {
    throw Error(ErrorCode::AssumptionViolated,
                "SP^dex != N^dex fails: sorting set " + std::to_string(index) +
                    " holds all " + std::to_string(n_hat.size()) +
                    " common efficient extreme points");
  }

  State next = state_;
  auto [lo, hi] = initial_bounds(face.vertices);
  next.face = index - 1;
  next.lower = lo;
  next.upper = hi;
  next.level = 1;
  next.trace.sorting_index = index;
  next.trace.spdex = face.vertices;
  next.trace.card_spdex = face.vertices.size();
  next.trace.initial_lower = std::move(lo);
  next.trace.initial_upper = std::move(hi);
  next.phase = Phase::AwaitSolve;
  state_ = std::move(next);
}

const RVector& Session::solve_current_level(const std::optional<RVector>& x0) {
  require_phase(Phase::AwaitSolve, "solve_current_level");
  const std::size_t p = state_.level;
  const std::size_t m = problem_.m();
  const Face& face = geometry_->candidates[*state_.face];

  MolpOptions options;
  options.big_m = config_.big_m;
  RVector upper = state_.upper;
  if (config_.strict_sp) {
    for (std::size_t row : face.Q) {
      if (row < m) {
        options.pinned_rows.push_back(row);
      } else {
        upper[row - m] = 0;
      }
    }
  }

  std::optional<RVector> start = x0;
  if (!start && !state_.compromises.empty()) {
    const RVector& prev = state_.compromises.back();
    bool inside = true;
    for (std::size_t j = 0; j < prev.size(); ++j)
      inside = inside && state_.lower[j] <= prev[j] && prev[j] <= upper[j];
    if (inside) start = prev;
  }

  MolpResult result = solve_molp(problem_.levels[p - 1], problem_.A,
                                 problem_.b, state_.lower, upper, start,
                                 options);

  State next = state_;
  LevelRecord record;
  record.level = p;
  record.lower = state_.lower;
  record.upper = state_.upper;
  record.molp = std::move(result.trace);
  record.compromise = result.x;
  record.objective_values = all_objective_values(problem_, result.x);
  next.trace.levels.push_back(std::move(record));
  next.compromises.push_back(std::move(result.x));
  next.phase = p < problem_.level_count() ? Phase::AwaitSlacks : Phase::Done;
  state_ = std::move(next);
  return state_.compromises.back();
}

void Session::apply_dm_slacks(const DmSlacks& slacks) {
  require_phase(Phase::AwaitSlacks, "apply_dm_slacks");
  const std::size_t p = state_.level;
  if (slacks.level != p) {
    throw Error(ErrorCode::PhaseError,
                "slacks for level " + std::to_string(slacks.level) +
                    ", session awaits level " + std::to_string(p));
  }
  const std::size_t first = problem_.first_var(p);
  const std::size_t count = problem_.num_vars[p - 1];
  if (slacks.lower.size() != count || slacks.upper.size() != count) {
    throw Error(ErrorCode::DimensionMismatch,
                "level " + std::to_string(p) + " owns " +
                    std::to_string(count) + " variables, got " +
                    std::to_string(slacks.lower.size()) + " l and " +
                    std::to_string(slacks.upper.size()) + " r slacks");
  }
  for (std::size_t j = 0; j < count; ++j) {
    for (const auto* side : {&slacks.lower, &slacks.upper}) {
      if (sgn((*side)[j]) <= 0) {
        throw Error(ErrorCode::NonPositiveSlack,
                    std::string(side == &slacks.lower ? "l" : "r") + "_" +
                        std::to_string(j + 1) + " = " + to_string((*side)[j]) +
                        " is not positive");
      }
    }
  }

  const RVector& xc = state_.compromises.back();
  const RVector& l1 = state_.trace.initial_lower;
  const RVector& u1 = state_.trace.initial_upper;
  State next = state_;
  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t g = first + j;
    const Rational lo = xc[g] - slacks.lower[j];
    const Rational hi = xc[g] + slacks.upper[j];
    if (lo < l1[g]) {
      throw DmBoundsViolation(g, DmBoundsViolation::Side::Lower, to_string(lo),
                              to_string(l1[g]), to_string(Rational(l1[g] - lo)));
    }
    if (hi > u1[g]) {
      throw DmBoundsViolation(g, DmBoundsViolation::Side::Upper, to_string(hi),
                              to_string(u1[g]), to_string(Rational(hi - u1[g])));
    }
    next.lower[g] = lo;
    next.upper[g] = hi;
  }
  next.trace.slacks.push_back(
      SlackRecord{p, slacks.lower, slacks.upper, next.lower, next.upper});
  next.level = p + 1;
  next.phase = Phase::AwaitSolve;
  state_ = std::move(next);
}

FinalCompromise Session::final_compromise() const {
  require_phase(Phase::Done, "final_compromise");
  FinalCompromise out;
  out.x = state_.compromises.back();
  out.objective_values = all_objective_values(problem_, out.x);
  out.trace = state_.trace;
  return out;
}

Session start_session(MlProblem problem,
                      std::shared_ptr<const Geometry> geometry,
                      SortingChoice choice, DriverConfig config) {
  Session session(std::move(problem), std::move(config), std::move(geometry));
  session.choose_sorting_set(choice);
  return session;
}

FinalCompromise run_batch(const MlProblem& problem, const BatchConfig& config,
                          std::shared_ptr<const Geometry> geometry) {
  const std::size_t levels = problem.level_count();
  if (levels > 0 && config.slacks.size() + 1 < levels) {
    throw Error(ErrorCode::InvalidProblem,
                "slacks given for " + std::to_string(config.slacks.size()) +
                    " levels, need " + std::to_string(levels - 1));
  }

  std::string step = "Phase 1, compromise set";
  try {
    Session session(problem, config.driver, std::move(geometry));
    step = "Phase 1, sorting set";
    session.choose_sorting_set(config.sorting);
    for (std::size_t p = 1;; ++p) {
      step = level_step("solve", p);
      std::optional<RVector> x0;
      if (p - 1 < config.initial_points.size()) x0 = config.initial_points[p - 1];
      session.solve_current_level(x0);
      if (session.phase() == Phase::Done) break;
      step = level_step("slacks", p);
      DmSlacks slacks = config.slacks[p - 1];
      slacks.level = p;
      session.apply_dm_slacks(slacks);
    }
    return session.final_compromise();
  } catch (Error& e) {
    if (e.step().empty()) e.set_step(step);
    throw;
  }
}

}  // namespace cascade

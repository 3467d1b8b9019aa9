#include "cascade/molp.hpp"

#include <string>

#include "cascade/error.hpp"

namespace cascade {

namespace {

constexpr std::size_t kMaxBoxRetries = 3;

void require_shape(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

RVector weighted_row(const RMatrix& objectives, const RVector& weights) {
  RVector out(objectives.cols());
  for (std::size_t q = 0; q < objectives.rows(); ++q)
    for (std::size_t j = 0; j < objectives.cols(); ++j)
      out[j] += weights[q] * objectives(q, j);
  return out;
}

RVector ones(std::size_t n) {
  RVector out(n);
  for (auto& v : out) v = 1;
  return out;
}

}  // namespace

SlackifiedLevel slackify(const RMatrix& A, const RVector& b,
                         const RMatrix& objectives, const RVector& lower,
                         const RVector& upper, const Rational& big_m) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  require_shape(b.size() == m, "b has " + std::to_string(b.size()) +
                                   " entries, A has " + std::to_string(m) +
                                   " rows");
  require_shape(objectives.cols() == n,
                "objective rows have " + std::to_string(objectives.cols()) +
                    " entries, expected " + std::to_string(n));
  require_shape(lower.size() == n && upper.size() == n,
                "bounds must have " + std::to_string(n) + " entries");
  if (sgn(big_m) <= 0) {
    throw Error(ErrorCode::InvalidProblem, "bigM must be positive");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) {
      throw Error(ErrorCode::InvalidProblem,
                  "l_" + std::to_string(j + 1) + " > u_" +
                      std::to_string(j + 1));
    }
  }

  SlackifiedLevel out;
  out.structural = n;
  out.lp.B = RMatrix(m, n + m);
  out.lp.b = b;
  out.lp.lower = RVector(n + m);
  out.lp.upper = RVector(n + m);
  out.objectives = RMatrix(objectives.rows(), n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.lp.B(i, j) = A(i, j);
    out.lp.B(i, n + i) = 1;
  }
  for (std::size_t j = 0; j < n; ++j) {
    out.lp.lower[j] = lower[j];
    out.lp.upper[j] = upper[j];
  }
  for (std::size_t i = 0; i < m; ++i) out.lp.upper[n + i] = big_m;
  for (std::size_t q = 0; q < objectives.rows(); ++q)
    for (std::size_t j = 0; j < n; ++j) out.objectives(q, j) = objectives(q, j);
  out.lp.c = weighted_row(out.objectives, ones(objectives.rows()));
  return out;
}

WeightResult auxiliary_weights(const SlackifiedLevel& level, const RVector& x0,
                               const Rational& big_m) {
  const BoundedLp& lp = level.lp;
  const RMatrix& C = level.objectives;
  const std::size_t m = lp.rows();
  const std::size_t cols = lp.cols();
  const std::size_t k = C.rows();
  if (!lp.is_feasible(x0)) {
    throw Error(ErrorCode::InfeasibleInitialPoint,
                "auxiliary LP needs a feasible x0");
  }

  // Variables (y, r, v, w); one equality row per column j of B:
  //   B_j'y - C_j'r - v_j + w_j = (s'C)_j.
  const std::size_t off_r = m;
  const std::size_t off_v = m + k;
  const std::size_t off_w = m + k + cols;
  const std::size_t total = m + k + 2 * cols;
  const RVector target = weighted_row(C, ones(k));
  const RVector cx0 = C * x0;

  BoundedLp aux;
  aux.B = RMatrix(cols, total);
  aux.b = target;
  aux.c = RVector(total);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < m; ++i) aux.B(j, i) = lp.B(i, j);
    for (std::size_t q = 0; q < k; ++q) aux.B(j, off_r + q) = -C(q, j);
    aux.B(j, off_v + j) = -1;
    aux.B(j, off_w + j) = 1;
  }
  // maximise -(y'b - r'Cx0 - v'l + w'u)
  for (std::size_t i = 0; i < m; ++i) aux.c[i] = -lp.b[i];
  for (std::size_t q = 0; q < k; ++q) aux.c[off_r + q] = cx0[q];
  for (std::size_t j = 0; j < cols; ++j) {
    aux.c[off_v + j] = lp.lower[j];
    aux.c[off_w + j] = -lp.upper[j];
  }

  Rational box = big_m;
  for (const auto& t : target) {
    while (abs(t) > box) box *= 2;
  }

  SupportPlan start{RVector(total), std::vector<std::size_t>(cols)};
  for (std::size_t j = 0; j < cols; ++j) {
    if (sgn(target[j]) >= 0) {
      start.x[off_w + j] = target[j];
      start.basis[j] = off_w + j;
    } else {
      start.x[off_v + j] = -target[j];
      start.basis[j] = off_v + j;
    }
  }

  for (std::size_t retries = 0;; ++retries) {
    aux.lower = RVector(total);
    aux.upper = RVector(total);
    for (std::size_t i = 0; i < m; ++i) aux.lower[i] = -box;
    for (auto& u : aux.upper) u = box;

    const LpOutcome outcome = solve_bounded_lp(aux, start);
    if (outcome.status != LpStatus::Optimal) {
      throw Error(ErrorCode::AuxiliaryInfeasible,
                  "auxiliary weight LP has no solution");
    }
    const SupportPlan& plan = *outcome.support;
    const RVector delta = suboptimality_estimate(aux, plan).reduced_costs;

    // The box binds when a nonbasic variable rests on an artificial bound
    // with nonzero reduced cost.
    std::vector<char> basic(total, 0);
    for (std::size_t j : plan.basis) basic[j] = 1;
    bool binding = false;
    for (std::size_t j = 0; j < total && !binding; ++j) {
      if (basic[j] || sgn(delta[j]) == 0) continue;
      const bool at_upper = plan.x[j] == aux.upper[j];
      const bool at_free_lower = j < m && plan.x[j] == aux.lower[j];
      binding = at_upper || at_free_lower;
    }
    if (binding) {
      if (retries == kMaxBoxRetries) {
        throw Error(ErrorCode::AuxiliaryUnboundedAfterRetries,
                    "free-variable box " + to_string(box) +
                        " still binds after " + std::to_string(retries) +
                        " doublings");
      }
      box *= 2;
      continue;
    }

    WeightResult result;
    result.aux.y = plan.x.slice(0, m);
    result.aux.r = plan.x.slice(off_r, k);
    result.aux.v = plan.x.slice(off_v, cols);
    result.aux.w = plan.x.slice(off_w, cols);
    result.aux.objective = -*outcome.objective;
    result.weights.lambda = result.aux.r + ones(k);
    result.box = box;
    result.retries = retries;
    return result;
  }
}

MolpResult solve_molp(const LevelObjectives& level, const RMatrix& A,
                      const RVector& b, const RVector& lower,
                      const RVector& upper, const std::optional<RVector>& x0,
                      const MolpOptions& options) {
  const std::size_t n = A.cols();
  const std::size_t m = A.rows();
  SlackifiedLevel slack =
      slackify(A, b, level.c, lower, upper, options.big_m);
  for (std::size_t row : options.pinned_rows) {
    require_shape(row < m, "pinned row " + std::to_string(row + 1) +
                               " out of range");
    slack.lp.upper[n + row] = 0;
  }

  MolpTrace trace;
  RVector start(n + m);
  if (x0) {
    require_shape(x0->size() == n, "initial point has " +
                                       std::to_string(x0->size()) +
                                       " entries, expected " +
                                       std::to_string(n));
    const RVector residual = b - A * *x0;
    for (std::size_t j = 0; j < n; ++j) start[j] = (*x0)[j];
    for (std::size_t i = 0; i < m; ++i) start[n + i] = residual[i];
    if (!slack.lp.is_feasible(start)) {
      throw Error(ErrorCode::InfeasibleInitialPoint,
                  "x0 = " + to_string(*x0) +
                      " violates Ax <= b or the level bounds");
    }
    trace.start = StartSource::Given;
  } else {
    auto plan = find_initial_feasible(slack.lp);
    if (!plan) {
      throw Error(ErrorCode::InfeasibleRegion,
                  "no x with Ax <= b inside the level-" +
                      std::to_string(level.level) + " bounds");
    }
    start = std::move(plan->x);
    trace.start = StartSource::PhaseOne;
  }
  trace.x0 = start.slice(0, n);

  const WeightResult weights = auxiliary_weights(slack, start, options.big_m);
  trace.weights = weights.weights;
  trace.aux_objective = weights.aux.objective;
  trace.aux_box = weights.box;
  trace.aux_retries = weights.retries;

  BoundedLp weighted = slack.lp;
  weighted.c = weighted_row(slack.objectives, weights.weights.lambda);
  std::vector<std::size_t> slack_basis(m);
  for (std::size_t i = 0; i < m; ++i) slack_basis[i] = n + i;
  const LpOutcome outcome =
      solve_bounded_lp(weighted, SupportPlan{start, slack_basis});

  trace.weighted_objective = *outcome.objective;
  trace.steps = outcome.steps;
  for (const auto& it : outcome.iterations) trace.beta_history.push_back(it.beta);

  MolpResult result;
  result.x = outcome.x->slice(0, n);
  result.weights = weights.weights;
  result.trace = std::move(trace);
  return result;
}

}  // namespace cascade

#include "cascade/lp.hpp"

#include <algorithm>
#include <string>

#include "cascade/error.hpp"

namespace cascade {

namespace {

constexpr std::size_t kMaxSteps = 200000;

// Incremental independence test over columns (eliminates against stored
// reduced vectors, each with its own pivot row).
class ColumnSpan {
 public:
  explicit ColumnSpan(std::size_t dim) : dim_(dim) {}

  bool try_add(RVector a) {
    for (const auto& [v, p] : reduced_) {
      if (sgn(a[p]) == 0) continue;
      const Rational f = a[p] / v[p];
      for (std::size_t i = 0; i < dim_; ++i) a[i] -= f * v[i];
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      if (sgn(a[i]) != 0) {
        reduced_.emplace_back(std::move(a), i);
        return true;
      }
    }
    return false;
  }

  std::size_t size() const noexcept { return reduced_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::pair<RVector, std::size_t>> reduced_;
};

void validate_plan(const BoundedLp& lp, const SupportPlan& plan) {
  if (plan.x.size() != lp.cols()) {
    throw Error(ErrorCode::InvalidSupport,
                "plan has " + std::to_string(plan.x.size()) +
                    " components, LP has " + std::to_string(lp.cols()));
  }
  if (plan.basis.size() != lp.rows()) {
    throw Error(ErrorCode::InvalidSupport,
                "support has " + std::to_string(plan.basis.size()) +
                    " indexes, expected " + std::to_string(lp.rows()));
  }
  std::vector<char> seen(lp.cols(), 0);
  for (std::size_t j : plan.basis) {
    if (j >= lp.cols() || seen[j]) {
      throw Error(ErrorCode::InvalidSupport,
                  "support index " + std::to_string(j) +
                      " is out of range or repeated");
    }
    seen[j] = 1;
  }
  if (!lp.is_feasible(plan.x)) {
    throw Error(ErrorCode::InvalidSupport, "plan point is not feasible");
  }
}

// State machine for one solve: current plan plus B_B^{-1}.
class SupportEngine {
 public:
  SupportEngine(const BoundedLp& lp, SupportPlan plan, bool record)
      : lp_(lp), plan_(std::move(plan)), record_(record) {
    auto inv = invert(lp_.B.select_cols(plan_.basis));
    if (!inv) {
      throw Error(ErrorCode::InvalidSupport, "support matrix is singular");
    }
    inverse_ = std::move(*inv);
    in_basis_.assign(lp_.cols(), 0);
    for (std::size_t j : plan_.basis) in_basis_[j] = 1;
  }

  LpOutcome run() {
    LpOutcome out;
    for (;;) {
      const SuboptimalityEstimate est = estimate();
      if (record_) {
        out.iterations.push_back(
            {plan_, lp_.objective(plan_.x), est.beta});
      }
      if (sgn(est.beta) == 0) break;
      if (out.steps == kMaxSteps) {
        throw Error(ErrorCode::IterationLimit,
                    "support method exceeded " + std::to_string(kMaxSteps) +
                        " steps");
      }
      step(est.reduced_costs);
      ++out.steps;
    }
    out.status = LpStatus::Optimal;
    out.objective = lp_.objective(plan_.x);
    out.x = plan_.x;
    out.support = plan_;
    return out;
  }

  SuboptimalityEstimate estimate() const {
    const std::size_t m = lp_.rows();
    const std::size_t n = lp_.cols();
    // potentials u' = c_B' B_B^{-1}
    RVector u(m);
    for (std::size_t k = 0; k < m; ++k) {
      Rational acc = 0;
      for (std::size_t i = 0; i < m; ++i)
        acc += lp_.c[plan_.basis[i]] * inverse_(i, k);
      u[k] = acc;
    }
    SuboptimalityEstimate est{0, RVector(n)};
    for (std::size_t j = 0; j < n; ++j) {
      if (in_basis_[j]) continue;
      Rational d = -lp_.c[j];
      for (std::size_t k = 0; k < m; ++k) d += u[k] * lp_.B(k, j);
      const int s = sgn(d);
      if (s > 0) {
        est.beta += d * (plan_.x[j] - lp_.lower[j]);
      } else if (s < 0) {
        est.beta += d * (plan_.x[j] - lp_.upper[j]);
      }
      est.reduced_costs[j] = std::move(d);
    }
    return est;
  }

 private:
  void step(const RVector& delta) {
    const std::size_t m = lp_.rows();
    const std::size_t n = lp_.cols();

    // Entering index: smallest nonbasic j whose value can move toward the
    // bound favoured by the sign of Delta_j.
    std::size_t entering = n;
    int dir = 0;
    for (std::size_t j = 0; j < n && entering == n; ++j) {
      if (in_basis_[j]) continue;
      const int s = sgn(delta[j]);
      if (s > 0 && plan_.x[j] > lp_.lower[j]) {
        entering = j;
        dir = -1;
      } else if (s < 0 && plan_.x[j] < lp_.upper[j]) {
        entering = j;
        dir = 1;
      }
    }

    // Basic response per unit step: x_B -= dir * B_B^{-1} B_j * t.
    RVector column(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational acc = 0;
      for (std::size_t k = 0; k < m; ++k)
        acc += inverse_(i, k) * lp_.B(k, entering);
      column[i] = std::move(acc);
    }

    Rational theta = dir > 0 ? lp_.upper[entering] - plan_.x[entering]
                             : plan_.x[entering] - lp_.lower[entering];
    std::size_t leaving_row = m;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational rate = dir > 0 ? Rational(-column[i]) : column[i];
      const int s = sgn(rate);
      if (s == 0) continue;
      const std::size_t var = plan_.basis[i];
      const Rational limit = s > 0 ? (lp_.upper[var] - plan_.x[var]) / rate
                                   : (lp_.lower[var] - plan_.x[var]) / rate;
      const bool better =
          limit < theta ||
          (limit == theta && leaving_row != m && var < plan_.basis[leaving_row]);
      if (better) {
        theta = limit;
        leaving_row = i;
      }
    }

    if (sgn(theta) != 0) {
      plan_.x[entering] += dir > 0 ? theta : Rational(-theta);
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(column[i]) == 0) continue;
        const Rational shift = column[i] * theta;
        if (dir > 0) {
          plan_.x[plan_.basis[i]] -= shift;
        } else {
          plan_.x[plan_.basis[i]] += shift;
        }
      }
    }
    if (leaving_row == m) return;

    // Swap support indexes and update the inverse by the eta rule.
    const std::size_t leaving = plan_.basis[leaving_row];
    in_basis_[leaving] = 0;
    in_basis_[entering] = 1;
    plan_.basis[leaving_row] = entering;
    const Rational pivot = column[leaving_row];
    for (std::size_t k = 0; k < m; ++k) inverse_(leaving_row, k) /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leaving_row || sgn(column[i]) == 0) continue;
      const Rational f = column[i];
      for (std::size_t k = 0; k < m; ++k)
        inverse_(i, k) -= f * inverse_(leaving_row, k);
    }
  }

  const BoundedLp& lp_;
  SupportPlan plan_;
  bool record_;
  RMatrix inverse_;
  std::vector<char> in_basis_;
};

}  // namespace

void BoundedLp::validate() const {
  const std::size_t m = B.rows();
  const std::size_t n = B.cols();
  if (b.size() != m || c.size() != n || lower.size() != n ||
      upper.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "LP shapes: B " + std::to_string(m) + "x" + std::to_string(n) +
                    ", b " + std::to_string(b.size()) + ", c " +
                    std::to_string(c.size()) + ", l " +
                    std::to_string(lower.size()) + ", u " +
                    std::to_string(upper.size()));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) {
      throw Error(ErrorCode::InvalidProblem,
                  "bound l_" + std::to_string(j + 1) + " = " +
                      to_string(lower[j]) + " exceeds u_" +
                      std::to_string(j + 1) + " = " + to_string(upper[j]));
    }
  }
  if (rank(B) < m) {
    throw Error(ErrorCode::InvalidProblem, "constraint matrix rank < rows");
  }
}

bool BoundedLp::is_feasible(const RVector& x) const {
  if (x.size() != cols()) return false;
  for (std::size_t j = 0; j < cols(); ++j) {
    if (x[j] < lower[j] || x[j] > upper[j]) return false;
  }
  return B * x == b;
}

SuboptimalityEstimate suboptimality_estimate(const BoundedLp& lp,
                                             const SupportPlan& plan) {
  lp.validate();
  validate_plan(lp, plan);
  return SupportEngine(lp, plan, false).estimate();
}

std::vector<std::size_t> complete_basis(const RMatrix& B,
                                        std::vector<std::size_t> seed) {
  ColumnSpan span(B.rows());
  std::vector<char> used(B.cols(), 0);
  for (std::size_t j : seed) {
    if (!span.try_add(B.col(j))) {
      throw Error(ErrorCode::InvalidSupport, "seed columns are dependent");
    }
    used[j] = 1;
  }
  for (std::size_t j = 0; j < B.cols() && span.size() < B.rows(); ++j) {
    if (!used[j] && span.try_add(B.col(j))) seed.push_back(j);
  }
  if (seed.size() != B.rows()) {
    throw Error(ErrorCode::InvalidProblem, "constraint matrix rank < rows");
  }
  return seed;
}

std::optional<SupportPlan> find_initial_feasible(const BoundedLp& lp) {
  lp.validate();
  const std::size_t m = lp.rows();
  const std::size_t n = lp.cols();

  RVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = (lp.lower[j] + lp.upper[j]) / 2;
  const RVector residual = lp.b - lp.B * x;
  if (std::all_of(residual.begin(), residual.end(),
                  [](const Rational& r) { return sgn(r) == 0; })) {
    return SupportPlan{std::move(x), complete_basis(lp.B, {})};
  }

  // max -sum(a) s.t. Bx + D a = b, D = diag(sign r), 0 <= a <= |r|.
  BoundedLp aux;
  aux.B = RMatrix(m, n + m);
  aux.b = lp.b;
  aux.c = RVector(n + m);
  aux.lower = RVector(n + m);
  aux.upper = RVector(n + m);
  RVector start(n + m);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aux.B(i, j) = lp.B(i, j);
    aux.B(i, n + i) = sgn(residual[i]) < 0 ? -1 : 1;
    aux.c[n + i] = -1;
    aux.upper[n + i] = abs(residual[i]);
    start[n + i] = abs(residual[i]);
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) {
    aux.lower[j] = lp.lower[j];
    aux.upper[j] = lp.upper[j];
    start[j] = x[j];
  }

  LpOutcome phase1 = SupportEngine(aux, {start, basis}, false).run();
  if (sgn(*phase1.objective) != 0) return std::nullopt;

  std::vector<std::size_t> seed;
  for (std::size_t j : phase1.support->basis) {
    if (j < n) seed.push_back(j);
  }
  return SupportPlan{phase1.x->slice(0, n), complete_basis(lp.B, seed)};
}

LpOutcome solve_bounded_lp(const BoundedLp& lp,
                           const std::optional<SupportPlan>& init) {
  lp.validate();
  if (init) {
    validate_plan(lp, *init);
    return SupportEngine(lp, *init, true).run();
  }
  auto plan = find_initial_feasible(lp);
  if (!plan) return LpOutcome{};
  return SupportEngine(lp, std::move(*plan), true).run();
}

}  // namespace cascade

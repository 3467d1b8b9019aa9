#pragma once

// Adaptive (support) method for linear programs with bounded variables:
//
//   max c'x   s.t.  Bx = b,  l <= x <= u.
//
// A support plan pairs any feasible x (not necessarily a vertex) with a
// nonsingular column set J_B. The suboptimality estimate beta bounds the
// gap c'x* - c'x and vanishes exactly when the plan certifies optimality.

#include <cstddef>
#include <optional>
#include <vector>

#include "cascade/matrix.hpp"

namespace cascade {

struct BoundedLp {
  RMatrix B;
  RVector b;
  RVector c;
  RVector lower;
  RVector upper;

  std::size_t rows() const noexcept { return B.rows(); }
  std::size_t cols() const noexcept { return B.cols(); }

  /// Checks shapes, l <= u and rank(B) = rows. Throws DimensionMismatch or
  /// InvalidProblem.
  void validate() const;

  bool is_feasible(const RVector& x) const;
  Rational objective(const RVector& x) const { return c.dot(x); }
};

struct SupportPlan {
  RVector x;
  /// Support (basic) column indexes J_B, |J_B| = rows. Order matters only for
  /// reporting; J_N is the complement.
  std::vector<std::size_t> basis;

  friend bool operator==(const SupportPlan&, const SupportPlan&) = default;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct SuboptimalityEstimate {
  Rational beta;
  /// Delta_j = u'B_j - c_j with u' = c_B' B_B^{-1}; zero on J_B.
  RVector reduced_costs;
};

/// One visited plan, recorded before each move and once at termination.
struct LpIteration {
  SupportPlan plan;
  Rational objective;
  Rational beta;

  friend bool operator==(const LpIteration&, const LpIteration&) = default;
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::optional<RVector> x;
  std::optional<Rational> objective;
  std::optional<SupportPlan> support;
  /// Plans visited by the main loop (excludes phase 1).
  std::vector<LpIteration> iterations;
  /// Moves that changed x or J_B.
  std::size_t steps = 0;
};

/// beta(x, J_B) = sum_{j in J_N, D_j > 0} D_j (x_j - l_j)
///              + sum_{j in J_N, D_j < 0} D_j (x_j - u_j).
/// Throws InvalidSupport when B(:, J_B) is singular or x infeasible.
SuboptimalityEstimate suboptimality_estimate(const BoundedLp& lp,
                                             const SupportPlan& plan);

/// Solves the LP. With `init`, iteration starts from that plan and an
/// already-optimal x is returned unchanged. Without it, a phase-1 plan is
/// built first. Entering and leaving indexes follow the smallest-index rule.
LpOutcome solve_bounded_lp(const BoundedLp& lp,
                           const std::optional<SupportPlan>& init = {});

/// Phase 1: starts at the box midpoint and, if Bx != b there, minimises a sum
/// of bounded artificials with the same engine. Empty when infeasible.
std::optional<SupportPlan> find_initial_feasible(const BoundedLp& lp);

/// Smallest-index greedy completion of `seed` to m independent columns.
/// Throws InvalidProblem if B is rank deficient.
std::vector<std::size_t> complete_basis(const RMatrix& B,
                                        std::vector<std::size_t> seed);

}  // namespace cascade

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cascade/lp.hpp"
#include "cascade/matrix.hpp"

namespace cascade {

/// Objective rows c_{p1}..c_{pk_p} of one level over all n variables.
struct LevelObjectives {
  std::size_t level = 1;  // 1-based
  RMatrix c;

  std::size_t count() const noexcept { return c.rows(); }
  RVector values(const RVector& x) const { return c * x; }

  friend bool operator==(const LevelObjectives&,
                         const LevelObjectives&) = default;
};

/// lambda_p = r0 + s, every component >= 1.
struct WeightVector {
  RVector lambda;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// Solution of the auxiliary (weight) LP.
struct AuxSolution {
  RVector y;  // free, one per equality row
  RVector r;  // >= 0, one per objective
  RVector v;  // >= 0, one per column of B
  RVector w;  // >= 0, one per column of B
  Rational objective;
};

/// Slackified level problem: B = (A | I_m), the box extended with [0, M] on
/// every slack, and each objective row padded with m zeros.
struct SlackifiedLevel {
  BoundedLp lp;  // c holds the all-ones combination s'c_p
  RMatrix objectives;
  std::size_t structural = 0;
};

SlackifiedLevel slackify(const RMatrix& A, const RVector& b,
                         const RMatrix& objectives, const RVector& lower,
                         const RVector& upper, const Rational& big_m);

struct WeightResult {
  WeightVector weights;
  AuxSolution aux;
  /// Free-variable box half-width that certified the auxiliary optimum.
  Rational box;
  std::size_t retries = 0;
};

/// Steps 2-3: solves the auxiliary LP at the feasible point `x0` (full
/// length, slacks included) and returns lambda = r0 + s. The free y is boxed
/// in [-M_y, M_y] (M_y starts at `big_m`); if that box binds, M_y doubles, at
/// most three times.
WeightResult auxiliary_weights(const SlackifiedLevel& level, const RVector& x0,
                               const Rational& big_m);

struct MolpOptions {
  Rational big_m = Rational(1000000);
  /// Constraint rows whose slack is pinned to zero (strict sorting-set mode).
  std::vector<std::size_t> pinned_rows;
};

enum class StartSource { Given, PhaseOne };

struct MolpTrace {
  StartSource start = StartSource::Given;
  RVector x0;  // structural part of the starting point
  WeightVector weights;
  Rational aux_objective;
  Rational aux_box;
  std::size_t aux_retries = 0;
  Rational weighted_objective;
  std::vector<Rational> beta_history;
  std::size_t steps = 0;

  friend bool operator==(const MolpTrace&, const MolpTrace&) = default;
};

struct MolpResult {
  RVector x;  // structural compromise
  WeightVector weights;
  MolpTrace trace;
};

/// Steps 1-5 for one level over {Ax <= b, l <= x <= u, x >= 0}. A supplied
/// x0 must be feasible (InfeasibleInitialPoint otherwise); without one a
/// phase-1 point is used. The weighted LP is seeded at x0 with the slack
/// support, so an x0 that is already optimal comes back unchanged.
MolpResult solve_molp(const LevelObjectives& level, const RMatrix& A,
                      const RVector& b, const RVector& lower,
                      const RVector& upper, const std::optional<RVector>& x0,
                      const MolpOptions& options = {});

}  // namespace cascade

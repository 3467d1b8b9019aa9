#pragma once

#include <memory>
#include <optional>
#include <random>

#include "cascade/driver.hpp"
#include "oracle.hpp"

namespace randgen {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi);

/// max c'x s.t. A x <= b, 0 <= x <= u with n <= 6, m <= 8 and A, b, c, u
/// integers in [-9, 9]; feasible by construction. `lp` is the slack form
/// (A | I) with slack boxes wide enough never to bind; `poly` is the same
/// region in the structural variables for the vertex oracle.
struct RandomLp {
  cascade::BoundedLp lp;
  oracle::IntPoly poly;
  std::vector<long> c;
  std::size_t n = 0;
};

RandomLp random_lp(Rng& rng);

enum class Objectives {
  Mixed,   // 1..3 rows with entries in [-5, 5]
  Pareto,  // identity rows plus one nonnegative row: every level shares the
           // componentwise Pareto set
};

/// Bounded, full-dimensional region in n dimensions with integer data.
cascade::MlProblem random_ml_problem(Rng& rng, std::size_t levels, std::size_t n,
                                     Objectives kind);

/// A problem with a sorting set meeting the session assumptions and a
/// script of admissible choices for every level.
struct DriverCase {
  cascade::MlProblem problem;
  std::shared_ptr<const cascade::Geometry> geometry;
  cascade::BatchConfig batch;
};

/// Rejection sampling; gives up after `attempts` draws.
std::optional<DriverCase> random_driver_case(Rng& rng, std::size_t levels,
                                             std::size_t attempts = 200);

}  // namespace randgen

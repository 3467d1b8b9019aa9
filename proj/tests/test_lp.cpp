#include <random>

#include "doctest.h"

#include "cascade/error.hpp"
#include "cascade/lp.hpp"
#include "cascade/molp.hpp"
#include "support/oracle.hpp"
#include "support/random_problems.hpp"
#include "support/worked_example.hpp"

using namespace cascade;
using testdata::q;

namespace {

// max x1 + x2  s.t.  x1 + x2 + s = 4,  x in [0,3]^2,  s in [0,4]
BoundedLp tiny() {
  BoundedLp lp;
  lp.B = RMatrix{{1, 1, 1}};
  lp.b = RVector{4};
  lp.c = RVector{1, 1, 0};
  lp.lower = RVector{0, 0, 0};
  lp.upper = RVector{3, 3, 4};
  return lp;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("beta vanishes when nonbasic variables sit on the right bounds") {
  const BoundedLp lp = tiny();
  // J_B = {x1}: u = 1, Delta = (0, 0, 1); s is at its lower bound
  const auto est = suboptimality_estimate(lp, SupportPlan{RVector{1, 3, 0}, {0}});
  CHECK(est.reduced_costs == RVector{0, 0, 1});
  CHECK(est.beta == 0);

  // s = 2 > l_s: beta = 1 * (2 - 0) and the gap 4 - 2 = 2 is within it
  const auto off = suboptimality_estimate(lp, SupportPlan{RVector{1, 1, 2}, {0}});
  CHECK(off.beta == 2);
}

TEST_CASE("suboptimality_estimate rejects bad supports") {
  const BoundedLp lp = tiny();
  CHECK_THROWS_AS(suboptimality_estimate(lp, SupportPlan{RVector{3, 3, 0}, {0}}), Error);
  CHECK_THROWS_AS(suboptimality_estimate(lp, SupportPlan{RVector{1, 3, 0}, {}}), Error);
}

TEST_CASE("tiny LP reaches 4 and certifies it") {
  const auto out = solve_bounded_lp(tiny());
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(*out.objective == 4);
  CHECK(suboptimality_estimate(tiny(), *out.support).beta == 0);
}

TEST_CASE("degenerate box forces the point") {
  BoundedLp lp;
  lp.B = RMatrix{{1, 1}};
  lp.b = RVector{5};
  lp.c = RVector{7, -1};
  lp.lower = RVector{2, 3};
  lp.upper = RVector{2, 3};
  const auto out = solve_bounded_lp(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(*out.x == RVector{2, 3});
  CHECK(*out.objective == 11);
}

TEST_CASE("infeasible equality reported, confirmed by the vertex oracle") {
  BoundedLp lp;
  lp.B = RMatrix{{1, 1}};
  lp.b = RVector{10};
  lp.c = RVector{1, 1};
  lp.lower = RVector{0, 0};
  lp.upper = RVector{2, 2};
  CHECK_FALSE(find_initial_feasible(lp));
  CHECK(solve_bounded_lp(lp).status == LpStatus::Infeasible);

  oracle::IntPoly poly;
  poly.dim = 2;
  poly.G = {{1, 1}, {-1, -1}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  poly.h = {10, -10, 2, 2, 0, 0};
  CHECK_FALSE(oracle::int_vertex_max(poly, {1, 1}));
}

TEST_CASE("find_initial_feasible keeps a feasible midpoint") {
  BoundedLp lp;
  lp.B = RMatrix{{1, 1}};
  lp.b = RVector{2};
  lp.c = RVector{0, 0};
  lp.lower = RVector{0, 0};
  lp.upper = RVector{2, 2};
  const auto plan = find_initial_feasible(lp);
  REQUIRE(plan);
  CHECK(plan->x == RVector{1, 1});
  CHECK(plan->basis.size() == 1);
}

TEST_CASE("find_initial_feasible on the level-1 box") {
  const auto level = slackify(testdata::example_A(), testdata::example_b(),
                              testdata::example_level1().c, RVector{1, 5}, RVector{3, 6},
                              Rational(1000000));
  const auto plan = find_initial_feasible(level.lp);
  REQUIRE(plan);
  const RVector x = plan->x.slice(0, 2);
  CHECK(x[0] >= 1);
  CHECK(x[0] <= 3);
  CHECK(x[1] >= 5);
  CHECK(x[1] <= 6);
  const RVector ax = testdata::example_A() * x;
  for (std::size_t i = 0; i < ax.size(); ++i) CHECK(ax[i] <= testdata::example_b()[i]);
}

TEST_CASE("validate") {
  BoundedLp lp = tiny();
  lp.lower[0] = 5;
  CHECK_THROWS_AS(lp.validate(), Error);
  BoundedLp dep = tiny();
  dep.B = RMatrix{{1, 1, 1}, {2, 2, 2}};
  dep.b = RVector{4, 8};
  CHECK_THROWS_AS(dep.validate(), Error);
  BoundedLp shape = tiny();
  shape.c = RVector{1};
  CHECK_THROWS_AS(shape.validate(), Error);
}

TEST_CASE("random LPs match the vertex oracle; plans obey the beta bound") {
  randgen::Rng rng(2024);
  for (int t = 0; t < 100; ++t) {
    const auto r = randgen::random_lp(rng);
    const auto expected = oracle::int_vertex_max(r.poly, r.c);
    REQUIRE(expected);
    const auto out = solve_bounded_lp(r.lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(*out.objective == *expected);
    CHECK(r.lp.is_feasible(*out.x));
    CHECK(suboptimality_estimate(r.lp, *out.support).beta == 0);
    for (const auto& it : out.iterations) {
      const Rational gap = *expected - it.objective;
      CHECK(gap <= it.beta);
      if (gap > 0) CHECK(it.beta > 0);
    }
  }
}

TEST_CASE("an optimal start comes back unchanged") {
  randgen::Rng rng(99);
  for (int t = 0; t < 30; ++t) {
    const auto r = randgen::random_lp(rng);
    const auto first = solve_bounded_lp(r.lp);
    REQUIRE(first.status == LpStatus::Optimal);
    const auto again = solve_bounded_lp(r.lp, *first.support);
    CHECK(*again.x == *first.x);
    CHECK(again.steps == 0);
    // any optimal x with any valid support is kept
    const auto other = solve_bounded_lp(
        r.lp, SupportPlan{*first.x, complete_basis(r.lp.B, {})});
    CHECK(*other.x == *first.x);
  }
}

TEST_CASE("level-1 weighted LP keeps (2, 11/2) and certifies it") {
  const auto level = slackify(testdata::example_A(), testdata::example_b(),
                              testdata::example_level1().c, RVector{1, 5}, RVector{3, 6},
                              Rational(1000000));
  RVector x0(9);
  x0[0] = 2;
  x0[1] = q(11, 2);
  const RVector slack = testdata::example_b() - testdata::example_A() * RVector{2, q(11, 2)};
  for (std::size_t i = 0; i < 7; ++i) x0[2 + i] = slack[i];
  const auto w = auxiliary_weights(level, x0, Rational(1000000));
  BoundedLp lp = level.lp;
  lp.c = RVector(9);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t j = 0; j < 9; ++j) lp.c[j] += w.weights.lambda[k] * level.objectives(k, j);
  std::vector<std::size_t> basis{2, 3, 4, 5, 6, 7, 8};
  const auto out = solve_bounded_lp(lp, SupportPlan{x0, basis});
  CHECK(out.x->slice(0, 2) == RVector{2, q(11, 2)});
  CHECK(suboptimality_estimate(lp, *out.support).beta == 0);
}

}

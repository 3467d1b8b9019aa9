// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "cascade/driver.hpp"
#include "cascade/error.hpp"
#include "cascade/geometry.hpp"
#include "cascade/lp.hpp"
#include "cascade/molp.hpp"
#include "cascade/report.hpp"
#include "cascade/service.hpp"
#include "support/oracle.hpp"
#include "support/random_problems.hpp"
#include "support/worked_example.hpp"

using namespace cascade;
using testdata::q;
using Clock = std::chrono::steady_clock;

namespace {

// Collects failures for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  std::size_t failed = 0;
};

int g_failed = 0;

void report(int id, const std::string& title, const Check& c, const std::string& extra = {}) {
  const bool ok = c.failed == 0;
  if (!ok) ++g_failed;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title;
  if (!extra.empty()) std::cout << " [" << extra << "]";
  std::cout << "\n";
  for (const auto& f : c.failures) std::cout << "    " << f << "\n";
  if (c.failed > c.failures.size())
    std::cout << "    ... " << c.failed - c.failures.size() << " more\n";
}

// Runs `body`, turning an escaped exception into a failure.
void guarded(Check& c, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
}

std::string ms(Clock::time_point t0) {
  std::ostringstream out;
  out << std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count()
      << " ms";
  return out.str();
}

bool has_coords(const std::vector<Vertex>& vs, const RVector& x) {
  for (const auto& v : vs)
    if (v.coords == x) return true;
  return false;
}

std::set<RVector> coord_set(const std::vector<Vertex>& vs) {
  std::set<RVector> out;
  for (const auto& v : vs) out.insert(v.coords);
  return out;
}

bool leq(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

bool feasible(const MlProblem& p, const RVector& x) {
  const RVector ax = p.A * x;
  for (std::size_t i = 0; i < p.m(); ++i)
    if (ax[i] > p.b[i]) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  return true;
}

void golden() {
  const auto t0 = Clock::now();
  const MlProblem problem = testdata::example_problem();
  Check c1, c2, c3, c4, c5, c6, c7;
  std::shared_ptr<const Geometry> g;
  guarded(c1, [&] {
    const auto vs = enumerate_vertices(Polytope(problem.A, problem.b));
    c1.expect(has_coords(vs, RVector{6, 6}), "(6,6) missing");
    c1.expect(has_coords(vs, RVector{3, 6}), "(3,6) missing");
    c1.expect(has_coords(vs, RVector{1, 5}), "(1,5) missing");
  });
  guarded(c2, [&] {
    g = analyze(problem);
    const std::set<RVector> want{RVector{6, 6}, RVector{3, 6}, RVector{1, 5}};
    c2.expect(coord_set(g->compromises.n_hat_dex) == want, "N_hat_dex differs");
    c2.expect(g->compromises.n_hat_dex.size() == 3, "N_hat_dex has duplicates");
  });
  guarded(c3, [&] {
    if (!g) g = analyze(problem);
    std::set<std::set<RVector>> faces;
    for (const auto& f : g->candidates) {
      c3.expect(f.dim == 1, "maximal face is not a segment");
      faces.insert(coord_set(f.vertices));
    }
    const std::set<std::set<RVector>> want{{RVector{6, 6}, RVector{3, 6}},
                                          {RVector{3, 6}, RVector{1, 5}}};
    c3.expect(faces == want, "maximal faces differ");
    c3.expect(g->candidates.size() == 2, "expected two maximal faces");
  });

  std::optional<Session> s;
  guarded(c4, [&] {
    std::size_t index = 0;
    for (std::size_t i = 0; i < g->candidates.size(); ++i)
      if (coord_set(g->candidates[i].vertices) ==
          std::set<RVector>{RVector{3, 6}, RVector{1, 5}})
        index = i + 1;
    c4.expect(index != 0, "H((3,6),(1,5)) not offered");
    s.emplace(problem, DriverConfig{}, g);
    s->choose_sorting_set(SortingChoice::at(index));
    c4.expect(s->lower() == RVector{1, 5}, "l(1) != (1,5)");
    c4.expect(s->upper() == RVector{3, 6}, "u(1) != (3,6)");
  });
  guarded(c5, [&] {
    const RVector x = s->solve_current_level(RVector{2, q(11, 2)});
    c5.expect(x == RVector{2, q(11, 2)}, "level-1 compromise is " + to_string(x));
  });
  guarded(c6, [&] {
    s->apply_dm_slacks(DmSlacks{1, RVector{q(1, 2)}, RVector{q(1, 2)}});
    c6.expect(s->lower() == RVector{q(3, 2), 5}, "l(2) is " + to_string(s->lower()));
    c6.expect(s->upper() == RVector{q(5, 2), 6}, "u(2) is " + to_string(s->upper()));
  });
  guarded(c7, [&] {
    const RVector x = s->solve_current_level(RVector{q(5, 2), q(23, 4)});
    c7.expect(s->phase() == Phase::Done, "session not done");
    c7.expect(x == RVector{q(5, 2), q(23, 4)}, "final compromise is " + to_string(x));
    c7.expect(s->final_compromise().x == x, "final_compromise disagrees");
  });
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  c7.expect(secs < 5, "golden block took " + std::to_string(secs) + " s");

  report(1, "vertices contain (6,6), (3,6), (1,5)", c1);
  report(2, "N_hat_dex = {(6,6), (3,6), (1,5)}", c2);
  report(3, "maximal compromise faces are the two segments", c3);
  report(4, "SP = H((3,6),(1,5)) gives l(1) = (1,5), u(1) = (3,6)", c4);
  report(5, "level-1 solve from (2,11/2) returns (2,11/2)", c5);
  report(6, "slacks 1/2 give l(2) = (3/2,5), u(2) = (5/2,6)", c6);
  report(7, "level-2 solve from (5/2,23/4) returns (5/2,23/4)", c7, ms(t0) + " golden total");
}

void lp_oracle() {
  const auto t0 = Clock::now();
  Check c;
  randgen::Rng rng(8008);
  for (int t = 0; t < 100; ++t) {
    guarded(c, [&] {
      const auto r = randgen::random_lp(rng);
      const auto expected = oracle::int_vertex_max(r.poly, r.c);
      c.expect(expected.has_value(), "oracle found no vertex");
      const auto out = solve_bounded_lp(r.lp);
      c.expect(out.status == LpStatus::Optimal, "LP " + std::to_string(t) + " not optimal");
      if (expected && out.objective)
        c.expect(*out.objective == *expected,
                 "LP " + std::to_string(t) + ": " + to_string(*out.objective) +
                     " != " + to_string(*expected));
    });
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  c.expect(secs < 60, "took " + std::to_string(secs) + " s");
  report(8, "100 random LPs equal the vertex-enumeration maximum", c, ms(t0));
}

void scalarization() {
  const auto t0 = Clock::now();
  Check c;
  randgen::Rng rng(909);
  const Rational big_m(1000000);
  std::size_t weighted = 0, molp = 0;
  for (int t = 0; t < 10; ++t) {
    guarded(c, [&] {
      const std::size_t n = 2 + t % 2;
      const MlProblem p = randgen::random_ml_problem(rng, 2, n, randgen::Objectives::Mixed);
      const Polytope poly(p.A, p.b);
      const RVector hi = coordinate_upper(enumerate_vertices(poly));
      const Region region = poly.region(hi);
      const RVector lo(n);
      RMatrix G;
      RVector h;
      oracle::boxed(p.A, p.b, lo, hi, G, h);
      for (const auto& level : p.levels) {
        const SlackifiedLevel s = slackify(p.A, p.b, level.c, lo, hi, big_m);
        for (int k = 0; k < 50; ++k) {
          RVector lambda(level.count());
          for (auto& v : lambda) v = make_rational(randgen::uniform(rng, 1, 20),
                                                   randgen::uniform(rng, 1, 6));
          BoundedLp lp = s.lp;
          lp.c = RVector(lp.cols());
          for (std::size_t r = 0; r < level.count(); ++r)
            for (std::size_t j = 0; j < lp.cols(); ++j)
              lp.c[j] += lambda[r] * s.objectives(r, j);
          const auto out = solve_bounded_lp(lp);
          c.expect(out.status == LpStatus::Optimal, "weighted LP not optimal");
          if (!out.x) continue;
          const RVector x = out.x->slice(0, n);
          c.expect(efficiency_test(x, level, region).efficient,
                   "weighted optimum " + to_string(x) + " not efficient");
          c.expect(!oracle::dominated(x, level.c, G, h),
                   "weighted optimum " + to_string(x) + " dominated (oracle)");
          ++weighted;
        }
        const auto r = solve_molp(level, p.A, p.b, lo, hi, std::nullopt);
        c.expect(efficiency_test(r.x, level, region).efficient,
                 "solve_molp output " + to_string(r.x) + " not efficient");
        c.expect(!oracle::dominated(r.x, level.c, G, h),
                 "solve_molp output " + to_string(r.x) + " dominated (oracle)");
        ++molp;
      }
    });
  }
  report(9, "weighted optima and solve_molp outputs pass efficiency_test", c,
         std::to_string(weighted) + " weighted, " + std::to_string(molp) + " molp, " + ms(t0));
}

void beta_certificate() {
  const auto t0 = Clock::now();
  Check c;
  randgen::Rng rng(1010);
  std::size_t intermediate = 0;
  auto check_run = [&](const BoundedLp& lp, const LpOutcome& out, const Rational& best) {
    c.expect(out.status == LpStatus::Optimal, "not optimal");
    if (!out.support) return;
    c.expect(suboptimality_estimate(lp, *out.support).beta == 0, "beta != 0 at the optimum");
    for (const auto& it : out.iterations) {
      const Rational beta = suboptimality_estimate(lp, it.plan).beta;
      c.expect(beta == it.beta, "recorded beta differs from recomputed");
      const Rational gap = best - lp.objective(it.plan.x);
      c.expect(gap <= beta, "gap " + to_string(gap) + " > beta " + to_string(beta));
      if (gap > 0) {
        ++intermediate;
        c.expect(beta > 0, "non-optimal plan with beta = 0");
      }
    }
  };
  for (int t = 0; t < 100; ++t) {
    guarded(c, [&] {
      const auto r = randgen::random_lp(rng);
      const auto out = solve_bounded_lp(r.lp);
      const auto best = oracle::int_vertex_max(r.poly, r.c);
      if (best) check_run(r.lp, out, *best);
    });
  }
  // weighted level problems started from a phase-1 plan
  for (int t = 0; t < 20; ++t) {
    guarded(c, [&] {
      const std::size_t n = 2 + t % 2;
      const MlProblem p = randgen::random_ml_problem(rng, 1, n, randgen::Objectives::Mixed);
      const RVector lo(n);
      const RVector hi = coordinate_upper(enumerate_vertices(Polytope(p.A, p.b)));
      const SlackifiedLevel s = slackify(p.A, p.b, p.levels[0].c, lo, hi, Rational(1000000));
      RMatrix G;
      RVector h;
      oracle::boxed(p.A, p.b, lo, hi, G, h);
      Rational best;
      bool first = true;
      for (const auto& v : oracle::vertices(G, h)) {
        const Rational value = s.lp.c.slice(0, n).dot(v);
        if (first || value > best) best = value;
        first = false;
      }
      check_run(s.lp, solve_bounded_lp(s.lp), best);
    });
  }
  report(10, "beta = 0 at optima, 0 < gap bound beta on intermediate plans", c,
         std::to_string(intermediate) + " intermediate plans, " + ms(t0));
}

void driver_invariants() {
  const auto t0 = Clock::now();
  Check c;
  randgen::Rng rng(1111);
  std::size_t done = 0;
  for (int t = 0; t < 20; ++t) {
    guarded(c, [&] {
      const std::size_t levels = 2 + t % 2;
      const auto dc = randgen::random_driver_case(rng, levels);
      c.expect(dc.has_value(), "no admissible case drawn for " + std::to_string(levels) +
                                   " levels");
      if (!dc) return;
      const auto a = run_batch(dc->problem, dc->batch, dc->geometry);
      const auto b = run_batch(dc->problem, dc->batch);
      c.expect(a.trace == b.trace, "replay trace differs");
      c.expect(to_json(a.trace).dump() == to_json(b.trace).dump(), "replay JSON differs");
      c.expect(a.x == b.x, "replay compromise differs");

      const RVector& l1 = a.trace.initial_lower;
      const RVector& u1 = a.trace.initial_upper;
      c.expect(a.trace.levels.size() == levels, "missing level records");
      for (const auto& rec : a.trace.levels) {
        c.expect(leq(l1, rec.lower) && leq(rec.lower, rec.upper) && leq(rec.upper, u1),
                 "bounds not nested at level " + std::to_string(rec.level));
        c.expect(leq(rec.lower, rec.compromise) && leq(rec.compromise, rec.upper),
                 "compromise outside its box at level " + std::to_string(rec.level));
      }
      const auto& last = a.trace.levels.back();
      c.expect(feasible(dc->problem, a.x), "final compromise infeasible");
      Session replay(dc->problem, DriverConfig{}, dc->geometry);
      const Region region = replay.level_region(last.lower, last.upper);
      c.expect(region.contains(a.x), "final compromise outside the last region");
      const auto& top = dc->problem.levels.back();
      c.expect(efficiency_test(a.x, top, region).efficient, "final not level-P efficient");
      RMatrix G;
      RVector h;
      oracle::boxed(dc->problem.A, dc->problem.b, last.lower, last.upper, G, h);
      c.expect(!oracle::dominated(a.x, top.c, G, h), "final dominated (oracle)");
      ++done;
    });
  }
  report(11, "driver nesting, feasibility, level-P efficiency, replay", c,
         std::to_string(done) + " cases, " + ms(t0));
}

// Legal successor of `from` for a successful call of kind `call`.
bool legal(const std::string& call, const Json& before, const Json& after) {
  const std::string from = before["phase"];
  const std::string to = after["phase"];
  const std::size_t lb = before["level"], la = after["level"];
  const std::size_t levels = before["levels"];
  if (call == "get") return before == after;
  if (call == "sorting-set") return from == "AwaitSortingSet" && to == "AwaitSolve";
  if (call == "solve") {
    if (from != "AwaitSolve" || la != lb) return false;
    return lb == levels ? to == "Done" : to == "AwaitSlacks";
  }
  if (call == "slacks") return from == "AwaitSlacks" && to == "AwaitSolve" && la == lb + 1;
  return false;
}

bool view_consistent(const Json& v) {
  static const std::set<std::string> phases{"AwaitSortingSet", "AwaitSolve", "AwaitSlacks",
                                            "Done"};
  if (!phases.count(v["phase"].get<std::string>())) return false;
  if (v["phase"] == "AwaitSortingSet") return v["bounds"].is_null() && v["compromises"].empty();
  if (v["bounds"].is_null()) return false;
  const RVector lo = vector_from_json(v["bounds"]["lower"], "lower");
  const RVector up = vector_from_json(v["bounds"]["upper"], "upper");
  const RVector l1 = vector_from_json(v["initial_bounds"]["lower"], "lower");
  const RVector u1 = vector_from_json(v["initial_bounds"]["upper"], "upper");
  if (!(leq(l1, lo) && leq(lo, up) && leq(up, u1))) return false;
  const std::size_t solved = v["compromises"].size();
  const std::size_t level = v["level"];
  if (v["phase"] == "AwaitSolve" && solved != level - 1) return false;
  if (v["phase"] == "AwaitSlacks" && solved != level) return false;
  if (v["phase"] == "Done") return solved == v["levels"].get<std::size_t>() && !v["final"].is_null();
  return true;
}

std::string pick(randgen::Rng& rng, const std::vector<std::string>& options) {
  return options[randgen::uniform(rng, 0, options.size() - 1)];
}

void state_machine_fuzz() {
  const auto t0 = Clock::now();
  Check c;
  randgen::Rng rng(1212);
  const std::string example = read_json_file(CASCADE_DATA_DIR "/two-level.json").dump();
  const std::vector<std::string> values{"\"1/2\"", "\"1/4\"", "\"3\"", "\"0\"", "\"-1\"",
                                        "\"1\"", "2", "0.5", "\"x\""};
  const std::vector<std::string> points{
      R"(["2", "11/2"])", R"(["5/2", "23/4"])", R"(["3", "6"])", R"(["1", "5"])",
      R"(["0", "0"])",    R"(["2"])",           R"("two")",      R"(["3/2", "5"])"};
  std::size_t calls = 0, ok_calls = 0, finished = 0;

  for (int seq = 0; seq < 1000; ++seq) {
    guarded(c, [&] {
      SessionService svc;
      const auto created = svc.handle("POST", "/sessions", example);
      c.expect(created.status == 201, "create failed");
      const std::string base = "/sessions/" + created.body["id"].get<std::string>();
      Json view = created.body;
      c.expect(view_consistent(view), "inconsistent view after create");
      const int length = static_cast<int>(randgen::uniform(rng, 1, 20));
      for (int k = 0; k < length; ++k) {
        std::string call, method = "POST", path, body;
        const std::string phase = view["phase"];
        // half the time, a well-formed call for the current phase
        const bool guided = randgen::uniform(rng, 0, 1) == 0 && phase != "Done";
        if (guided && phase == "AwaitSortingSet") {
          call = "sorting-set";
          path = base + "/sorting-set";
          body = pick(rng, {R"({"index": 1})", R"({"index": 2})", R"({"index": "auto"})"});
        } else if (guided && phase == "AwaitSolve") {
          call = "solve";
          path = base + "/solve";
          body = pick(rng, {"", R"({"init": ["2", "11/2"]})", R"({"init": ["5/2", "23/4"]})"});
        } else if (guided) {
          call = "slacks";
          path = base + "/slacks";
          body = pick(rng, {R"({"l": ["1/2"], "r": ["1/2"]})", R"({"l": ["1/4"], "r": ["1/4"]})"});
        } else switch (randgen::uniform(rng, 0, 9)) {
          case 0:
            call = "get";
            method = "GET";
            path = base;
            break;
          case 1:
          case 2:
            call = "sorting-set";
            path = base + "/sorting-set";
            body = pick(rng, {R"({"index": 1})", R"({"index": 2})", R"({"index": 3})",
                              R"({"index": 0})", R"({"index": "auto"})", R"({})", "{"});
            break;
          case 3:
          case 4:
          case 5:
            call = "solve";
            path = base + "/solve";
            body = randgen::uniform(rng, 0, 3) == 0
                       ? pick(rng, {"", "{}", "[", R"({"init": null})"})
                       : R"({"init": )" + pick(rng, points) + "}";
            break;
          case 6:
          case 7:
          case 8:
            call = "slacks";
            path = base + "/slacks";
            body = R"({"l": [)" + pick(rng, values) + R"(], "r": [)" + pick(rng, values) + "]" +
                   (randgen::uniform(rng, 0, 4) == 0 ? R"(, "level": 2)" : "") + "}";
            break;
          default:
            call = "noise";
            method = pick(rng, {"PUT", "POST", "GET"});
            path = pick(rng, {base + "/jump", "/sessions/999", base + "/solve/x"});
            body = "{}";
            break;
        }
        const auto r = svc.handle(method, path, body);
        ++calls;
        const auto got = svc.handle("GET", base, "");
        c.expect(got.status == 200, "session lost");
        const Json after = got.body;
        c.expect(view_consistent(after), "inconsistent view after " + call + " " + body);
        if (r.status >= 400) {
          c.expect(after == view, "failed " + call + " " + body + " changed the session");
          c.expect(r.body.contains("error"), "error body without a name");
        } else {
          ++ok_calls;
          c.expect(call != "noise", "noise call succeeded");
          c.expect(legal(call, view, after),
                   "illegal transition on " + call + ": " + view["phase"].get<std::string>() +
                       " -> " + after["phase"].get<std::string>());
        }
        view = after;
      }
      if (view["phase"] == "Done") ++finished;
    });
  }
  report(12, "1000 random call sequences keep sessions consistent", c,
         std::to_string(calls) + " calls, " + std::to_string(ok_calls) + " accepted, " +
             std::to_string(finished) + " reached Done, " + ms(t0));
}

}  // namespace

int main() {
  golden();
  lp_oracle();
  scalarization();
  beta_certificate();
  driver_invariants();
  state_machine_fuzz();
  std::cout << (g_failed == 0 ? "all criteria passed" : std::to_string(g_failed) + " failed")
            << "\n";
  return g_failed == 0 ? 0 : 1;
}

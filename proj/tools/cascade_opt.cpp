// cascade-opt: Phase-1 inspection, batch solve and the session server.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cascade/error.hpp"
#include "cascade/problem_io.hpp"
#include "cascade/report.hpp"
#include "cascade/server.hpp"
#include "cascade/service.hpp"

using namespace cascade;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

void print(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

struct SolveArgs {
  std::string file;
  std::string sorting;
  std::string slacks;
  std::string init;
  std::string report;
  std::string big_m;
  bool strict_sp = false;
  bool json = false;
};

int run_solve(const SolveArgs& a) {
  ProblemFile pf = load_problem(a.file);
  BatchConfig config = batch_config(pf.config);
  if (!a.sorting.empty()) {
    config.sorting = a.sorting == "auto" ? SortingChoice::automatic()
                                         : SortingChoice::at(std::stoul(a.sorting));
  }
  if (!a.slacks.empty()) config.slacks = slacks_from_json(read_json_file(a.slacks));
  if (!a.init.empty()) {
    config.initial_points = initial_points_from_json(read_json_file(a.init));
  }
  if (a.strict_sp) config.driver.strict_sp = true;
  if (!a.big_m.empty()) config.driver.big_m = parse_rational(a.big_m);

  const auto t0 = std::chrono::steady_clock::now();
  std::shared_ptr<const Geometry> geometry;
  try {
    geometry = analyze(pf.problem);
  } catch (Error& e) {
    e.set_step("Phase 1, compromise set");
    throw;
  }
  const double phase1 = ms_since(t0);
  const auto t1 = std::chrono::steady_clock::now();
  const FinalCompromise final = run_batch(pf.problem, config, geometry);
  const double phase2 = ms_since(t1);

  const RunReport report = make_report(*geometry, final, config.driver,
                                       {{"phase1", phase1}, {"phase2", phase2}});
  if (!a.report.empty()) {
    std::ofstream out(a.report);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + a.report);
    out << to_json(report).dump(2) << "\n";
  }
  if (a.json) {
    print(to_json(report));
  } else {
    std::cout << render_table(report);
  }
  return 0;
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested adaptive-method solver for multilevel multiobjective LP"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;

  auto* vertices = app.add_subcommand("vertices", "List the vertices of S");
  vertices->add_option("file", file, "Problem file")->required()->check(CLI::ExistingFile);
  vertices->add_flag("--json", json, "Print JSON");

  std::size_t level = 1;
  auto* efficient = app.add_subcommand("efficient", "Efficient extreme points of one level");
  efficient->add_option("file", file, "Problem file")->required()->check(CLI::ExistingFile);
  efficient->add_option("--level", level, "Level (1-based)")
      ->required()
      ->check(CLI::PositiveNumber);
  efficient->add_flag("--json", json, "Print JSON");

  auto* compromises = app.add_subcommand("compromises", "Common efficient points and sorting sets");
  compromises->add_option("file", file, "Problem file")->required()->check(CLI::ExistingFile);
  compromises->add_flag("--json", json, "Print JSON");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Run both phases without pauses");
  solve->add_option("file", sa.file, "Problem file")->required()->check(CLI::ExistingFile);
  solve->add_option("--sorting-set", sa.sorting, "Sorting set index (1-based) or auto")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            if (s == "auto") return {};
            if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos ||
                s.size() > 9 || std::stoul(s) == 0) {
              return "expected a positive integer or auto";
            }
            return {};
          },
          "INT|auto"));
  solve->add_option("--slacks", sa.slacks, "Slack file")->check(CLI::ExistingFile);
  solve->add_option("--init", sa.init, "Initial points file")->check(CLI::ExistingFile);
  solve->add_flag("--strict-sp", sa.strict_sp, "Restrict every level to the sorting set");
  solve->add_option("--report", sa.report, "Write the JSON report here");
  solve->add_option("--bigM", sa.big_m, "Slack and auxiliary box bound");
  solve->add_flag("--json", sa.json, "Print the JSON report instead of the table");

  std::optional<int> port;
  std::string host = "127.0.0.1";
  double idle_minutes = 60;
  auto* serve = app.add_subcommand("serve", "Start the HTTP session API");
  serve->add_option("--port", port, "Port (default $CASCADE_OPT_PORT or 8080)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--idle-expiry", idle_minutes, "Minutes before idle sessions expire")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*vertices) {
      const ProblemFile pf = load_problem(file);
      const auto vs = enumerate_vertices(Polytope(pf.problem.A, pf.problem.b));
      if (json) {
        print(to_json(vs));
      } else {
        std::cout << "Vertices (" << vs.size() << ")\n" << render_vertices(vs);
      }
    } else if (*efficient) {
      const ProblemFile pf = load_problem(file);
      if (level > pf.problem.level_count()) {
        throw Error(ErrorCode::InvalidProblem,
                    "no level " + std::to_string(level) + "; the problem has " +
                        std::to_string(pf.problem.level_count()));
      }
      const Polytope poly(pf.problem.A, pf.problem.b);
      const auto vs = enumerate_vertices(poly);
      const auto eff = efficient_extreme_points(pf.problem.levels[level - 1], poly, vs);
      if (json) {
        print(to_json(eff));
      } else {
        std::cout << "Level " << level << " efficient extreme points (" << eff.size()
                  << ")\n"
                  << render_vertices(eff);
      }
    } else if (*compromises) {
      const ProblemFile pf = load_problem(file);
      const auto g = analyze(pf.problem);
      if (json) {
        Json faces = Json::array();
        for (std::size_t i = 0; i < g->candidates.size(); ++i)
          faces.push_back(to_json(g->candidates[i], i + 1));
        print({{"n_hat_dex", to_json(g->compromises.n_hat_dex)}, {"sorting_sets", faces}});
      } else {
        std::cout << "Common efficient extreme points ("
                  << g->compromises.n_hat_dex.size() << ")\n"
                  << render_vertices(g->compromises.n_hat_dex) << "Sorting sets ("
                  << g->candidates.size() << ")\n"
                  << render_faces(g->candidates);
      }
    } else if (*solve) {
      return run_solve(sa);
    } else if (*serve) {
      ServiceOptions options;
      options.idle_expiry = std::chrono::milliseconds(
          static_cast<long long>(idle_minutes * 60 * 1000));
      SessionService service(options);
      HttpServer server(service);
      const int bound = server.bind(host, resolve_port(port));
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << host << ":" << bound << "\n";
      server.listen();
      g_server = nullptr;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (!e.step().empty()) std::cerr << " (at " << e.step() << ")";
    std::cerr << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

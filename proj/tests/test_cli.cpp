#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#include "doctest.h"

#include "cascade/report.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stdout and stderr together
Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + CASCADE_OPT_BIN + "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string example = CASCADE_DATA_DIR "/two-level.json";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("vertices") {
  const Run r = run("vertices " + example);
  CHECK(r.code == 0);
  CHECK(r.out.find("(6, 6)") != std::string::npos);
  CHECK(r.out.find("(3, 6)") != std::string::npos);
  CHECK(r.out.find("(1, 5)") != std::string::npos);

  const Run j = run("vertices --json " + example);
  CHECK(j.code == 0);
  const auto doc = cascade::parse_json_text(j.out);
  CHECK(doc.is_array());
}

TEST_CASE("efficient and compromises") {
  CHECK(run("efficient --level 1 " + example).code == 0);
  CHECK(run("efficient --level 2 --json " + example).code == 0);
  CHECK(run("efficient --level 3 " + example).code != 0);
  const Run c = run("compromises --json " + example);
  CHECK(c.code == 0);
  const auto doc = cascade::parse_json_text(c.out);
  CHECK(doc["sorting_sets"].size() == 2);
}

TEST_CASE("solve writes the report") {
  const auto path = std::filesystem::temp_directory_path() / "cascade-cli-report.json";
  std::filesystem::remove(path);
  const Run r = run("solve " + example + " --report " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("5/2") != std::string::npos);
  CHECK(r.out.find("23/4") != std::string::npos);
  REQUIRE(std::filesystem::exists(path));
  const auto report = cascade::report_from_json(cascade::read_json_file(path.string()));
  CHECK(report.final_x == cascade::RVector({cascade::make_rational(5, 2),
                                            cascade::make_rational(23, 4)}));
  std::filesystem::remove(path);

  const Run j = run("solve --json " + example);
  CHECK(j.code == 0);
  CHECK(cascade::parse_json_text(j.out)["final"]["x"] == cascade::Json::array({"5/2", "23/4"}));
}

TEST_CASE("exit codes") {
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("solve").code == 2);
  CHECK(run("solve " + example + " --sorting-set zero").code == 2);
  CHECK(run("solve /no/such/file.json").code == 2);

  Run r = run("solve " + example + " --sorting-set 3");
  CHECK(r.code == 1);
  CHECK(r.out.find("InvalidSortingIndex") != std::string::npos);

  r = run(std::string("solve ") + CASCADE_TEST_DIR "/data/empty-compromise.json");
  CHECK(r.code == 1);
  CHECK(r.out.find("EmptyCompromiseSet") != std::string::npos);

  r = run(std::string("vertices ") + CASCADE_TEST_DIR "/data/float.json");
  CHECK(r.code == 1);
  CHECK(r.out.find("ParseError") != std::string::npos);
}

}

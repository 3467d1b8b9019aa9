#pragma once

// JSON problem files. Every number is a JSON integer or a "p/q" string;
// floating-point literals are rejected.
//
//   {"levels": [{"num_vars": 1, "objectives": [["2", "2"], ...]}, ...],
//    "constraints": {"A": [[...], ...], "b": [...]},
//    "config": {"bigM": "1000000", "sorting_choice": 2 | "auto",
//               "initial_points": [[...] | null, ...],
//               "slacks": [{"l": [...], "r": [...]}, ...],
//               "strict_sp": false}}

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cascade/driver.hpp"

namespace cascade {

using Json = nlohmann::json;

struct ProblemConfig {
  std::optional<Rational> big_m;
  std::optional<SortingChoice> sorting;
  std::vector<std::optional<RVector>> initial_points;
  std::vector<DmSlacks> slacks;
  std::optional<bool> strict_sp;

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

struct ProblemFile {
  MlProblem problem;
  ProblemConfig config;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Text to JSON; syntax errors become ParseError with line and column.
Json parse_json_text(std::string_view text);
Json read_json_file(const std::string& path);

/// `field` names the value in error messages.
Rational rational_from_json(const Json& value, const std::string& field);
RVector vector_from_json(const Json& value, const std::string& field);
RMatrix matrix_from_json(const Json& value, const std::string& field);
/// "auto" or a positive integer.
SortingChoice sorting_choice_from_json(const Json& value,
                                       const std::string& field);

Json to_json(const Rational& value);
Json to_json(const RVector& value);
Json to_json(const RMatrix& value);
Json to_json(const SortingChoice& choice);

/// Throws ParseError (field path) or DimensionMismatch.
ProblemFile problem_from_json(const Json& doc);
Json problem_to_json(const ProblemFile& file);
ProblemFile load_problem(const std::string& path);

/// Slack list: either {"slacks": [...]} or a bare array of {"l", "r"}.
std::vector<DmSlacks> slacks_from_json(const Json& doc);
/// Initial points: either {"initial_points": [...]} or a bare array.
std::vector<std::optional<RVector>> initial_points_from_json(const Json& doc);

/// Batch settings from the file's config block.
BatchConfig batch_config(const ProblemConfig& config);

}  // namespace cascade

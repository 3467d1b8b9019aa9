#include "cascade/rational.hpp"

#include <cctype>

#include "cascade/error.hpp"

namespace cascade {

namespace {

constexpr std::string_view kNames[] = {
    "ParseError",
    "DimensionMismatch",
    "EmptyInput",
    "InvalidProblem",
    "InvalidSupport",
    "InfeasibleInitialPoint",
    "InfeasibleRegion",
    "IterationLimit",
    "AuxiliaryInfeasible",
    "AuxiliaryUnboundedAfterRetries",
    "EmptyPolytope",
    "UnboundedPolytope",
    "EmptyCompromiseSet",
    "EmptySortingSet",
    "AssumptionViolated",
    "InvalidSortingIndex",
    "PhaseError",
    "DmBoundsViolation",
    "NonPositiveSlack",
};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

std::string_view error_name(ErrorCode code) {
  return kNames[static_cast<std::size_t>(code)];
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code),
      message_(message) {}

Error Error::at_step(std::string step) const {
  Error copy = *this;
  copy.step_ = std::move(step);
  return copy;
}

DmBoundsViolation::DmBoundsViolation(std::size_t variable, Side side,
                                     std::string proposed, std::string limit,
                                     std::string excess)
    : Error(ErrorCode::DmBoundsViolation,
            "x" + std::to_string(variable + 1) +
                (side == Side::Lower ? " lower bound " : " upper bound ") +
                proposed + (side == Side::Lower ? " < " : " > ") + limit +
                " (by " + excess + ")"),
      variable_(variable),
      side_(side),
      proposed_(std::move(proposed)),
      limit_(std::move(limit)),
      excess_(std::move(excess)) {}

Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw Error(ErrorCode::ParseError,
                "not a rational literal: \"" + std::string(text) + "\"");
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  if (!all_digits(num)) fail();
  if (slash != std::string_view::npos) {
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(den)) fail();
    if (den.find_first_not_of('0') == std::string_view::npos) {
      throw Error(ErrorCode::ParseError,
                  "zero denominator in \"" + std::string(text) + "\"");
    }
  }
  std::string canonical(text);
  if (canonical.front() == '+') canonical.erase(0, 1);
  Rational value(canonical, 10);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

}  // namespace cascade

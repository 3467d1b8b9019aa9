#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace cascade {

enum class ErrorCode {
  ParseError,
  DimensionMismatch,
  EmptyInput,
  InvalidProblem,
  InvalidSupport,
  InfeasibleInitialPoint,
  InfeasibleRegion,
  IterationLimit,
  AuxiliaryInfeasible,
  AuxiliaryUnboundedAfterRetries,
  EmptyPolytope,
  UnboundedPolytope,
  EmptyCompromiseSet,
  EmptySortingSet,
  AssumptionViolated,
  InvalidSortingIndex,
  PhaseError,
  DmBoundsViolation,
  NonPositiveSlack,
};

std::string_view error_name(ErrorCode code);

/// Domain error. `what()` is "<Name>: <message>"; `step()` names the
/// algorithm step that raised it when the caller annotated one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& step() const noexcept { return step_; }

  /// Copy of this error tagged with the originating step.
  Error at_step(std::string step) const;
  void set_step(std::string step) { step_ = std::move(step); }

 private:
  ErrorCode code_;
  std::string message_;
  std::string step_;
};

/// A DM bound choice breaking l1 <= x_c - l and x_c + r <= u1.
class DmBoundsViolation : public Error {
 public:
  enum class Side { Lower, Upper };

  DmBoundsViolation(std::size_t variable, Side side, std::string proposed,
                    std::string limit, std::string excess);

  /// 0-based global variable index.
  std::size_t variable() const noexcept { return variable_; }
  Side side() const noexcept { return side_; }
  const std::string& proposed() const noexcept { return proposed_; }
  const std::string& limit() const noexcept { return limit_; }
  const std::string& excess() const noexcept { return excess_; }

 private:
  std::size_t variable_;
  Side side_;
  std::string proposed_;
  std::string limit_;
  std::string excess_;
};

}  // namespace cascade

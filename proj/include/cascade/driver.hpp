#pragma once

// Phase 1 (compromise geometry, sorting-set choice) and Phase 2 (per-level
// bounded solves with DM slack bounds) of the multilevel procedure, exposed
// as a session state machine:
//
//   AwaitSortingSet -> AwaitSolve -> (AwaitSlacks -> AwaitSolve)* -> Done
//
// Every mutating call either succeeds or throws and leaves the session
// exactly as it was.

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cascade/geometry.hpp"
#include "cascade/molp.hpp"

namespace cascade {

struct MlProblem {
  std::vector<LevelObjectives> levels;
  /// n_p: level p owns the contiguous block of n_p variables after those of
  /// levels 1..p-1.
  std::vector<std::size_t> num_vars;
  RMatrix A;
  RVector b;

  std::size_t level_count() const noexcept { return levels.size(); }
  std::size_t n() const noexcept { return A.cols(); }
  std::size_t m() const noexcept { return A.rows(); }
  /// First variable owned by `level` (1-based level, 0-based index).
  std::size_t first_var(std::size_t level) const;

  /// Throws InvalidProblem / DimensionMismatch.
  void validate() const;

  friend bool operator==(const MlProblem&, const MlProblem&) = default;
};

struct DmSlacks {
  std::size_t level = 1;
  RVector lower;  // the l_pj, one per owned variable, all > 0
  RVector upper;  // the r_pj

  friend bool operator==(const DmSlacks&, const DmSlacks&) = default;
};

enum class Phase { AwaitSortingSet, AwaitSolve, AwaitSlacks, Done };

std::string_view phase_name(Phase phase);

struct DriverConfig {
  Rational big_m = Rational(1000000);
  /// Also impose the sorting set's tight rows as equalities.
  bool strict_sp = false;
};

/// Phase-1 artifacts for one problem.
struct Geometry {
  Polytope poly;
  std::vector<Vertex> vertices;
  CompromiseSet compromises;
  std::vector<Face> candidates;  // sorting-set candidates, in order
};

std::shared_ptr<const Geometry> analyze(const MlProblem& problem);

/// Componentwise min/max over the sorting set's extreme points.
/// Throws EmptySortingSet.
std::pair<RVector, RVector> initial_bounds(const std::vector<Vertex>& spdex);

/// 1-based candidate index, or Auto (first candidate).
struct SortingChoice {
  std::optional<std::size_t> index;

  static SortingChoice automatic() { return {}; }
  static SortingChoice at(std::size_t one_based) { return {one_based}; }

  friend bool operator==(const SortingChoice&, const SortingChoice&) = default;
};

struct LevelRecord {
  std::size_t level = 0;
  RVector lower;
  RVector upper;
  MolpTrace molp;
  RVector compromise;
  std::vector<RVector> objective_values;  // F_q(x_c) for every level q

  friend bool operator==(const LevelRecord&, const LevelRecord&) = default;
};

struct SlackRecord {
  std::size_t level = 0;
  RVector l;
  RVector r;
  RVector lower;  // box after the update
  RVector upper;

  friend bool operator==(const SlackRecord&, const SlackRecord&) = default;
};

struct SessionTrace {
  std::size_t sorting_index = 0;  // 1-based, 0 before the choice
  std::vector<Vertex> spdex;
  std::size_t card_spdex = 0;
  RVector initial_lower;
  RVector initial_upper;
  std::vector<LevelRecord> levels;
  std::vector<SlackRecord> slacks;

  friend bool operator==(const SessionTrace&, const SessionTrace&) = default;
};

struct FinalCompromise {
  RVector x;
  std::vector<RVector> objective_values;
  SessionTrace trace;
};

class Session {
 public:
  /// Session in AwaitSortingSet. Runs Phase 1 unless `geometry` is given.
  Session(MlProblem problem, DriverConfig config,
          std::shared_ptr<const Geometry> geometry = nullptr);

  Phase phase() const noexcept { return state_.phase; }
  /// Level to solve next (or just solved, in AwaitSlacks).
  std::size_t current_level() const noexcept { return state_.level; }
  const RVector& lower() const noexcept { return state_.lower; }
  const RVector& upper() const noexcept { return state_.upper; }
  const std::vector<RVector>& compromises() const noexcept {
    return state_.compromises;
  }
  const SessionTrace& trace() const noexcept { return state_.trace; }
  const Face* sorting_set() const noexcept;

  const MlProblem& problem() const noexcept { return problem_; }
  const DriverConfig& config() const noexcept { return config_; }
  const Geometry& geometry() const noexcept { return *geometry_; }

  /// AwaitSortingSet -> AwaitSolve. Checks |N^dex| >= 2, SP != {} and
  /// SP^dex != N^dex (AssumptionViolated), then sets l(1), u(1) and p = 1.
  void choose_sorting_set(SortingChoice choice);

  /// AwaitSolve -> AwaitSlacks (p < P) or Done. Without x0 the previous
  /// compromise is reused when it fits the current box, else phase 1.
  const RVector& solve_current_level(const std::optional<RVector>& x0 = {});

  /// AwaitSlacks -> AwaitSolve for level p + 1.
  void apply_dm_slacks(const DmSlacks& slacks);

  /// Only in Done.
  FinalCompromise final_compromise() const;

  /// Feasible region the given level is solved over, for the given box.
  Region level_region(const RVector& lower, const RVector& upper) const;

 private:
  struct State {
    Phase phase = Phase::AwaitSortingSet;
    std::size_t level = 1;
    std::optional<std::size_t> face;  // index into candidates
    RVector lower;
    RVector upper;
    std::vector<RVector> compromises;
    SessionTrace trace;
  };

  void require_phase(Phase expected, std::string_view operation) const;

  MlProblem problem_;
  DriverConfig config_;
  std::shared_ptr<const Geometry> geometry_;
  State state_;
};

/// Session already past the sorting-set choice.
Session start_session(MlProblem problem,
                      std::shared_ptr<const Geometry> geometry,
                      SortingChoice choice, DriverConfig config = {});

struct BatchConfig {
  DriverConfig driver;
  SortingChoice sorting;
  /// Per-level starting points; missing or empty entries use the default.
  std::vector<std::optional<RVector>> initial_points;
  /// Slacks for levels 1..P-1, in order.
  std::vector<DmSlacks> slacks;
};

/// Phase 1 and Phase 2 without pauses. Errors carry the failing step.
/// Phase 1 is skipped when `geometry` is given.
FinalCompromise run_batch(const MlProblem& problem, const BatchConfig& config,
                          std::shared_ptr<const Geometry> geometry = nullptr);

}  // namespace cascade

#pragma once

// Phase-1 geometry over S = {x : Ax <= b, x >= 0}: vertices, per-level
// efficient extreme points, faces F(Q) contained in every level's efficient
// set, and the inclusion-maximal ones (sorting-set candidates).

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "cascade/matrix.hpp"
#include "cascade/molp.hpp"

namespace cascade {

/// Bounded polyhedron {x : G x <= h} with a box [lo, hi] known to contain
/// it. The box only sizes auxiliary LPs; it is not part of the region.
struct Region {
  RMatrix G;
  RVector h;
  RVector lo;
  RVector hi;

  bool contains(const RVector& x) const;
  /// Adds l <= x <= u as rows and tightens the box.
  Region with_box(const RVector& lower, const RVector& upper) const;
  /// Adds rows as equalities (both directions).
  Region with_equalities(const RMatrix& rows, const RVector& rhs) const;
};

/// Rows 0..m-1 are A x <= b, rows m..m+n-1 are -x_j <= 0.
class Polytope {
 public:
  /// Throws DimensionMismatch on shape errors. Does not check emptiness or
  /// boundedness; enumerate_vertices does.
  Polytope(RMatrix A, RVector b);

  const RMatrix& A_tilde() const noexcept { return a_tilde_; }
  const RVector& b_tilde() const noexcept { return b_tilde_; }
  std::size_t constraint_rows() const noexcept { return m_; }
  std::size_t dim() const noexcept { return n_; }
  std::size_t row_count() const noexcept { return m_ + n_; }

  /// Indexes of rows tight at x (A_i x = b_i).
  std::vector<std::size_t> tight_rows(const RVector& x) const;
  bool contains(const RVector& x) const;

  /// True iff the recession cone {d >= 0 : A d <= 0} is {0}.
  bool is_bounded() const;

  /// Region view with the coordinate box [0, hi].
  Region region(const RVector& hi) const;

 private:
  RMatrix a_tilde_;
  RVector b_tilde_;
  std::size_t m_;
  std::size_t n_;
};

struct Vertex {
  RVector coords;
  std::vector<std::size_t> tight;  // sorted, 0-based rows of A_tilde

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Face {
  std::vector<std::size_t> Q;     // every row tight on the whole face
  std::vector<Vertex> vertices;   // sorted by descending coordinates
  std::size_t dim = 0;
  std::set<std::size_t> efficient_for;  // 1-based levels
  RVector barycenter;
};

struct CompromiseSet {
  std::vector<Vertex> n_hat_dex;
  std::vector<Face> maximal_faces;
  std::vector<std::vector<Vertex>> per_level_dex;
};

/// All vertices, sorted ascending by coordinates, each with its full tight
/// set. Throws EmptyPolytope or UnboundedPolytope.
std::vector<Vertex> enumerate_vertices(const Polytope& poly);

struct EfficiencyResult {
  bool efficient = false;
  /// Optimal value of max 1'w (zero iff efficient).
  Rational gap;
  /// A feasible point dominating x when not efficient.
  std::optional<RVector> dominating;
};

/// Decides whether some y in `region` has c y >= c x with c y != c x using
///   max 1'w  s.t.  c y - w = c x,  y in region,  w >= 0.
EfficiencyResult efficiency_test(const RVector& x, const LevelObjectives& level,
                                 const Region& region);

/// Coordinate upper bounds of S taken from its vertices.
RVector coordinate_upper(const std::vector<Vertex>& vertices);

std::vector<Vertex> efficient_extreme_points(const LevelObjectives& level,
                                             const Polytope& poly,
                                             const std::vector<Vertex>& vertices);

/// Exact intersection of the per-level sets, in the order of the first.
std::vector<Vertex> common_efficient_extremes(
    const std::vector<std::vector<Vertex>>& per_level);

/// Faces F(Q) contained in every level's efficient set, keeping only those
/// whose Q contains no other retained Q. Throws EmptyCompromiseSet.
CompromiseSet compromise_faces(const Polytope& poly,
                               const std::vector<Vertex>& vertices,
                               const std::vector<LevelObjectives>& levels,
                               std::vector<std::vector<Vertex>> per_level);

/// Maximal faces ordered by descending dim, then descending by their
/// (descending) vertex lists.
std::vector<Face> sorting_sets(const CompromiseSet& cs);

}  // namespace cascade

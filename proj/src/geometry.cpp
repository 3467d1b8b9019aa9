#include "cascade/geometry.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cascade/error.hpp"
#include "cascade/lp.hpp"

namespace cascade {

namespace {

bool is_subset(const std::vector<std::size_t>& small,
               const std::vector<std::size_t>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool contains_point(const std::vector<Vertex>& set, const RVector& x) {
  return std::any_of(set.begin(), set.end(),
                     [&](const Vertex& v) { return v.coords == x; });
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool Region::contains(const RVector& x) const {
  if (x.size() != G.cols()) return false;
  const RVector gx = G * x;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (gx[i] > h[i]) return false;
  }
  return true;
}

Region Region::with_box(const RVector& lower, const RVector& upper) const {
  const std::size_t n = G.cols();
  if (lower.size() != n || upper.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "box dimension mismatch");
  }
  Region out;
  out.G = RMatrix(G.rows() + 2 * n, n);
  out.h = RVector(G.rows() + 2 * n);
  for (std::size_t i = 0; i < G.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) out.G(i, j) = G(i, j);
    out.h[i] = h[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    out.G(G.rows() + j, j) = 1;
    out.h[G.rows() + j] = upper[j];
    out.G(G.rows() + n + j, j) = -1;
    out.h[G.rows() + n + j] = -lower[j];
  }
  out.lo = RVector(n);
  out.hi = RVector(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.lo[j] = std::max(lo[j], lower[j]);
    out.hi[j] = std::min(hi[j], upper[j]);
  }
  return out;
}

Region Region::with_equalities(const RMatrix& rows, const RVector& rhs) const {
  const std::size_t n = G.cols();
  const std::size_t base = G.rows();
  Region out = *this;
  out.G = RMatrix(base + 2 * rows.rows(), n);
  out.h = RVector(base + 2 * rows.rows());
  for (std::size_t i = 0; i < base; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.G(i, j) = G(i, j);
    out.h[i] = h[i];
  }
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.G(base + 2 * i, j) = rows(i, j);
      out.G(base + 2 * i + 1, j) = -rows(i, j);
    }
    out.h[base + 2 * i] = rhs[i];
    out.h[base + 2 * i + 1] = -rhs[i];
  }
  return out;
}

Polytope::Polytope(RMatrix A, RVector b) : m_(A.rows()), n_(A.cols()) {
  if (b.size() != m_) {
    throw Error(ErrorCode::DimensionMismatch,
                "b has " + std::to_string(b.size()) + " entries, A has " +
                    std::to_string(m_) + " rows");
  }
  a_tilde_ = RMatrix(m_ + n_, n_);
  b_tilde_ = RVector(m_ + n_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) a_tilde_(i, j) = A(i, j);
    b_tilde_[i] = b[i];
  }
  for (std::size_t j = 0; j < n_; ++j) a_tilde_(m_ + j, j) = -1;
}

std::vector<std::size_t> Polytope::tight_rows(const RVector& x) const {
  const RVector ax = a_tilde_ * x;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    if (ax[i] == b_tilde_[i]) out.push_back(i);
  }
  return out;
}

bool Polytope::contains(const RVector& x) const {
  const RVector ax = a_tilde_ * x;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    if (ax[i] > b_tilde_[i]) return false;
  }
  return true;
}

bool Polytope::is_bounded() const {
  // max 1'd  s.t.  A d + s = 0,  0 <= d <= 1,  0 <= s <= sum_j max(-A_ij, 0)
  BoundedLp lp;
  lp.B = RMatrix(m_, n_ + m_);
  lp.b = RVector(m_);
  lp.c = RVector(n_ + m_);
  lp.lower = RVector(n_ + m_);
  lp.upper = RVector(n_ + m_);
  std::vector<std::size_t> basis(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    Rational cap = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      lp.B(i, j) = a_tilde_(i, j);
      if (sgn(a_tilde_(i, j)) < 0) cap -= a_tilde_(i, j);
    }
    lp.B(i, n_ + i) = 1;
    lp.upper[n_ + i] = cap;
    basis[i] = n_ + i;
  }
  for (std::size_t j = 0; j < n_; ++j) {
    lp.c[j] = 1;
    lp.upper[j] = 1;
  }
  const LpOutcome out =
      solve_bounded_lp(lp, SupportPlan{RVector(n_ + m_), basis});
  return sgn(*out.objective) == 0;
}

Region Polytope::region(const RVector& hi) const {
  return Region{a_tilde_, b_tilde_, RVector(n_), hi};
}

std::vector<Vertex> enumerate_vertices(const Polytope& poly) {
  const std::size_t n = poly.dim();
  std::map<RVector, std::vector<std::size_t>> found;
  for_each_subset(poly.row_count(), n, [&](const std::vector<std::size_t>& rows) {
    RVector rhs(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rhs[i] = poly.b_tilde()[rows[i]];
    auto x = solve_linear_system(poly.A_tilde().select_rows(rows), rhs);
    if (x && !found.contains(*x) && poly.contains(*x)) {
      found.emplace(*x, poly.tight_rows(*x));
    }
  });
  if (found.empty()) {
    throw Error(ErrorCode::EmptyPolytope, "S = {Ax <= b, x >= 0} is empty");
  }
  if (!poly.is_bounded()) {
    throw Error(ErrorCode::UnboundedPolytope,
                "S has a nonzero recession direction");
  }
  std::vector<Vertex> out;
  out.reserve(found.size());
  for (auto& [coords, tight] : found) out.push_back({coords, tight});
  return out;
}

EfficiencyResult efficiency_test(const RVector& x, const LevelObjectives& level,
                                 const Region& region) {
  const std::size_t n = region.G.cols();
  const std::size_t rows = region.G.rows();
  const std::size_t k = level.count();
  if (x.size() != n || level.c.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "efficiency_test: point/objective dimension mismatch");
  }
  if (!region.contains(x)) {
    throw Error(ErrorCode::InfeasibleInitialPoint,
                "efficiency_test: " + to_string(x) + " is not feasible");
  }

  // Variables (y, s, w): G y + s = h, C y - w = C x.
  const std::size_t off_s = n;
  const std::size_t off_w = n + rows;
  const std::size_t total = n + rows + k;
  const RVector cx = level.c * x;

  BoundedLp lp;
  lp.B = RMatrix(rows + k, total);
  lp.b = RVector(rows + k);
  lp.c = RVector(total);
  lp.lower = RVector(total);
  lp.upper = RVector(total);
  SupportPlan start{RVector(total), std::vector<std::size_t>(rows + k)};

  for (std::size_t j = 0; j < n; ++j) {
    lp.lower[j] = region.lo[j];
    lp.upper[j] = region.hi[j];
    start.x[j] = x[j];
  }
  const RVector gx = region.G * x;
  for (std::size_t i = 0; i < rows; ++i) {
    Rational low = 0;
    for (std::size_t j = 0; j < n; ++j) {
      lp.B(i, j) = region.G(i, j);
      const Rational a = region.G(i, j) * region.lo[j];
      const Rational b = region.G(i, j) * region.hi[j];
      low += a < b ? a : b;
    }
    lp.B(i, off_s + i) = 1;
    lp.b[i] = region.h[i];
    lp.upper[off_s + i] = std::max(Rational(region.h[i] - low), Rational(0));
    start.x[off_s + i] = region.h[i] - gx[i];
    start.basis[i] = off_s + i;
  }
  for (std::size_t q = 0; q < k; ++q) {
    Rational high = 0;
    for (std::size_t j = 0; j < n; ++j) {
      lp.B(rows + q, j) = level.c(q, j);
      const Rational a = level.c(q, j) * region.lo[j];
      const Rational b = level.c(q, j) * region.hi[j];
      high += a < b ? b : a;
    }
    lp.B(rows + q, off_w + q) = -1;
    lp.b[rows + q] = cx[q];
    lp.c[off_w + q] = 1;
    lp.upper[off_w + q] = std::max(Rational(high - cx[q]), Rational(0));
    start.basis[rows + q] = off_w + q;
  }

  const LpOutcome out = solve_bounded_lp(lp, start);
  EfficiencyResult result;
  result.gap = *out.objective;
  result.efficient = sgn(result.gap) == 0;
  if (!result.efficient) result.dominating = out.x->slice(0, n);
  return result;
}

RVector coordinate_upper(const std::vector<Vertex>& vertices) {
  if (vertices.empty()) {
    throw Error(ErrorCode::EmptyInput, "no vertices");
  }
  RVector hi = vertices.front().coords;
  for (const auto& v : vertices)
    for (std::size_t j = 0; j < hi.size(); ++j)
      if (v.coords[j] > hi[j]) hi[j] = v.coords[j];
  return hi;
}

std::vector<Vertex> efficient_extreme_points(
    const LevelObjectives& level, const Polytope& poly,
    const std::vector<Vertex>& vertices) {
  const Region region = poly.region(coordinate_upper(vertices));
  std::vector<Vertex> out;
  for (const auto& v : vertices) {
    if (efficiency_test(v.coords, level, region).efficient) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> common_efficient_extremes(
    const std::vector<std::vector<Vertex>>& per_level) {
  if (per_level.empty()) {
    throw Error(ErrorCode::EmptyInput, "no levels to intersect");
  }
  std::vector<Vertex> out;
  for (const auto& v : per_level.front()) {
    const bool everywhere =
        std::all_of(per_level.begin() + 1, per_level.end(),
                    [&](const auto& set) { return contains_point(set, v.coords); });
    if (everywhere) out.push_back(v);
  }
  return out;
}

CompromiseSet compromise_faces(const Polytope& poly,
                               const std::vector<Vertex>& vertices,
                               const std::vector<LevelObjectives>& levels,
                               std::vector<std::vector<Vertex>> per_level) {
  CompromiseSet cs;
  cs.n_hat_dex = common_efficient_extremes(per_level);
  cs.per_level_dex = std::move(per_level);
  if (cs.n_hat_dex.empty()) {
    throw Error(ErrorCode::EmptyCompromiseSet,
                "no extreme point is efficient for every level");
  }
  const Region region = poly.region(coordinate_upper(vertices));

  // Intersection closure of the efficient vertices' tight sets.
  std::set<std::vector<std::size_t>> candidates;
  std::vector<std::vector<std::size_t>> work;
  for (const auto& v : cs.n_hat_dex) {
    if (candidates.insert(v.tight).second) work.push_back(v.tight);
  }
  while (!work.empty()) {
    const auto q = std::move(work.back());
    work.pop_back();
    for (const auto& v : cs.n_hat_dex) {
      auto meet = intersect(q, v.tight);
      if (candidates.insert(meet).second) work.push_back(std::move(meet));
    }
  }

  std::map<std::vector<std::size_t>, Face> efficient;
  for (const auto& q : candidates) {
    Face face;
    for (const auto& v : vertices) {
      if (is_subset(q, v.tight)) face.vertices.push_back(v);
    }
    if (face.vertices.empty()) continue;
    const bool all_common = std::all_of(
        face.vertices.begin(), face.vertices.end(),
        [&](const Vertex& v) { return contains_point(cs.n_hat_dex, v.coords); });
    if (!all_common) continue;

    face.Q = face.vertices.front().tight;
    for (const auto& v : face.vertices) face.Q = intersect(face.Q, v.tight);
    if (efficient.contains(face.Q)) continue;

    std::sort(face.vertices.begin(), face.vertices.end(),
              [](const Vertex& a, const Vertex& b) { return b.coords < a.coords; });
    std::vector<RVector> points;
    for (const auto& v : face.vertices) points.push_back(v.coords);
    face.dim = affine_dimension(points);
    face.barycenter = RVector(poly.dim());
    for (const auto& p : points) face.barycenter = face.barycenter + p;
    face.barycenter =
        Rational(1 / Rational(points.size())) * face.barycenter;

    for (const auto& level : levels) {
      if (efficiency_test(face.barycenter, level, region).efficient) {
        face.efficient_for.insert(level.level);
      }
    }
    if (face.efficient_for.size() == levels.size()) {
      efficient.emplace(face.Q, std::move(face));
    }
  }

  for (const auto& [q, face] : efficient) {
    const bool contains_other =
        std::any_of(efficient.begin(), efficient.end(), [&](const auto& other) {
          return other.first != q && is_subset(other.first, q);
        });
    if (!contains_other) cs.maximal_faces.push_back(face);
  }
  if (cs.maximal_faces.empty()) {
    throw Error(ErrorCode::EmptyCompromiseSet, "no face lies in every N_p");
  }
  return cs;
}

std::vector<Face> sorting_sets(const CompromiseSet& cs) {
  std::vector<Face> out = cs.maximal_faces;
  auto key = [](const Face& f) {
    std::vector<RVector> pts;
    for (const auto& v : f.vertices) pts.push_back(v.coords);
    std::sort(pts.begin(), pts.end(),
              [](const RVector& a, const RVector& b) { return b < a; });
    return pts;
  };
  std::stable_sort(out.begin(), out.end(), [&](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return key(b) < key(a);
  });
  return out;
}

}  // namespace cascade

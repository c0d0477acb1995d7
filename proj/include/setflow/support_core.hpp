#pragma once

#include <optional>
#include <vector>

#include "setflow/polygon.hpp"

namespace setflow {

/// sigma_P(d_i) = max over vertices v of <d_i, v>.
template <typename Scalar>
SupportSample<Scalar> support_of_polygon(const ConvexPolygon<Scalar>& P, const DirectionGrid<Scalar>& grid) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> V(static_cast<Eigen::Index>(P.size()), 2);
  for (std::size_t k = 0; k < P.size(); ++k) V.row(static_cast<Eigen::Index>(k)) = P[k].transpose();
  Vector<Scalar> values = (V * grid.directions()).colwise().maxCoeff().transpose();
  return SupportSample<Scalar>(grid, std::move(values));
}

/// s_{i-1} + s_{i+1} - 2 cos(spacing) s_i for every i (cyclic). Nonnegative
/// everywhere exactly when s is the sample of a convex body's support.
template <typename Scalar>
Vector<Scalar> three_term_residuals(const Vector<Scalar>& s, const DirectionGrid<Scalar>& grid) {
  const Eigen::Index n = grid.size();
  if (s.size() != n) throw LengthMismatch("sample length does not match grid size");
  Vector<Scalar> r(n);
  const Scalar c2 = Scalar(2) * grid.cos_spacing();
  for (Eigen::Index i = 0; i < n; ++i) r(i) = s(grid.wrap(i - 1)) + s(grid.wrap(i + 1)) - c2 * s(i);
  return r;
}

template <typename Scalar>
struct ConeCheck {
  bool in_cone = true;
  std::optional<Eigen::Index> first_violation;
  /// max(0, -min residual)
  Scalar worst_violation = Scalar(0);

  explicit operator bool() const { return in_cone; }
};

template <typename Scalar>
ConeCheck<Scalar> is_in_cone(const Vector<Scalar>& s, const DirectionGrid<Scalar>& grid, Scalar tol) {
  const Vector<Scalar> r = three_term_residuals(s, grid);
  ConeCheck<Scalar> out;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r(i) < -tol && !out.first_violation) {
      out.in_cone = false;
      out.first_violation = i;
    }
    out.worst_violation = std::max(out.worst_violation, -r(i));
  }
  return out;
}

template <typename Scalar>
ConeCheck<Scalar> is_in_cone(const SupportSample<Scalar>& s, Scalar tol) {
  return is_in_cone(s.values(), s.grid(), tol);
}

template <typename Scalar>
ConeCheck<Scalar> is_in_cone(const SupportDelta<Scalar>& s, Scalar tol) {
  return is_in_cone(s.values(), s.grid(), tol);
}

namespace detail {

// Vertices of the intersection when every constraint is active: the
// intersection points of consecutive supporting lines.
template <typename Scalar>
std::vector<Point2<Scalar>> consecutive_line_vertices(const Vector<Scalar>& s, const DirectionGrid<Scalar>& grid) {
  const Eigen::Index n = grid.size();
  std::vector<Point2<Scalar>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point2<Scalar> d0 = grid.direction(i);
    const Point2<Scalar> d1 = grid.direction(i + 1);
    const Scalar s0 = s(i), s1 = s(grid.wrap(i + 1));
    const Scalar det = cross<Scalar>(d0, d1);
    pts.emplace_back((s0 * d1.y() - s1 * d0.y()) / det, (d0.x() * s1 - d1.x() * s0) / det);
  }
  return pts;
}

// Sutherland-Hodgman clipping of a bounding square by every halfplane
// <d_i, x> <= s_i. Points within slack of a line count as inside.
template <typename Scalar>
std::vector<Point2<Scalar>> clip_halfplanes(const Vector<Scalar>& s, const DirectionGrid<Scalar>& grid) {
  const Scalar scale = std::max(Scalar(1), s.cwiseAbs().maxCoeff());
  // any feasible x has |x| cos(spacing/2) <= max s
  const Scalar R = Scalar(4) * scale / std::cos(grid.spacing() / Scalar(2));
  const Scalar slack = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * scale;
  std::vector<Point2<Scalar>> poly{Point2<Scalar>(-R, -R), Point2<Scalar>(R, -R), Point2<Scalar>(R, R),
                                   Point2<Scalar>(-R, R)};
  std::vector<Point2<Scalar>> next;
  for (Eigen::Index i = 0; i < grid.size() && !poly.empty(); ++i) {
    const Point2<Scalar> d = grid.direction(i);
    next.clear();
    const std::size_t m = poly.size();
    for (std::size_t k = 0; k < m; ++k) {
      const Point2<Scalar>& p = poly[k];
      const Point2<Scalar>& q = poly[(k + 1) % m];
      const Scalar fp = d.dot(p) - s(i);
      const Scalar fq = d.dot(q) - s(i);
      const bool pin = fp <= slack, qin = fq <= slack;
      if (pin) next.push_back(p);
      if (pin != qin && (fp > 0) != (fq > 0)) next.push_back(p + (fp / (fp - fq)) * (q - p));
    }
    std::swap(poly, next);
  }
  return poly;
}

}  // namespace detail

/// Halfspace intersection of the sample's constraints. Throws EmptyIntersection.
template <typename Scalar>
ConvexPolygon<Scalar> halfspace_intersection(const Vector<Scalar>& s, const DirectionGrid<Scalar>& grid) {
  if (s.size() != grid.size()) throw LengthMismatch("sample length does not match grid size");
  const Scalar scale = std::max(Scalar(1), s.cwiseAbs().maxCoeff());
  const Scalar tol = geom_tolerance(scale);
  const Scalar exact_slack = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * scale;
  if (is_in_cone(s, grid, exact_slack)) {
    const auto pts = detail::consecutive_line_vertices(s, grid);
    return ConvexPolygon<Scalar>::hull(pts, tol);
  }
  // a negative width in some antipodal pair makes the intersection empty
  if (grid.has_antipodes()) {
    for (Eigen::Index i = 0; i < grid.size() / 2; ++i)
      if (s(i) + s(grid.antipode(i)) < -exact_slack) throw EmptyIntersection();
  }
  const auto pts = detail::clip_halfplanes(s, grid);
  if (pts.empty()) throw EmptyIntersection();
  return ConvexPolygon<Scalar>::hull(pts, tol);
}

/// Polygon whose grid support is s (inverse of support_of_polygon on the cone).
template <typename Scalar>
ConvexPolygon<Scalar> reconstruct_polygon(const SupportSample<Scalar>& s) {
  return halfspace_intersection(s.values(), s.grid());
}

/// Largest support sample pointwise below s: the support of its halfspace
/// intersection. Samples already in the cone up to rounding are returned unchanged.
template <typename Scalar>
SupportSample<Scalar> regularize(const Vector<Scalar>& s, const DirectionGrid<Scalar>& grid) {
  const Scalar exact_slack =
      Scalar(64) * std::numeric_limits<Scalar>::epsilon() * std::max(Scalar(1), s.cwiseAbs().maxCoeff());
  if (is_in_cone(s, grid, exact_slack)) return SupportSample<Scalar>(grid, s);
  const auto P = halfspace_intersection(s, grid);
  Vector<Scalar> out = support_of_polygon(P, grid).values();
  // the polygon support can exceed s by rounding; never push above the input
  out = out.cwiseMin(s);
  return SupportSample<Scalar>(grid, std::move(out));
}

template <typename Scalar>
SupportSample<Scalar> minkowski_add(const SupportSample<Scalar>& a, const SupportSample<Scalar>& b) {
  require_same_grid(a.grid(), b.grid());
  return SupportSample<Scalar>(a.grid(), a.values() + b.values());
}

template <typename Scalar>
SupportSample<Scalar> scale(const SupportSample<Scalar>& a, Scalar lambda) {
  if (lambda < Scalar(0)) throw NegativeScalar();
  return SupportSample<Scalar>(a.grid(), lambda * a.values());
}

/// max_i |a_i - b_i|; a lower bound on the Hausdorff distance of the bodies.
template <typename Scalar>
Scalar hausdorff_grid(const SupportSample<Scalar>& a, const SupportSample<Scalar>& b) {
  require_same_grid(a.grid(), b.grid());
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

/// w_i = s_i + s_{i+n/2}, the width of the body in direction i.
template <typename Scalar>
Vector<Scalar> widths(const SupportSample<Scalar>& s) {
  const auto& g = s.grid();
  Vector<Scalar> w(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) w(i) = s[i] + s[g.antipode(i)];
  return w;
}

}  // namespace setflow

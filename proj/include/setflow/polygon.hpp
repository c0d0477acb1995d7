#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "setflow/support_sample.hpp"

namespace setflow {

namespace detail {

template <typename Scalar>
Scalar cross(const Point2<Scalar>& a, const Point2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

template <typename Scalar>
Scalar max_coordinate(std::span<const Point2<Scalar>> pts) {
  Scalar m(0);
  for (const auto& p : pts) m = std::max(m, p.cwiseAbs().maxCoeff());
  return m;
}

template <typename Scalar>
Point2<Scalar> nearest_on_segment(const Point2<Scalar>& x, const Point2<Scalar>& a,
                                  const Point2<Scalar>& b) {
  const Point2<Scalar> e = b - a;
  const Scalar len2 = e.squaredNorm();
  if (len2 == Scalar(0)) return a;
  const Scalar t = std::clamp((x - a).dot(e) / len2, Scalar(0), Scalar(1));
  return a + t * e;
}

}  // namespace detail

/// Nonempty convex compact polygon stored as counterclockwise vertices.
/// Points (one vertex) and segments (two vertices) are valid polygons.
template <typename Scalar = double>
class ConvexPolygon {
 public:
  using Point = Point2<Scalar>;

  /// Convex hull of arbitrary points. Vertices closer than tol to the line
  /// through their neighbours are dropped, as are near-duplicates.
  static ConvexPolygon hull(std::span<const Point> points, Scalar tol) {
    if (points.empty()) throw InvalidPolygon("polygon needs at least one point");
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
      return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    // merge points within tol of an already kept point
    std::vector<Point> unique;
    unique.reserve(pts.size());
    for (const auto& p : pts) {
      bool dup = false;
      for (auto it = unique.rbegin(); it != unique.rend() && p.x() - it->x() <= tol; ++it) {
        if ((p - *it).norm() <= tol) {
          dup = true;
          break;
        }
      }
      if (!dup) unique.push_back(p);
    }
    pts = std::move(unique);
    if (pts.size() == 1) return ConvexPolygon(std::move(pts));
    // pop while the middle point is within tol of the chord (or on the wrong side)
    auto keep_turn = [tol](const Point& o, const Point& a, const Point& b) {
      return detail::cross<Scalar>(a - o, b - o) > tol * (b - o).norm();
    };
    std::vector<Point> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
      while (k >= 2 && !keep_turn(h[k - 2], h[k - 1], p)) --k;
      h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
      const Point& p = pts[i];
      while (k >= lower && !keep_turn(h[k - 2], h[k - 1], p)) --k;
      h[k++] = p;
    }
    h.resize(k - 1);  // last equals first
    return ConvexPolygon(std::move(h));
  }

  static ConvexPolygon hull(std::span<const Point> points) {
    return hull(points, geom_tolerance(detail::max_coordinate(points)));
  }

  /// Takes vertices that are already counterclockwise and convex; throws otherwise.
  static ConvexPolygon from_ccw(std::vector<Point> vertices) {
    if (vertices.empty()) throw InvalidPolygon("polygon needs at least one vertex");
    const Scalar tol = geom_tolerance(detail::max_coordinate<Scalar>(vertices));
    const std::size_t m = vertices.size();
    if (m >= 3) {
      for (std::size_t i = 0; i < m; ++i) {
        const Point e1 = vertices[(i + 1) % m] - vertices[i];
        const Point e2 = vertices[(i + 2) % m] - vertices[(i + 1) % m];
        if (detail::cross<Scalar>(e1, e2) < -tol * std::max(Scalar(1), e1.norm() * e2.norm()))
          throw InvalidPolygon("vertices are not convex in counterclockwise order");
      }
    }
    return ConvexPolygon(std::move(vertices));
  }

  static ConvexPolygon point(const Point& p) { return ConvexPolygon({p}); }

  /// Axis-aligned box [x0,x1] x [y0,y1]; degenerate boxes collapse to segments or points.
  static ConvexPolygon box(Scalar x0, Scalar x1, Scalar y0, Scalar y1) {
    if (x1 < x0 || y1 < y0) throw InvalidPolygon("box bounds are reversed");
    const std::vector<Point> corners{Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)};
    return hull(corners, Scalar(0));
  }

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }

  Scalar max_coordinate() const { return detail::max_coordinate<Scalar>(vertices_); }

  bool contains(const Point& x, Scalar tol) const {
    if (vertices_.size() == 1) return (x - vertices_[0]).norm() <= tol;
    if (vertices_.size() == 2)
      return (x - detail::nearest_on_segment(x, vertices_[0], vertices_[1])).norm() <= tol;
    const std::size_t m = vertices_.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Point e = vertices_[(i + 1) % m] - vertices_[i];
      if (detail::cross<Scalar>(e, x - vertices_[i]) < -tol * e.norm()) return false;
    }
    return true;
  }

  Point centroid() const {
    Point c = Point::Zero();
    for (const auto& v : vertices_) c += v;
    return c / Scalar(vertices_.size());
  }

 private:
  explicit ConvexPolygon(std::vector<Point> v) : vertices_(std::move(v)) {}
  std::vector<Point> vertices_;
};

/// Nearest point of P to x (metric projection onto a convex set).
template <typename Scalar>
Point2<Scalar> project_point(const Point2<Scalar>& x, const ConvexPolygon<Scalar>& P) {
  const auto& v = P.vertices();
  if (v.size() == 1) return v[0];
  if (v.size() >= 3 && P.contains(x, Scalar(0))) return x;
  Point2<Scalar> best = v[0];
  Scalar best_d = std::numeric_limits<Scalar>::infinity();
  const std::size_t edges = v.size() == 2 ? 1 : v.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const Point2<Scalar> q = detail::nearest_on_segment(x, v[i], v[(i + 1) % v.size()]);
    const Scalar d = (x - q).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = q;
    }
  }
  return best;
}

template <typename Scalar>
Scalar point_distance(const Point2<Scalar>& x, const ConvexPolygon<Scalar>& P) {
  return (x - project_point(x, P)).norm();
}

/// One-sided Hausdorff distance sup_{a in P} dist(a, Q). The supremum of a
/// convex function over a polytope sits at a vertex.
template <typename Scalar>
Scalar one_sided_distance(const ConvexPolygon<Scalar>& P, const ConvexPolygon<Scalar>& Q) {
  Scalar d(0);
  for (const auto& v : P.vertices()) d = std::max(d, point_distance(v, Q));
  return d;
}

template <typename Scalar>
Scalar hausdorff_exact(const ConvexPolygon<Scalar>& P, const ConvexPolygon<Scalar>& Q) {
  return std::max(one_sided_distance(P, Q), one_sided_distance(Q, P));
}

template <typename Scalar>
struct RealizingPair {
  Point2<Scalar> a;
  Point2<Scalar> b;
  Scalar distance;
};

/// Vertex a of P farthest from Q (smallest index on ties) and its projection b onto Q.
template <typename Scalar>
RealizingPair<Scalar> farthest_realizer(const ConvexPolygon<Scalar>& P, const ConvexPolygon<Scalar>& Q) {
  const Scalar tol = geom_tolerance(std::max(P.max_coordinate(), Q.max_coordinate()));
  RealizingPair<Scalar> best{P[0], project_point(P[0], Q), Scalar(-1)};
  for (const auto& v : P.vertices()) {
    const Point2<Scalar> b = project_point(v, Q);
    const Scalar d = (v - b).norm();
    if (d > best.distance) best = {v, b, d};
  }
  if (best.distance <= tol) throw Contained();
  return best;
}

}  // namespace setflow

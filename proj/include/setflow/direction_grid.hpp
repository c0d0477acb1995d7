#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <numbers>

#include "setflow/errors.hpp"

namespace setflow {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

/// N equally spaced unit directions on the circle, direction i at angle 2*pi*i/N.
///
/// Quarter turns are stored exactly, and for even N the second half of the
/// grid is the exact negation of the first, so supports of centrally
/// symmetric sets come out antipodally symmetric to the last bit.
template <typename Scalar = double>
class DirectionGrid {
 public:
  using Index = Eigen::Index;
  using Directions = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

  explicit DirectionGrid(Index n) : n_(n) {
    if (n < 3) throw Error("a direction grid needs at least 3 directions");
    auto dirs = std::make_shared<Directions>(2, n);
    const Index half = (n % 2 == 0) ? n / 2 : n;
    for (Index i = 0; i < half; ++i) {
      if ((4 * i) % n == 0) {
        switch ((4 * i) / n) {
          case 0: dirs->col(i) << Scalar(1), Scalar(0); break;
          case 1: dirs->col(i) << Scalar(0), Scalar(1); break;
          case 2: dirs->col(i) << Scalar(-1), Scalar(0); break;
          default: dirs->col(i) << Scalar(0), Scalar(-1); break;
        }
      } else {
        const Scalar a = angle(i);
        dirs->col(i) << std::cos(a), std::sin(a);
      }
    }
    for (Index i = half; i < n; ++i) dirs->col(i) = -dirs->col(i - half);
    dirs_ = std::move(dirs);
    cos_spacing_ = std::cos(spacing());
  }

  Index size() const { return n_; }
  Scalar spacing() const { return Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(n_); }
  Scalar cos_spacing() const { return cos_spacing_; }
  Scalar angle(Index i) const { return spacing() * Scalar(wrap(i)); }

  Point2<Scalar> direction(Index i) const { return dirs_->col(wrap(i)); }
  const Directions& directions() const { return *dirs_; }

  Index wrap(Index i) const {
    const Index r = i % n_;
    return r < 0 ? r + n_ : r;
  }

  bool has_antipodes() const { return n_ % 2 == 0; }

  Index antipode(Index i) const {
    if (!has_antipodes()) throw Error("odd grids are not closed under antipodal reflection");
    return wrap(i + n_ / 2);
  }

  /// Index whose direction is angularly closest to p (p need not be normalized).
  Index nearest_index(const Point2<Scalar>& p) const {
    Scalar a = std::atan2(p.y(), p.x());
    if (a < 0) a += Scalar(2) * std::numbers::pi_v<Scalar>;
    return wrap(static_cast<Index>(std::llround(a / spacing())));
  }

  /// Angle between p and the direction of grid index i, in [0, pi].
  Scalar angular_error(const Point2<Scalar>& p, Index i) const {
    const Point2<Scalar> d = direction(i);
    return std::abs(std::atan2(d.x() * p.y() - d.y() * p.x(), d.dot(p)));
  }

  friend bool operator==(const DirectionGrid& a, const DirectionGrid& b) { return a.n_ == b.n_; }

 private:
  Index n_;
  std::shared_ptr<const Directions> dirs_;
  Scalar cos_spacing_{};
};

template <typename Scalar>
void require_same_grid(const DirectionGrid<Scalar>& a, const DirectionGrid<Scalar>& b) {
  if (!(a == b)) throw GridMismatch();
}

}  // namespace setflow

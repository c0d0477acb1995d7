#pragma once

#include <algorithm>
#include <utility>

#include "setflow/direction_grid.hpp"

namespace setflow {

/// Cone tolerance 1e-9 * max(1, |s|_inf).
template <typename Derived>
typename Derived::Scalar cone_tolerance(const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  const Scalar norm = s.size() == 0 ? Scalar(0) : s.cwiseAbs().maxCoeff();
  return Scalar(1e-9) * std::max(Scalar(1), norm);
}

/// Geometric tolerance 1e-9 * max(1, magnitude).
template <typename Scalar>
Scalar geom_tolerance(Scalar magnitude) {
  return Scalar(1e-9) * std::max(Scalar(1), magnitude);
}

/// Difference of two support functions sampled on a grid. A plain vector space.
template <typename Scalar = double>
class SupportDelta {
 public:
  SupportDelta(DirectionGrid<Scalar> grid, Vector<Scalar> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw LengthMismatch("sample length does not match grid size");
  }

  static SupportDelta zero(const DirectionGrid<Scalar>& grid) {
    return SupportDelta(grid, Vector<Scalar>::Zero(grid.size()));
  }

  const DirectionGrid<Scalar>& grid() const { return grid_; }
  const Vector<Scalar>& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  Scalar operator[](Eigen::Index i) const { return values_(i); }
  Scalar norm() const { return values_.cwiseAbs().maxCoeff(); }

  friend SupportDelta operator+(const SupportDelta& a, const SupportDelta& b) {
    require_same_grid(a.grid_, b.grid_);
    return SupportDelta(a.grid_, a.values_ + b.values_);
  }
  friend SupportDelta operator-(const SupportDelta& a, const SupportDelta& b) {
    require_same_grid(a.grid_, b.grid_);
    return SupportDelta(a.grid_, a.values_ - b.values_);
  }
  friend SupportDelta operator-(const SupportDelta& a) { return SupportDelta(a.grid_, -a.values_); }
  friend SupportDelta operator*(Scalar lambda, const SupportDelta& a) {
    return SupportDelta(a.grid_, lambda * a.values_);
  }
  friend SupportDelta operator*(const SupportDelta& a, Scalar lambda) { return lambda * a; }
  friend SupportDelta operator/(const SupportDelta& a, Scalar lambda) {
    return SupportDelta(a.grid_, a.values_ / lambda);
  }

 private:
  DirectionGrid<Scalar> grid_;
  Vector<Scalar> values_;
};

/// Values of a support function on a direction grid.
///
/// The constructor only checks the length; membership in the support cone is
/// decided by is_in_cone, and intermediate integrator stages are allowed to
/// sit slightly outside it.
template <typename Scalar = double>
class SupportSample {
 public:
  SupportSample(DirectionGrid<Scalar> grid, Vector<Scalar> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw LengthMismatch("sample length does not match grid size");
  }

  /// Support function of {0}.
  static SupportSample origin(const DirectionGrid<Scalar>& grid) {
    return SupportSample(grid, Vector<Scalar>::Zero(grid.size()));
  }

  const DirectionGrid<Scalar>& grid() const { return grid_; }
  const Vector<Scalar>& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  Scalar operator[](Eigen::Index i) const { return values_(i); }
  Scalar norm() const { return values_.cwiseAbs().maxCoeff(); }

  SupportDelta<Scalar> as_delta() const { return SupportDelta<Scalar>(grid_, values_); }

  friend SupportDelta<Scalar> operator-(const SupportSample& a, const SupportSample& b) {
    require_same_grid(a.grid_, b.grid_);
    return SupportDelta<Scalar>(a.grid_, a.values_ - b.values_);
  }

 private:
  DirectionGrid<Scalar> grid_;
  Vector<Scalar> values_;
};

}  // namespace setflow

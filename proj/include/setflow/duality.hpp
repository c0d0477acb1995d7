#pragma once

#include <set>
#include <utility>
#include <vector>

#include "setflow/support_core.hpp"

namespace setflow {

/// A real number or +infinity, kept apart from IEEE infinity so the sentinel
/// never reaches arithmetic.
template <typename Scalar>
class ExtendedReal {
 public:
  static ExtendedReal infinity() { return ExtendedReal(); }
  static ExtendedReal finite(Scalar v) { return ExtendedReal(v); }

  bool is_infinite() const { return !finite_; }
  Scalar value() const {
    if (!finite_) throw Error("value() on the +infinity sentinel");
    return value_;
  }

  friend ExtendedReal min(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_infinite()) return b;
    if (b.is_infinite()) return a;
    return a.value_ <= b.value_ ? a : b;
  }

 private:
  ExtendedReal() = default;
  explicit ExtendedReal(Scalar v) : value_(v), finite_(true) {}
  Scalar value_{};
  bool finite_ = false;
};

/// Grid indices where f attains +|f|_inf (positive) or -|f|_inf (negative).
struct ExtremalSets {
  std::vector<Eigen::Index> positive;
  std::vector<Eigen::Index> negative;
};

template <typename Scalar>
Scalar default_extremal_tolerance(const SupportDelta<Scalar>& f) {
  return Scalar(1e-9) * std::max(Scalar(1), f.norm());
}

/// If |f|_inf <= tol both sets are the full grid (the f == 0 convention).
template <typename Scalar>
ExtremalSets extremal_sets(const SupportDelta<Scalar>& f, Scalar tol) {
  const Scalar norm = f.norm();
  ExtremalSets e;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (norm <= tol || f[i] >= norm - tol) e.positive.push_back(i);
    if (norm <= tol || f[i] <= -norm + tol) e.negative.push_back(i);
  }
  return e;
}

/// Semi-inner product <f, g>_- = |g| min{ min_{E+(g)} f, min_{E-(g)} -f }
/// with min over the empty set equal to +infinity.
template <typename Scalar>
Scalar semi_inner(const SupportDelta<Scalar>& f, const SupportDelta<Scalar>& g, Scalar tol) {
  require_same_grid(f.grid(), g.grid());
  const ExtremalSets e = extremal_sets(g, tol);
  auto m = ExtendedReal<Scalar>::infinity();
  for (auto i : e.positive) m = min(m, ExtendedReal<Scalar>::finite(f[i]));
  for (auto i : e.negative) m = min(m, ExtendedReal<Scalar>::finite(-f[i]));
  if (m.is_infinite()) throw std::logic_error("both extremal sets are empty");
  const Scalar norm = g.norm();
  if (norm <= tol) return Scalar(0);
  return norm * m.value();
}

template <typename Scalar>
Scalar semi_inner(const SupportDelta<Scalar>& f, const SupportDelta<Scalar>& g) {
  return semi_inner(f, g, default_extremal_tolerance(g));
}

/// Finite signed combination of Dirac measures on grid points.
template <typename Scalar = double>
class DiscreteMeasure {
 public:
  using Atom = std::pair<Eigen::Index, Scalar>;

  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    std::set<Eigen::Index> seen;
    for (const auto& [i, w] : atoms_)
      if (!seen.insert(i).second) throw Error("measure atoms must have distinct indices");
  }

  const std::vector<Atom>& atoms() const { return atoms_; }

  Scalar total_variation() const {
    Scalar tv(0);
    for (const auto& [i, w] : atoms_) tv += std::abs(w);
    return tv;
  }

  /// mu(f) = sum of weight * f(index)
  Scalar operator()(const SupportDelta<Scalar>& f) const {
    Scalar s(0);
    for (const auto& [i, w] : atoms_) s += w * f[i];
    return s;
  }

 private:
  std::vector<Atom> atoms_;
};

/// Single-atom elements of the duality map J(g): +|g| delta_i on E+(g) and
/// -|g| delta_i on E-(g).
template <typename Scalar>
std::vector<DiscreteMeasure<Scalar>> dual_representatives(const SupportDelta<Scalar>& g, Scalar tol) {
  const Scalar norm = g.norm();
  if (norm <= tol) throw ZeroFunction();
  const ExtremalSets e = extremal_sets(g, tol);
  std::vector<DiscreteMeasure<Scalar>> out;
  for (auto i : e.positive) out.emplace_back(std::vector<typename DiscreteMeasure<Scalar>::Atom>{{i, norm}});
  for (auto i : e.negative) out.emplace_back(std::vector<typename DiscreteMeasure<Scalar>::Atom>{{i, -norm}});
  return out;
}

/// Grid indices nearest to the directions (a* - b*)/|a* - b*| over all vertex
/// pairs realizing dist(A,B) = dist_H(A,B).
template <typename Scalar>
std::vector<Eigen::Index> hausdorff_realizing_directions(const ConvexPolygon<Scalar>& A,
                                                         const ConvexPolygon<Scalar>& B,
                                                         const DirectionGrid<Scalar>& grid, Scalar tol) {
  const Scalar d_ab = one_sided_distance(A, B);
  if (d_ab <= tol) throw Contained();
  if (d_ab < one_sided_distance(B, A) - tol) throw AsymmetricDistance();
  std::set<Eigen::Index> idx;
  for (const auto& a : A.vertices()) {
    const Point2<Scalar> b = project_point(a, B);
    if ((a - b).norm() >= d_ab - tol) idx.insert(grid.nearest_index(a - b));
  }
  return {idx.begin(), idx.end()};
}

}  // namespace setflow

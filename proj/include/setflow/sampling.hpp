#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

#include "setflow/polygon.hpp"

namespace setflow {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Seed from SETFLOW_SEED when set and parseable, else the fallback.
inline std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultSeed) {
  if (const char* s = std::getenv("SETFLOW_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return v;
  }
  return fallback;
}

template <typename Scalar>
Scalar uniform(Rng& rng, Scalar lo, Scalar hi) {
  return std::uniform_real_distribution<Scalar>(lo, hi)(rng);
}

/// Hull of k points drawn uniformly from the disk of the given radius.
template <typename Scalar>
ConvexPolygon<Scalar> random_polygon(Rng& rng, const Point2<Scalar>& center, Scalar radius, int k) {
  std::vector<Point2<Scalar>> pts;
  pts.reserve(static_cast<std::size_t>(k));
  while (static_cast<int>(pts.size()) < k) {
    const Point2<Scalar> p(uniform(rng, Scalar(-1), Scalar(1)), uniform(rng, Scalar(-1), Scalar(1)));
    if (p.squaredNorm() <= Scalar(1)) pts.push_back(center + radius * p);
  }
  return ConvexPolygon<Scalar>::hull(pts);
}

/// Axis-aligned rectangle with corners in [-extent, extent]^2.
template <typename Scalar>
ConvexPolygon<Scalar> random_box(Rng& rng, Scalar extent) {
  Scalar x0 = uniform(rng, -extent, extent), x1 = uniform(rng, -extent, extent);
  Scalar y0 = uniform(rng, -extent, extent), y1 = uniform(rng, -extent, extent);
  if (x1 < x0) std::swap(x0, x1);
  if (y1 < y0) std::swap(y0, y1);
  return ConvexPolygon<Scalar>::box(x0, x1, y0, y1);
}

}  // namespace setflow

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "setflow/polygon.hpp"
#include "setflow/sampling.hpp"

using namespace setflow;
using Poly = ConvexPolygon<double>;
using P2 = Point2<double>;

namespace {
const Poly kSquare = Poly::box(-1, 1, -1, 1);
}

TEST(ConvexPolygon, HullOrdersCounterclockwiseAndDropsInteriorPoints) {
  const std::vector<P2> pts{P2(1, 1), P2(-1, -1), P2(0, 0), P2(1, -1), P2(-1, 1), P2(0, 1)};
  const auto P = Poly::hull(pts);
  ASSERT_EQ(P.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    const P2 e1 = P[(i + 1) % 4] - P[i];
    const P2 e2 = P[(i + 2) % 4] - P[(i + 1) % 4];
    EXPECT_GT(e1.x() * e2.y() - e1.y() * e2.x(), 0);
  }
}

TEST(ConvexPolygon, DegenerateBoxes) {
  EXPECT_EQ(Poly::box(1, 1, 2, 2).size(), 1u);
  EXPECT_EQ(Poly::box(0, 3, 2, 2).size(), 2u);
  EXPECT_THROW(Poly::box(1, 0, 0, 1), InvalidPolygon);
  const std::vector<P2> none;
  EXPECT_THROW(Poly::hull(none), InvalidPolygon);
}

TEST(ConvexPolygon, FromCcwRejectsClockwise) {
  EXPECT_NO_THROW(Poly::from_ccw({P2(0, 0), P2(1, 0), P2(0, 1)}));
  EXPECT_THROW(Poly::from_ccw({P2(0, 0), P2(0, 1), P2(1, 0)}), InvalidPolygon);
}

TEST(ProjectPoint, Examples) {
  EXPECT_EQ(project_point(P2(0.3, -0.2), kSquare), P2(0.3, -0.2));
  EXPECT_TRUE(project_point(P2(3, 2), kSquare).isApprox(P2(1, 1)));
  EXPECT_TRUE(project_point(P2(0, 5), kSquare).isApprox(P2(0, 1)));
  EXPECT_EQ(project_point(P2(4, 4), Poly::point(P2(1, 2))), P2(1, 2));
  EXPECT_TRUE(project_point(P2(0.5, 3), Poly::box(0, 2, 0, 0)).isApprox(P2(0.5, 0)));
}

TEST(ProjectPoint, SatisfiesVariationalInequality) {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto P = random_polygon(rng, P2(0, 0), 2.0, 3 + trial % 6);
    const P2 x(uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0));
    const P2 a_star = project_point(x, P);
    for (const auto& a : P.vertices()) EXPECT_LE((x - a_star).dot(a - a_star), 1e-9);
    EXPECT_NEAR((x - a_star).norm(), oracle::distance_to(x, P), 1e-12);
  }
}

TEST(ProjectPoint, IsOneLipschitz) {
  Rng rng(103);
  for (int trial = 0; trial < 500; ++trial) {
    const auto P = random_polygon(rng, P2(0, 0), 2.0, 3 + trial % 5);
    const P2 x(uniform(rng, -4.0, 4.0), uniform(rng, -4.0, 4.0));
    const P2 y(uniform(rng, -4.0, 4.0), uniform(rng, -4.0, 4.0));
    EXPECT_LE((project_point(x, P) - project_point(y, P)).norm(), (x - y).norm() + 1e-9);
  }
}

TEST(HausdorffExact, Examples) {
  EXPECT_EQ(hausdorff_exact(kSquare, kSquare), 0.0);
  // values frozen from the dense boundary-sampling oracle (and cross-checked in DenseOracleAgrees)
  EXPECT_NEAR(hausdorff_exact(Poly::box(2, 3, 1, 2), kSquare), std::sqrt(13.0), 1e-14);
  EXPECT_NEAR(hausdorff_exact(Poly::box(0, 3.5, -1.5, 2.5), kSquare), std::sqrt(8.5), 1e-14);
  EXPECT_NEAR(hausdorff_exact(Poly::box(-1.5, 3.5, -0.5, 0), kSquare), 2.5, 1e-14);
}

TEST(HausdorffExact, DenseOracleAgrees) {
  for (const auto& A : {Poly::box(2, 3, 1, 2), Poly::box(0, 3.5, -1.5, 2.5), Poly::box(-1.5, 3.5, -0.5, 0)})
    EXPECT_NEAR(hausdorff_exact(A, kSquare), oracle::hausdorff_dense(A, kSquare, 4000), 1e-3);
  Rng rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    const auto P = random_polygon(rng, P2(uniform(rng, -2.0, 2.0), 0.0), 2.0, 5);
    const auto Q = random_polygon(rng, P2(0.0, uniform(rng, -2.0, 2.0)), 1.5, 6);
    const double exact = hausdorff_exact(P, Q);
    const double dense = oracle::hausdorff_dense(P, Q, 500);
    EXPECT_LE(dense, exact + 1e-12);
    EXPECT_NEAR(dense, exact, 1e-2);
  }
}

TEST(FarthestRealizer, Examples) {
  const auto r = farthest_realizer(Poly::box(2, 3, 1, 2), kSquare);
  EXPECT_TRUE(r.a.isApprox(P2(3, 2)));
  EXPECT_TRUE(r.b.isApprox(P2(1, 1)));
  EXPECT_NEAR(r.distance, std::sqrt(5.0), 1e-14);

  const auto pts = farthest_realizer(Poly::point(P2(2, 0)), Poly::point(P2(0, 0)));
  EXPECT_EQ(pts.a, P2(2, 0));
  EXPECT_EQ(pts.b, P2(0, 0));

  EXPECT_THROW(farthest_realizer(Poly::box(-0.5, 0.5, -0.5, 0.5), kSquare), Contained);
}

TEST(FarthestRealizer, DistanceMatchesOneSidedAndBruteForce) {
  Rng rng(109);
  for (int trial = 0; trial < 100; ++trial) {
    const auto P = random_polygon(rng, P2(uniform(rng, -3.0, 3.0), 0.0), 2.0, 6);
    const auto Q = random_polygon(rng, P2(0.0, 0.0), 1.0, 6);
    double brute = 0;
    for (const auto& x : oracle::boundary_points(P, 100)) brute = std::max(brute, oracle::distance_to(x, Q));
    if (brute < 1e-6) continue;
    const auto r = farthest_realizer(P, Q);
    EXPECT_NEAR(r.distance, one_sided_distance(P, Q), 1e-12);
    EXPECT_NEAR(r.distance, brute, 1e-9);
    EXPECT_NEAR((r.a - r.b).norm(), oracle::distance_to(r.a, Q), 1e-12);
  }
}

TEST(FarthestRealizer, TieGoesToSmallestVertexIndex) {
  // all four corners of the big square are equally far from the small one
  const auto big = Poly::box(-2, 2, -2, 2);
  const auto r = farthest_realizer(big, Poly::point(P2(0, 0)));
  EXPECT_EQ(r.a, big[0]);
}

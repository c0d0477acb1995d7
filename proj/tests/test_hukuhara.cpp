#include <gtest/gtest.h>

#include <cmath>

#include "setflow/dynamics.hpp"
#include "setflow/hukuhara.hpp"

using namespace setflow;
using Grid = DirectionGrid<double>;
using Poly = ConvexPolygon<double>;
using Sample = SupportSample<double>;
using P2 = Point2<double>;

namespace {

const Poly kSquare = Poly::box(-1, 1, -1, 1);

SetCurve<double> closed_form_curve(const Poly& A0, const Grid& g, double T, double h) {
  std::vector<double> t;
  std::vector<Sample> s;
  const auto steps = static_cast<int>(std::lround(T / h));
  for (int k = 0; k <= steps; ++k) {
    t.push_back(k * h);
    s.push_back(closed_form_example(A0, kSquare, k * h, g));
  }
  return SetCurve<double>(t, s);
}

SetCurve<double> random_box_curve(Rng& rng, const Grid& g, int m) {
  std::vector<double> t;
  std::vector<Sample> s;
  double time = uniform(rng, -1.0, 1.0);
  for (int k = 0; k < m; ++k) {
    t.push_back(time);
    time += uniform(rng, 0.01, 0.3);
    s.push_back(support_of_polygon(random_box(rng, 3.0), g));
  }
  return SetCurve<double>(t, s);
}

}  // namespace

TEST(HukuharaDifference, Examples) {
  const Grid g(64);
  const auto d = hukuhara_difference(support_of_polygon(Poly::box(0, 3, 0, 3), g),
                                     support_of_polygon(Poly::box(0, 1, 0, 1), g));
  ASSERT_TRUE(d.has_value());
  EXPECT_LE((d->values() - support_of_polygon(Poly::box(0, 2, 0, 2), g).values()).cwiseAbs().maxCoeff(), 1e-14);

  const auto A = support_of_polygon(Poly::box(2, 3, 1, 2), g);
  const auto self = hukuhara_difference(A, A);
  ASSERT_TRUE(self.has_value());
  EXPECT_EQ(self->values().cwiseAbs().maxCoeff(), 0.0);

  EXPECT_FALSE(hukuhara_difference(support_of_polygon(kSquare, g),
                                   support_of_polygon(Poly::box(-1.5, 3.5, -0.5, 0), g)));
}

TEST(HukuharaDifference, RectangleIntervalCriterionAndRoundTrip) {
  Rng rng(301);
  const Grid g(64);
  for (int trial = 0; trial < 300; ++trial) {
    const auto A = random_box(rng, 4.0);
    const auto B = random_box(rng, 2.0);
    const P2 wa = A[2] - A[0], wb = B[2] - B[0];
    const bool predicted = wa.x() >= wb.x() && wa.y() >= wb.y();
    const auto sa = support_of_polygon(A, g), sb = support_of_polygon(B, g);
    const auto c = hukuhara_difference(sa, sb);
    EXPECT_EQ(c.has_value(), predicted) << "trial " << trial;
    if (c) {
      const double ulp8 = 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, sa.norm());
      EXPECT_LE((minkowski_add(sb, *c).values() - sa.values()).cwiseAbs().maxCoeff(), ulp8);
    }
  }
}

TEST(DifferenceQuotients, AffineCurveIsExact) {
  const Grid g(32);
  const auto a0 = support_of_polygon(Poly::box(2, 3, 1, 2), g);
  const auto q = support_of_polygon(kSquare, g);
  std::vector<double> t{0.0, 0.25, 0.5, 1.0};
  std::vector<Sample> s;
  for (double ti : t) s.push_back(minkowski_add(a0, scale(q, ti)));
  const SetCurve<double> c(t, s);
  for (std::size_t k : {1u, 2u}) {
    const auto dq = difference_quotients(c, k);
    EXPECT_LE((dq.forward.values() - q.values()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LE((dq.backward.values() - q.values()).cwiseAbs().maxCoeff(), 1e-13);
  }
  EXPECT_THROW(difference_quotients(c, 0), BoundaryIndex);
  EXPECT_THROW(difference_quotients(c, 3), BoundaryIndex);
}

TEST(DifferenceQuotients, ClosedFormCurveApproximatesDerivative) {
  const Grid g(64);
  const auto A0 = Poly::box(0, 3.5, -1.5, 2.5);
  const double h = 1e-3;
  const auto c = closed_form_curve(A0, g, 1.0, h);
  const auto sq = support_of_polygon(kSquare, g);
  const auto sa = support_of_polygon(A0, g);
  for (std::size_t k = 1; k + 1 < c.size(); k += 97) {
    const auto dq = difference_quotients(c, k);
    const Vector<double> exact = std::exp(-c.times()[k]) * (sq.values() - sa.values());
    EXPECT_LE((dq.forward.values() - exact).cwiseAbs().maxCoeff(), 5 * h);
    EXPECT_LE((dq.backward.values() - exact).cwiseAbs().maxCoeff(), 5 * h);
    EXPECT_TRUE(quotients_agree(c, k, 10.0));
  }
}

TEST(DifferenceQuotients, ConstantCurveGivesZero) {
  const Grid g(16);
  const auto s = support_of_polygon(kSquare, g);
  const SetCurve<double> c({0.0, 1.0, 2.0}, {s, s, s});
  EXPECT_EQ(difference_quotients(c, 1).forward.norm(), 0.0);
  EXPECT_EQ(classify_step(c, 1), HukuharaClass::Both);
  EXPECT_EQ(classify_step(time_reverse(c), 1), HukuharaClass::Both);
}

TEST(ClassifyStep, ExampleCurves) {
  const Grid g(64);
  const struct {
    Poly A0;
    HukuharaClass expected;
  } cases[] = {{Poly::box(2, 3, 1, 2), HukuharaClass::FirstType},
               {Poly::box(0, 3.5, -1.5, 2.5), HukuharaClass::SecondType},
               {Poly::box(-1.5, 3.5, -0.5, 0), HukuharaClass::Neither}};
  for (const auto& cs : cases) {
    const auto c = closed_form_curve(cs.A0, g, 4.0, 0.01);
    const auto cls = classify_curve(c);
    EXPECT_EQ(cls.aggregate, cs.expected);
    EXPECT_TRUE(cls.mismatched_steps().empty());
    EXPECT_EQ(cls.steps.front(), HukuharaClass::Unclassified);
    EXPECT_EQ(cls.steps.back(), HukuharaClass::Unclassified);
  }
}

TEST(TimeReverse, InvolutionAndSwap) {
  Rng rng(307);
  const Grid g(32);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_box_curve(rng, g, 6);
    const auto r = time_reverse(c);
    const auto rr = time_reverse(r);
    EXPECT_EQ(rr.times(), c.times());
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(rr.samples()[k].values(), c.samples()[k].values());
    const std::size_t m = c.size() - 1;
    for (std::size_t k = 1; k < m; ++k) {
      EXPECT_EQ(classify_step(r, m - k), mirrored(classify_step(c, k)));
      const auto qc = difference_quotients(c, k);
      const auto qr = difference_quotients(r, m - k);
      EXPECT_EQ(qr.forward.values(), (-qc.backward).values());
    }
  }
}

TEST(SetCurve, Validation) {
  const Grid g(16);
  const auto s = support_of_polygon(kSquare, g);
  EXPECT_THROW(SetCurve<double>({0.0}, {s}), InvalidCurve);
  EXPECT_THROW(SetCurve<double>({0.0, 0.0}, {s, s}), InvalidCurve);
  EXPECT_THROW(SetCurve<double>({0.0, 1.0}, {s}), InvalidCurve);
  Vector<double> bad = s.values();
  bad(3) += 1.0;
  EXPECT_THROW(SetCurve<double>({0.0, 1.0}, {s, Sample(g, bad)}), InvalidCurve);
}

TEST(Widths, MonotoneAlongClassifiedCurves) {
  const Grid g(64);
  const auto grow = closed_form_curve(Poly::box(2, 3, 1, 2), g, 4.0, 0.05);
  const auto shrink = closed_form_curve(Poly::box(0, 3.5, -1.5, 2.5), g, 4.0, 0.05);
  for (std::size_t k = 1; k < grow.size(); ++k) {
    EXPECT_TRUE((widths(grow.samples()[k]).array() >= widths(grow.samples()[k - 1]).array() - 1e-12).all());
    EXPECT_TRUE((widths(shrink.samples()[k]).array() <= widths(shrink.samples()[k - 1]).array() + 1e-12).all());
  }
}

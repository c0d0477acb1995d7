#pragma once

#include <algorithm>
#include <optional>
#include <string_view>
#include <vector>

#include "setflow/support_core.hpp"

namespace setflow {

/// Sampled curve t -> sigma_{A(t)} on a single grid.
template <typename Scalar = double>
class SetCurve {
 public:
  SetCurve(std::vector<Scalar> times, std::vector<SupportSample<Scalar>> samples)
      : times_(std::move(times)), samples_(std::move(samples)) {
    if (times_.size() != samples_.size()) throw InvalidCurve("times and samples differ in length");
    if (times_.size() < 2) throw InvalidCurve("a curve needs at least two samples");
    for (std::size_t k = 1; k < times_.size(); ++k) {
      if (!(times_[k] > times_[k - 1])) throw InvalidCurve("times must be strictly increasing");
      require_same_grid(samples_[0].grid(), samples_[k].grid());
    }
    for (const auto& s : samples_)
      if (!is_in_cone(s, cone_tolerance(s.values()))) throw InvalidCurve("curve sample is not a support function");
  }

  const std::vector<Scalar>& times() const { return times_; }
  const std::vector<SupportSample<Scalar>>& samples() const { return samples_; }
  const DirectionGrid<Scalar>& grid() const { return samples_.front().grid(); }
  std::size_t size() const { return times_.size(); }

 private:
  std::vector<Scalar> times_;
  std::vector<SupportSample<Scalar>> samples_;
};

enum class HukuharaClass { FirstType, SecondType, Both, Neither, Unclassified };

inline std::string_view to_string(HukuharaClass c) {
  switch (c) {
    case HukuharaClass::FirstType: return "FirstType";
    case HukuharaClass::SecondType: return "SecondType";
    case HukuharaClass::Both: return "Both";
    case HukuharaClass::Neither: return "Neither";
    case HukuharaClass::Unclassified: return "Unclassified";
  }
  return "?";
}

/// Mirror under time reversal: FirstType <-> SecondType.
inline HukuharaClass mirrored(HukuharaClass c) {
  if (c == HukuharaClass::FirstType) return HukuharaClass::SecondType;
  if (c == HukuharaClass::SecondType) return HukuharaClass::FirstType;
  return c;
}

/// C with B + C = A, if it exists. The only candidate is sigma_A - sigma_B.
template <typename Scalar>
std::optional<SupportSample<Scalar>> hukuhara_difference(const SupportSample<Scalar>& a,
                                                         const SupportSample<Scalar>& b, Scalar tol) {
  require_same_grid(a.grid(), b.grid());
  Vector<Scalar> c = a.values() - b.values();
  if (!is_in_cone(c, a.grid(), tol)) return std::nullopt;
  return SupportSample<Scalar>(a.grid(), std::move(c));
}

template <typename Scalar>
std::optional<SupportSample<Scalar>> hukuhara_difference(const SupportSample<Scalar>& a,
                                                         const SupportSample<Scalar>& b) {
  return hukuhara_difference(a, b, cone_tolerance(Vector<Scalar>(a.values() - b.values())));
}

template <typename Scalar>
struct DifferenceQuotients {
  SupportDelta<Scalar> forward;
  SupportDelta<Scalar> backward;
};

template <typename Scalar>
DifferenceQuotients<Scalar> difference_quotients(const SetCurve<Scalar>& c, std::size_t k) {
  if (k == 0 || k + 1 >= c.size()) throw BoundaryIndex();
  const auto& t = c.times();
  const auto& s = c.samples();
  return {(s[k + 1] - s[k]) / (t[k + 1] - t[k]), (s[k] - s[k - 1]) / (t[k] - t[k - 1])};
}

/// FirstType if both quotients are support functions, SecondType if both
/// negated quotients are, Both if all four hold.
template <typename Scalar>
HukuharaClass classify_step(const SetCurve<Scalar>& c, std::size_t k, Scalar tol) {
  const auto q = difference_quotients(c, k);
  const bool first = is_in_cone(q.forward, tol) && is_in_cone(q.backward, tol);
  const bool second = is_in_cone(-q.forward, tol) && is_in_cone(-q.backward, tol);
  if (first && second) return HukuharaClass::Both;
  if (first) return HukuharaClass::FirstType;
  if (second) return HukuharaClass::SecondType;
  return HukuharaClass::Neither;
}

/// Default tolerance: cone tolerance of the larger quotient.
template <typename Scalar>
HukuharaClass classify_step(const SetCurve<Scalar>& c, std::size_t k) {
  const auto q = difference_quotients(c, k);
  const Scalar tol = std::max(cone_tolerance(q.forward.values()), cone_tolerance(q.backward.values()));
  return classify_step(c, k, tol);
}

template <typename Scalar>
struct CurveClassification {
  /// One entry per sample; the two endpoints are Unclassified.
  std::vector<HukuharaClass> steps;
  /// Largest |forward - backward|_inf over interior steps.
  Scalar max_quotient_mismatch = Scalar(0);
  /// Aggregate over interior steps: FirstType when every step admits first
  /// type, SecondType likewise, Both when both do.
  HukuharaClass aggregate = HukuharaClass::Unclassified;

  /// Indices of the interior steps whose class differs from the aggregate.
  std::vector<std::size_t> mismatched_steps() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k + 1 < steps.size(); ++k)
      if (steps[k] != aggregate) out.push_back(k);
    return out;
  }
};

template <typename Scalar>
CurveClassification<Scalar> classify_curve(const SetCurve<Scalar>& c) {
  CurveClassification<Scalar> out;
  out.steps.assign(c.size(), HukuharaClass::Unclassified);
  bool all_first = true, all_second = true;
  for (std::size_t k = 1; k + 1 < c.size(); ++k) {
    const auto q = difference_quotients(c, k);
    out.max_quotient_mismatch = std::max(out.max_quotient_mismatch, (q.forward - q.backward).norm());
    const auto cls = classify_step(c, k);
    out.steps[k] = cls;
    all_first = all_first && (cls == HukuharaClass::FirstType || cls == HukuharaClass::Both);
    all_second = all_second && (cls == HukuharaClass::SecondType || cls == HukuharaClass::Both);
  }
  if (c.size() > 2) {
    out.aggregate = all_first && all_second ? HukuharaClass::Both
                    : all_first             ? HukuharaClass::FirstType
                    : all_second            ? HukuharaClass::SecondType
                                            : HukuharaClass::Neither;
  }
  return out;
}

/// Sampled-curve stand-in for the one-sided limits agreeing: the forward and
/// backward quotients differ by at most constant * max step.
template <typename Scalar>
bool quotients_agree(const SetCurve<Scalar>& c, std::size_t k, Scalar constant) {
  const auto q = difference_quotients(c, k);
  const auto& t = c.times();
  const Scalar h = std::max(t[k + 1] - t[k], t[k] - t[k - 1]);
  return (q.forward - q.backward).norm() <= constant * h;
}

/// B(s) = A(-s): times negated and reversed, samples reversed.
template <typename Scalar>
SetCurve<Scalar> time_reverse(const SetCurve<Scalar>& c) {
  std::vector<Scalar> t(c.times().rbegin(), c.times().rend());
  for (auto& x : t) x = -x;
  std::vector<SupportSample<Scalar>> s(c.samples().rbegin(), c.samples().rend());
  return SetCurve<Scalar>(std::move(t), std::move(s));
}

}  // namespace setflow

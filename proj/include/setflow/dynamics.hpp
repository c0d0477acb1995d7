#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "setflow/duality.hpp"
#include "setflow/hukuhara.hpp"
#include "setflow/sampling.hpp"

namespace setflow {

/// Right-hand side f(t, sigma) of d/dt sigma = f(t, sigma). Evaluation must be
/// reentrant.
template <typename Scalar = double>
class RhsField {
 public:
  using Fn = std::function<SupportDelta<Scalar>(Scalar, const SupportSample<Scalar>&)>;

  RhsField(std::string name, Fn fn, std::optional<Scalar> lipschitz = std::nullopt)
      : name_(std::move(name)), fn_(std::move(fn)), lipschitz_(lipschitz) {}

  SupportDelta<Scalar> operator()(Scalar t, const SupportSample<Scalar>& s) const {
    SupportDelta<Scalar> v = fn_(t, s);
    require_same_grid(v.grid(), s.grid());
    return v;
  }

  const std::string& name() const { return name_; }
  std::optional<Scalar> declared_lipschitz() const { return lipschitz_; }

 private:
  std::string name_;
  Fn fn_;
  std::optional<Scalar> lipschitz_;
};

/// f(t, sigma) = rate * (sigma_target - sigma). With rate 1 this is the
/// relaxation field whose solutions are e^{-t} A0 + (1 - e^{-t}) Q.
template <typename Scalar>
RhsField<Scalar> relax_to(SupportSample<Scalar> target, Scalar rate = Scalar(1)) {
  return RhsField<Scalar>(
      "relax_to",
      [target = std::move(target), rate](Scalar, const SupportSample<Scalar>& s) {
        return rate * (target - s);
      },
      std::abs(rate));
}

template <typename Scalar>
RhsField<Scalar> constant_field(SupportDelta<Scalar> v) {
  return RhsField<Scalar>(
      "constant", [v = std::move(v)](Scalar, const SupportSample<Scalar>&) { return v; }, Scalar(0));
}

/// f(t, sigma) = factor * sigma (growth by dilation when factor > 0).
template <typename Scalar>
RhsField<Scalar> scaling_field(Scalar factor) {
  return RhsField<Scalar>(
      "scale", [factor](Scalar, const SupportSample<Scalar>& s) { return factor * s.as_delta(); },
      std::abs(factor));
}

enum class GrowthClass { U0, U1, Unchecked };

/// omega(t, s). The class is a declaration only.
template <typename Scalar = double>
struct GrowthFunction {
  std::function<Scalar(Scalar, Scalar)> fn;
  GrowthClass declared = GrowthClass::Unchecked;

  Scalar operator()(Scalar t, Scalar s) const { return fn(t, s); }

  static GrowthFunction linear(Scalar L) {
    return {[L](Scalar, Scalar s) { return L * s; }, GrowthClass::U1};
  }
  static GrowthFunction zero() {
    return {[](Scalar, Scalar) { return Scalar(0); }, GrowthClass::U1};
  }
};

// ---------------------------------------------------------------------------
// subtangent condition

template <typename Scalar>
struct SubtangentResult {
  bool feasible = false;
  Scalar lambda_min = Scalar(0);
  std::optional<Scalar> lambda_max;  ///< empty means unbounded above
  std::optional<Eigen::Index> blocking_index;

  bool contains(Scalar lambda) const {
    return feasible && lambda >= lambda_min && (!lambda_max || lambda <= *lambda_max);
  }
};

/// Set of lambda >= 0 with v + lambda * sigma in the discrete cone. Each
/// direction gives a_i + lambda b_i >= -tol with a, b the three-term residuals
/// of v and sigma.
template <typename Scalar>
SubtangentResult<Scalar> subtangent_feasible(const SupportDelta<Scalar>& v, const SupportSample<Scalar>& sigma,
                                             Scalar tol) {
  require_same_grid(v.grid(), sigma.grid());
  const Vector<Scalar> a = three_term_residuals(v.values(), v.grid());
  const Vector<Scalar> b = three_term_residuals(sigma.values(), sigma.grid());
  // residuals of sigma below this are flat directions
  const Scalar flat = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * std::max(Scalar(1), sigma.norm());
  SubtangentResult<Scalar> out;
  out.feasible = true;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Scalar rhs = -tol - a(i);  // need lambda * b_i >= rhs
    if (std::abs(b(i)) <= flat) {
      if (rhs > 0) {
        out.feasible = false;
        out.blocking_index = i;
        return out;
      }
    } else if (b(i) > 0) {
      out.lambda_min = std::max(out.lambda_min, rhs / b(i));
    } else {
      const Scalar ub = rhs / b(i);
      out.lambda_max = out.lambda_max ? std::min(*out.lambda_max, ub) : ub;
    }
    if (out.lambda_max && *out.lambda_max < out.lambda_min) {
      out.feasible = false;
      out.blocking_index = i;
      return out;
    }
  }
  return out;
}

template <typename Scalar>
SubtangentResult<Scalar> subtangent_feasible(const SupportDelta<Scalar>& v, const SupportSample<Scalar>& sigma) {
  return subtangent_feasible(v, sigma, Scalar(1e-9) * std::max({Scalar(1), v.norm(), sigma.norm()}));
}

// ---------------------------------------------------------------------------
// existence horizon

struct SamplingBudget {
  int time_samples = 17;
  int state_samples = 256;
  std::uint64_t seed = kDefaultSeed;
};

template <typename Scalar>
struct HorizonEstimate {
  Scalar c = Scalar(0);  ///< empirical bound on |f|_inf over the sampled set
  Scalar b = Scalar(0);  ///< min{T, r/c}
  bool degenerate = false;  ///< c == 0, in which case b = T
  std::size_t states_used = 0;
};

/// Deterministic sample of cone points within sup-norm distance r of sigma0:
/// translates by r along grid directions, shrinks and grows of sigma0, sigma0
/// plus supports of random polygons inside the r-disk, and regularized random
/// perturbations that stay in the ball.
template <typename Scalar>
std::vector<SupportSample<Scalar>> sample_ball_slice(const SupportSample<Scalar>& sigma0, Scalar r,
                                                     const SamplingBudget& budget) {
  const auto& g = sigma0.grid();
  const Scalar ball_tol = geom_tolerance(r);
  std::vector<SupportSample<Scalar>> out{sigma0};
  auto within = [&](const SupportSample<Scalar>& s) { return (s.values() - sigma0.values()).cwiseAbs().maxCoeff() <= r + ball_tol; };
  const int translates = 8;
  for (int k = 0; k < translates; ++k) {
    const Point2<Scalar> d = g.direction(g.size() * k / translates);
    out.push_back(minkowski_add(sigma0, support_of_polygon(ConvexPolygon<Scalar>::point(r * d), g)));
  }
  const Scalar norm = sigma0.norm();
  if (norm > 0) {
    const Scalar eps = r / norm;
    out.push_back(scale(sigma0, Scalar(1) + eps));
    if (eps <= Scalar(1)) out.push_back(scale(sigma0, Scalar(1) - eps));
  }
  Rng rng(budget.seed);
  const long max_attempts = 8L * std::max(1, budget.state_samples);
  for (long attempt = 0; static_cast<int>(out.size()) < budget.state_samples && attempt < max_attempts; ++attempt) {
    if (attempt % 2 == 0) {
      const auto C = random_polygon(rng, Point2<Scalar>::Zero().eval(), r, 3 + static_cast<int>(rng() % 6));
      out.push_back(minkowski_add(sigma0, support_of_polygon(C, g)));
    } else {
      Vector<Scalar> v = sigma0.values();
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) += uniform(rng, -r, r);
      try {
        auto s = regularize(v, g);
        if (within(s)) out.push_back(std::move(s));
      } catch (const EmptyIntersection&) {
      }
    }
  }
  return out;
}

template <typename Scalar>
HorizonEstimate<Scalar> existence_horizon(const RhsField<Scalar>& f, const SupportSample<Scalar>& sigma0, Scalar r,
                                          Scalar T, const SamplingBudget& budget = {}) {
  if (!(r > 0) || !(T > 0)) throw Error("existence_horizon needs r > 0 and T > 0");
  const auto states = sample_ball_slice(sigma0, r, budget);
  HorizonEstimate<Scalar> est;
  est.states_used = states.size();
  const int nt = std::max(1, budget.time_samples);
  for (int k = 0; k < nt; ++k) {
    const Scalar t = nt == 1 ? Scalar(0) : T * Scalar(k) / Scalar(nt - 1);
    for (const auto& s : states) est.c = std::max(est.c, f(t, s).norm());
  }
  est.degenerate = est.c == Scalar(0);
  est.b = est.degenerate ? T : std::min(T, r / est.c);
  return est;
}

// ---------------------------------------------------------------------------
// one-sided Lipschitz check

template <typename Scalar>
struct OslCase {
  int condition = 1;  ///< 1: dist(A,B) = dist_H, 2: dist(B,A) = dist_H
  Point2<Scalar> a;
  Point2<Scalar> b;
  Eigen::Index direction_index = 0;  ///< grid index of p (condition 1) or -p (condition 2)
  Scalar snap_error = Scalar(0);     ///< angle between the exact direction and the grid direction
  Scalar lhs = Scalar(0);
  Scalar rhs = Scalar(0);
  bool holds = false;

  Scalar gap() const { return lhs - rhs; }
};

template <typename Scalar>
struct OslReport {
  bool satisfied = false;
  Scalar hausdorff = Scalar(0);
  std::vector<OslCase<Scalar>> cases;

  /// First applicable case; the witness when violated.
  const OslCase<Scalar>& witness() const { return cases.front(); }
};

/// Evaluates the realizing-pair conditions at one time for one pair of sets.
/// Satisfied when at least one applicable condition holds.
template <typename Scalar>
OslReport<Scalar> osl_check(const RhsField<Scalar>& f, const ConvexPolygon<Scalar>& A, const ConvexPolygon<Scalar>& B,
                            Scalar t, const GrowthFunction<Scalar>& omega, const DirectionGrid<Scalar>& grid,
                            Scalar tol) {
  OslReport<Scalar> rep;
  const Scalar d_ab = one_sided_distance(A, B);
  const Scalar d_ba = one_sided_distance(B, A);
  rep.hausdorff = std::max(d_ab, d_ba);
  if (rep.hausdorff <= tol) throw Degenerate();
  const auto sa = support_of_polygon(A, grid);
  const auto sb = support_of_polygon(B, grid);
  const auto fa = f(t, sa);
  const auto fb = f(t, sb);
  const Scalar bound = omega(t, rep.hausdorff);

  if (d_ab >= rep.hausdorff - tol) {
    const auto pr = farthest_realizer(A, B);
    OslCase<Scalar> c;
    c.condition = 1;
    c.a = pr.a;
    c.b = pr.b;
    const Point2<Scalar> p = pr.a - pr.b;
    c.direction_index = grid.nearest_index(p);
    c.snap_error = grid.angular_error(p, c.direction_index);
    c.lhs = fa[c.direction_index] - fb[c.direction_index];
    c.rhs = bound;
    c.holds = c.lhs <= c.rhs + tol;
    rep.cases.push_back(c);
  }
  if (d_ba >= rep.hausdorff - tol) {
    const auto pr = farthest_realizer(B, A);
    OslCase<Scalar> c;
    c.condition = 2;
    c.a = pr.b;
    c.b = pr.a;
    const Point2<Scalar> minus_p = pr.a - pr.b;  // b - a
    c.direction_index = grid.nearest_index(minus_p);
    c.snap_error = grid.angular_error(minus_p, c.direction_index);
    c.lhs = fb[c.direction_index] - fa[c.direction_index];
    c.rhs = bound;
    c.holds = c.lhs <= c.rhs + tol;
    rep.cases.push_back(c);
  }
  rep.satisfied = std::any_of(rep.cases.begin(), rep.cases.end(), [](const auto& c) { return c.holds; });
  return rep;
}

template <typename Scalar>
OslReport<Scalar> osl_check(const RhsField<Scalar>& f, const ConvexPolygon<Scalar>& A, const ConvexPolygon<Scalar>& B,
                            Scalar t, const GrowthFunction<Scalar>& omega, const DirectionGrid<Scalar>& grid) {
  return osl_check(f, A, B, t, omega, grid, geom_tolerance(std::max(A.max_coordinate(), B.max_coordinate())));
}

// ---------------------------------------------------------------------------
// Lipschitz estimate

struct LipschitzBudget {
  int pairs = 200;
  double T = 1.0;
  double extent = 4.0;  ///< sets are drawn around centres in [-extent, extent]^2
  std::uint64_t seed = kDefaultSeed;
};

/// max |f(t,s) - f(t,s')|_inf / |s - s'|_inf over random pairs of polygon
/// supports, including antipodal translates. A lower bound on any Lipschitz
/// constant.
template <typename Scalar>
Scalar lipschitz_estimate(const RhsField<Scalar>& f, const DirectionGrid<Scalar>& grid,
                          const LipschitzBudget& budget = {}) {
  Rng rng(budget.seed);
  const Scalar ext(budget.extent);
  Scalar L(0);
  auto ratio = [&](Scalar t, const SupportSample<Scalar>& s, const SupportSample<Scalar>& s2) {
    const Scalar den = (s.values() - s2.values()).cwiseAbs().maxCoeff();
    if (den <= Scalar(0)) return;
    L = std::max(L, (f(t, s) - f(t, s2)).norm() / den);
  };
  for (int k = 0; k < std::max(1, budget.pairs); ++k) {
    const Scalar t = uniform(rng, Scalar(0), Scalar(budget.T));
    const Point2<Scalar> c1(uniform(rng, -ext, ext), uniform(rng, -ext, ext));
    const Point2<Scalar> c2(uniform(rng, -ext, ext), uniform(rng, -ext, ext));
    const auto P = random_polygon(rng, c1, uniform(rng, Scalar(0.1), ext), 3 + static_cast<int>(rng() % 6));
    const auto Q = random_polygon(rng, c2, uniform(rng, Scalar(0.1), ext), 3 + static_cast<int>(rng() % 6));
    const auto sp = support_of_polygon(P, grid);
    ratio(t, sp, support_of_polygon(Q, grid));
    // antipodal translates of P
    const Point2<Scalar> shift = uniform(rng, Scalar(0.1), ext) * grid.direction(static_cast<Eigen::Index>(rng() % grid.size()));
    const auto up = minkowski_add(sp, support_of_polygon(ConvexPolygon<Scalar>::point(shift), grid));
    const auto down = minkowski_add(sp, support_of_polygon(ConvexPolygon<Scalar>::point(Point2<Scalar>(-shift)), grid));
    ratio(t, up, down);
  }
  return L;
}

// ---------------------------------------------------------------------------
// time stepping

enum class Method { Euler, RK4 };
enum class RegularizationPolicy { Never, OnViolation, Always };

struct IntegrateOptions {
  double T = 1.0;
  double h = 0.01;
  Method method = Method::RK4;
  RegularizationPolicy policy = RegularizationPolicy::OnViolation;
  /// OnViolation regularizes when the worst residual exceeds this multiple of the cone tolerance.
  double threshold_factor = 10.0;
};

enum class IntegrationStatus { Completed, EmptyIntersection, NonFiniteValue };

template <typename Scalar = double>
struct Trajectory {
  std::vector<Scalar> times;
  std::vector<SupportSample<Scalar>> states;
  std::vector<Scalar> residuals;  ///< worst cone violation before regularization
  std::vector<bool> regularized;
  std::vector<Scalar> steps;  ///< step that led to each state (0 for the initial one)
  IntegrationStatus status = IntegrationStatus::Completed;
  std::string diagnostic;

  bool ok() const { return status == IntegrationStatus::Completed; }
  SetCurve<Scalar> curve() const { return SetCurve<Scalar>(times, states); }
};

/// Fixed-step explicit integration of d/dt sigma = f(t, sigma). The final step
/// is shortened to land on T. A failure truncates the trajectory and records
/// the reason.
template <typename Scalar>
Trajectory<Scalar> integrate(const RhsField<Scalar>& f, const SupportSample<Scalar>& sigma0,
                             const IntegrateOptions& opt) {
  if (!(opt.h > 0) || !(opt.T > 0)) throw Error("integrate needs h > 0 and T > 0");
  const auto& g = sigma0.grid();
  const Scalar T(opt.T), h(opt.h);
  Trajectory<Scalar> traj;
  traj.times.push_back(Scalar(0));
  traj.states.push_back(sigma0);
  traj.residuals.push_back(is_in_cone(sigma0, Scalar(0)).worst_violation);
  traj.regularized.push_back(false);
  traj.steps.push_back(Scalar(0));

  auto eval = [&](Scalar t, const Vector<Scalar>& x) {
    Vector<Scalar> v = f(t, SupportSample<Scalar>(g, x)).values();
    if (!v.allFinite()) throw NonFiniteValue();
    return v;
  };

  const auto nsteps = static_cast<long>(std::ceil(T / h - Scalar(1e-9)));
  Vector<Scalar> x = sigma0.values();
  try {
    for (long k = 0; k < nsteps; ++k) {
      const Scalar t = Scalar(k) * h;
      const Scalar t_next = (k + 1 == nsteps) ? T : Scalar(k + 1) * h;
      const Scalar dt = t_next - t;
      if (opt.method == Method::Euler) {
        x += dt * eval(t, x);
      } else {
        const Vector<Scalar> k1 = eval(t, x);
        const Vector<Scalar> k2 = eval(t + dt / 2, x + (dt / 2) * k1);
        const Vector<Scalar> k3 = eval(t + dt / 2, x + (dt / 2) * k2);
        const Vector<Scalar> k4 = eval(t + dt, x + dt * k3);
        x += (dt / 6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
      }
      if (!x.allFinite()) throw NonFiniteValue();
      const auto check = is_in_cone(x, g, Scalar(0));
      bool reg = false;
      if (opt.policy == RegularizationPolicy::Always ||
          (opt.policy == RegularizationPolicy::OnViolation &&
           check.worst_violation > Scalar(opt.threshold_factor) * cone_tolerance(x))) {
        x = regularize(x, g).values();
        reg = true;
      }
      traj.times.push_back(t_next);
      traj.states.emplace_back(g, x);
      traj.residuals.push_back(check.worst_violation);
      traj.regularized.push_back(reg);
      traj.steps.push_back(dt);
    }
  } catch (const EmptyIntersection& e) {
    traj.status = IntegrationStatus::EmptyIntersection;
    traj.diagnostic = e.what();
  } catch (const NonFiniteValue& e) {
    traj.status = IntegrationStatus::NonFiniteValue;
    traj.diagnostic = e.what();
  }
  return traj;
}

/// e^{-t} sigma_{A0} + (1 - e^{-t}) sigma_Q, the solution of the relaxation field.
template <typename Scalar>
SupportSample<Scalar> closed_form_example(const ConvexPolygon<Scalar>& A0, const ConvexPolygon<Scalar>& Q, Scalar t,
                                          const DirectionGrid<Scalar>& grid) {
  if (t < 0) throw Error("closed form needs t >= 0");
  const Scalar e = std::exp(-t);
  return minkowski_add(scale(support_of_polygon(A0, grid), e), scale(support_of_polygon(Q, grid), Scalar(1) - e));
}

}  // namespace setflow

#include "setflow/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "setflow/io.hpp"
#include "setflow/scenario.hpp"
#include "setflow/svg.hpp"

namespace setflow::cli {

namespace fs = std::filesystem;
using Grid = DirectionGrid<double>;
using Poly = ConvexPolygon<double>;
using Sample = SupportSample<double>;

namespace {

int report(std::ostream& err, const std::string& code, const std::string& msg, int status) {
  err << "error: " << code << ": " << msg << '\n';
  return status;
}

/// Indices of stored times closest to 0, every, 2*every, ... within the trajectory.
std::vector<std::size_t> frame_indices(const std::vector<double>& times, double every) {
  std::vector<std::size_t> out;
  if (times.empty()) return out;
  const double end = times.back();
  for (long m = 0;; ++m) {
    const double target = static_cast<double>(m) * every;
    if (target > end + 1e-9 * std::max(1.0, end)) break;
    const auto it = std::lower_bound(times.begin(), times.end(), target);
    std::size_t k = static_cast<std::size_t>(it - times.begin());
    if (k == times.size() || (k > 0 && target - times[k - 1] < times[k] - target)) --k;
    if (out.empty() || out.back() != k) out.push_back(k);
  }
  return out;
}

std::string curve_csv(const std::vector<double>& times, const std::vector<Vector<double>>& rows) {
  std::ostringstream os;
  io::write_curve_csv(os, times, rows);
  return os.str();
}

std::string sup_distance_csv(const Trajectory<double>& traj, const Sample& target) {
  std::ostringstream os;
  os << "t,dist_to_target\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    os << io::format_real(traj.times[k]) << ','
       << io::format_real((traj.states[k].values() - target.values()).cwiseAbs().maxCoeff()) << '\n';
  return os.str();
}

/// Frames that reconstruct to a nonempty polygon; others are left out.
void polygon_frames(const std::vector<Sample>& samples, const std::vector<double>& times, std::vector<Poly>& polys,
                    std::vector<double>& kept) {
  for (std::size_t k = 0; k < samples.size(); ++k) {
    try {
      polys.push_back(reconstruct_polygon(samples[k]));
      kept.push_back(times[k]);
    } catch (const EmptyIntersection&) {
    }
  }
}

std::string sets_svg(const std::vector<Sample>& samples, const std::vector<double>& times, const std::string& title) {
  std::vector<Poly> polys;
  std::vector<double> kept;
  polygon_frames(samples, times, polys, kept);
  return svg::filmstrip(polys, kept, title);
}

std::string support_svg(const std::vector<Vector<double>>& rows, const std::vector<double>& times,
                        const std::string& title) {
  return svg::support_curves(rows, times, title);
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_integrate(const fs::path& config, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  try {
    cfg = load_scenario(config);
  } catch (const io::ParseError& e) {
    return report(err, e.code() == "io_error" ? "config_error" : e.code(), e.what(), exit_code::config_error);
  }
  const Grid grid(cfg.grid_n);
  Trajectory<double> traj;
  try {
    traj = integrate(make_field(cfg.rhs, grid), support_of_polygon(cfg.initial, grid), cfg.integrate_options());
  } catch (const Error& e) {
    return report(err, "config_error", e.what(), exit_code::config_error);
  }

  const fs::path csv = cfg.output_dir / (cfg.stem + ".csv");
  std::vector<fs::path> written;
  try {
    fs::create_directories(cfg.output_dir);
    std::ostringstream os;
    io::write_trajectory_csv(os, traj);
    io::write_text_file(csv, os.str());
    written.push_back(csv);
    if (cfg.rhs.kind == RhsSpec::Kind::RelaxTo) {
      const auto path = cfg.output_dir / (cfg.stem + "_distance.csv");
      io::write_text_file(path, sup_distance_csv(traj, support_of_polygon(*cfg.rhs.target, grid)));
      written.push_back(path);
    }
    if (cfg.svg) {
      const auto frames = frame_indices(traj.times, cfg.frame_every);
      std::vector<Sample> samples;
      std::vector<Vector<double>> rows;
      std::vector<double> times;
      for (auto k : frames) {
        samples.push_back(traj.states[k]);
        rows.push_back(traj.states[k].values());
        times.push_back(traj.times[k]);
      }
      const auto sets = cfg.output_dir / (cfg.stem + "_sets.svg");
      const auto sup = cfg.output_dir / (cfg.stem + "_support.svg");
      io::write_text_file(sets, sets_svg(samples, times, cfg.stem + " sets"));
      io::write_text_file(sup, support_svg(rows, times, cfg.stem + " support functions"));
      written.push_back(sets);
      written.push_back(sup);
    }
  } catch (const fs::filesystem_error& e) {
    return report(err, "io_error", e.what(), exit_code::io_error);
  }

  const auto regularized = std::count(traj.regularized.begin(), traj.regularized.end(), true);
  const double worst = *std::max_element(traj.residuals.begin(), traj.residuals.end());
  out << "steps " << traj.times.size() - 1 << '\n'
      << "final_t " << io::format_real(traj.times.back()) << '\n'
      << "max_residual " << io::format_real(worst) << '\n'
      << "regularized_steps " << regularized << '\n';
  for (const auto& p : written) out << "wrote " << p.string() << '\n';
  if (!traj.ok()) {
    const char* code = traj.status == IntegrationStatus::EmptyIntersection ? "empty_intersection" : "non_finite_value";
    return report(err, code, "integration stopped at t = " + io::format_real(traj.times.back()) + ": " + traj.diagnostic,
                  exit_code::integration_failure);
  }
  return exit_code::ok;
}

// ---------------------------------------------------------------------------

int cmd_example(const fs::path& outdir, std::ostream& out, std::ostream& err) {
  const Grid grid(64);
  const Poly Q = Poly::box(-1, 1, -1, 1);
  const struct {
    const char* label;
    Poly A0;
  } curves[] = {{"[2,3]x[1,2]", Poly::box(2, 3, 1, 2)},
                {"[0,3.5]x[-1.5,2.5]", Poly::box(0, 3.5, -1.5, 2.5)},
                {"[-1.5,3.5]x[-0.5,0]", Poly::box(-1.5, 3.5, -0.5, 0)}};
  IntegrateOptions opt;
  opt.T = 4.0;
  opt.h = 0.01;
  opt.method = Method::RK4;
  const auto field = relax_to(support_of_polygon(Q, grid));

  try {
    fs::create_directories(outdir);
  } catch (const fs::filesystem_error& e) {
    return report(err, "io_error", e.what(), exit_code::io_error);
  }

  double max_error = 0;
  std::vector<HukuharaClass> summary;
  try {
    int number = 0;
    for (const auto& c : curves) {
      const std::string prefix = "curve" + std::to_string(++number);
      const auto traj = integrate(field, support_of_polygon(c.A0, grid), opt);
      if (!traj.ok()) return report(err, "integration_failure", traj.diagnostic, exit_code::integration_failure);
      for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const auto exact = closed_form_example(c.A0, Q, traj.times[k], grid);
        max_error = std::max(max_error, (traj.states[k].values() - exact.values()).cwiseAbs().maxCoeff());
      }

      std::ostringstream csv;
      io::write_trajectory_csv(csv, traj);
      io::write_text_file(outdir / (prefix + "_trajectory.csv"), csv.str());

      const auto curve = traj.curve();
      const auto cls = classify_curve(curve);
      summary.push_back(cls.aggregate);
      std::ostringstream classes;
      classes << "index,t,class\n";
      for (std::size_t k = 0; k < curve.size(); ++k)
        classes << k << ',' << io::format_real(curve.times()[k]) << ',' << to_string(cls.steps[k]) << '\n';
      io::write_text_file(outdir / (prefix + "_classes.csv"), classes.str());

      // forward quotients at interior steps; the Hukuhara differential where a
      // step is first type, its second-type counterpart -q(-p) where second type
      std::vector<double> dt, ht, st;
      std::vector<Vector<double>> delta, hukuhara, second;
      for (std::size_t k = 1; k + 1 < curve.size(); ++k) {
        const Vector<double> q = difference_quotients(curve, k).forward.values();
        const double t = curve.times()[k];
        dt.push_back(t);
        delta.push_back(q);
        if (cls.steps[k] == HukuharaClass::FirstType || cls.steps[k] == HukuharaClass::Both) {
          ht.push_back(t);
          hukuhara.push_back(q);
        }
        if (cls.steps[k] == HukuharaClass::SecondType || cls.steps[k] == HukuharaClass::Both) {
          Vector<double> s(q.size());
          for (Eigen::Index i = 0; i < q.size(); ++i) s(i) = -q(grid.antipode(i));
          st.push_back(t);
          second.push_back(s);
        }
      }
      io::write_text_file(outdir / (prefix + "_delta.csv"), curve_csv(dt, delta));
      if (!hukuhara.empty()) io::write_text_file(outdir / (prefix + "_hukuhara.csv"), curve_csv(ht, hukuhara));
      if (!second.empty()) io::write_text_file(outdir / (prefix + "_second_type.csv"), curve_csv(st, second));

      // figures at quarter-unit frames
      const auto frames = frame_indices(curve.times(), 0.25);
      std::vector<Sample> set_frames;
      std::vector<Vector<double>> sup_frames, delta_frames;
      std::vector<double> ft, interior_t;
      std::vector<Sample> diff_frames;
      std::vector<double> diff_t;
      for (auto k : frames) {
        set_frames.push_back(curve.samples()[k]);
        sup_frames.push_back(curve.samples()[k].values());
        ft.push_back(curve.times()[k]);
        if (k == 0 || k + 1 == curve.size()) continue;
        delta_frames.push_back(delta[k - 1]);
        interior_t.push_back(curve.times()[k]);
        const auto hk = std::find(ht.begin(), ht.end(), curve.times()[k]);
        const auto sk = std::find(st.begin(), st.end(), curve.times()[k]);
        if (hk != ht.end()) {
          diff_frames.emplace_back(grid, hukuhara[static_cast<std::size_t>(hk - ht.begin())]);
          diff_t.push_back(*hk);
        } else if (sk != st.end()) {
          diff_frames.emplace_back(grid, second[static_cast<std::size_t>(sk - st.begin())]);
          diff_t.push_back(*sk);
        }
      }
      io::write_text_file(outdir / (prefix + "_sets.svg"), sets_svg(set_frames, ft, prefix + " " + c.label));
      io::write_text_file(outdir / (prefix + "_support.svg"), support_svg(sup_frames, ft, prefix + " support functions"));
      io::write_text_file(outdir / (prefix + "_delta.svg"), support_svg(delta_frames, interior_t, prefix + " derivative"));
      io::write_text_file(outdir / (prefix + "_differential.svg"),
                          sets_svg(diff_frames, diff_t, prefix + " " + std::string(to_string(cls.aggregate)) + " differentials"));

      out << prefix << ' ' << c.label << ": " << to_string(cls.aggregate) << '\n';
    }
  } catch (const fs::filesystem_error& e) {
    return report(err, "io_error", e.what(), exit_code::io_error);
  }

  out << "classification:";
  for (std::size_t i = 0; i < summary.size(); ++i) out << (i ? ", " : " ") << to_string(summary[i]);
  out << '\n' << "max_closed_form_error " << io::format_real(max_error) << '\n';
  return exit_code::ok;
}

// ---------------------------------------------------------------------------

namespace {

int check_subtangent(const ScenarioConfig& cfg, const RhsField<double>& f, const Grid& grid, std::uint64_t seed,
                     std::ostream& out, std::ostringstream& csv) {
  const auto s0 = support_of_polygon(cfg.initial, grid);
  SamplingBudget budget;
  budget.time_samples = cfg.check.time_samples;
  budget.state_samples = cfg.check.state_samples;
  budget.seed = seed;
  const auto states = sample_ball_slice(s0, cfg.check.radius, budget);
  csv << "t,state,feasible,lambda_min,lambda_max,blocking_index\n";
  std::size_t infeasible = 0, total = 0;
  const int nt = budget.time_samples;
  for (int i = 0; i < nt; ++i) {
    const double t = nt == 1 ? 0.0 : cfg.T * i / (nt - 1);
    for (std::size_t k = 0; k < states.size(); ++k) {
      const auto r = subtangent_feasible(f(t, states[k]), states[k]);
      ++total;
      if (!r.feasible) ++infeasible;
      csv << io::format_real(t) << ',' << k << ',' << (r.feasible ? 1 : 0) << ',' << io::format_real(r.lambda_min) << ','
          << (r.lambda_max ? io::format_real(*r.lambda_max) : std::string("inf")) << ','
          << (r.blocking_index ? std::to_string(*r.blocking_index) : std::string("")) << '\n';
    }
  }
  const auto r0 = subtangent_feasible(f(0.0, s0), s0);
  out << "initial_lambda_interval ";
  if (r0.feasible)
    out << '[' << io::format_real(r0.lambda_min) << ", " << (r0.lambda_max ? io::format_real(*r0.lambda_max) : "inf")
        << "]\n";
  else
    out << "empty (blocked at index " << *r0.blocking_index << ")\n";
  out << "contains_lambda_1 " << (r0.contains(1.0) ? "yes" : "no") << '\n'
      << "states_checked " << total << '\n'
      << "infeasible " << infeasible << '\n';
  return infeasible == 0 ? exit_code::ok : exit_code::violation;
}

int check_osl(const ScenarioConfig& cfg, const RhsField<double>& f, const Grid& grid, std::uint64_t seed,
              std::ostream& out, std::ostringstream& csv) {
  Rng rng(seed);
  const auto omega = make_growth(cfg.check);
  const double ext = cfg.check.extent;
  csv << "t,condition,ax,ay,bx,by,direction_index,snap_error,lhs,rhs,gap\n";
  std::size_t violations = 0, checked = 0;
  for (int k = 0; k < cfg.check.pairs; ++k) {
    const double t = uniform(rng, 0.0, cfg.T);
    Poly A = random_box(rng, ext), B = random_box(rng, ext);
    if (k % 2 == 1) {
      A = random_polygon(rng, Point2<double>(uniform(rng, -ext, ext), uniform(rng, -ext, ext)), ext / 2, 6);
      B = random_polygon(rng, Point2<double>(uniform(rng, -ext, ext), uniform(rng, -ext, ext)), ext / 2, 6);
    }
    OslReport<double> rep;
    try {
      rep = osl_check(f, A, B, t, omega, grid);
    } catch (const Degenerate&) {
      continue;
    }
    ++checked;
    if (rep.satisfied) continue;
    ++violations;
    for (const auto& c : rep.cases)
      csv << io::format_real(t) << ',' << c.condition << ',' << io::format_real(c.a.x()) << ','
          << io::format_real(c.a.y()) << ',' << io::format_real(c.b.x()) << ',' << io::format_real(c.b.y()) << ','
          << c.direction_index << ',' << io::format_real(c.snap_error) << ',' << io::format_real(c.lhs) << ','
          << io::format_real(c.rhs) << ',' << io::format_real(c.gap()) << '\n';
    if (violations == 1) {
      const auto& w = rep.witness();
      out << "witness a=(" << io::format_real(w.a.x()) << ", " << io::format_real(w.a.y()) << ") b=("
          << io::format_real(w.b.x()) << ", " << io::format_real(w.b.y()) << ") gap " << io::format_real(w.gap())
          << '\n';
    }
  }
  out << "pairs_checked " << checked << '\n' << "violations " << violations << '\n';
  return violations == 0 ? exit_code::ok : exit_code::violation;
}

int check_lipschitz(const ScenarioConfig& cfg, const RhsField<double>& f, const Grid& grid, std::uint64_t seed,
                    std::ostream& out, std::ostringstream& csv) {
  LipschitzBudget budget;
  budget.pairs = cfg.check.pairs;
  budget.T = cfg.T;
  budget.extent = cfg.check.extent;
  budget.seed = seed;
  const double L = lipschitz_estimate(f, grid, budget);
  const auto declared = cfg.check.declared_lipschitz ? cfg.check.declared_lipschitz : f.declared_lipschitz();
  csv << "estimate,declared\n" << io::format_real(L) << ',' << (declared ? io::format_real(*declared) : "") << '\n';
  out << "lipschitz_estimate " << io::format_real(L) << '\n';
  if (declared) out << "declared " << io::format_real(*declared) << '\n';
  const bool exceeded = declared && L > *declared * (1 + 1e-9) + 1e-12;
  return exceeded ? exit_code::violation : exit_code::ok;
}

int check_horizon(const ScenarioConfig& cfg, const RhsField<double>& f, const Grid& grid, std::uint64_t seed,
                  std::ostream& out, std::ostringstream& csv) {
  SamplingBudget budget;
  budget.time_samples = cfg.check.time_samples;
  budget.state_samples = cfg.check.state_samples;
  budget.seed = seed;
  const auto est = existence_horizon(f, support_of_polygon(cfg.initial, grid), cfg.check.radius, cfg.T, budget);
  csv << "c,b,degenerate,states_used\n"
      << io::format_real(est.c) << ',' << io::format_real(est.b) << ',' << (est.degenerate ? 1 : 0) << ','
      << est.states_used << '\n';
  out << "bound_c " << io::format_real(est.c) << '\n'
      << "horizon_b " << io::format_real(est.b) << '\n'
      << "degenerate " << (est.degenerate ? "yes" : "no") << '\n'
      << "states_used " << est.states_used << '\n';
  return exit_code::ok;
}

}  // namespace

int cmd_check(const std::string& kind, const fs::path& config, std::ostream& out, std::ostream& err) {
  using Check = int (*)(const ScenarioConfig&, const RhsField<double>&, const Grid&, std::uint64_t, std::ostream&,
                        std::ostringstream&);
  Check run = nullptr;
  if (kind == "subtangent") run = check_subtangent;
  else if (kind == "osl") run = check_osl;
  else if (kind == "lipschitz") run = check_lipschitz;
  else if (kind == "horizon") run = check_horizon;
  else return report(err, "usage", "unknown check '" + kind + "'", exit_code::config_error);

  ScenarioConfig cfg;
  try {
    cfg = load_scenario(config);
  } catch (const io::ParseError& e) {
    return report(err, e.code() == "io_error" ? "config_error" : e.code(), e.what(), exit_code::config_error);
  }
  const Grid grid(cfg.grid_n);
  const std::uint64_t seed = seed_from_env(cfg.seed);
  std::ostringstream csv;
  int status = exit_code::ok;
  try {
    out << "check " << kind << '\n' << "seed " << seed << '\n';
    status = run(cfg, make_field(cfg.rhs, grid), grid, seed, out, csv);
  } catch (const Error& e) {
    return report(err, "config_error", e.what(), exit_code::config_error);
  }
  const fs::path path = cfg.output_dir / (cfg.stem + "_" + kind + ".csv");
  try {
    fs::create_directories(cfg.output_dir);
    io::write_text_file(path, csv.str());
  } catch (const fs::filesystem_error& e) {
    return report(err, "io_error", e.what(), exit_code::io_error);
  }
  out << "result " << (status == exit_code::ok ? "satisfied" : "violated") << '\n' << "wrote " << path.string() << '\n';
  return status;
}

// ---------------------------------------------------------------------------

int cmd_hausdorff(const fs::path& a, const fs::path& b, long n, std::ostream& out, std::ostream& err) {
  if (n < 3) return report(err, "usage", "--n must be at least 3", exit_code::config_error);
  Poly A = Poly::point(Point2<double>(0, 0)), B = A;
  try {
    A = io::read_set_file(a);
    B = io::read_set_file(b);
  } catch (const io::ParseError& e) {
    return report(err, e.code(), e.what(), exit_code::config_error);
  }
  const Grid grid(n);
  const double estimate = hausdorff_grid(support_of_polygon(A, grid), support_of_polygon(B, grid));
  const double exact = hausdorff_exact(A, B);
  out << "grid_estimate " << io::format_real(estimate) << '\n'
      << "exact " << io::format_real(exact) << '\n'
      << "gap " << io::format_real(exact - estimate) << '\n';
  return exit_code::ok;
}

}  // namespace setflow::cli

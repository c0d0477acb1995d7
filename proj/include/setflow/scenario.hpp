#pragma once

// Scenario configuration shared by the integrate and check commands.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "setflow/dynamics.hpp"
#include "setflow/io.hpp"

namespace setflow {

struct RhsSpec {
  enum class Kind { RelaxTo, Constant, Scale };
  Kind kind = Kind::RelaxTo;
  std::optional<ConvexPolygon<double>> target;  ///< relax_to
  double rate = 1.0;                            ///< relax_to
  std::vector<double> delta;                    ///< constant
  double factor = 1.0;                          ///< scale
};

/// Settings for the diagnostics run by `setflow check`.
struct CheckSpec {
  enum class Omega { Linear, Zero };
  Omega omega = Omega::Linear;
  double omega_L = 1.0;
  int pairs = 200;
  double extent = 3.0;  ///< random sets are drawn with centres in [-extent, extent]^2
  double radius = 1.0;  ///< ball radius around the initial state
  int time_samples = 17;
  int state_samples = 256;
  std::optional<double> declared_lipschitz;
};

struct ScenarioConfig {
  int grid_n = 64;
  double T = 1.0;
  double h = 0.01;
  Method method = Method::RK4;
  RegularizationPolicy policy = RegularizationPolicy::OnViolation;
  RhsSpec rhs;
  ConvexPolygon<double> initial = ConvexPolygon<double>::point(Point2<double>(0, 0));
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path output_dir;  ///< defaults to the config file's directory
  std::string stem = "scenario";     ///< defaults to the config file's stem
  bool svg = true;
  double frame_every = 0.25;
  CheckSpec check;

  IntegrateOptions integrate_options() const;
};

/// Validates and converts a parsed config. Relative output paths resolve
/// against `base_dir`. Throws io::ParseError with code "config_error".
ScenarioConfig parse_scenario(const io::json& j, const std::filesystem::path& base_dir);
ScenarioConfig load_scenario(const std::filesystem::path& path);

RhsField<double> make_field(const RhsSpec& spec, const DirectionGrid<double>& grid);
GrowthFunction<double> make_growth(const CheckSpec& spec);

}  // namespace setflow

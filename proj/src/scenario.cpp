#include "setflow/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace setflow {

namespace {

using io::json;

[[noreturn]] void fail(const std::string& msg) { throw io::ParseError(msg, "config_error"); }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double number(const json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number() || !std::isfinite(v.get<double>())) fail(std::string("\"") + key + "\" must be a finite number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) { return j.contains(key) ? number(j, key) : fallback; }

int integer_or(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) fail(std::string("\"") + key + "\" must be an integer");
  return j.at(key).get<int>();
}

std::string string_or(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) fail(std::string("\"") + key + "\" must be a string");
  return j.at(key).get<std::string>();
}

ConvexPolygon<double> set_field(const json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing \"") + key + "\"");
  try {
    return io::parse_set(j.at(key));
  } catch (const io::ParseError& e) {
    fail(std::string("\"") + key + "\": " + e.what());
  }
}

RhsSpec parse_rhs(const json& j, int grid_n) {
  if (!j.is_object()) fail("\"rhs\" must be an object");
  RhsSpec spec;
  const auto kind = string_or(j, "kind", "");
  if (kind == "relax_to") {
    spec.kind = RhsSpec::Kind::RelaxTo;
    spec.target = set_field(j, "target");
    spec.rate = number_or(j, "rate", 1.0);
  } else if (kind == "constant") {
    spec.kind = RhsSpec::Kind::Constant;
    if (!j.contains("delta") || !j.at("delta").is_array()) fail("\"delta\" must be an array");
    for (const auto& x : j.at("delta")) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) fail("\"delta\" entries must be finite numbers");
      spec.delta.push_back(x.get<double>());
    }
    if (static_cast<int>(spec.delta.size()) != grid_n) fail("\"delta\" must have grid_n entries");
  } else if (kind == "scale") {
    spec.kind = RhsSpec::Kind::Scale;
    spec.factor = number_or(j, "factor", 1.0);
  } else {
    fail("unknown rhs kind '" + kind + "' (expected relax_to, constant or scale)");
  }
  return spec;
}

CheckSpec parse_check(const json& j) {
  CheckSpec c;
  if (!j.is_object()) fail("\"check\" must be an object");
  if (j.contains("omega")) {
    const auto& o = j.at("omega");
    const std::string kind = o.is_string() ? o.get<std::string>() : (o.is_object() ? string_or(o, "kind", "") : "");
    if (kind == "zero") {
      c.omega = CheckSpec::Omega::Zero;
    } else if (kind == "linear") {
      c.omega = CheckSpec::Omega::Linear;
      if (o.is_object()) c.omega_L = number_or(o, "L", 1.0);
    } else {
      fail("\"omega\" must be \"zero\" or {\"kind\": \"linear\", \"L\": ...}");
    }
  }
  c.pairs = integer_or(j, "pairs", c.pairs);
  c.extent = number_or(j, "extent", c.extent);
  c.radius = number_or(j, "radius", c.radius);
  c.time_samples = integer_or(j, "time_samples", c.time_samples);
  c.state_samples = integer_or(j, "state_samples", c.state_samples);
  if (j.contains("declared_lipschitz")) c.declared_lipschitz = number(j, "declared_lipschitz");
  if (c.pairs < 1 || c.time_samples < 1 || c.state_samples < 1) fail("check sample counts must be positive");
  if (!(c.extent > 0) || !(c.radius > 0)) fail("check extent and radius must be positive");
  return c;
}

}  // namespace

IntegrateOptions ScenarioConfig::integrate_options() const {
  IntegrateOptions opt;
  opt.T = T;
  opt.h = h;
  opt.method = method;
  opt.policy = policy;
  return opt;
}

ScenarioConfig parse_scenario(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) fail("config must be a JSON object");
  ScenarioConfig c;
  if (!j.contains("grid_n") || !j.at("grid_n").is_number_integer()) fail("\"grid_n\" must be an integer");
  c.grid_n = j.at("grid_n").get<int>();
  if (c.grid_n < 3 || c.grid_n % 2 != 0) fail("\"grid_n\" must be even and at least 4");
  c.T = number(j, "T");
  if (!(c.T > 0)) fail("\"T\" must be positive");
  c.h = number(j, "h");
  if (!(c.h > 0)) fail("\"h\" must be positive");

  const auto method = lower(string_or(j, "method", "rk4"));
  if (method == "rk4") c.method = Method::RK4;
  else if (method == "euler") c.method = Method::Euler;
  else fail("\"method\" must be euler or rk4");

  const auto policy = lower(string_or(j, "policy", "on_violation"));
  if (policy == "never") c.policy = RegularizationPolicy::Never;
  else if (policy == "on_violation" || policy == "onviolation") c.policy = RegularizationPolicy::OnViolation;
  else if (policy == "always") c.policy = RegularizationPolicy::Always;
  else fail("\"policy\" must be never, on_violation or always");

  if (!j.contains("rhs")) fail("missing \"rhs\"");
  c.rhs = parse_rhs(j.at("rhs"), c.grid_n);
  c.initial = set_field(j, "initial");

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) fail("\"seed\" must be a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  c.output_dir = base_dir;
  if (j.contains("output_dir")) c.output_dir = base_dir / string_or(j, "output_dir", "");
  c.stem = string_or(j, "stem", c.stem);
  if (j.contains("svg")) {
    if (!j.at("svg").is_boolean()) fail("\"svg\" must be true or false");
    c.svg = j.at("svg").get<bool>();
  }
  c.frame_every = number_or(j, "frame_every", c.frame_every);
  if (!(c.frame_every > 0)) fail("\"frame_every\" must be positive");
  if (j.contains("check")) c.check = parse_check(j.at("check"));
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  io::json j;
  try {
    j = io::read_json_file(path);
  } catch (const io::ParseError& e) {
    fail(e.what());
  }
  auto c = parse_scenario(j, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
  if (!j.contains("stem")) c.stem = path.stem().string();
  return c;
}

RhsField<double> make_field(const RhsSpec& spec, const DirectionGrid<double>& grid) {
  switch (spec.kind) {
    case RhsSpec::Kind::RelaxTo:
      return relax_to(support_of_polygon(*spec.target, grid), spec.rate);
    case RhsSpec::Kind::Constant:
      return constant_field(SupportDelta<double>(grid, Eigen::Map<const Vector<double>>(spec.delta.data(), grid.size())));
    case RhsSpec::Kind::Scale:
      return scaling_field(spec.factor);
  }
  throw Error("unknown rhs kind");
}

GrowthFunction<double> make_growth(const CheckSpec& spec) {
  return spec.omega == CheckSpec::Omega::Zero ? GrowthFunction<double>::zero() : GrowthFunction<double>::linear(spec.omega_L);
}

}  // namespace setflow

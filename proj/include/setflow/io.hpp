#pragma once

// JSON exchange formats and CSV writers for the command-line front end.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "setflow/duality.hpp"
#include "setflow/dynamics.hpp"
#include "setflow/hukuhara.hpp"

namespace setflow::io {

using json = nlohmann::json;

/// Malformed input. `code` is the machine-readable tag printed on stderr.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::string code = "parse_error")
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Reads and parses a JSON file; throws ParseError on I/O or syntax errors.
json read_json_file(const std::filesystem::path& path);

/// {"vertices": [[x,y],...]} or {"box": [[a1,b1],[a2,b2]]}.
ConvexPolygon<double> parse_set(const json& j);
ConvexPolygon<double> read_set_file(const std::filesystem::path& path);
json set_to_json(const ConvexPolygon<double>& P);

/// {"n": int, "values": [...]}.
SupportSample<double> parse_sample(const json& j);
json sample_to_json(const SupportSample<double>& s);

/// {"atoms": [[index, weight], ...]}; indices are checked against n.
DiscreteMeasure<double> parse_measure(const json& j, Eigen::Index n);
json measure_to_json(const DiscreteMeasure<double>& mu);

/// Round-trip formatting with 17 significant digits.
std::string format_real(double v);

/// `t, v0, ..., v{n-1}`, one row per time.
void write_curve_csv(std::ostream& os, const std::vector<double>& times, const std::vector<Vector<double>>& rows);
void write_curve_csv(std::ostream& os, const SetCurve<double>& curve);
SetCurve<double> read_curve_csv(std::istream& is);
/// Same format without the support-function checks (for derivative CSVs).
void read_curve_rows(std::istream& is, std::vector<double>& times, std::vector<Vector<double>>& rows);

/// `t, residual, regularized, v0..v{n-1}`.
void write_trajectory_csv(std::ostream& os, const Trajectory<double>& traj);

/// Writes text to a file; throws std::filesystem::filesystem_error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace setflow::io

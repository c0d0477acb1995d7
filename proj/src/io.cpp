#include "setflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace setflow::io {

namespace {

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
  return v;
}

Point2<double> parse_point(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("a point must be an array [x, y]");
  return {finite_number(j[0], "coordinate"), finite_number(j[1], "coordinate")};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

double parse_cell(const std::string& cell) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw ParseError("bad CSV number '" + cell + "'");
  }
  if (used != cell.size()) throw ParseError("bad CSV number '" + cell + "'");
  return v;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string(), "io_error");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

ConvexPolygon<double> parse_set(const json& j) {
  if (!j.is_object()) throw ParseError("a set must be an object with \"vertices\" or \"box\"");
  try {
    if (j.contains("box")) {
      const auto& b = j.at("box");
      if (!b.is_array() || b.size() != 2) throw ParseError("\"box\" must be [[a1,b1],[a2,b2]]");
      const auto x = parse_point(b[0]);
      const auto y = parse_point(b[1]);
      return ConvexPolygon<double>::box(x.x(), x.y(), y.x(), y.y());
    }
    if (j.contains("vertices")) {
      const auto& v = j.at("vertices");
      if (!v.is_array() || v.empty()) throw ParseError("\"vertices\" must be a nonempty array");
      std::vector<Point2<double>> pts;
      for (const auto& p : v) pts.push_back(parse_point(p));
      return ConvexPolygon<double>::hull(pts);
    }
  } catch (const InvalidPolygon& e) {
    throw ParseError(std::string("invalid set: ") + e.what());
  }
  throw ParseError("a set must have \"vertices\" or \"box\"");
}

ConvexPolygon<double> read_set_file(const std::filesystem::path& path) { return parse_set(read_json_file(path)); }

json set_to_json(const ConvexPolygon<double>& P) {
  json v = json::array();
  for (const auto& p : P.vertices()) v.push_back({p.x(), p.y()});
  return {{"vertices", v}};
}

SupportSample<double> parse_sample(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("values")) throw ParseError("a sample needs \"n\" and \"values\"");
  if (!j.at("n").is_number_integer()) throw ParseError("\"n\" must be an integer");
  const auto n = j.at("n").get<long long>();
  if (n < 3) throw ParseError("\"n\" must be at least 3");
  const auto& vals = j.at("values");
  if (!vals.is_array() || static_cast<long long>(vals.size()) != n) throw ParseError("\"values\" must have n entries");
  Vector<double> v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = finite_number(vals[static_cast<std::size_t>(i)], "value");
  return SupportSample<double>(DirectionGrid<double>(n), v);
}

json sample_to_json(const SupportSample<double>& s) {
  return {{"n", s.size()}, {"values", std::vector<double>(s.values().begin(), s.values().end())}};
}

DiscreteMeasure<double> parse_measure(const json& j, Eigen::Index n) {
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array()) throw ParseError("a measure needs \"atoms\"");
  std::vector<std::pair<Eigen::Index, double>> atoms;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer()) throw ParseError("an atom must be [index, weight]");
    const auto i = a[0].get<long long>();
    if (i < 0 || i >= n) throw ParseError("atom index out of range");
    atoms.emplace_back(static_cast<Eigen::Index>(i), finite_number(a[1], "weight"));
  }
  try {
    return DiscreteMeasure<double>(std::move(atoms));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

json measure_to_json(const DiscreteMeasure<double>& mu) {
  json atoms = json::array();
  for (const auto& [i, w] : mu.atoms()) atoms.push_back({i, w});
  return {{"atoms", atoms}};
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_curve_csv(std::ostream& os, const std::vector<double>& times, const std::vector<Vector<double>>& rows) {
  if (times.size() != rows.size()) throw LengthMismatch("curve rows and times disagree in length");
  const Eigen::Index n = rows.empty() ? 0 : rows.front().size();
  os << "t";
  for (Eigen::Index i = 0; i < n; ++i) os << ",v" << i;
  os << '\n';
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (rows[k].size() != n) throw LengthMismatch("curve rows and times disagree in length");
    os << format_real(times[k]);
    for (double x : rows[k]) os << ',' << format_real(x);
    os << '\n';
  }
}

void write_curve_csv(std::ostream& os, const SetCurve<double>& curve) {
  std::vector<Vector<double>> rows;
  for (const auto& s : curve.samples()) rows.push_back(s.values());
  write_curve_csv(os, curve.times(), rows);
}

void read_curve_rows(std::istream& is, std::vector<double>& times, std::vector<Vector<double>>& rows) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty curve CSV");
  const auto header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "t") throw ParseError("curve CSV header must be t, v0, ..., v{n-1}");
  for (std::size_t i = 1; i < header.size(); ++i)
    if (header[i] != "v" + std::to_string(i - 1)) throw ParseError("unexpected CSV column '" + header[i] + "'");
  const auto n = static_cast<Eigen::Index>(header.size() - 1);
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw ParseError("CSV row has the wrong number of columns");
    times.push_back(parse_cell(cells[0]));
    Vector<double> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = parse_cell(cells[static_cast<std::size_t>(i) + 1]);
    rows.push_back(std::move(v));
  }
}

SetCurve<double> read_curve_csv(std::istream& is) {
  std::vector<double> times;
  std::vector<Vector<double>> rows;
  read_curve_rows(is, times, rows);
  if (rows.empty()) throw ParseError("curve CSV has no rows");
  const DirectionGrid<double> grid(rows.front().size());
  std::vector<SupportSample<double>> samples;
  for (auto& r : rows) samples.emplace_back(grid, std::move(r));
  try {
    return SetCurve<double>(std::move(times), std::move(samples));
  } catch (const InvalidCurve& e) {
    throw ParseError(e.what());
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory<double>& traj) {
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
  os << "t,residual,regularized";
  for (Eigen::Index i = 0; i < n; ++i) os << ",v" << i;
  os << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_real(traj.times[k]) << ',' << format_real(traj.residuals[k]) << ',' << (traj.regularized[k] ? 1 : 0);
    for (double x : traj.states[k].values()) os << ',' << format_real(x);
    os << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::filesystem::filesystem_error("cannot open for writing", path, std::make_error_code(std::errc::io_error));
  out << text;
  out.close();
  if (!out) throw std::filesystem::filesystem_error("write failed", path, std::make_error_code(std::errc::io_error));
}

}  // namespace setflow::io

#include "setflow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "setflow/io.hpp"

namespace setflow::svg {

namespace {

constexpr double kWidth = 480;
constexpr double kHeight = 480;
constexpr double kMargin = 24;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct View {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;

  void include(double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
};

// Earlier frames are drawn lighter.
double shade(std::size_t k, std::size_t count) {
  return count <= 1 ? 1.0 : 0.25 + 0.75 * static_cast<double>(k) / static_cast<double>(count - 1);
}

std::string header(const std::string& title) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<title>" << escape(title) << "</title>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  return os.str();
}

}  // namespace

std::string filmstrip(const std::vector<ConvexPolygon<double>>& frames, const std::vector<double>& times,
                      const std::string& title) {
  View v;
  for (const auto& P : frames)
    for (const auto& p : P.vertices()) v.include(p.x(), p.y());
  // equal scaling on both axes so shapes are not distorted
  const double span = std::max(v.x1 - v.x0, v.y1 - v.y0) * 1.05;
  const double cx = (v.x0 + v.x1) / 2, cy = (v.y0 + v.y1) / 2;
  const double s = (kWidth - 2 * kMargin) / span;
  auto px = [&](double x) { return kWidth / 2 + s * (x - cx); };
  auto py = [&](double y) { return kHeight / 2 - s * (y - cy); };

  std::ostringstream os;
  os << header(title);
  os << "<g fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1.5\">\n";
  for (std::size_t k = 0; k < frames.size(); ++k) {
    os << "<polygon data-t=\"" << io::format_real(k < times.size() ? times[k] : 0.0) << "\" stroke-opacity=\""
       << shade(k, frames.size()) << "\" points=\"";
    bool first = true;
    for (const auto& p : frames[k].vertices()) {
      os << (first ? "" : " ") << px(p.x()) << ',' << py(p.y());
      first = false;
    }
    os << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string support_curves(const std::vector<Vector<double>>& frames, const std::vector<double>& times,
                           const std::string& title) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& f : frames) {
    if (f.size() == 0) continue;
    lo = std::min(lo, f.minCoeff());
    hi = std::max(hi, f.maxCoeff());
  }
  if (!(lo <= hi)) lo = -1, hi = 1;
  if (hi - lo < 1e-12) lo -= 1, hi += 1;
  const double two_pi = 2 * std::numbers::pi;
  auto px = [&](double a) { return kMargin + (kWidth - 2 * kMargin) * a / two_pi; };
  auto py = [&](double y) { return kHeight - kMargin - (kHeight - 2 * kMargin) * (y - lo) / (hi - lo); };

  std::ostringstream os;
  os << header(title);
  if (lo < 0 && hi > 0)
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(two_pi) << "\" y2=\"" << py(0)
       << "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
  os << "<g fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"1.2\">\n";
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const auto& f = frames[k];
    const auto n = f.size();
    os << "<polyline data-t=\"" << io::format_real(k < times.size() ? times[k] : 0.0) << "\" stroke-opacity=\""
       << shade(k, frames.size()) << "\" points=\"";
    // close the curve at 2*pi with the first value
    for (Eigen::Index i = 0; n > 0 && i <= n; ++i)
      os << (i ? " " : "") << px(two_pi * static_cast<double>(i) / static_cast<double>(n)) << ',' << py(f(i % n));
    os << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace setflow::svg

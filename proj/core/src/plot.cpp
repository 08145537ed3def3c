#include <adacut/errors.hpp>
#include <adacut/harness.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace adacut {

namespace {

constexpr double width = 640.0;
constexpr double height = 420.0;
constexpr double left = 80.0;
constexpr double right = 190.0;
constexpr double top = 40.0;
constexpr double bottom = 60.0;

constexpr const char* palette[] = { "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf" };

std::string num(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string coord(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(std::string_view s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range
{
  double lo, hi;
  double map(double v, double a, double b) const
  {
    return hi > lo ? a + (v - lo) / (hi - lo) * (b - a) : 0.5 * (a + b);
  }
};

Range padded(double lo, double hi)
{
  if (hi <= lo) {
    const double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
    return { lo - pad, hi + pad };
  }
  const double pad = 0.05 * (hi - lo);
  return { lo - pad, hi + pad };
}

} // namespace

std::string stability_svg(std::span<const RiskReport> reports, std::string_view group)
{
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (const auto& r : select_group(reports, group)) {
    if (r.method == Method::adaptive && r.hyper)
      series[r.scenario].emplace_back(*r.hyper, r.mean_risk);
  }
  if (series.empty())
    throw ArgumentError("stability plot: no adaptive rows for scenario '" + std::string(group) + "'");

  double xlo = INFINITY, xhi = -INFINITY, ylo = 0.0, yhi = -INFINITY;
  for (auto& [_, pts] : series) {
    std::sort(pts.begin(), pts.end());
    for (auto [x, y] : pts) {
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      yhi = std::max(yhi, y);
    }
  }
  const Range xr = padded(xlo, xhi);
  const Range yr{ ylo, yhi > 0.0 ? 1.08 * yhi : 1.0 };
  const double x0 = left, x1 = width - right, y0 = height - bottom, y1 = top;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + coord(width) +
       "\" height=\"" + coord(height) + "\" viewBox=\"0 0 " + coord(width) + " " + coord(height) +
       "\">\n";
  s += "<title>" + escape(group) + ": L2 risk against kappa</title>\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + coord(width) + "\" height=\"" + coord(height) +
       "\" fill=\"white\"/>\n";

  // Axes with five ticks each.
  s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<line x1=\"" + coord(x0) + "\" y1=\"" + coord(y0) + "\" x2=\"" + coord(x1) + "\" y2=\"" +
       coord(y0) + "\"/>\n";
  s += "<line x1=\"" + coord(x0) + "\" y1=\"" + coord(y0) + "\" x2=\"" + coord(x0) + "\" y2=\"" +
       coord(y1) + "\"/>\n";
  s += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = xr.lo + (xr.hi - xr.lo) * t / 4.0;
    const double px = xr.map(xv, x0, x1);
    s += "<line x1=\"" + coord(px) + "\" y1=\"" + coord(y0) + "\" x2=\"" + coord(px) + "\" y2=\"" +
         coord(y0 + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + coord(px) + "\" y=\"" + coord(y0 + 18) + "\" text-anchor=\"middle\">" +
         num(xv) + "</text>\n";
    const double yv = yr.lo + (yr.hi - yr.lo) * t / 4.0;
    const double py = yr.map(yv, y0, y1);
    s += "<line x1=\"" + coord(x0 - 5) + "\" y1=\"" + coord(py) + "\" x2=\"" + coord(x0) +
         "\" y2=\"" + coord(py) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + coord(x0 - 8) + "\" y=\"" + coord(py + 4) + "\" text-anchor=\"end\">" +
         num(yv) + "</text>\n";
  }
  s += "<text x=\"" + coord(0.5 * (x0 + x1)) + "\" y=\"" + coord(height - 15) +
       "\" text-anchor=\"middle\">kappa</text>\n";
  s += "<text x=\"18\" y=\"" + coord(0.5 * (y0 + y1)) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       coord(0.5 * (y0 + y1)) + ")\">L2 risk</text>\n";
  s += "<text x=\"" + coord(0.5 * (x0 + x1)) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"13\">" +
       escape(group) + "</text>\n";
  s += "</g>\n";

  std::size_t idx = 0;
  for (const auto& [id, pts] : series) {
    const std::string color = palette[idx % std::size(palette)];
    std::string label = id;
    if (label.size() > group.size() && label.compare(0, group.size(), group) == 0)
      label = label.substr(group.size() + 1);
    s += "<g class=\"series\" stroke=\"" + color + "\" fill=\"" + color + "\">\n";
    if (pts.size() > 1) {
      s += "<polyline fill=\"none\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k)
          s += ' ';
        s += coord(xr.map(pts[k].first, x0, x1)) + "," + coord(yr.map(pts[k].second, y0, y1));
      }
      s += "\"/>\n";
    }
    for (auto [x, y] : pts)
      s += "<circle cx=\"" + coord(xr.map(x, x0, x1)) + "\" cy=\"" + coord(yr.map(y, y0, y1)) +
           "\" r=\"3\"/>\n";
    const double ly = top + 16.0 * static_cast<double>(idx) + 10.0;
    s += "<line x1=\"" + coord(x1 + 15) + "\" y1=\"" + coord(ly) + "\" x2=\"" + coord(x1 + 35) +
         "\" y2=\"" + coord(ly) + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + coord(x1 + 40) + "\" y=\"" + coord(ly + 4) +
         "\" stroke=\"none\" fill=\"black\" font-family=\"sans-serif\" font-size=\"11\">" +
         escape(label) + "</text>\n";
    s += "</g>\n";
    ++idx;
  }
  s += "</svg>\n";
  return s;
}

void emit_stability_plot(std::span<const RiskReport> reports,
                         std::string_view group,
                         const std::filesystem::path& path)
{
  const std::string svg = stability_svg(reports, group);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw ArgumentError("cannot write " + path.string());
  out << svg;
  if (!out)
    throw ArgumentError("failed writing " + path.string());
}

} // namespace adacut

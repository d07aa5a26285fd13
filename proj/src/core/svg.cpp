#include "core/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "core/error.hpp"

namespace semmap {

namespace {

// 12 fixed high-contrast fills; beyond 12 categories the colors cycle and
// the marker shape changes.
constexpr const char* kPalette[12] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  // Avoid the "-0.00" vs "0.00" instability.
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct AxisMap {
  double lo, hi, out_lo, out_hi;
  double operator()(double v) const {
    if (hi == lo) return 0.5 * (out_lo + out_hi);  // degenerate: center
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

std::string svg_open(std::size_t w, std::size_t h) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\" stroke=\"#cccccc\"/>\n";
  return out.str();
}

void marker(std::ostringstream& out, double x, double y, std::size_t shape,
            const std::string& fill, const std::string& title) {
  const char* color = fill.c_str();
  switch (shape % 3) {
    case 0:
      out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
          << "\" r=\"4\" fill=\"" << color << "\">";
      break;
    case 1:
      out << "<rect x=\"" << fmt(x - 3.5) << "\" y=\"" << fmt(y - 3.5)
          << "\" width=\"7\" height=\"7\" fill=\"" << color << "\">";
      break;
    default:
      out << "<path d=\"M " << fmt(x) << " " << fmt(y - 4.5) << " L "
          << fmt(x + 4.0) << " " << fmt(y + 3.5) << " L " << fmt(x - 4.0) << " "
          << fmt(y + 3.5) << " Z\" fill=\"" << color << "\">";
      break;
  }
  out << "<title>" << escape(title) << "</title>";
  switch (shape % 3) {
    case 0: out << "</circle>\n"; break;
    case 1: out << "</rect>\n"; break;
    default: out << "</path>\n"; break;
  }
}

}  // namespace

std::string plot_map(const MdsSolution& solution,
                     const std::optional<ColoringLayer>& layer, std::size_t dim_x,
                     std::size_t dim_y, const PlotOptions& opts) {
  const std::size_t n = solution.coords.rows();
  const std::size_t m = solution.coords.cols();
  if (dim_x < 1 || dim_x > m || dim_y < 1 || dim_y > m)
    throw ValidationError("plot_map: dimension pair (" + std::to_string(dim_x) +
                          "," + std::to_string(dim_y) + ") out of range 1.." +
                          std::to_string(m));
  if (layer && layer->point_labels.size() != n)
    throw ValidationError("plot_map: coloring layer covers " +
                          std::to_string(layer->point_labels.size()) +
                          " points, solution has " + std::to_string(n));
  const std::size_t dx = dim_x - 1, dy = dim_y - 1;

  const double w = static_cast<double>(opts.width);
  const double h = static_cast<double>(opts.height);
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = solution.coords(i, dx), y = solution.coords(i, dy);
    if (i == 0 || x < xmin) xmin = x;
    if (i == 0 || x > xmax) xmax = x;
    if (i == 0 || y < ymin) ymin = y;
    if (i == 0 || y > ymax) ymax = y;
  }
  const AxisMap mx{xmin, xmax, 0.05 * w, 0.95 * w};
  const AxisMap my{ymin, ymax, 0.95 * h, 0.05 * h};  // flip: SVG y grows down

  // Axis captions carry each dimension's share of positive eigenvalue mass
  // when the spectrum is known.
  auto axis_caption = [&](std::size_t d) {
    std::string caption = "dim " + std::to_string(d + 1);
    if (!solution.eigenvalues.empty()) {
      double pos = 0.0;
      for (double ev : solution.eigenvalues) pos += std::max(ev, 0.0);
      if (pos > 0.0 && d < solution.eigenvalues.size()) {
        const double share =
            std::max(solution.eigenvalues[d], 0.0) / pos * 100.0;
        caption += " (" + fmt(share) + "%)";
      }
    }
    return caption;
  };

  std::ostringstream out;
  out << svg_open(opts.width, opts.height);
  out << "<text x=\"" << fmt(0.5 * w) << "\" y=\"" << fmt(h - 6.0)
      << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333333\">"
      << escape(axis_caption(dx)) << "</text>\n";
  out << "<text x=\"12\" y=\"" << fmt(0.5 * h)
      << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333333\" "
         "transform=\"rotate(-90 12 "
      << fmt(0.5 * h) << ")\">" << escape(axis_caption(dy)) << "</text>\n";

  for (std::size_t i = 0; i < n; ++i) {
    const double px = mx(solution.coords(i, dx));
    const double py = my(solution.coords(i, dy));
    // The title carries the point label only, so per-language renderings of
    // one solution differ in nothing but their fills.
    std::size_t color = 0, shape = 0;
    if (layer) {
      const std::size_t idx = layer->palette_index[i];
      color = idx % 12;
      shape = idx / 12;
    }
    marker(out, px, py, shape, kPalette[color], solution.labels[i]);
  }

  if (layer) {
    double ly = 0.05 * h + 10.0;
    const double lx = 0.95 * w - 110.0;
    for (std::size_t c = 0; c < layer->palette.size(); ++c) {
      ly += 14.0;
      out << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly - 8.0)
          << "\" width=\"9\" height=\"9\" fill=\"" << kPalette[c % 12]
          << "\"/>\n";
      out << "<text x=\"" << fmt(lx + 13.0) << "\" y=\"" << fmt(ly)
          << "\" font-size=\"11\" fill=\"#333333\">" << escape(layer->palette[c])
          << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string plot_dendrogram(const Dendrogram& dendrogram, const PlotOptions& opts) {
  const std::size_t n = dendrogram.leaves();
  if (n < 2 || dendrogram.merges.size() != n - 1)
    throw ValidationError("plot_dendrogram: need a complete merge tree");

  const double w = static_cast<double>(opts.width);
  const double h = static_cast<double>(opts.height);
  double max_h = 0.0;
  for (const Merge& m : dendrogram.merges) max_h = std::max(max_h, m.height);
  const AxisMap vy{0.0, max_h > 0.0 ? 1.05 * max_h : 1.0, 0.92 * h, 0.05 * h};

  const std::vector<std::size_t> order = dendrogram.leaf_order();
  std::vector<double> node_x(2 * n - 1, 0.0);
  std::vector<double> node_h(2 * n - 1, 0.0);
  const double x0 = 0.05 * w, x1 = 0.95 * w;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    node_x[order[pos]] =
        n == 1 ? 0.5 * (x0 + x1)
               : x0 + (x1 - x0) * static_cast<double>(pos) /
                          static_cast<double>(n - 1);
  }

  std::ostringstream out;
  out << svg_open(opts.width, opts.height);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    out << "<text x=\"" << fmt(node_x[order[pos]]) << "\" y=\"" << fmt(0.96 * h)
        << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#333333\">"
        << escape(dendrogram.labels[order[pos]]) << "</text>\n";
  }
  for (std::size_t t = 0; t < dendrogram.merges.size(); ++t) {
    const Merge& m = dendrogram.merges[t];
    const std::size_t node = n + t;
    const double xl = node_x[m.left], xr = node_x[m.right];
    const double yl = vy(node_h[m.left]), yr = vy(node_h[m.right]);
    const double ym = vy(m.height);
    node_x[node] = 0.5 * (xl + xr);
    node_h[node] = m.height;
    out << "<path d=\"M " << fmt(xl) << " " << fmt(yl) << " L " << fmt(xl) << " "
        << fmt(ym) << " L " << fmt(xr) << " " << fmt(ym) << " L " << fmt(xr)
        << " " << fmt(yr) << "\" fill=\"none\" stroke=\"#1f77b4\" "
           "stroke-width=\"1.5\"/>\n";
  }
  out << "<text x=\"12\" y=\"" << fmt(0.5 * h)
      << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333333\" "
         "transform=\"rotate(-90 12 "
      << fmt(0.5 * h) << ")\">height</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string plot_elbow(const ElbowScan& scan, const PlotOptions& opts) {
  if (scan.dims.empty()) throw ValidationError("plot_elbow: empty scan");
  const double w = static_cast<double>(opts.width);
  const double h = static_cast<double>(opts.height);
  double max_s = 0.0;
  for (double s : scan.stress) max_s = std::max(max_s, s);
  const double dmin = static_cast<double>(scan.dims.front());
  const double dmax = static_cast<double>(scan.dims.back());
  const AxisMap mx{dmin, dmax, 0.08 * w, 0.95 * w};
  const AxisMap my{0.0, max_s > 0.0 ? 1.05 * max_s : 1.0, 0.92 * h, 0.05 * h};

  std::ostringstream out;
  out << svg_open(opts.width, opts.height);
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < scan.dims.size(); ++i) {
    if (i) out << ' ';
    out << fmt(mx(static_cast<double>(scan.dims[i]))) << ','
        << fmt(my(scan.stress[i]));
  }
  out << "\"/>\n";
  for (std::size_t i = 0; i < scan.dims.size(); ++i) {
    out << "<circle cx=\"" << fmt(mx(static_cast<double>(scan.dims[i])))
        << "\" cy=\"" << fmt(my(scan.stress[i])) << "\" r=\"3\" fill=\"#1f77b4\">"
        << "<title>dims " << scan.dims[i] << ": stress "
        << fmt(scan.stress[i]) << "</title></circle>\n";
    out << "<text x=\"" << fmt(mx(static_cast<double>(scan.dims[i]))) << "\" y=\""
        << fmt(0.96 * h)
        << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#333333\">"
        << scan.dims[i] << "</text>\n";
  }
  out << "<text x=\"" << fmt(0.5 * w) << "\" y=\"" << fmt(h - 4.0)
      << "\" font-size=\"12\" text-anchor=\"middle\" "
         "fill=\"#333333\">dimensions</text>\n";
  out << "<text x=\"12\" y=\"" << fmt(0.5 * h)
      << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333333\" "
         "transform=\"rotate(-90 12 "
      << fmt(0.5 * h) << ")\">stress</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace semmap

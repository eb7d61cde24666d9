#include "sgc/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sgc/error.hpp"

namespace sgc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    require(row.size() == t.columns.size(), Status::InvalidArgument,
            "row width does not match header");
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

void write_csv(const Table& t, const std::string& path) { write_text(to_csv(t), path); }

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Status::IoError, "cannot open " + path);
  Table t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    if (header) {
      t.columns = std::move(cells);
      header = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

void write_text(const std::string& content, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Status::IoError, "cannot write " + path);
  out << content;
  require(out.good(), Status::IoError, "write failed for " + path);
}

namespace {

// Viridis-like ramp, dark blue to yellow.
std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  static const double stops[5][3] = {{68, 1, 84},
                                     {59, 82, 139},
                                     {33, 145, 140},
                                     {94, 201, 98},
                                     {253, 231, 37}};
  double pos = t * 4.0;
  int lo = std::min(3, static_cast<int>(pos));
  double f = pos - lo;
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(stops[lo][0] + f * (stops[lo + 1][0] - stops[lo][0])),
                static_cast<int>(stops[lo][1] + f * (stops[lo + 1][1] - stops[lo][1])),
                static_cast<int>(stops[lo][2] + f * (stops[lo + 1][2] - stops[lo][2])));
  return buf;
}

std::string axis_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string svg_heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& values,
                        const std::vector<bool>& invalid, const std::string& x_label,
                        const std::string& y_label, const std::string& title) {
  size_t nx = xs.size(), ny = ys.size();
  require(values.size() == nx * ny && invalid.size() == nx * ny, Status::InvalidArgument,
          "heatmap shape mismatch");
  const int cell = 64, margin_l = 90, margin_b = 60, margin_t = 40, margin_r = 20;
  int width = margin_l + static_cast<int>(nx) * cell + margin_r;
  int height = margin_t + static_cast<int>(ny) * cell + margin_b;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";

  for (size_t iy = 0; iy < ny; ++iy) {
    for (size_t ix = 0; ix < nx; ++ix) {
      size_t idx = iy * nx + ix;
      // y axis grows upward: row 0 at the bottom
      int px = margin_l + static_cast<int>(ix) * cell;
      int py = margin_t + static_cast<int>(ny - 1 - iy) * cell;
      std::string fill = invalid[idx] ? "#cccccc" : ramp_color(values[idx]);
      svg << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell
          << "\" height=\"" << cell << "\" fill=\"" << fill
          << "\" stroke=\"white\"/>\n";
      std::string label = invalid[idx] ? "n/a" : axis_value(values[idx]);
      svg << "<text x=\"" << px + cell / 2 << "\" y=\"" << py + cell / 2 + 4
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\""
          << (invalid[idx] ? "" : (values[idx] > 0.6 ? " fill=\"#202020\"" : " fill=\"#f0f0f0\""))
          << ">" << label << "</text>\n";
    }
  }
  for (size_t ix = 0; ix < nx; ++ix) {
    svg << "<text x=\"" << margin_l + static_cast<int>(ix) * cell + cell / 2 << "\" y=\""
        << margin_t + static_cast<int>(ny) * cell + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << axis_value(xs[ix]) << "</text>\n";
  }
  for (size_t iy = 0; iy < ny; ++iy) {
    svg << "<text x=\"" << margin_l - 8 << "\" y=\""
        << margin_t + static_cast<int>(ny - 1 - iy) * cell + cell / 2 + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << axis_value(ys[iy]) << "</text>\n";
  }
  svg << "<text x=\"" << margin_l + static_cast<int>(nx) * cell / 2 << "\" y=\""
      << height - 16 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"12\">" << x_label << "</text>\n";
  svg << "<text x=\"16\" y=\"" << margin_t + static_cast<int>(ny) * cell / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << margin_t + static_cast<int>(ny) * cell / 2
      << ")\">" << y_label << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string svg_curves(const std::vector<double>& xs,
                       const std::vector<std::string>& series_names,
                       const std::vector<std::vector<double>>& series_values,
                       const std::string& x_label, const std::string& y_label,
                       const std::string& title) {
  require(series_names.size() == series_values.size(), Status::InvalidArgument,
          "series mismatch");
  const int width = 640, height = 420, ml = 60, mr = 150, mt = 40, mb = 50;
  const int pw = width - ml - mr, ph = height - mt - mb;
  double x_lo = xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end());
  double x_hi = xs.empty() ? 1.0 : *std::max_element(xs.begin(), xs.end());
  if (x_hi == x_lo) x_hi = x_lo + 1.0;

  auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return mt + (1.0 - std::clamp(y, -0.05, 1.05) / 1.05) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\""
      << ph << "\" fill=\"none\" stroke=\"#404040\"/>\n";
  for (double gy : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    svg << "<line x1=\"" << ml << "\" y1=\"" << py(gy) << "\" x2=\"" << ml + pw
        << "\" y2=\"" << py(gy) << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << ml - 6 << "\" y=\"" << py(gy) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << gy
        << "</text>\n";
  }
  for (double x : xs) {
    svg << "<text x=\"" << px(x) << "\" y=\"" << mt + ph + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << axis_value(x) << "</text>\n";
  }

  for (size_t s = 0; s < series_names.size(); ++s) {
    std::string color = ramp_color(series_names.size() > 1
                                       ? static_cast<double>(s) /
                                             static_cast<double>(series_names.size() - 1)
                                       : 0.5);
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i < series_values[s].size() && std::isfinite(series_values[s][i])) {
        svg << px(xs[i]) << "," << py(series_values[s][i]) << " ";
      }
    }
    svg << "\"/>\n";
    int ly = mt + 14 + static_cast<int>(s) * 16;
    svg << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << ml + pw + 30 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + pw + 34 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << series_names[s]
        << "</text>\n";
  }
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << x_label << "</text>\n";
  svg << "<text x=\"16\" y=\"" << mt + ph / 2 << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
      << mt + ph / 2 << ")\">" << y_label << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace sgc

#pragma once

#include <string>
#include <vector>

namespace sgc {

/// Column-labelled table with cells preformatted as strings. Doubles go
/// through format_double (round-trippable %.17g).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string format_double(double v);

std::string to_csv(const Table& t);
void write_csv(const Table& t, const std::string& path);
Table read_csv(const std::string& path);

void write_text(const std::string& content, const std::string& path);

/// Heatmap over a (x, y) grid, one rect per cell with a numeric annotation;
/// invalid cells are hatched grey. values is row-major: values[iy * nx + ix].
std::string svg_heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& values,
                        const std::vector<bool>& invalid, const std::string& x_label,
                        const std::string& y_label, const std::string& title);

/// Line chart: one polyline per series over shared x values.
std::string svg_curves(const std::vector<double>& xs,
                       const std::vector<std::string>& series_names,
                       const std::vector<std::vector<double>>& series_values,
                       const std::string& x_label, const std::string& y_label,
                       const std::string& title);

}  // namespace sgc

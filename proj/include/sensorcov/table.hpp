#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sensorcov {

// Comma-separated table with "# key=value" metadata lines ahead of the header.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

// Shortest decimal text that round-trips a double.
std::string format_number(double x);

void write_csv(std::ostream& os, const Table& table);
Table read_csv(std::istream& is);
void emit_csv(const Table& table, const std::filesystem::path& path);

struct Series {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
  bool log_x = false;
  bool log_y = false;
};

// Single-series line chart.
void write_svg(std::ostream& os, const Series& series);
void emit_svg(const Series& series, const std::filesystem::path& path);

}  // namespace sensorcov

#include "sensorcov/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sensorcov {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table: row width differs from header");
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("Table: no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

double Table::number(std::size_t row, const std::string& name) const {
  return std::stod(rows.at(row).at(column(name)));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (const auto& [key, value] : table.metadata) os << "# " << key << '=' << value << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << '\n';
  }
}

Table read_csv(std::istream& is) {
  Table table;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = line.substr(line.find_first_not_of("# "));
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        table.metadata.emplace_back(body, "");
      } else {
        table.metadata.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      }
      continue;
    }
    if (!header_seen) {
      table.columns = split(line);
      header_seen = true;
      continue;
    }
    table.add_row(split(line));
  }
  return table;
}

void emit_csv(const Table& table, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_csv(os, table);
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_svg(std::ostream& os, const Series& series) {
  if (series.x.size() != series.y.size()) throw std::invalid_argument("Series: x/y length mismatch");
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 400.0;
  constexpr double kMargin = 60.0;

  auto tx = [&](double v) { return series.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return series.log_y ? std::log10(v) : v; };

  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    const double px = tx(series.x[i]);
    const double py = ty(series.y[i]);
    if (std::isfinite(px) && std::isfinite(py)) pts.emplace_back(px, py);
  }
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  if (!pts.empty()) {
    auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end(),
                                            [](auto& l, auto& r) { return l.first < r.first; });
    auto [ymin, ymax] = std::minmax_element(pts.begin(), pts.end(),
                                            [](auto& l, auto& r) { return l.second < r.second; });
    x_lo = xmin->first;
    x_hi = xmax->first;
    y_lo = ymin->second;
    y_hi = ymax->second;
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
  }
  auto sx = [&](double v) { return kMargin + (v - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin); };
  auto sy = [&](double v) { return kHeight - kMargin - (v - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
     << series.title << "</text>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
     << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
     << kHeight - kMargin << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << series.x_label << (series.log_x ? " (log10)" : "") << "</text>\n"
     << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
     << kHeight / 2 << ")\">" << series.y_label << (series.log_y ? " (log10)" : "") << "</text>\n";
  for (const double v : {x_lo, x_hi}) {
    os << "<text x=\"" << sx(v) << "\" y=\"" << kHeight - kMargin + 16
       << "\" text-anchor=\"middle\" font-size=\"10\">" << format_number(v) << "</text>\n";
  }
  for (const double v : {y_lo, y_hi}) {
    os << "<text x=\"" << kMargin - 4 << "\" y=\"" << sy(v) << "\" text-anchor=\"end\" font-size=\"10\">"
       << format_number(v) << "</text>\n";
  }
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (const auto& [px, py] : pts) os << sx(px) << ',' << sy(py) << ' ';
  os << "\"/>\n";
  for (const auto& [px, py] : pts) {
    os << "<circle cx=\"" << sx(px) << "\" cy=\"" << sy(py) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  os << "</svg>\n";
}

void emit_svg(const Series& series, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_svg(os, series);
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace sensorcov

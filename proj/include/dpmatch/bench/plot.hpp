// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_BENCH_PLOT_HPP_
#define DPMATCH_BENCH_PLOT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dpmatch/error.hpp"

namespace dpmatch::bench {

/// A CSV table as written by write_csv: header names plus string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InputError("csv: missing column " + name);
    return static_cast<std::size_t>(it - header.begin());
  }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = detail::split_csv_line(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) throw InputError("csv: row width differs from header");
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty() || t.rows.empty()) throw InputError("csv: no data rows");
  return t;
}

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(count)
};

inline std::optional<Summary> summarize(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  Summary s;
  s.count = xs.size();
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std_error = std::sqrt(ss / static_cast<double>(s.count - 1)) / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

/// One bar: mean recovery over all overlapping vertices, with the gap to the
/// matched-pair rate (one-shot matchers) or the converged-pair rate
/// (iterative matchers) stacked on top.
struct Bar {
  std::string group;  // setting (and graph)
  std::string label;  // method, with d when it applies
  Summary all;
  double stacked = 0.0;
  std::string stacked_kind;  // "matched", "converged" or empty
};

inline std::vector<Bar> bars_from_csv(const CsvTable& t) {
  const auto c_setting = t.column("setting"), c_method = t.column("method"), c_d = t.column("d"),
             c_graph = t.column("graph"), c_all = t.column("recovery_all"),
             c_mat = t.column("recovery_matched"), c_conv = t.column("recovery_converged");
  struct Acc {
    std::string group, label;
    std::vector<double> all, mat, conv;
  };
  std::vector<Acc> accs;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  bool multi_graph = false;
  for (const auto& r : t.rows) multi_graph |= r[c_graph] != "A";
  for (const auto& r : t.rows) {
    const std::string group = multi_graph ? r[c_setting] + " [" + r[c_graph] + "]" : r[c_setting];
    const std::string label = r[c_d] == "0" ? r[c_method] : r[c_method] + "-" + r[c_d];
    auto [it, fresh] = index.emplace(std::make_pair(group, label), accs.size());
    if (fresh) accs.push_back({group, label, {}, {}, {}});
    auto& a = accs[it->second];
    auto push = [](std::vector<double>& v, const std::string& cell) {
      if (cell != "NA" && !cell.empty()) v.push_back(std::stod(cell));
    };
    push(a.all, r[c_all]);
    push(a.mat, r[c_mat]);
    push(a.conv, r[c_conv]);
  }
  std::vector<Bar> out;
  for (const auto& a : accs) {
    Bar b;
    b.group = a.group;
    b.label = a.label;
    if (auto s = summarize(a.all)) b.all = *s;
    const auto conv = summarize(a.conv);
    const auto mat = summarize(a.mat);
    if (conv) {
      b.stacked = std::max(0.0, conv->mean - b.all.mean);
      b.stacked_kind = "converged";
    } else if (mat) {
      b.stacked = std::max(0.0, mat->mean - b.all.mean);
      b.stacked_kind = "matched";
    }
    out.push_back(std::move(b));
  }
  return out;
}

/// Grouped bar chart (one group per setting) as standalone SVG.
inline void write_svg(std::ostream& out, const std::vector<Bar>& bars, const std::string& title) {
  if (bars.empty()) throw InputError("plot: nothing to draw");
  std::vector<std::string> groups, labels;
  for (const auto& b : bars) {
    if (std::find(groups.begin(), groups.end(), b.group) == groups.end()) groups.push_back(b.group);
    if (std::find(labels.begin(), labels.end(), b.label) == labels.end()) labels.push_back(b.label);
  }
  static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                  "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  const double bar_w = 14.0, gap = 24.0, left = 60.0, top = 40.0, plot_h = 300.0;
  const double group_w = static_cast<double>(labels.size()) * bar_w + gap;
  const double width = left + static_cast<double>(groups.size()) * group_w + 180.0;
  const double height = top + plot_h + 120.0;
  auto y_of = [&](double v) { return top + plot_h * (1.0 - std::clamp(v, 0.0, 1.0)); };
  char buf[512];

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = tick / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\" "
                  "text-anchor=\"end\">%.2f</text>\n",
                  left, y_of(v), width - 180.0, y_of(v), left - 4.0, y_of(v) + 3.0, v);
    out << buf;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double x0 = left + static_cast<double>(g) * group_w + gap / 2.0;
    for (const auto& b : bars) {
      if (b.group != groups[g]) continue;
      const auto li = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), b.label) - labels.begin());
      const double x = x0 + static_cast<double>(li) * bar_w;
      const char* color = palette[li % 10];
      const double y_all = y_of(b.all.mean);
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"%s\"/>\n", x, y_all,
                    bar_w - 2.0, top + plot_h - y_all, color);
      out << buf;
      if (b.stacked > 0.0) {
        const double y_top = y_of(b.all.mean + b.stacked);
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"%s\" "
                      "fill-opacity=\"0.35\"><title>%s</title></rect>\n",
                      x, y_top, bar_w - 2.0, y_all - y_top, color, b.stacked_kind.c_str());
        out << buf;
      }
      const double xc = x + (bar_w - 2.0) / 2.0;
      std::snprintf(buf, sizeof buf,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", xc,
                    y_of(b.all.mean - b.all.std_error), xc, y_of(b.all.mean + b.all.std_error));
      out << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\" "
                  "transform=\"rotate(30 %.1f %.1f)\">",
                  x0, top + plot_h + 14.0, x0, top + plot_h + 14.0);
    out << buf << groups[g] << "</text>\n";
  }
  for (std::size_t l = 0; l < labels.size(); ++l) {
    const double y = top + 14.0 * static_cast<double>(l);
    const double x = width - 170.0;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"10\" height=\"10\" fill=\"%s\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\">",
                  x, y, palette[l % 10], x + 14.0, y + 9.0);
    out << buf << labels[l] << "</text>\n";
  }
  out << "</svg>\n";
}

/// Reads a results CSV and writes its bar chart.
inline std::vector<Bar> emit_plot(std::istream& csv, std::ostream& svg, const std::string& title) {
  const auto table = read_csv(csv);
  auto bars = bars_from_csv(table);
  write_svg(svg, bars, title);
  return bars;
}

}  // namespace dpmatch::bench

#endif  // DPMATCH_BENCH_PLOT_HPP_

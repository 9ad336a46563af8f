// Copyright 2026 The gojun Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gojun/error.hpp"
#include "gojun/experiments.hpp"
#include "gojun/text.hpp"

namespace gojun {

void ExperimentReport::skip(std::string_view reason, std::uint64_t count) {
  skipped[std::string(reason)] += count;
}

nlohmann::json ExperimentReport::to_json() const {
  auto table_json = [](const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i)
        obj[t.columns[i]] = row[i];
      rows.push_back(std::move(obj));
    }
    return rows;
  };
  nlohmann::json j;
  j["name"] = name;
  j["config"] = config;
  j["records"] = table_json(records);
  j["tests"] = nlohmann::json::array();
  for (const auto& t : tests) {
    nlohmann::json e = t.result ? gojun::to_json(*t.result) : nlohmann::json::object();
    e["name"] = t.name;
    if (!t.result) e["p_value"] = nullptr;
    if (!t.note.empty()) e["note"] = t.note;
    j["tests"].push_back(std::move(e));
  }
  j["skipped"] = nlohmann::json::object();
  for (const auto& [k, v] : skipped) j["skipped"][k] = v;
  j["summary"] = summary;
  j["extra"] = nlohmann::json::object();
  for (const auto& [k, t] : extra) j["extra"][k] = table_json(t);
  return j;
}

namespace {

std::string tsv_cell(const nlohmann::json& v) {
  switch (v.type()) {
    case nlohmann::json::value_t::null:
      return "NA";
    case nlohmann::json::value_t::boolean:
      return v.get<bool>() ? "true" : "false";
    case nlohmann::json::value_t::number_integer:
      return std::to_string(v.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned:
      return std::to_string(v.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float:
      return format_fixed(v.get<double>(), 6);
    case nlohmann::json::value_t::string: {
      std::string s = v.get<std::string>();
      std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; },
                      ' ');
      return s;
    }
    default:
      return v.dump();
  }
}

std::string xml_escape(std::string_view s) {
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

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

}  // namespace

std::string format_tsv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += '\t';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += tsv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_svg(const Plot& plot) {
  constexpr double kW = 480, kH = 360, kLeft = 64, kRight = 20, kTop = 40, kBottom = 56;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < plot.xs.size() && i < plot.ys.size(); ++i)
    if (std::isfinite(plot.xs[i]) && std::isfinite(plot.ys[i])) pts.emplace_back(plot.xs[i], plot.ys[i]);
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    x0 = x1 = pts[0].first;
    y0 = y1 = pts[0].second;
    for (auto [x, y] : pts) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  auto widen = [](double& lo, double& hi) {
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
  };
  widen(x0, x1);
  widen(y0, y1);
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return kTop + (1 - (y - y0) / (y1 - y0)) * ph; };
  auto f = [](double v) { return format_fixed(v, 2); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" "
       "viewBox=\"0 0 480 360\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<rect width=\"480\" height=\"360\" fill=\"white\"/>\n";
  s += "<text x=\"240\" y=\"22\" text-anchor=\"middle\" font-size=\"13\">" +
       xml_escape(plot.title) + "</text>\n";
  s += "<rect x=\"" + f(kLeft) + "\" y=\"" + f(kTop) + "\" width=\"" + f(pw) + "\" height=\"" +
       f(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    s += "<line x1=\"" + f(sx(xv)) + "\" y1=\"" + f(kTop + ph) + "\" x2=\"" + f(sx(xv)) +
         "\" y2=\"" + f(kTop + ph + 4) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + f(sx(xv)) + "\" y=\"" + f(kTop + ph + 16) +
         "\" text-anchor=\"middle\">" + format_fixed(xv, 2) + "</text>\n";
    s += "<line x1=\"" + f(kLeft - 4) + "\" y1=\"" + f(sy(yv)) + "\" x2=\"" + f(kLeft) +
         "\" y2=\"" + f(sy(yv)) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + f(kLeft - 6) + "\" y=\"" + f(sy(yv) + 4) + "\" text-anchor=\"end\">" +
         format_fixed(yv, 2) + "</text>\n";
  }
  s += "<text x=\"" + f(kLeft + pw / 2) + "\" y=\"" + f(kH - 12) + "\" text-anchor=\"middle\">" +
       xml_escape(plot.x_label) + "</text>\n";
  s += "<text transform=\"translate(16 " + f(kTop + ph / 2) +
       ") rotate(-90)\" text-anchor=\"middle\">" + xml_escape(plot.y_label) + "</text>\n";
  for (auto [x, y] : pts)
    s += "<circle cx=\"" + f(sx(x)) + "\" cy=\"" + f(sy(y)) +
         "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
  if (plot.regression_line && pts.size() >= 2) {
    std::vector<double> xs, ys;
    for (auto [x, y] : pts) {
      xs.push_back(x);
      ys.push_back(y);
    }
    try {
      const auto [slope, intercept] = least_squares(xs, ys);
      const double a = x0, b = x1;
      s += "<line x1=\"" + f(sx(a)) + "\" y1=\"" + f(sy(slope * a + intercept)) + "\" x2=\"" +
           f(sx(b)) + "\" y2=\"" + f(sy(slope * b + intercept)) +
           "\" stroke=\"firebrick\" stroke-width=\"1.5\"/>\n";
    } catch (const Error&) {
      // Constant x: no line to draw.
    }
  }
  s += "</svg>\n";
  return s;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& directory,
                  bool plots) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + directory.string() + ": " + ec.message());
  write_file(directory / "report.tsv", format_tsv(report.records));
  for (const auto& [name, table] : report.extra)
    write_file(directory / ("report." + name + ".tsv"), format_tsv(table));
  write_file(directory / "report.json", report.to_json().dump(2) + "\n");
  if (plots)
    for (const auto& p : report.plots)
      write_file(directory / ("report." + p.name + ".svg"), render_svg(p));
}

}  // namespace gojun

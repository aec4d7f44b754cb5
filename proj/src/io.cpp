// Copyright 2026 The insitu developers
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

#include "insitu/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace insitu {

namespace {

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string csv_artifact(const ArtifactMeta& meta,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  out << "# artifact_version: " << meta.artifact_version << "\n";
  for (const auto& [key, value] : meta.spec_echo)
    out << "# spec." << key << " = " << value << "\n";
  out << "# master_seed: " << meta.master_seed << "\n";
  if (meta.include_timestamp) out << "# timestamp: " << timestamp_utc() << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::invalid_argument("csv_artifact: row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

nlohmann::ordered_json json_envelope(const ArtifactMeta& meta) {
  nlohmann::ordered_json doc;
  doc["artifact_version"] = meta.artifact_version;
  nlohmann::ordered_json spec = nlohmann::ordered_json::object();
  for (const auto& [key, value] : meta.spec_echo) spec[key] = value;
  doc["spec"] = spec;
  doc["master_seed"] = meta.master_seed;
  if (meta.include_timestamp) doc["timestamp"] = timestamp_utc();
  return doc;
}

void write_json_atomic(const std::filesystem::path& path,
                       const nlohmann::ordered_json& doc) {
  write_text_atomic(path, doc.dump(2) + "\n");
}

CsvTable read_artifact_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      table.columns = cells;
      have_header = true;
      continue;
    }
    std::vector<double> row;
    for (const std::string& c : cells)
      row.push_back(c == "nan" ? std::nan("") : std::stod(c));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("no header row in " + path.string());
  return table;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

struct Span {
  double lo = 0.0, hi = 1.0;
  void grow(double v) {
    if (std::isnan(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

}  // namespace

void plot_csv_to_svg(const std::filesystem::path& csv_path,
                     const std::filesystem::path& svg_path) {
  const CsvTable table = read_artifact_csv(csv_path);
  if (table.columns.size() < 2 || table.rows.empty())
    throw std::runtime_error("plot: need at least two columns and one data row");

  const double width = 640, height = 420;
  const double ml = 70, mr = 20, mt = 30, mb = 45;

  Span xs, ys;
  xs.lo = xs.hi = table.rows.front()[0];
  bool first_y = true;
  for (const auto& row : table.rows) {
    xs.grow(row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (std::isnan(row[c])) continue;
      if (first_y) {
        ys.lo = ys.hi = row[c];
        first_y = false;
      } else {
        ys.grow(row[c]);
      }
    }
  }
  if (xs.hi == xs.lo) xs.hi = xs.lo + 1;
  if (ys.hi == ys.lo) ys.hi = ys.lo + 1;

  auto px = [&](double x) {
    return ml + (x - xs.lo) / (xs.hi - xs.lo) * (width - ml - mr);
  };
  auto py = [&](double y) {
    return height - mb - (y - ys.lo) / (ys.hi - ys.lo) * (height - mt - mb);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
      << width - mr << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";

  svg << "<text x=\"" << ml << "\" y=\"" << height - mb + 18
      << "\" font-size=\"11\" text-anchor=\"middle\">" << format_double(xs.lo)
      << "</text>\n";
  svg << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 18
      << "\" font-size=\"11\" text-anchor=\"middle\">" << format_double(xs.hi)
      << "</text>\n";
  svg << "<text x=\"" << ml - 6 << "\" y=\"" << height - mb
      << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(ys.lo)
      << "</text>\n";
  svg << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
      << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(ys.hi)
      << "</text>\n";
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 8
      << "\" font-size=\"12\" text-anchor=\"middle\">" << table.columns[0]
      << "</text>\n";

  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    const char* color = kPalette[(c - 1) % 6];
    std::ostringstream pts;
    for (const auto& row : table.rows) {
      if (c >= row.size() || std::isnan(row[c])) continue;
      pts << px(row[0]) << "," << py(row[c]) << " ";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
    svg << "<text x=\"" << width - mr - 4 << "\" y=\"" << mt + 14 * c
        << "\" font-size=\"11\" fill=\"" << color
        << "\" text-anchor=\"end\">" << table.columns[c] << "</text>\n";
  }
  svg << "</svg>\n";
  write_text_atomic(svg_path, svg.str());
}

}  // namespace insitu

// Copyright 2026 The Floorplan Authors
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

#include "floorplan/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace floorplan {

namespace {

const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
                          "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
                          "#d9d9d9", "#bc80bd"};

std::string EscapeXml(const std::string& text) {
  std::string out;
  for (char c : text) {
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

std::string Num(const Rat& value) { return FormatDecimal(value, 6); }

}  // namespace

std::string RenderSvg(const Placement& placement, const SvgOptions& options) {
  const Rat& s = options.scale;
  Rat width = placement.region_w * s;
  Rat height = placement.region_h * s;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(width)
      << "\" height=\"" << Num(height) << "\" viewBox=\"0 0 " << Num(width)
      << " " << Num(height) << "\">\n";
  svg << "  <defs>\n"
         "    <pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" "
         "width=\"6\" height=\"6\">\n"
         "      <path d=\"M0,6 L6,0\" stroke=\"#00000055\" "
         "stroke-width=\"1\"/>\n"
         "    </pattern>\n"
         "  </defs>\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << Num(width) << "\" height=\""
      << Num(height) << "\" fill=\""
      << (options.shade_dead_space ? "#efe9dc" : "none")
      << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

  size_t palette_size = sizeof(kPalette) / sizeof(kPalette[0]);
  for (size_t i = 0; i < placement.blocks.size(); ++i) {
    const PlacedBlock& b = placement.blocks[i];
    Rat x = b.x * s;
    Rat y = (placement.region_h - b.y - b.placed_h) * s;  // flip to y-up
    Rat w = b.placed_w * s;
    Rat h = b.placed_h * s;
    svg << "  <rect x=\"" << Num(x) << "\" y=\"" << Num(y) << "\" width=\""
        << Num(w) << "\" height=\"" << Num(h) << "\" fill=\""
        << kPalette[i % palette_size]
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    if (b.rotated) {
      svg << "  <rect x=\"" << Num(x) << "\" y=\"" << Num(y)
          << "\" width=\"" << Num(w) << "\" height=\"" << Num(h)
          << "\" fill=\"url(#hatch)\" stroke=\"none\"/>\n";
    }
    if (options.label_blocks) {
      Rat cx = x + w / 2;
      Rat cy = y + h / 2;
      Rat font = (w < h ? w : h) * 2 / 5;
      svg << "  <text x=\"" << Num(cx) << "\" y=\"" << Num(cy)
          << "\" font-size=\"" << Num(font)
          << "\" font-family=\"sans-serif\" text-anchor=\"middle\" "
             "dominant-baseline=\"central\" fill=\"#222222\">"
          << EscapeXml(b.id) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

std::string CsvField(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

std::string FormatSeconds(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", seconds);
  return buf;
}

}  // namespace

std::string EmitTable(const std::vector<SolveReport>& reports,
                      TableFormat format) {
  const std::vector<std::string> header = {"circuit", "blocks",  "area",
                                           "dead %",  "time (s)", "queries",
                                           "status"};
  std::vector<std::vector<std::string>> rows;
  for (const SolveReport& r : reports) {
    rows.push_back({r.instance_name, std::to_string(r.block_count),
                    FormatRational(r.area), FormatDecimal(r.dead_space_pct, 4),
                    FormatSeconds(r.wall_time_sec),
                    std::to_string(r.solver_queries), StatusName(r.status)});
  }

  std::ostringstream out;
  if (format == TableFormat::kCsv) {
    for (size_t c = 0; c < header.size(); ++c) {
      if (c) out << ",";
      out << CsvField(header[c]);
    }
    out << "\n";
    for (const auto& row : rows) {
      for (size_t c = 0; c < row.size(); ++c) {
        if (c) out << ",";
        out << CsvField(row[c]);
      }
      out << "\n";
    }
    return out.str();
  }

  std::vector<size_t> width(header.size());
  for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  // circuit and status are left-aligned, the numeric middle right-aligned
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      bool left = c == 0 || c == row.size() - 1;
      if (left) {
        out << row[c];
        if (c != row.size() - 1) {
          out << std::string(width[c] - row[c].size(), ' ');
        }
      } else {
        out << std::string(width[c] - row[c].size(), ' ') << row[c];
      }
    }
    out << "\n";
  };
  emit_row(header);
  for (const auto& row : rows) emit_row(row);
  return out.str();
}

}  // namespace floorplan

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

#include "floorplan/ingest.hpp"

#include <algorithm>
#include <sstream>

namespace floorplan {

namespace {

std::vector<std::string> SplitWs(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string StripComment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

[[noreturn]] void Fail(Errc code, const std::string& path, int line,
                       const std::string& what) {
  throw Error(code, path + ":" + std::to_string(line) + ": " + what);
}

Rat ParsePositive(const std::string& tok, Errc code, const std::string& path,
                  int line, const std::string& what) {
  auto v = ParseRational(tok);
  if (!v) Fail(Errc::kFormatError, path, line, what + " '" + tok + "'");
  if (*v <= 0) Fail(code, path, line, what + " must be positive");
  return *v;
}

}  // namespace

ProblemInstance ParseNative(const std::string& text,
                            const std::string& source_path) {
  ProblemInstance inst;
  bool saw_header = false;
  bool saw_sort = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = SplitWs(StripComment(raw));
    if (toks.empty()) continue;

    if (!saw_header) {
      if (toks[0] != "instance" || toks.size() < 4 || toks[2] != "mode") {
        Fail(Errc::kFormatError, source_path, lineno,
             "expected 'instance <name> mode <case> [sort <int|real>]'");
      }
      inst.name = toks[1];
      if (toks[3] == "case1") {
        inst.mode = SolveMode::kCase1;
      } else if (toks[3] == "case2") {
        inst.mode = SolveMode::kCase2;
      } else if (toks[3] == "case3") {
        inst.mode = SolveMode::kCase3;
      } else {
        Fail(Errc::kFormatError, source_path, lineno,
             "unknown mode '" + toks[3] + "'");
      }
      if (toks.size() == 6 && toks[4] == "sort") {
        if (toks[5] == "int") {
          inst.coordinate_sort = CoordSort::kInteger;
        } else if (toks[5] == "real") {
          inst.coordinate_sort = CoordSort::kReal;
        } else {
          Fail(Errc::kFormatError, source_path, lineno,
               "unknown sort '" + toks[5] + "'");
        }
        saw_sort = true;
      } else if (toks.size() != 4) {
        Fail(Errc::kFormatError, source_path, lineno, "trailing tokens");
      }
      if (!saw_sort) inst.coordinate_sort = DefaultSort(inst.mode);
      saw_header = true;
      continue;
    }

    const std::string& kind = toks[0];
    if (kind == "hard" || kind == "rot") {
      if (toks.size() != 4) {
        Fail(Errc::kFormatError, source_path, lineno,
             "expected '" + kind + " <id> <w> <h>'");
      }
      Rat w = ParsePositive(toks[2], Errc::kBadDimension, source_path, lineno,
                            "width");
      Rat h = ParsePositive(toks[3], Errc::kBadDimension, source_path, lineno,
                            "height");
      inst.blocks.push_back(kind == "hard" ? Block::Hard(toks[1], w, h)
                                           : Block::Rotatable(toks[1], w, h));
    } else if (kind == "soft") {
      if (toks.size() != 5) {
        Fail(Errc::kFormatError, source_path, lineno,
             "expected 'soft <id> <area> <amin> <amax>'");
      }
      Rat area = ParsePositive(toks[2], Errc::kBadDimension, source_path,
                               lineno, "area");
      Rat amin = ParsePositive(toks[3], Errc::kBadDimension, source_path,
                               lineno, "aspect_min");
      Rat amax = ParsePositive(toks[4], Errc::kBadDimension, source_path,
                               lineno, "aspect_max");
      if (amin > amax) {
        Fail(Errc::kBadDimension, source_path, lineno,
             "aspect_min > aspect_max");
      }
      inst.blocks.push_back(Block::Soft(toks[1], area, amin, amax));
    } else {
      Fail(Errc::kFormatError, source_path, lineno,
           "unknown block kind '" + kind + "'");
    }
  }
  if (!saw_header) {
    throw Error(Errc::kFormatError, source_path + ": missing header line");
  }
  inst.Check();
  return inst;
}

std::string SerializeNative(const ProblemInstance& instance) {
  std::string out = "instance " + instance.name + " mode " +
                    ModeName(instance.mode) + " sort " +
                    (instance.coordinate_sort == CoordSort::kInteger ? "int"
                                                                     : "real") +
                    "\n";
  for (const Block& b : instance.blocks) {
    switch (b.kind) {
      case BlockKind::kHard:
        out += "hard " + b.id + " " + FormatRational(b.width) + " " +
               FormatRational(b.height) + "\n";
        break;
      case BlockKind::kRotatable:
        out += "rot " + b.id + " " + FormatRational(b.width) + " " +
               FormatRational(b.height) + "\n";
        break;
      case BlockKind::kSoft:
        out += "soft " + b.id + " " + FormatRational(b.area) + " " +
               FormatRational(b.aspect_min) + " " +
               FormatRational(b.aspect_max) + "\n";
        break;
    }
  }
  return out;
}

namespace {

// Pulls "( x , y ) ( x , y ) ..." apart, tolerating spaces around commas and
// parentheses. Returns false on any malformed vertex.
bool ParseVertices(const std::vector<std::string>& toks, size_t start,
                   std::vector<std::pair<Rat, Rat>>* out) {
  std::string joined;
  for (size_t i = start; i < toks.size(); ++i) {
    joined += toks[i];
  }
  size_t pos = 0;
  while (pos < joined.size()) {
    if (joined[pos] != '(') return false;
    auto close = joined.find(')', pos);
    if (close == std::string::npos) return false;
    std::string body = joined.substr(pos + 1, close - pos - 1);
    auto comma = body.find(',');
    if (comma == std::string::npos) return false;
    auto x = ParseRational(body.substr(0, comma));
    auto y = ParseRational(body.substr(comma + 1));
    if (!x || !y) return false;
    out->emplace_back(*x, *y);
    pos = close + 1;
  }
  return !out->empty();
}

}  // namespace

GsrcBlocks ParseGsrcBlocks(const std::string& text,
                           const std::string& source_path) {
  GsrcBlocks result;
  result.diagnostics.source_path = source_path;

  int declared_soft = -1, declared_hard = -1, declared_terminals = -1;
  int seen_soft = 0, seen_hard = 0, seen_terminals = 0;
  bool saw_magic = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = SplitWs(StripComment(raw));
    if (toks.empty()) continue;

    if (!saw_magic) {
      if (toks[0] != "UCSC" || toks.size() < 2 || toks[1] != "blocks") {
        Fail(Errc::kFormatError, source_path, lineno,
             "expected 'UCSC blocks <version>' header");
      }
      saw_magic = true;
      continue;
    }

    // Count lines come as `Name : N`, with or without spaces.
    std::string joined;
    for (const auto& t : toks) joined += t;
    auto colon = joined.find(':');
    if (colon != std::string::npos && joined.rfind("Num", 0) == 0) {
      std::string key = joined.substr(0, colon);
      int value = 0;
      try {
        value = std::stoi(joined.substr(colon + 1));
      } catch (...) {
        Fail(Errc::kFormatError, source_path, lineno, "bad count");
      }
      if (key == "NumSoftRectangularBlocks") {
        declared_soft = value;
      } else if (key == "NumHardRectilinearBlocks") {
        declared_hard = value;
      } else if (key == "NumTerminals") {
        declared_terminals = value;
      } else {
        result.diagnostics.warnings.emplace_back(
            lineno, "ignored count '" + key + "'");
      }
      continue;
    }

    if (toks.size() >= 2 && toks[1] == "terminal") {
      ++seen_terminals;
      result.diagnostics.warnings.emplace_back(
          lineno, "terminal '" + toks[0] + "' skipped");
      continue;
    }

    if (toks.size() >= 2 && toks[1] == "softrectangular") {
      if (toks.size() != 5) {
        Fail(Errc::kFormatError, source_path, lineno,
             "expected '<name> softrectangular <area> <min> <max>'");
      }
      Rat area = ParsePositive(toks[2], Errc::kBadDimension, source_path,
                               lineno, "area");
      Rat amin = ParsePositive(toks[3], Errc::kBadDimension, source_path,
                               lineno, "minAspect");
      Rat amax = ParsePositive(toks[4], Errc::kBadDimension, source_path,
                               lineno, "maxAspect");
      if (amin > amax) {
        Fail(Errc::kBadDimension, source_path, lineno, "aspect band empty");
      }
      result.blocks.push_back(Block::Soft(toks[0], area, amin, amax));
      ++seen_soft;
      continue;
    }

    if (toks.size() >= 3 && toks[1] == "hardrectilinear") {
      int vertex_count = 0;
      try {
        vertex_count = std::stoi(toks[2]);
      } catch (...) {
        Fail(Errc::kFormatError, source_path, lineno, "bad vertex count");
      }
      if (vertex_count != 4) {
        throw Error(Errc::kNonRectangularBlock,
                    toks[0] + " has " + std::to_string(vertex_count) +
                        " vertices");
      }
      std::vector<std::pair<Rat, Rat>> vertices;
      if (!ParseVertices(toks, 3, &vertices) || vertices.size() != 4) {
        Fail(Errc::kFormatError, source_path, lineno, "malformed vertex list");
      }
      // An axis-aligned rectangle: two distinct x values, two distinct y
      // values, and all four corner combinations present.
      std::vector<Rat> xs, ys;
      for (const auto& [x, y] : vertices) {
        if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
        if (std::find(ys.begin(), ys.end(), y) == ys.end()) ys.push_back(y);
      }
      bool rectangular = xs.size() == 2 && ys.size() == 2;
      if (rectangular) {
        for (const Rat& x : xs) {
          for (const Rat& y : ys) {
            if (std::count(vertices.begin(), vertices.end(),
                           std::make_pair(x, y)) != 1) {
              rectangular = false;
            }
          }
        }
      }
      if (!rectangular) {
        throw Error(Errc::kNonRectangularBlock, toks[0]);
      }
      Rat w = xs[0] > xs[1] ? xs[0] - xs[1] : xs[1] - xs[0];
      Rat h = ys[0] > ys[1] ? ys[0] - ys[1] : ys[1] - ys[0];
      if (w <= 0 || h <= 0) {
        Fail(Errc::kBadDimension, source_path, lineno, toks[0]);
      }
      result.blocks.push_back(Block::Hard(toks[0], w, h));
      ++seen_hard;
      continue;
    }

    Fail(Errc::kFormatError, source_path, lineno,
         "unrecognized line '" + raw + "'");
  }

  if (!saw_magic) {
    throw Error(Errc::kFormatError, source_path + ": missing UCSC header");
  }
  if (declared_soft >= 0 && declared_soft != seen_soft) {
    throw Error(Errc::kCountMismatch,
                "soft blocks: declared " + std::to_string(declared_soft) +
                    ", parsed " + std::to_string(seen_soft));
  }
  if (declared_hard >= 0 && declared_hard != seen_hard) {
    throw Error(Errc::kCountMismatch,
                "hard blocks: declared " + std::to_string(declared_hard) +
                    ", parsed " + std::to_string(seen_hard));
  }
  if (declared_terminals >= 0 && declared_terminals != seen_terminals) {
    throw Error(Errc::kCountMismatch,
                "terminals: declared " + std::to_string(declared_terminals) +
                    ", parsed " + std::to_string(seen_terminals));
  }
  return result;
}

ProblemInstance InstanceFromGsrc(
    const GsrcBlocks& parsed, const std::string& name,
    std::optional<SolveMode> mode,
    std::optional<std::pair<Rat, Rat>> force_aspect) {
  ProblemInstance inst;
  inst.name = name;
  inst.blocks = parsed.blocks;

  if (force_aspect) {
    for (Block& b : inst.blocks) {
      if (b.kind == BlockKind::kSoft) {
        b.aspect_min = force_aspect->first;
        b.aspect_max = force_aspect->second;
      }
    }
  }

  bool all_soft = !inst.blocks.empty();
  for (const Block& b : inst.blocks) {
    if (b.kind != BlockKind::kSoft) all_soft = false;
  }
  if (mode) {
    inst.mode = *mode;
  } else if (all_soft) {
    inst.mode = SolveMode::kCase3;
  } else {
    throw Error(Errc::kModeMismatch,
                "mode flag required unless every block is soft");
  }
  // Requesting case2 on a GSRC file means "allow rotation": promote the
  // parsed hard outlines to rotatable blocks.
  if (inst.mode == SolveMode::kCase2) {
    for (Block& b : inst.blocks) {
      if (b.kind == BlockKind::kHard) b.kind = BlockKind::kRotatable;
    }
  }
  // GSRC hard blocks may carry rational dimensions; pick the sort that fits.
  inst.coordinate_sort = DefaultSort(inst.mode);
  if (inst.coordinate_sort == CoordSort::kInteger) {
    for (const Block& b : inst.blocks) {
      if (!IsInteger(b.width) || !IsInteger(b.height)) {
        inst.coordinate_sort = CoordSort::kReal;
        break;
      }
    }
  }
  inst.Check();
  return inst;
}

}  // namespace floorplan

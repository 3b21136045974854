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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "floorplan/clustering.hpp"
#include "floorplan/config.hpp"
#include "floorplan/encoder.hpp"
#include "floorplan/ingest.hpp"
#include "floorplan/placement_io.hpp"
#include "floorplan/report.hpp"
#include "floorplan/solver.hpp"
#include "floorplan/validate.hpp"

namespace {

using namespace floorplan;

// Exit codes: 0 success, 1 usage/input/config trouble, 2 infeasible,
// 3 solver-side failure (backend missing, protocol breakage, timeout with
// nothing in hand), 4 validation violations.
int ExitCodeFor(Errc code) {
  switch (code) {
    case Errc::kBackendUnavailable:
    case Errc::kProtocolError:
    case Errc::kIncompleteModel:
    case Errc::kEncodingBug:
      return 3;
    default:
      return 1;
  }
}

std::string ReadFileOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::kFormatError, path + ": cannot read");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFileOrThrow(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    throw Error(Errc::kFormatError, path + ": cannot write");
  }
}

Rat ParsePositiveRat(const std::string& text, const std::string& what) {
  auto v = ParseRational(text);
  if (!v || *v <= 0) {
    throw Error(Errc::kConfigError, what + " must be a positive number, got '" +
                                        text + "'");
  }
  return *v;
}

SolveMode ParseMode(const std::string& text) {
  if (text == "case1") return SolveMode::kCase1;
  if (text == "case2") return SolveMode::kCase2;
  if (text == "case3") return SolveMode::kCase3;
  throw Error(Errc::kConfigError,
              "mode must be case1|case2|case3, got '" + text + "'");
}

// Options shared by every subcommand that loads an instance.
struct LoadOpts {
  std::string input;
  std::string format;      // "", "native", "gsrc"
  std::string mode;        // "", "case1", "case2", "case3"
  std::string sort;        // "", "int", "real"
  std::string unit_scale;  // rational multiplier on all dimensions
  std::string force_aspect;  // "LO:HI" soft ratio band override
};

void AddLoadOpts(CLI::App* cmd, LoadOpts& opts) {
  cmd->add_option("input", opts.input, "Instance file")->required();
  cmd->add_option("--format", opts.format, "Input format (default by extension)")
      ->check(CLI::IsMember({"native", "gsrc"}));
  cmd->add_option("--mode", opts.mode, "Problem mode")
      ->check(CLI::IsMember({"case1", "case2", "case3"}));
  cmd->add_option("--sort", opts.sort, "Coordinate sort override")
      ->check(CLI::IsMember({"int", "real"}));
  cmd->add_option("--unit-scale", opts.unit_scale,
                  "Multiply every dimension by this factor on ingest");
  cmd->add_option("--force-aspect", opts.force_aspect,
                  "Override soft-block ratio bands, as LO:HI");
}

std::optional<std::pair<Rat, Rat>> ParseForceAspect(const std::string& text) {
  if (text.empty()) return std::nullopt;
  size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(Errc::kConfigError, "--force-aspect expects LO:HI");
  }
  Rat lo = ParsePositiveRat(text.substr(0, colon), "--force-aspect low bound");
  Rat hi = ParsePositiveRat(text.substr(colon + 1), "--force-aspect high bound");
  if (lo > hi) {
    throw Error(Errc::kConfigError, "--force-aspect bounds are reversed");
  }
  return std::make_pair(lo, hi);
}

void ScaleBlocks(std::vector<Block>& blocks, const Rat& factor) {
  for (Block& b : blocks) {
    if (b.kind == BlockKind::kSoft) {
      b.area *= factor * factor;  // aspect band is dimensionless
    } else {
      b.width *= factor;
      b.height *= factor;
    }
  }
}

ProblemInstance LoadInstance(const LoadOpts& opts) {
  namespace fs = std::filesystem;
  std::string format = opts.format;
  if (format.empty()) {
    format = fs::path(opts.input).extension() == ".blocks" ? "gsrc" : "native";
  }
  std::optional<SolveMode> mode_flag;
  if (!opts.mode.empty()) mode_flag = ParseMode(opts.mode);
  std::optional<Rat> scale;
  if (!opts.unit_scale.empty()) {
    scale = ParsePositiveRat(opts.unit_scale, "--unit-scale");
  }

  std::string text = ReadFileOrThrow(opts.input);
  ProblemInstance instance;
  if (format == "gsrc") {
    GsrcBlocks parsed = ParseGsrcBlocks(text, opts.input);
    for (const auto& [line, message] : parsed.diagnostics.warnings) {
      std::cerr << opts.input << ":" << line << ": warning: " << message
                << "\n";
    }
    if (scale) ScaleBlocks(parsed.blocks, *scale);
    instance = InstanceFromGsrc(parsed, fs::path(opts.input).stem().string(),
                                mode_flag, ParseForceAspect(opts.force_aspect));
  } else {
    instance = ParseNative(text, opts.input);
    if (mode_flag && *mode_flag != instance.mode) {
      // Asking for the rotating mode on a fixed-block file means "let these
      // blocks rotate", mirroring the GSRC reader. Everything else would
      // silently reinterpret the data, so it is refused.
      if (instance.mode == SolveMode::kCase1 &&
          *mode_flag == SolveMode::kCase2) {
        instance.mode = SolveMode::kCase2;
        for (Block& b : instance.blocks) {
          if (b.kind == BlockKind::kHard) {
            b = Block::Rotatable(b.id, b.width, b.height);
          }
        }
      } else {
        throw Error(Errc::kModeMismatch,
                    opts.input + " declares mode " + ModeName(instance.mode) +
                        "; --mode " + ModeName(*mode_flag) +
                        " cannot reinterpret it");
      }
    }
    if (scale) ScaleBlocks(instance.blocks, *scale);
    if (auto aspect = ParseForceAspect(opts.force_aspect)) {
      for (Block& b : instance.blocks) {
        if (b.kind == BlockKind::kSoft) {
          b.aspect_min = aspect->first;
          b.aspect_max = aspect->second;
        }
      }
    }
  }

  if (!opts.sort.empty()) {
    instance.coordinate_sort =
        opts.sort == "int" ? CoordSort::kInteger : CoordSort::kReal;
  } else if (scale && instance.coordinate_sort == CoordSort::kInteger) {
    // Scaling may make integer data fractional; fall back to real rather
    // than failing, unless the user pinned the sort explicitly.
    for (const Block& b : instance.blocks) {
      if (b.kind != BlockKind::kSoft &&
          (!IsInteger(b.width) || !IsInteger(b.height))) {
        instance.coordinate_sort = CoordSort::kReal;
        break;
      }
    }
  }
  instance.Check();
  return instance;
}

// Backend/search options shared by solve (and partially by encode).
struct BackendOpts {
  std::string config_path;
  std::string backend;
  std::string dialect;  // "", "plain", "optimizing"
  double timeout = 0;   // 0 = keep resolved default
  int jobs = 0;
  std::string runs_dir;
};

void AddBackendOpts(CLI::App* cmd, BackendOpts& opts) {
  cmd->add_option("--config", opts.config_path,
                  "Key=value config file (backend, dialect, timeout, jobs, "
                  "runs_dir)");
  cmd->add_option("--backend", opts.backend, "SMT solver executable");
  cmd->add_option("--dialect", opts.dialect, "Backend dialect")
      ->check(CLI::IsMember({"plain", "optimizing"}));
  cmd->add_option("--timeout", opts.timeout, "Per-query timeout in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", opts.jobs, "Parallel solver process budget")
      ->check(CLI::Range(1, 256));
  cmd->add_option("--runs-dir", opts.runs_dir, "Query transcript directory");
}

BackendConfig ResolveBackendOpts(const BackendOpts& opts) {
  std::map<std::string, std::string> file_config;
  if (!opts.config_path.empty()) {
    try {
      file_config = ParseConfigText(ReadFileOrThrow(opts.config_path));
    } catch (const Error& e) {
      if (e.code() == Errc::kConfigError) {
        throw Error(Errc::kConfigError,
                    opts.config_path + ": " + e.what());
      }
      throw;
    }
  }
  std::optional<std::string> cli_backend;
  if (!opts.backend.empty()) cli_backend = opts.backend;
  BackendConfig config = ResolveBackend(cli_backend, file_config,
                                        std::getenv("FLOORPLAN_BACKEND"));
  if (!opts.dialect.empty()) {
    config.dialect = opts.dialect == "optimizing" ? Dialect::kOptimizingSmt2
                                                  : Dialect::kPlainSmt2;
  }
  if (opts.timeout > 0) config.timeout_sec = opts.timeout;
  if (opts.jobs > 0) config.jobs = opts.jobs;
  if (!opts.runs_dir.empty()) config.runs_dir = opts.runs_dir;
  return config;
}

StrategyKind ParseStrategy(const std::string& text) {
  if (text == "native") return StrategyKind::kNativeObjective;
  if (text == "bisect") return StrategyKind::kAreaBisection;
  if (text == "sweep") return StrategyKind::kWidthSweep;
  throw Error(Errc::kConfigError,
              "strategy must be native|bisect|sweep, got '" + text + "'");
}

int CmdSolve(const LoadOpts& load, const BackendOpts& backend_opts,
             const std::string& strategy_flag, const std::string& tolerance_flag,
             int cluster_size, unsigned seed, const std::string& out_path,
             const std::string& svg_path, const std::string& csv_path) {
  // Flag-level incompatibility, checked before any file is touched.
  if (strategy_flag == "sweep" && load.mode == "case3") {
    throw Error(Errc::kConfigError,
                "the sweep strategy needs integer coordinates; case3 "
                "instances are real-valued");
  }

  BackendConfig config = ResolveBackendOpts(backend_opts);
  ProblemInstance instance = LoadInstance(load);

  StrategyKind strategy = strategy_flag.empty()
                              ? DefaultStrategy(instance, config)
                              : ParseStrategy(strategy_flag);

  Rat tolerance = 0;
  if (!tolerance_flag.empty()) {
    tolerance = ParsePositiveRat(tolerance_flag, "--tolerance");
  } else if (instance.coordinate_sort == CoordSort::kReal) {
    Rat total = 0;
    for (const Block& b : instance.blocks) total += b.BlockArea();
    tolerance = total / 1000;
  }

  SolveOutcome outcome;
  if (cluster_size > 0) {
    ClusterPlan plan = PlanClusters(instance, cluster_size, seed);
    outcome = SolveClustered(instance, plan, strategy, config, tolerance);
  } else {
    outcome = MinimizeArea(instance, strategy, config, tolerance);
  }

  std::cout << EmitTable({outcome.report}, TableFormat::kText);
  if (!csv_path.empty()) {
    WriteFileOrThrow(csv_path, EmitTable({outcome.report}, TableFormat::kCsv));
  }

  if (outcome.report.status == SolveStatus::kInfeasible) {
    std::cerr << "floorplan: instance is infeasible\n";
    return 2;
  }
  if (!outcome.placement) {
    std::cerr << "floorplan: search timed out with no incumbent placement\n";
    return 3;
  }

  auto violations =
      Validate(*outcome.placement, instance, DefaultTolerance(instance));
  if (!violations.empty()) {
    // MinimizeArea validates every model it accepts, so reaching this point
    // means a defect upstream; refuse to write the placement.
    for (const Violation& v : violations) {
      std::cerr << "floorplan: " << v.message << "\n";
    }
    return 3;
  }

  if (!out_path.empty()) {
    WriteFileOrThrow(out_path, WritePlacement(*outcome.placement));
  }
  if (!svg_path.empty()) {
    WriteFileOrThrow(svg_path, RenderSvg(*outcome.placement, SvgOptions{}));
  }
  return 0;
}

int CmdValidate(const std::string& placement_path, const LoadOpts& load,
                const std::string& tolerance_flag) {
  ProblemInstance instance = LoadInstance(load);
  Placement placement =
      ReadPlacement(ReadFileOrThrow(placement_path), placement_path);
  if (placement.instance_name != instance.name) {
    throw Error(Errc::kInstanceMismatch,
                "placement is for '" + placement.instance_name +
                    "', instance file defines '" + instance.name + "'");
  }
  Rat tolerance = tolerance_flag.empty()
                      ? DefaultTolerance(instance)
                      : ParsePositiveRat(tolerance_flag, "--tolerance");
  auto violations = Validate(placement, instance, tolerance);
  if (violations.empty()) {
    std::cout << "ok: " << placement.blocks.size()
              << " blocks, no violations\n";
    return 0;
  }
  for (const Violation& v : violations) {
    std::cout << v.message << "\n";
  }
  return 4;
}

int CmdEncode(const LoadOpts& load, const std::string& area_bound_flag,
              const std::string& region_cap_flag, const std::string& out_path) {
  ProblemInstance instance = LoadInstance(load);
  BigMParams bounds = ComputeBigMParams(instance);

  std::optional<RegionCap> cap;
  if (!region_cap_flag.empty()) {
    size_t x = region_cap_flag.find('x');
    if (x == std::string::npos) {
      throw Error(Errc::kConfigError, "--region-cap expects WIDTHxHEIGHT");
    }
    cap = RegionCap{
        ParsePositiveRat(region_cap_flag.substr(0, x), "--region-cap width"),
        ParsePositiveRat(region_cap_flag.substr(x + 1), "--region-cap height")};
  }

  ConstraintSystem system = [&] {
    switch (instance.mode) {
      case SolveMode::kCase1:
        return EncodeCase1(instance, bounds, cap);
      case SolveMode::kCase2:
        return EncodeCase2(instance, bounds, cap);
      case SolveMode::kCase3:
        return EncodeCase3(instance, bounds, cap);
    }
    throw Error(Errc::kConfigError, "unknown mode");
  }();
  if (!area_bound_flag.empty()) {
    AddAreaBound(system, ParsePositiveRat(area_bound_flag, "--area-bound"));
  }
  std::string script =
      EmitSmtlib(system, ChooseLogic(system, Objective::kNone), Objective::kNone);
  if (out_path.empty()) {
    std::cout << script;
  } else {
    WriteFileOrThrow(out_path, script);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SMT-driven rectangular floorplanner"};
  app.require_subcommand(1);

  LoadOpts solve_load;
  BackendOpts solve_backend;
  std::string solve_strategy, solve_tolerance, solve_out, solve_svg, solve_csv;
  int solve_cluster = 0;
  unsigned solve_seed = 0;
  CLI::App* solve =
      app.add_subcommand("solve", "Find a minimal-area placement");
  AddLoadOpts(solve, solve_load);
  AddBackendOpts(solve, solve_backend);
  solve->add_option("--strategy", solve_strategy, "Search strategy")
      ->check(CLI::IsMember({"native", "bisect", "sweep"}));
  solve->add_option("--tolerance", solve_tolerance,
                    "Area tolerance for real-valued bisection");
  solve->add_option("--cluster-size", solve_cluster,
                    "Solve hierarchically in clusters of at most N blocks")
      ->check(CLI::PositiveNumber);
  solve->add_option("--seed", solve_seed, "Clustering tie-break seed");
  solve->add_option("--out", solve_out, "Write the placement here");
  solve->add_option("--svg", solve_svg, "Render the placement as SVG here");
  solve->add_option("--report-csv", solve_csv, "Write the report row as CSV");

  std::string val_placement, val_tolerance;
  LoadOpts val_load;
  CLI::App* validate =
      app.add_subcommand("validate", "Check a placement against an instance");
  validate->add_option("placement", val_placement, "Placement file")
      ->required();
  AddLoadOpts(validate, val_load);
  validate->add_option("--tolerance", val_tolerance,
                       "Relative tolerance for real-valued checks");

  LoadOpts enc_load;
  std::string enc_area_bound, enc_region_cap, enc_out;
  CLI::App* encode =
      app.add_subcommand("encode", "Emit the SMT-LIB2 encoding only");
  AddLoadOpts(encode, enc_load);
  auto* bound_opt = encode->add_option("--area-bound", enc_area_bound,
                                       "Assert region area <= this");
  auto* cap_opt = encode->add_option("--region-cap", enc_region_cap,
                                     "Assert region fits WIDTHxHEIGHT");
  bound_opt->excludes(cap_opt);
  cap_opt->excludes(bound_opt);
  encode->add_option("-o,--out", enc_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) {
      return CmdSolve(solve_load, solve_backend, solve_strategy,
                      solve_tolerance, solve_cluster, solve_seed, solve_out,
                      solve_svg, solve_csv);
    }
    if (validate->parsed()) {
      return CmdValidate(val_placement, val_load, val_tolerance);
    }
    if (encode->parsed()) {
      return CmdEncode(enc_load, enc_area_bound, enc_region_cap, enc_out);
    }
  } catch (const Error& e) {
    std::cerr << "floorplan: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "floorplan: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

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

#include "floorplan/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "floorplan/validate.hpp"

namespace floorplan {

namespace {

namespace fs = std::filesystem;

Rat Max(const Rat& a, const Rat& b) { return a > b ? a : b; }
Rat Min(const Rat& a, const Rat& b) { return a < b ? a : b; }

// Rational bracketing of sqrt(v) to ~1e-12, exact arithmetic throughout.
const BigInt kSqrtScale = []() {
  BigInt s = 1;
  for (int i = 0; i < 12; ++i) s *= 10;
  return s;
}();

Rat RatSqrtLower(const Rat& v) {
  if (v <= 0) return 0;
  BigInt scaled = FloorRat(v * Rat(kSqrtScale * kSqrtScale));
  return Rat(boost::multiprecision::sqrt(scaled)) / Rat(kSqrtScale);
}

Rat RatSqrtUpper(const Rat& v) {
  if (v <= 0) return 0;
  BigInt scaled = CeilRat(v * Rat(kSqrtScale * kSqrtScale));
  return Rat(boost::multiprecision::sqrt(scaled) + 1) / Rat(kSqrtScale);
}

// sqrt(v) when it is rational (numerator and denominator both perfect
// squares), nullopt otherwise. Keeps exact-square aspect bands solvable by
// construction instead of falling through the ~1e-12 brackets above.
std::optional<Rat> ExactSqrt(const Rat& v) {
  if (v < 0) return std::nullopt;
  if (v == 0) return Rat(0);
  BigInt num = numerator(v);
  BigInt den = denominator(v);
  BigInt rn = boost::multiprecision::sqrt(num);
  BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rat(rn) / Rat(rd);
}

// Tight rational bounds on sqrt(v): exact when v is a perfect square,
// bracketed otherwise.
Rat SqrtBoundBelow(const Rat& v) {
  if (auto e = ExactSqrt(v)) return *e;
  return RatSqrtLower(v);
}

Rat SqrtBoundAbove(const Rat& v) {
  if (auto e = ExactSqrt(v)) return *e;
  return RatSqrtUpper(v);
}

// ---------------------------------------------------------------------------
// Child process plumbing.

struct RawRun {
  bool timed_out = false;
  std::string out, err;
  int exit_code = 0;
};

void WriteAll(int fd, const std::string& data) {
  size_t off = 0;
  while (off < data.size()) {
    ssize_t n = write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;  // child may have exited early; the verdict parse decides
    }
    off += static_cast<size_t>(n);
  }
}

RawRun SpawnSolver(const std::vector<std::string>& argv,
                   const std::string& stdin_data, double timeout_sec) {
  signal(SIGPIPE, SIG_IGN);

  int in_pipe[2], out_pipe[2], err_pipe[2], exec_pipe[2];
  if (pipe(in_pipe) || pipe(out_pipe) || pipe(err_pipe) || pipe(exec_pipe)) {
    throw Error(Errc::kBackendUnavailable, "pipe: " + std::string(strerror(errno)));
  }
  fcntl(exec_pipe[1], F_SETFD, FD_CLOEXEC);

  pid_t pid = fork();
  if (pid < 0) {
    throw Error(Errc::kBackendUnavailable, "fork: " + std::string(strerror(errno)));
  }
  if (pid == 0) {
    dup2(in_pipe[0], 0);
    dup2(out_pipe[1], 1);
    dup2(err_pipe[1], 2);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    close(exec_pipe[0]);
    std::vector<char*> args;
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    int code = errno;
    ssize_t ignored = write(exec_pipe[1], &code, sizeof(code));
    (void)ignored;
    _exit(127);
  }

  close(in_pipe[0]);
  close(out_pipe[1]);
  close(err_pipe[1]);
  close(exec_pipe[1]);

  // A failed exec reports its errno through the CLOEXEC pipe.
  int exec_errno = 0;
  ssize_t got = read(exec_pipe[0], &exec_errno, sizeof(exec_errno));
  close(exec_pipe[0]);
  if (got > 0) {
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(err_pipe[0]);
    waitpid(pid, nullptr, 0);
    throw Error(Errc::kBackendUnavailable,
                argv[0] + ": " + strerror(exec_errno));
  }

  WriteAll(in_pipe[1], stdin_data);
  close(in_pipe[1]);

  RawRun result;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration<double>(timeout_sec);
  struct pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  bool open[2] = {true, true};
  std::string* sink[2] = {&result.out, &result.err};
  char buf[4096];
  while (open[0] || open[1]) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                    deadline - std::chrono::steady_clock::now())
                    .count();
    if (left <= 0) {
      result.timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    fds[0].events = open[0] ? POLLIN : 0;
    fds[1].events = open[1] ? POLLIN : 0;
    int rc = poll(fds, 2, static_cast<int>(std::min<long long>(left, 1000)));
    if (rc < 0 && errno != EINTR) break;
    for (int i = 0; i < 2; ++i) {
      if (!open[i]) continue;
      if (fds[i].revents & (POLLIN | POLLHUP)) {
        ssize_t n = read(fds[i].fd, buf, sizeof(buf));
        if (n > 0) {
          sink[i]->append(buf, static_cast<size_t>(n));
        } else if (n == 0 || (n < 0 && errno != EINTR && errno != EAGAIN)) {
          open[i] = false;
        }
      }
    }
  }
  close(out_pipe[0]);
  close(err_pipe[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string Trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

QueryOutcome RunQueryImpl(const std::string& script,
                          const BackendConfig& config,
                          const std::optional<std::string>& script_path) {
  std::vector<std::string> argv;
  argv.push_back(config.executable);
  for (const std::string& a : config.extra_args) argv.push_back(a);

  std::string stdin_data;
  std::string temp_path;
  if (config.script_as_file) {
    if (script_path) {
      argv.push_back(*script_path);
    } else {
      char tmpl[] = "/tmp/floorplan-XXXXXX";
      int fd = mkstemp(tmpl);
      if (fd < 0) {
        throw Error(Errc::kBackendUnavailable, "mkstemp failed");
      }
      WriteAll(fd, script);
      close(fd);
      temp_path = tmpl;
      argv.push_back(temp_path);
    }
  } else {
    stdin_data = script;
  }

  RawRun raw = SpawnSolver(argv, stdin_data, config.timeout_sec);
  if (!temp_path.empty()) unlink(temp_path.c_str());

  QueryOutcome outcome;
  outcome.raw_output = raw.out;
  if (raw.timed_out) {
    outcome.verdict = Verdict::kTimedOut;
    return outcome;
  }

  std::istringstream in(raw.out);
  std::string line;
  std::string rest;
  bool found = false;
  while (std::getline(in, line)) {
    if (found) {
      rest += line;
      rest += "\n";
      continue;
    }
    std::string t = Trimmed(line);
    if (t == "sat") {
      outcome.verdict = Verdict::kSat;
      found = true;
    } else if (t == "unsat") {
      outcome.verdict = Verdict::kUnsat;
      found = true;
    } else if (t == "unknown") {
      outcome.verdict = Verdict::kUnknown;
      found = true;
    }
  }
  if (!found) {
    std::string context = raw.out.substr(0, 400);
    if (!raw.err.empty()) context += "\nstderr: " + raw.err.substr(0, 400);
    throw Error(Errc::kProtocolError,
                "no sat/unsat/unknown verdict (exit " +
                    std::to_string(raw.exit_code) + "): " + context);
  }
  outcome.model_text = rest;
  return outcome;
}

}  // namespace

QueryOutcome RunQuery(const std::string& script, const BackendConfig& config) {
  return RunQueryImpl(script, config, std::nullopt);
}

// ---------------------------------------------------------------------------
// Model parsing.

namespace {

struct SExpr {
  bool atom = true;
  std::string text;
  std::vector<SExpr> kids;
};

std::vector<std::string> TokenizeSExpr(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&]() {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == ';') {  // comment to end of line
      flush();
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(' || c == ')') {
      flush();
      tokens.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return tokens;
}

SExpr ParseSExpr(const std::vector<std::string>& tokens, size_t& pos) {
  if (pos >= tokens.size()) {
    throw Error(Errc::kProtocolError, "unterminated s-expression");
  }
  if (tokens[pos] == "(") {
    SExpr node;
    node.atom = false;
    ++pos;
    while (pos < tokens.size() && tokens[pos] != ")") {
      node.kids.push_back(ParseSExpr(tokens, pos));
    }
    if (pos >= tokens.size()) {
      throw Error(Errc::kProtocolError, "missing ')' in solver output");
    }
    ++pos;  // consume ')'
    return node;
  }
  SExpr node;
  node.text = tokens[pos++];
  return node;
}

std::optional<Rat> ParseValueNode(const SExpr& node) {
  if (node.atom) {
    if (node.text == "true") return Rat(1);
    if (node.text == "false") return Rat(0);
    std::string t = node.text;
    if (!t.empty() && t.back() == '?') t.pop_back();  // approximation marker
    return ParseRational(t);
  }
  if (node.kids.empty()) return std::nullopt;
  const SExpr& head = node.kids[0];
  if (head.atom && head.text == "-" && node.kids.size() == 2) {
    auto v = ParseValueNode(node.kids[1]);
    if (v) return -*v;
    return std::nullopt;
  }
  if (head.atom && head.text == "/" && node.kids.size() == 3) {
    auto a = ParseValueNode(node.kids[1]);
    auto b = ParseValueNode(node.kids[2]);
    if (a && b && *b != 0) return *a / *b;
    return std::nullopt;
  }
  if (head.atom && head.text == "to_real" && node.kids.size() == 2) {
    return ParseValueNode(node.kids[1]);
  }
  return std::nullopt;
}

void CollectDefineFuns(const SExpr& node, std::map<std::string, Rat>& out) {
  if (node.atom) return;
  if (node.kids.size() >= 5 && node.kids[0].atom &&
      node.kids[0].text == "define-fun" && node.kids[1].atom &&
      !node.kids[2].atom && node.kids[2].kids.empty()) {
    auto value = ParseValueNode(node.kids.back());
    if (value) out[node.kids[1].text] = *value;
    return;  // bindings with non-numeric bodies are simply absent
  }
  for (const SExpr& kid : node.kids) CollectDefineFuns(kid, out);
}

}  // namespace

std::map<std::string, Rat> ParseModelValues(const std::string& model_text) {
  std::map<std::string, Rat> out;
  auto tokens = TokenizeSExpr(model_text);
  size_t pos = 0;
  while (pos < tokens.size()) {
    SExpr node = ParseSExpr(tokens, pos);
    CollectDefineFuns(node, out);
  }
  return out;
}

Placement ExtractPlacement(const std::string& model_text,
                           const ConstraintSystem& system,
                           const ProblemInstance& instance) {
  auto values = ParseModelValues(model_text);
  auto get = [&](const std::string& symbol) -> const Rat& {
    auto it = values.find(symbol);
    if (it == values.end()) {
      throw Error(Errc::kIncompleteModel, symbol);
    }
    return it->second;
  };

  Placement placement;
  placement.instance_name = instance.name;
  placement.region_w = get(system.region_w_sym);
  placement.region_h = get(system.region_h_sym);

  for (const Block& b : instance.blocks) {
    const BlockVars& vars = system.block_vars.at(b.id);
    PlacedBlock p;
    p.id = b.id;
    p.x = get(vars.x);
    p.y = get(vars.y);
    if (b.kind == BlockKind::kSoft) {
      p.placed_w = get(vars.width);
      p.placed_h = get(vars.height);
    } else if (!vars.rotation.empty()) {
      const Rat& z = get(vars.rotation);
      if (z != 0 && z != 1) {
        throw Error(Errc::kProtocolError,
                    vars.rotation + " = " + FormatRational(z) +
                        " is not a 0/1 rotation value");
      }
      p.rotated = z == 1;
      p.placed_w = p.rotated ? b.height : b.width;
      p.placed_h = p.rotated ? b.width : b.height;
    } else {
      p.placed_w = b.width;
      p.placed_h = b.height;
    }
    if (p.placed_w <= 0 || p.placed_h <= 0) {
      throw Error(Errc::kProtocolError,
                  b.id + ": model places a non-positive dimension");
    }
    placement.blocks.push_back(std::move(p));
  }
  return placement;
}

void TightenRegion(Placement& placement) {
  if (placement.blocks.empty()) return;
  Rat ext_w = 0, ext_h = 0;
  for (const PlacedBlock& p : placement.blocks) {
    ext_w = Max(ext_w, p.x + p.placed_w);
    ext_h = Max(ext_h, p.y + p.placed_h);
  }
  // Only ever shrink: a model whose blocks poke outside the declared region
  // must keep its region so the validator can flag the breach.
  placement.region_w = Min(placement.region_w, ext_w);
  placement.region_h = Min(placement.region_h, ext_h);
}

// ---------------------------------------------------------------------------
// Constructive packings.

namespace {

// Minimal realizable width/height of a block under the instance mode, used
// for lower bounds and candidate filtering.
Rat MinWidth(const Block& b, SolveMode mode) {
  switch (b.kind) {
    case BlockKind::kHard:
      return b.width;
    case BlockKind::kRotatable:
      return Min(b.width, b.height);
    case BlockKind::kSoft:
      return RatSqrtLower(b.area / b.aspect_max);
  }
  (void)mode;
  return 0;
}

Rat MinHeight(const Block& b, SolveMode mode) {
  switch (b.kind) {
    case BlockKind::kHard:
      return b.height;
    case BlockKind::kRotatable:
      return Min(b.width, b.height);
    case BlockKind::kSoft:
      return RatSqrtLower(b.area * b.aspect_min);
  }
  (void)mode;
  return 0;
}

Rat TotalArea(const ProblemInstance& instance) {
  Rat total = 0;
  for (const Block& b : instance.blocks) total += b.BlockArea();
  return total;
}

// First-fit decreasing-height shelf packing of fixed blocks at a target
// width. With allow_rotation, rotatable blocks lie down (long side
// horizontal) when that fits the shelf. Returns nullopt when something
// cannot fit the shelf or the result breaks the stacked-extent bounds;
// width_sum without rotation always succeeds (a single full row).
std::optional<Placement> ShelfPack(const ProblemInstance& instance,
                                   const BigMParams& bounds,
                                   const Rat& target_width,
                                   bool allow_rotation) {
  struct Item {
    const Block* block;
    Rat w, h;
    bool rotated;
  };
  std::vector<Item> items;
  for (const Block& b : instance.blocks) {
    Item it{&b, b.width, b.height, false};
    bool can_turn = allow_rotation && b.kind == BlockKind::kRotatable;
    if (can_turn && b.height > b.width && b.height <= target_width) {
      it = Item{&b, b.height, b.width, true};
    }
    if (it.w > target_width) {
      if (can_turn && b.height <= target_width) {
        it = Item{&b, b.height, b.width, true};
      } else {
        return std::nullopt;  // does not fit this shelf width at all
      }
    }
    items.push_back(it);
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.h > b.h; });

  Placement placement;
  placement.instance_name = instance.name;
  Rat shelf_y = 0, shelf_h = 0, cursor_x = 0;
  Rat ext_w = 0, ext_h = 0;
  for (const Item& it : items) {
    if (cursor_x + it.w > target_width) {
      shelf_y += shelf_h;
      shelf_h = 0;
      cursor_x = 0;
    }
    PlacedBlock p;
    p.id = it.block->id;
    p.x = cursor_x;
    p.y = shelf_y;
    p.placed_w = it.w;
    p.placed_h = it.h;
    p.rotated = it.rotated;
    placement.blocks.push_back(p);
    cursor_x += it.w;
    shelf_h = Max(shelf_h, it.h);
    ext_w = Max(ext_w, cursor_x);
    ext_h = Max(ext_h, shelf_y + it.h);
  }
  placement.region_w = ext_w;
  placement.region_h = ext_h;
  if (ext_w > bounds.width_sum || ext_h > bounds.height_sum) {
    return std::nullopt;  // rotation stacked shelves past the bounds
  }
  // Restore instance order for readable output.
  std::map<std::string, size_t> pos;
  for (size_t i = 0; i < instance.blocks.size(); ++i) {
    pos[instance.blocks[i].id] = i;
  }
  std::sort(placement.blocks.begin(), placement.blocks.end(),
            [&](const PlacedBlock& a, const PlacedBlock& b) {
              return pos.at(a.id) < pos.at(b.id);
            });
  return placement;
}

std::optional<Placement> ConstructFixed(const ProblemInstance& instance,
                                        const BigMParams& bounds) {
  Rat max_min_w = 0;
  for (const Block& b : instance.blocks) {
    max_min_w = Max(max_min_w, MinWidth(b, instance.mode));
  }
  std::set<Rat> widths;
  widths.insert(bounds.width_sum);
  widths.insert(Max(max_min_w, Rat(CeilSqrt(TotalArea(instance)))));
  widths.insert(max_min_w);
  for (const Block& b : instance.blocks) {
    widths.insert(Max(max_min_w, b.width));
  }

  std::optional<Placement> best;
  for (const Rat& w : widths) {
    if (w <= 0 || w > bounds.width_sum) continue;
    for (bool rotate : {false, true}) {
      auto candidate = ShelfPack(instance, bounds, w, rotate);
      if (candidate &&
          (!best || candidate->RegionArea() < best->RegionArea())) {
        best = candidate;
      }
    }
  }
  return best;
}

// Soft blocks stacked as full-width strips when one width suits every
// block's band, otherwise a vertical pile of individually shaped blocks.
std::optional<Placement> ConstructSoft(const ProblemInstance& instance,
                                       const BigMParams& bounds) {
  Rat total = TotalArea(instance);

  // Common strip width interval: w >= sqrt(A/amax), w <= sqrt(A/amin).
  Rat lo = 0, hi = bounds.width_sum;
  for (const Block& b : instance.blocks) {
    lo = Max(lo, SqrtBoundAbove(b.area / b.aspect_max));
    hi = Min(hi, SqrtBoundBelow(b.area / b.aspect_min));
  }
  // The stack must also respect the region bounds: height total/w <= H.
  if (bounds.height_sum > 0) lo = Max(lo, total / bounds.height_sum);

  auto strips_at = [&](const Rat& w) -> std::optional<Placement> {
    if (w <= 0) return std::nullopt;
    Placement placement;
    placement.instance_name = instance.name;
    Rat y = 0;
    for (const Block& b : instance.blocks) {
      Rat h = b.area / w;
      if (h < b.aspect_min * w || h > b.aspect_max * w) return std::nullopt;
      PlacedBlock p;
      p.id = b.id;
      p.x = 0;
      p.y = y;
      p.placed_w = w;
      p.placed_h = h;
      placement.blocks.push_back(p);
      y += h;
    }
    if (w > bounds.width_sum || y > bounds.height_sum) return std::nullopt;
    placement.region_w = w;
    placement.region_h = y;
    return placement;
  };

  std::optional<Placement> best;
  if (lo <= hi) {
    // Any width in [lo, hi] gives area exactly = total; prefer square-ish.
    Rat w = Max(lo, Min(hi, Rat(CeilSqrt(total))));
    best = strips_at(w);
    if (!best) best = strips_at(lo);
  }
  if (best) return best;

  // Fallback: each block shaped independently, piled bottom to top.
  Placement pile;
  pile.instance_name = instance.name;
  Rat y = 0, max_w = 0;
  for (const Block& b : instance.blocks) {
    Rat wlo = SqrtBoundAbove(b.area / b.aspect_max);
    Rat whi = SqrtBoundBelow(b.area / b.aspect_min);
    if (wlo > whi || wlo <= 0) return std::nullopt;  // degenerate band
    Rat w = Max(wlo, Min(whi, Rat(CeilSqrt(b.area))));
    Rat h = b.area / w;
    if (h < b.aspect_min * w || h > b.aspect_max * w) return std::nullopt;
    PlacedBlock p;
    p.id = b.id;
    p.x = 0;
    p.y = y;
    p.placed_w = w;
    p.placed_h = h;
    pile.blocks.push_back(p);
    y += h;
    max_w = Max(max_w, w);
  }
  if (max_w > bounds.width_sum || y > bounds.height_sum) return std::nullopt;
  pile.region_w = max_w;
  pile.region_h = y;
  return pile;
}

}  // namespace

std::optional<Placement> ConstructiveIncumbent(const ProblemInstance& instance,
                                               const BigMParams& bounds) {
  if (instance.mode == SolveMode::kCase3) {
    return ConstructSoft(instance, bounds);
  }
  return ConstructFixed(instance, bounds);
}

StrategyKind DefaultStrategy(const ProblemInstance& instance,
                             const BackendConfig& config) {
  if (config.dialect == Dialect::kOptimizingSmt2) {
    return StrategyKind::kNativeObjective;
  }
  return instance.coordinate_sort == CoordSort::kInteger
             ? StrategyKind::kWidthSweep
             : StrategyKind::kAreaBisection;
}

std::vector<Rat> SweepWidthCandidates(const ProblemInstance& instance,
                                      const BigMParams& bounds, size_t limit) {
  std::set<Rat> sums = {Rat(0)};
  for (const Block& b : instance.blocks) {
    std::set<Rat> next = sums;
    for (const Rat& s : sums) {
      Rat straight = s + b.width;
      if (straight <= bounds.width_sum) next.insert(straight);
      if (b.kind == BlockKind::kRotatable) {
        Rat turned = s + b.height;
        if (turned <= bounds.width_sum) next.insert(turned);
      }
    }
    sums = std::move(next);
    if (sums.size() > limit + 1) return {};  // caller falls back to bisection
  }
  Rat max_min_w = 0;
  for (const Block& b : instance.blocks) {
    max_min_w = Max(max_min_w, MinWidth(b, instance.mode));
  }
  std::vector<Rat> out;
  for (const Rat& s : sums) {
    if (s >= max_min_w && s > 0) out.push_back(s);
  }
  return out;
}

SolveReport MakeReport(const ProblemInstance& instance,
                       const std::optional<Placement>& placement,
                       SolveStatus status, double wall_time_sec, int queries) {
  SolveReport r;
  r.instance_name = instance.name;
  r.block_count = static_cast<int>(instance.blocks.size());
  r.total_block_area = TotalArea(instance);
  if (placement) {
    r.area = placement->RegionArea();
    r.dead_space_pct = DeadSpacePct(r.area, r.total_block_area);
  } else {
    r.area = 0;
    r.dead_space_pct = 0;
  }
  r.wall_time_sec = wall_time_sec;
  r.solver_queries = queries;
  r.status = status;
  return r;
}

// ---------------------------------------------------------------------------
// Minimization strategies.

namespace {

std::string SanitizePathComponent(const std::string& name) {
  std::string out;
  for (char c : name) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
            c == '_' || c == '.')
               ? c
               : '_';
  }
  return out.empty() ? "unnamed" : out;
}

// Runs queries for one instance, numbering and persisting transcripts.
class SolverSession {
 public:
  SolverSession(const BackendConfig& config, const std::string& instance_name)
      : config_(config) {
    dir_ = fs::path(config.runs_dir) / SanitizePathComponent(instance_name);
  }

  QueryOutcome Run(const ConstraintSystem& system, Objective objective) {
    std::string script;
    if (system.sort == CoordSort::kReal && config_.decimal_model_prelude) {
      script += "(set-option :pp.decimal true)\n";
      script += "(set-option :pp.decimal_precision 12)\n";
    }
    script += EmitSmtlib(system, ChooseLogic(system, objective), objective);

    ++counter_;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    fs::path base = dir_ / ("query-" + std::to_string(counter_));
    std::optional<std::string> script_path;
    {
      std::ofstream f(base.string() + ".smt2", std::ios::binary);
      f << script;
      if (f) script_path = base.string() + ".smt2";
    }
    QueryOutcome outcome;
    try {
      outcome = RunQueryImpl(script, config_, script_path);
    } catch (const Error&) {
      std::ofstream f(base.string() + ".out", std::ios::binary);
      f << "(backend error)\n";
      throw;
    }
    {
      std::ofstream f(base.string() + ".out", std::ios::binary);
      f << outcome.raw_output;
    }
    return outcome;
  }

  int queries() const { return counter_; }

 private:
  BackendConfig config_;
  fs::path dir_;
  int counter_ = 0;
};

ConstraintSystem EncodeFor(const ProblemInstance& instance,
                           const BigMParams& bounds,
                           std::optional<RegionCap> cap) {
  switch (instance.mode) {
    case SolveMode::kCase1:
      return EncodeCase1(instance, bounds, cap);
    case SolveMode::kCase2:
      return EncodeCase2(instance, bounds, cap);
    case SolveMode::kCase3:
      return EncodeCase3(instance, bounds, cap);
  }
  throw Error(Errc::kEncodingBug, "unreachable mode");
}

// Every accepted model must clear the validator before it may become the
// incumbent; a failure here is a defect in the encoding, not in the input.
Placement AcceptModel(const QueryOutcome& outcome,
                      const ConstraintSystem& system,
                      const ProblemInstance& instance) {
  Placement p = ExtractPlacement(outcome.model_text, system, instance);
  TightenRegion(p);
  auto violations = Validate(p, instance, DefaultTolerance(instance));
  if (!violations.empty()) {
    throw Error(Errc::kEncodingBug,
                "solver model fails validation: " + violations.front().message);
  }
  return p;
}

struct SearchContext {
  const ProblemInstance& instance;
  BigMParams bounds;
  SolverSession session;
  std::optional<Placement> incumbent;
  bool degraded = false;  // a query timed out or came back unknown
};

Rat AreaLowerBound(const ProblemInstance& instance, const BigMParams& bounds) {
  Rat total = TotalArea(instance);
  Rat max_min_w = 0, max_min_h = 0;
  for (const Block& b : instance.blocks) {
    max_min_w = Max(max_min_w, MinWidth(b, instance.mode));
    max_min_h = Max(max_min_h, MinHeight(b, instance.mode));
  }
  Rat lb = Max(total, max_min_w * max_min_h);
  (void)bounds;
  if (instance.coordinate_sort == CoordSort::kInteger) {
    return Rat(CeilRat(lb));
  }
  return lb;
}

void RunBisection(SearchContext& ctx, const Rat& tolerance) {
  const ProblemInstance& inst = ctx.instance;
  bool integral = inst.coordinate_sort == CoordSort::kInteger;
  Rat lower = AreaLowerBound(inst, ctx.bounds);
  Rat upper = ctx.incumbent ? ctx.incumbent->RegionArea()
                            : ctx.bounds.width_sum * ctx.bounds.height_sum;

  while (true) {
    bool closed = integral ? lower >= upper : upper - lower <= tolerance;
    if (closed) {
      if (!ctx.incumbent) {
        // The bracket closed before any model surfaced; the top bound is
        // met by stacking every block along the diagonal, so it must be
        // satisfiable unless the encoding is broken.
        ConstraintSystem system = EncodeFor(inst, ctx.bounds, std::nullopt);
        AddAreaBound(system, upper);
        QueryOutcome out = ctx.session.Run(system, Objective::kNone);
        if (out.verdict == Verdict::kSat) {
          ctx.incumbent = AcceptModel(out, system, inst);
        } else if (out.verdict == Verdict::kUnsat) {
          throw Error(Errc::kEncodingBug,
                      "stacked-extent area bound is unsatisfiable");
        } else {
          ctx.degraded = true;
        }
      }
      break;
    }

    Rat mid = integral ? Rat(FloorRat((lower + upper) / 2))
                       : (lower + upper) / 2;

    ConstraintSystem system = EncodeFor(inst, ctx.bounds, std::nullopt);
    AddAreaBound(system, mid);
    QueryOutcome out = ctx.session.Run(system, Objective::kNone);
    if (out.verdict == Verdict::kSat) {
      Placement p = AcceptModel(out, system, inst);
      Rat area = p.RegionArea();
      if (area > mid) {
        throw Error(Errc::kEncodingBug,
                    "model area exceeds the asserted bound");
      }
      if (area < lower) {
        throw Error(Errc::kEncodingBug,
                    "model area undercuts the packing lower bound");
      }
      ctx.incumbent = std::move(p);
      upper = area;
    } else if (out.verdict == Verdict::kUnsat) {
      if (ctx.incumbent && mid >= ctx.incumbent->RegionArea()) {
        throw Error(Errc::kEncodingBug,
                    "bound above a known model came back unsat");
      }
      lower = integral ? mid + 1 : mid;
    } else {
      ctx.degraded = true;
      break;
    }
  }
}

void RunWidthSweep(SearchContext& ctx, const Rat& tolerance) {
  const ProblemInstance& inst = ctx.instance;
  std::vector<Rat> candidates = SweepWidthCandidates(inst, ctx.bounds, 4096);
  if (candidates.empty()) {
    RunBisection(ctx, tolerance);
    return;
  }

  Rat total = TotalArea(inst);
  Rat max_min_h = 0;
  for (const Block& b : inst.blocks) {
    max_min_h = Max(max_min_h, MinHeight(b, inst.mode));
  }

  for (const Rat& width : candidates) {
    if (ctx.incumbent && width * max_min_h >= ctx.incumbent->RegionArea()) {
      break;  // candidates ascend; no later width can improve
    }
    Rat d_lo = Max(max_min_h, Rat(CeilRat(total / width)));
    Rat d_hi = ctx.bounds.height_sum;
    if (ctx.incumbent) {
      // Only heights that strictly improve the incumbent are interesting.
      d_hi = Min(d_hi,
                 Rat(FloorRat((ctx.incumbent->RegionArea() - 1) / width)));
    }
    while (d_lo <= d_hi) {
      Rat mid = Rat(FloorRat((d_lo + d_hi) / 2));
      ConstraintSystem system =
          EncodeFor(inst, ctx.bounds, RegionCap{width, mid});
      QueryOutcome out = ctx.session.Run(system, Objective::kNone);
      if (out.verdict == Verdict::kSat) {
        Placement p = AcceptModel(out, system, inst);
        if (!ctx.incumbent || p.RegionArea() < ctx.incumbent->RegionArea()) {
          ctx.incumbent = p;
        }
        d_hi = p.region_h - 1;
      } else if (out.verdict == Verdict::kUnsat) {
        d_lo = mid + 1;
      } else {
        ctx.degraded = true;
        break;
      }
    }
  }
}

void RunNativeObjective(SearchContext& ctx) {
  ConstraintSystem system = EncodeFor(ctx.instance, ctx.bounds, std::nullopt);
  QueryOutcome out = ctx.session.Run(system, Objective::kMinimizeProduct);
  if (out.verdict == Verdict::kSat) {
    Placement p = AcceptModel(out, system, ctx.instance);
    if (!ctx.incumbent || p.RegionArea() <= ctx.incumbent->RegionArea()) {
      ctx.incumbent = std::move(p);
    }
  } else if (out.verdict == Verdict::kUnsat) {
    throw Error(Errc::kEncodingBug,
                "unconstrained base system is unsatisfiable");
  } else {
    ctx.degraded = true;
  }
}

}  // namespace

SolveOutcome MinimizeArea(const ProblemInstance& instance,
                          StrategyKind strategy, const BackendConfig& config,
                          const Rat& tolerance) {
  instance.Check();
  if (instance.blocks.empty()) {
    throw Error(Errc::kInstanceEmpty, instance.name);
  }
  if (strategy == StrategyKind::kWidthSweep &&
      instance.coordinate_sort != CoordSort::kInteger) {
    throw Error(Errc::kConfigError,
                "the sweep strategy requires integer coordinates");
  }
  if (strategy == StrategyKind::kNativeObjective &&
      config.dialect != Dialect::kOptimizingSmt2) {
    throw Error(Errc::kConfigError,
                "the native strategy needs an optimizing backend dialect");
  }
  if (strategy == StrategyKind::kAreaBisection &&
      instance.coordinate_sort == CoordSort::kReal && tolerance <= 0) {
    throw Error(Errc::kConfigError,
                "bisection over real coordinates needs a positive tolerance");
  }

  auto start = std::chrono::steady_clock::now();
  SearchContext ctx{instance, ComputeBigMParams(instance),
                    SolverSession(config, instance.name), std::nullopt,
                    false};

  ctx.incumbent = ConstructiveIncumbent(instance, ctx.bounds);
  if (ctx.incumbent) {
    auto violations = Validate(*ctx.incumbent, instance,
                               DefaultTolerance(instance));
    if (!violations.empty()) {
      throw Error(Errc::kEncodingBug, "constructive incumbent invalid: " +
                                          violations.front().message);
    }
  }

  switch (strategy) {
    case StrategyKind::kNativeObjective:
      RunNativeObjective(ctx);
      break;
    case StrategyKind::kAreaBisection:
      RunBisection(ctx, tolerance);
      break;
    case StrategyKind::kWidthSweep:
      RunWidthSweep(ctx, tolerance);
      break;
  }

  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();

  SolveStatus status = !ctx.incumbent ? SolveStatus::kTimeout
                       : ctx.degraded ? SolveStatus::kFeasible
                                      : SolveStatus::kOptimal;

  SolveOutcome outcome;
  outcome.placement = ctx.incumbent;
  outcome.report = MakeReport(instance, ctx.incumbent, status, wall,
                              ctx.session.queries());
  return outcome;
}

}  // namespace floorplan

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

#include "floorplan/clustering.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "floorplan/validate.hpp"

namespace floorplan {

ClusterPlan PlanClusters(const ProblemInstance& instance, int threshold,
                         unsigned seed) {
  (void)seed;
  if (threshold <= 0) {
    throw Error(Errc::kConfigError, "cluster threshold must be positive");
  }
  if (instance.blocks.empty()) {
    throw Error(Errc::kInstanceEmpty, instance.name);
  }

  size_t n = instance.blocks.size();
  size_t k = (n + static_cast<size_t>(threshold) - 1) /
             static_cast<size_t>(threshold);

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return instance.blocks[a].BlockArea() > instance.blocks[b].BlockArea();
  });

  ClusterPlan plan;
  plan.threshold = threshold;
  plan.recomposition = instance.mode == SolveMode::kCase2
                           ? Recomposition::kSuperBlockCase2
                           : Recomposition::kSuperBlockCase1;
  plan.clusters.assign(k, {});
  std::vector<Rat> totals(k, Rat(0));
  for (size_t idx : order) {
    size_t pick = k;  // first not-yet-full cluster with the smallest total
    for (size_t c = 0; c < k; ++c) {
      if (plan.clusters[c].size() >= static_cast<size_t>(threshold)) continue;
      if (pick == k || totals[c] < totals[pick]) pick = c;
    }
    plan.clusters[pick].push_back(instance.blocks[idx].id);
    totals[pick] += instance.blocks[idx].BlockArea();
  }
  return plan;
}

namespace {

void CheckPartition(const ProblemInstance& instance, const ClusterPlan& plan) {
  std::map<std::string, const Block*> by_id;
  for (const Block& b : instance.blocks) by_id[b.id] = &b;
  std::set<std::string> seen;
  for (const auto& cluster : plan.clusters) {
    if (cluster.empty()) {
      throw Error(Errc::kInstanceMismatch, "plan contains an empty cluster");
    }
    for (const std::string& id : cluster) {
      if (!by_id.count(id)) {
        throw Error(Errc::kInstanceMismatch,
                    "plan names unknown block '" + id + "'");
      }
      if (!seen.insert(id).second) {
        throw Error(Errc::kInstanceMismatch,
                    "plan assigns block '" + id + "' twice");
      }
    }
  }
  if (seen.size() != instance.blocks.size()) {
    throw Error(Errc::kInstanceMismatch,
                "plan leaves some blocks unassigned");
  }
}

ProblemInstance SubInstance(const ProblemInstance& instance,
                            const std::vector<std::string>& ids,
                            const std::string& name) {
  std::map<std::string, const Block*> by_id;
  for (const Block& b : instance.blocks) by_id[b.id] = &b;
  ProblemInstance sub;
  sub.name = name;
  sub.mode = instance.mode;
  sub.coordinate_sort = instance.coordinate_sort;
  std::set<std::string> wanted(ids.begin(), ids.end());
  for (const Block& b : instance.blocks) {  // keep input order
    if (wanted.count(b.id)) sub.blocks.push_back(*by_id.at(b.id));
  }
  return sub;
}

}  // namespace

SolveOutcome SolveClustered(const ProblemInstance& instance,
                            const ClusterPlan& plan, StrategyKind strategy,
                            const BackendConfig& config,
                            const Rat& tolerance) {
  instance.Check();
  CheckPartition(instance, plan);
  if (plan.recomposition == Recomposition::kSuperBlockCase2 &&
      instance.mode != SolveMode::kCase2) {
    throw Error(Errc::kModeMismatch,
                "rotating super-blocks needs a rotation-aware instance");
  }
  if (plan.clusters.size() == 1) {
    return MinimizeArea(instance, strategy, config, tolerance);
  }

  auto start = std::chrono::steady_clock::now();
  size_t k = plan.clusters.size();

  std::vector<ProblemInstance> subs;
  subs.reserve(k);
  for (size_t c = 0; c < k; ++c) {
    subs.push_back(SubInstance(instance, plan.clusters[c],
                               instance.name + "/cluster-" +
                                   std::to_string(c)));
  }

  std::vector<SolveOutcome> sub_outcomes(k);
  std::vector<std::exception_ptr> failures(k);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t c = next.fetch_add(1);
      if (c >= k) return;
      try {
        sub_outcomes[c] = MinimizeArea(subs[c], strategy, config, tolerance);
      } catch (...) {
        failures[c] = std::current_exception();
      }
    }
  };
  size_t threads = std::min<size_t>(std::max(1, config.jobs), k);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (size_t c = 0; c < k; ++c) {
    if (failures[c]) std::rethrow_exception(failures[c]);
  }

  int total_queries = 0;
  bool all_placed = true;
  for (size_t c = 0; c < k; ++c) {
    total_queries += sub_outcomes[c].report.solver_queries;
    if (!sub_outcomes[c].placement) all_placed = false;
  }
  if (!all_placed) {
    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    SolveOutcome out;
    out.report = MakeReport(instance, std::nullopt, SolveStatus::kTimeout,
                            wall, total_queries);
    return out;
  }

  // Super-instance: one block per cluster, sized by the cluster's region.
  ProblemInstance super;
  super.name = instance.name + "/super";
  bool integral = true;
  std::vector<bool> may_rotate(k, false);
  for (size_t c = 0; c < k; ++c) {
    const Placement& p = *sub_outcomes[c].placement;
    if (!IsInteger(p.region_w) || !IsInteger(p.region_h)) integral = false;
    bool all_rotatable = true;
    for (const Block& b : subs[c].blocks) {
      if (b.kind != BlockKind::kRotatable) all_rotatable = false;
    }
    may_rotate[c] = plan.recomposition == Recomposition::kSuperBlockCase2 &&
                    all_rotatable;
    std::string id = "cluster-" + std::to_string(c);
    super.blocks.push_back(may_rotate[c]
                               ? Block::Rotatable(id, p.region_w, p.region_h)
                               : Block::Hard(id, p.region_w, p.region_h));
  }
  bool any_rotatable = false;
  for (bool r : may_rotate) any_rotatable = any_rotatable || r;
  super.mode = any_rotatable ? SolveMode::kCase2 : SolveMode::kCase1;
  super.coordinate_sort = integral ? CoordSort::kInteger : CoordSort::kReal;

  StrategyKind super_strategy = strategy;
  if (super_strategy == StrategyKind::kWidthSweep &&
      super.coordinate_sort != CoordSort::kInteger) {
    super_strategy = StrategyKind::kAreaBisection;
  }
  Rat super_tolerance = tolerance;
  if (super.coordinate_sort == CoordSort::kReal && super_tolerance <= 0) {
    Rat total = 0;
    for (const Block& b : super.blocks) total += b.BlockArea();
    super_tolerance = total / 1000;
  }
  SolveOutcome super_outcome =
      MinimizeArea(super, super_strategy, config, super_tolerance);
  total_queries += super_outcome.report.solver_queries;

  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  if (!super_outcome.placement) {
    SolveOutcome out;
    out.report = MakeReport(instance, std::nullopt, SolveStatus::kTimeout,
                            wall, total_queries);
    return out;
  }

  // Compose: translate every member into its super-block's frame; a rotated
  // super-block turns its members a quarter turn clockwise about its own
  // origin, so member (x, y, w, h) lands at (y, c - x - w) with w and h
  // swapped and rotation flags flipped.
  Placement final_placement;
  final_placement.instance_name = instance.name;
  final_placement.region_w = super_outcome.placement->region_w;
  final_placement.region_h = super_outcome.placement->region_h;
  std::map<std::string, const PlacedBlock*> super_at;
  for (const PlacedBlock& p : super_outcome.placement->blocks) {
    super_at[p.id] = &p;
  }
  std::map<std::string, PlacedBlock> composed;
  for (size_t c = 0; c < k; ++c) {
    const PlacedBlock& anchor = *super_at.at("cluster-" + std::to_string(c));
    const Placement& local = *sub_outcomes[c].placement;
    for (const PlacedBlock& m : local.blocks) {
      PlacedBlock out = m;
      if (anchor.rotated) {
        out.x = anchor.x + m.y;
        out.y = anchor.y + (local.region_w - m.x - m.placed_w);
        out.placed_w = m.placed_h;
        out.placed_h = m.placed_w;
        out.rotated = !m.rotated;
      } else {
        out.x = anchor.x + m.x;
        out.y = anchor.y + m.y;
      }
      composed[out.id] = out;
    }
  }
  for (const Block& b : instance.blocks) {  // restore instance order
    final_placement.blocks.push_back(composed.at(b.id));
  }
  TightenRegion(final_placement);

  auto violations =
      Validate(final_placement, instance, DefaultTolerance(instance));
  if (!violations.empty()) {
    throw Error(Errc::kEncodingBug, "composed placement fails validation: " +
                                        violations.front().message);
  }

  SolveOutcome out;
  out.placement = std::move(final_placement);
  out.report = MakeReport(instance, out.placement, SolveStatus::kFeasible,
                          wall, total_queries);
  return out;
}

}  // namespace floorplan

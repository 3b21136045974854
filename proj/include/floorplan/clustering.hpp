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

#ifndef FLOORPLAN_CLUSTERING_H_
#define FLOORPLAN_CLUSTERING_H_

#include <string>
#include <vector>

#include "floorplan/model.hpp"
#include "floorplan/solver.hpp"

namespace floorplan {

// SuperBlockCase1 packs solved clusters as fixed super-blocks;
// SuperBlockCase2 lets super-blocks rotate, which is only sound when the
// member blocks themselves may rotate (instance mode Case2).
enum class Recomposition { kSuperBlockCase1, kSuperBlockCase2 };

struct ClusterPlan {
  std::vector<std::vector<std::string>> clusters;  // block ids, partition
  int threshold = 30;
  Recomposition recomposition = Recomposition::kSuperBlockCase1;
};

// Greedy area-balanced partition: blocks sorted by area descending (ties by
// input order), each assigned to the not-yet-full cluster with the smallest
// total area; exactly ceil(n/threshold) clusters, none larger than
// threshold. Picks SuperBlockCase2 recomposition for Case2 instances and
// SuperBlockCase1 otherwise. Deterministic; `seed` is reserved and currently
// unused by the rule.
ClusterPlan PlanClusters(const ProblemInstance& instance, int threshold,
                         unsigned seed = 0);

// Two-level solve: each cluster solved via MinimizeArea as a sub-instance,
// its tightened region becoming a super-block; the super-instance is solved
// per plan.recomposition and member coordinates are translated (and rotated,
// for rotated super-blocks) into the final frame. Under SuperBlockCase2 a
// cluster's super-block may rotate only when every member block is itself
// rotatable; clusters holding a hard or soft member stay upright. Each
// level seeds a constructive incumbent, so a validator-clean placement
// comes back whenever one is constructible. Multi-cluster plans report at
// most kFeasible (the hierarchy proves no global optimality); single-cluster
// plans delegate to the flat solve and keep its status.
SolveOutcome SolveClustered(const ProblemInstance& instance,
                            const ClusterPlan& plan, StrategyKind strategy,
                            const BackendConfig& config, const Rat& tolerance);

}  // namespace floorplan

#endif  // FLOORPLAN_CLUSTERING_H_

// Copyright 2026 The botnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Closed-form Nash equilibrium of selfish flooding schedulers on one
// worker and system-wide, the sequential/parallel canonical time ratios,
// and the bandwidth saturation thresholds.
//
// Under multi-port fair sharing every worker can be solved separately.
// With applications sorted by task ratio c_k = b_k / w_k and worker ratio
// C = B / W, exactly one of three regimes holds:
//   1. sum_k C/c_k <= K   every application is communication-saturated,
//                         alpha_k = B / (K b_k);
//   2. sum_k c_k/C <= K   every application is computation-saturated,
//                         alpha_k = W / (K w_k);
//   3. otherwise there is a unique split m in [1, K-1]: the m smallest
//      ratios are computation-saturated, the rest communication-saturated,
//      with rates solving the 2x2 saturation system of the two groups.

#ifndef BOTNASH_EQUILIBRIUM_HPP
#define BOTNASH_EQUILIBRIUM_HPP

#include <optional>
#include <vector>

#include "botnash/model.hpp"

namespace botnash {

enum class SaturationCase {
  AllCommSaturated,  // every application uses its full link share at any instant
  AllCompSaturated,  // every application uses its full CPU share at any instant
  Mixed,
};

const char* to_string(SaturationCase c);

// Which applications saturate which resource on one worker.
struct SaturationPartition {
  SaturationCase kind = SaturationCase::AllCommSaturated;
  // Number of computation-saturated applications in ratio-sorted order:
  // 0, K, or the unique mixed split in [1, K-1].
  int split = 0;
  // Application indices, ascending, in the index space of the producer
  // (sorted positions for find_partition, original indices in
  // WorkerEquilibrium).
  std::vector<int> comp_saturated;  // the W-set
  std::vector<int> comm_saturated;  // the B-set
};

// Equilibrium rates of one worker plus its diagnostic time ratios.
// All vectors are in original application order.
struct WorkerEquilibrium {
  std::vector<double> rates;  // tasks/s
  SaturationPartition partition;

  // Sequential canonical representation: fraction of time each player
  // would need the resource exclusively. seq_comm = alpha b / B,
  // seq_comp = alpha w / W, and seq_comm * C == seq_comp * c holds.
  std::vector<double> seq_comm;
  std::vector<double> seq_comp;

  // Parallel canonical representation: fraction of time each player
  // occupies the resource when overlap is maximized. Equals 1 exactly on
  // the saturated side.
  std::vector<double> par_comm;
  std::vector<double> par_comp;

  // Common sequential ratios of the saturated groups (the 2x2 system the
  // mixed closed form solves). Absent when the group is empty.
  std::optional<double> comm_sat_ratio;  // seq_comm of communication-saturated apps
  std::optional<double> comp_sat_ratio;  // seq_comp of computation-saturated apps
};

// Best reachable rate of a single application alone on one worker:
// min(W/w, B/b). The optimal selfish strategy saturates every worker.
double single_app_optimum(const Worker& worker, const Application& app);

// Permutation of 0-based indices ordering c_k non-decreasing, ties by
// ascending original index.
std::vector<int> ratio_sort(const std::vector<Application>& apps);

// Saturation partition of one worker. `sorted_apps` must be ordered by
// ratio non-decreasing; the returned sets live in sorted positions.
// Classification at the regime boundaries is inclusive in the order
// 1, 2 (the closed forms coincide there). Throws PartitionNotFound if the
// mixed scan does not find exactly one valid split.
SaturationPartition find_partition(const Worker& worker,
                                   const std::vector<Application>& sorted_apps);

// Closed-form equilibrium of one worker, reported in original application
// order.
WorkerEquilibrium worker_equilibrium(const Worker& worker,
                                     const std::vector<Application>& apps);

struct SystemEquilibrium {
  AllocationMatrix rates;                 // N x K
  std::vector<WorkerEquilibrium> workers;
  std::vector<double> totals;             // per application
};

// The unique system-wide equilibrium: each worker solved independently.
SystemEquilibrium system_equilibrium(const System& s);

struct SequentialRatios {
  std::vector<double> comm;  // alpha b / B per application
  std::vector<double> comp;  // alpha w / W per application
};

// Sequential canonical time ratios of arbitrary feasible rates on one
// worker.
SequentialRatios sequential_ratios(const std::vector<double>& rates,
                                   const Worker& worker,
                                   const std::vector<Application>& apps);

struct ParallelRatios {
  std::vector<double> comm;
  std::vector<double> comp;
};

// Parallel canonical time ratios: for each resource, players are active on
// nested intervals [0, r_k] ordered by per-second demand; the player with
// j-th smallest demand D_j gets r = sum_{i<=j} (D_i - D_{i-1}) (K-i+1) /
// capacity. Throws InfeasibleRates if any ratio exceeds 1 beyond tolerance.
ParallelRatios parallel_ratios(const std::vector<double>& rates,
                               const Worker& worker,
                               const std::vector<Application>& apps);

// Bandwidth range outside of which a single worker is fully saturated on
// one resource: below `lower` all applications are communication-saturated,
// above `upper` all are computation-saturated.
struct SaturationThresholds {
  double lower = 0.0;  // W K / sum_k (1/c_k)
  double upper = 0.0;  // (W/K) sum_k c_k
};

SaturationThresholds saturation_thresholds(const std::vector<Application>& apps,
                                           double worker_power);

// Lower bounds on how much the max/min/average throughput can degrade when
// the bandwidth grows from the lower to the upper saturation threshold.
struct DegradationBounds {
  double max_throughput = 0.0;  // (K / sum 1/c) * min_k w_k / min_k b_k
  double min_throughput = 0.0;  // (K / sum 1/c) * max_k w_k / max_k b_k
  double avg_throughput = 0.0;  // (K / sum 1/c) * (sum 1/b) / (sum 1/w)
};

// Requires K >= 2.
DegradationBounds degradation_bounds(const std::vector<Application>& apps,
                                     double worker_power);

// Per-application throughput ratio between the two saturated regimes:
// K / (c_k * sum_p 1/c_p).
std::vector<double> regime_change_ratios(const std::vector<Application>& apps);

}  // namespace botnash

#endif  // BOTNASH_EQUILIBRIUM_HPP

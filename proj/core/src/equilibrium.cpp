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

#include "botnash/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace botnash {

namespace {

// Regime classification at the boundary is inclusive: when a sum equals K
// within this relative tolerance the saturated formula applies, and it
// coincides with the limit of the mixed closed form there, so rates are
// continuous across the switch.
constexpr double kCaseBoundaryTol = 1e-12;

}  // namespace

const char* to_string(SaturationCase c) {
  switch (c) {
    case SaturationCase::AllCommSaturated:
      return "all-communication-saturated";
    case SaturationCase::AllCompSaturated:
      return "all-computation-saturated";
    case SaturationCase::Mixed:
      return "mixed";
  }
  return "?";
}

double single_app_optimum(const Worker& worker, const Application& app) {
  return std::min(worker.power / app.flops, worker.bandwidth / app.data);
}

std::vector<int> ratio_sort(const std::vector<Application>& apps) {
  std::vector<int> perm(apps.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    const double ca = apps[a].ratio();
    const double cb = apps[b].ratio();
    if (ca != cb) {
      return ca < cb;
    }
    return a < b;
  });
  return perm;
}

SaturationPartition find_partition(const Worker& worker,
                                   const std::vector<Application>& sorted_apps) {
  const int count = static_cast<int>(sorted_apps.size());
  const double worker_ratio = worker.ratio();

  // gamma_k = c_k / C, ascending by precondition.
  std::vector<double> gamma(count);
  for (int k = 0; k < count; ++k) {
    gamma[k] = sorted_apps[k].ratio() / worker_ratio;
  }

  double sum_inv_gamma = 0.0;  // sum_k C / c_k
  double sum_gamma = 0.0;      // sum_k c_k / C
  for (int k = 0; k < count; ++k) {
    sum_inv_gamma += 1.0 / gamma[k];
    sum_gamma += gamma[k];
  }

  SaturationPartition part;
  if (sum_inv_gamma <= count * (1.0 + kCaseBoundaryTol)) {
    part.kind = SaturationCase::AllCommSaturated;
    part.split = 0;
    part.comm_saturated.resize(count);
    std::iota(part.comm_saturated.begin(), part.comm_saturated.end(), 0);
    return part;
  }
  if (sum_gamma <= count * (1.0 + kCaseBoundaryTol)) {
    part.kind = SaturationCase::AllCompSaturated;
    part.split = count;
    part.comp_saturated.resize(count);
    std::iota(part.comp_saturated.begin(), part.comp_saturated.end(), 0);
    return part;
  }

  // Mixed regime: the unique split m in [1, K-1] satisfying
  //   gamma_m < (m - sum_{k<=m} gamma_k) / (K - m - sum_{k>m} 1/gamma_k)
  //           < gamma_{m+1}.
  // Scan all candidates and insist on uniqueness; a division by ~0 makes
  // the middle expression +-inf or NaN, which simply fails the strict
  // comparisons.
  std::vector<double> prefix_gamma(count + 1, 0.0);
  std::vector<double> suffix_inv_gamma(count + 1, 0.0);
  for (int k = 0; k < count; ++k) {
    prefix_gamma[k + 1] = prefix_gamma[k] + gamma[k];
  }
  for (int k = count - 1; k >= 0; --k) {
    suffix_inv_gamma[k] = suffix_inv_gamma[k + 1] + 1.0 / gamma[k];
  }

  int found = -1;
  int matches = 0;
  for (int m = 1; m <= count - 1; ++m) {
    const double numerator = m - prefix_gamma[m];
    const double denominator = (count - m) - suffix_inv_gamma[m];
    const double middle = numerator / denominator;
    if (gamma[m - 1] < middle && middle < gamma[m]) {
      found = m;
      ++matches;
    }
  }
  if (matches != 1) {
    std::ostringstream msg;
    msg << "saturation split scan found " << matches << " candidates for K="
        << count << " (expected exactly one); input unsorted or degenerate";
    throw PartitionNotFound(msg.str());
  }

  part.kind = SaturationCase::Mixed;
  part.split = found;
  part.comp_saturated.resize(found);
  std::iota(part.comp_saturated.begin(), part.comp_saturated.end(), 0);
  part.comm_saturated.resize(count - found);
  std::iota(part.comm_saturated.begin(), part.comm_saturated.end(), found);
  return part;
}

namespace {

std::vector<double> cumulative_parallel(const std::vector<double>& demand,
                                        double capacity) {
  const int count = static_cast<int>(demand.size());
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (demand[a] != demand[b]) {
      return demand[a] < demand[b];
    }
    return a < b;
  });

  std::vector<double> ratios(count, 0.0);
  double previous = 0.0;
  double cumulative = 0.0;
  for (int j = 0; j < count; ++j) {
    const double d = demand[order[j]];
    cumulative += (d - previous) * (count - j) / capacity;
    ratios[order[j]] = cumulative;
    previous = d;
  }
  return ratios;
}

}  // namespace

SequentialRatios sequential_ratios(const std::vector<double>& rates,
                                   const Worker& worker,
                                   const std::vector<Application>& apps) {
  if (rates.size() != apps.size()) {
    throw ShapeMismatch("sequential_ratios: one rate per application required");
  }
  SequentialRatios r;
  r.comm.resize(apps.size());
  r.comp.resize(apps.size());
  for (std::size_t k = 0; k < apps.size(); ++k) {
    r.comm[k] = rates[k] * apps[k].data / worker.bandwidth;
    r.comp[k] = rates[k] * apps[k].flops / worker.power;
    // mu C == nu c holds by construction; a violation is a bug.
    const double lhs = r.comm[k] * worker.ratio();
    const double rhs = r.comp[k] * apps[k].ratio();
    if (std::abs(lhs - rhs) > kIdentityTol * std::max(1.0, std::abs(lhs))) {
      throw std::logic_error("sequential time-ratio identity violated");
    }
  }
  return r;
}

ParallelRatios parallel_ratios(const std::vector<double>& rates,
                               const Worker& worker,
                               const std::vector<Application>& apps) {
  if (rates.size() != apps.size()) {
    throw ShapeMismatch("parallel_ratios: one rate per application required");
  }
  std::vector<double> data_demand(apps.size());
  std::vector<double> flop_demand(apps.size());
  for (std::size_t k = 0; k < apps.size(); ++k) {
    if (rates[k] < -kIdentityTol) {
      throw InfeasibleRates("parallel_ratios: negative rate");
    }
    data_demand[k] = rates[k] * apps[k].data;
    flop_demand[k] = rates[k] * apps[k].flops;
  }
  ParallelRatios r;
  r.comm = cumulative_parallel(data_demand, worker.bandwidth);
  r.comp = cumulative_parallel(flop_demand, worker.power);
  for (std::size_t k = 0; k < apps.size(); ++k) {
    if (r.comm[k] > 1.0 + kConstraintTol || r.comp[k] > 1.0 + kConstraintTol) {
      std::ostringstream msg;
      msg << "rates exceed worker capacity: parallel ratio of app " << k + 1
          << " is " << std::max(r.comm[k], r.comp[k]);
      throw InfeasibleRates(msg.str());
    }
  }
  return r;
}

WorkerEquilibrium worker_equilibrium(const Worker& worker,
                                     const std::vector<Application>& apps) {
  const int count = static_cast<int>(apps.size());
  const std::vector<int> perm = ratio_sort(apps);
  std::vector<Application> sorted(count);
  for (int i = 0; i < count; ++i) {
    sorted[i] = apps[perm[i]];
  }

  const SaturationPartition sorted_part = find_partition(worker, sorted);
  std::vector<double> sorted_rates(count, 0.0);
  switch (sorted_part.kind) {
    case SaturationCase::AllCommSaturated:
      for (int k = 0; k < count; ++k) {
        sorted_rates[k] = worker.bandwidth / (count * sorted[k].data);
      }
      break;
    case SaturationCase::AllCompSaturated:
      for (int k = 0; k < count; ++k) {
        sorted_rates[k] = worker.power / (count * sorted[k].flops);
      }
      break;
    case SaturationCase::Mixed: {
      const int m = sorted_part.split;
      const double worker_ratio = worker.ratio();
      double comp_group_ratio_sum = 0.0;  // sum over comp-saturated of c_p
      double comp_group_gamma_sum = 0.0;  // sum over comp-saturated of c_p / C
      for (int k = 0; k < m; ++k) {
        comp_group_ratio_sum += sorted[k].ratio();
        comp_group_gamma_sum += sorted[k].ratio() / worker_ratio;
      }
      double comm_group_inv_sum = 0.0;    // sum over comm-saturated of 1 / c_p
      double comm_group_gamma_sum = 0.0;  // sum over comm-saturated of C / c_p
      for (int k = m; k < count; ++k) {
        comm_group_inv_sum += 1.0 / sorted[k].ratio();
        comm_group_gamma_sum += worker_ratio / sorted[k].ratio();
      }
      const double denom =
          static_cast<double>(m) * (count - m) - comp_group_ratio_sum * comm_group_inv_sum;
      const double comm_numer = m - comp_group_gamma_sum;
      const double comp_numer = (count - m) - comm_group_gamma_sum;
      for (int k = 0; k < m; ++k) {
        sorted_rates[k] = worker.power / sorted[k].flops * comp_numer / denom;
      }
      for (int k = m; k < count; ++k) {
        sorted_rates[k] = worker.bandwidth / sorted[k].data * comm_numer / denom;
      }
      break;
    }
  }

  WorkerEquilibrium eq;
  eq.rates.assign(count, 0.0);
  for (int i = 0; i < count; ++i) {
    eq.rates[perm[i]] = sorted_rates[i];
  }
  eq.partition.kind = sorted_part.kind;
  eq.partition.split = sorted_part.split;
  for (int i : sorted_part.comp_saturated) {
    eq.partition.comp_saturated.push_back(perm[i]);
  }
  for (int i : sorted_part.comm_saturated) {
    eq.partition.comm_saturated.push_back(perm[i]);
  }
  std::sort(eq.partition.comp_saturated.begin(), eq.partition.comp_saturated.end());
  std::sort(eq.partition.comm_saturated.begin(), eq.partition.comm_saturated.end());

  const SequentialRatios seq = sequential_ratios(eq.rates, worker, apps);
  eq.seq_comm = seq.comm;
  eq.seq_comp = seq.comp;
  const ParallelRatios par = parallel_ratios(eq.rates, worker, apps);
  eq.par_comm = par.comm;
  eq.par_comp = par.comp;
  if (!eq.partition.comm_saturated.empty()) {
    eq.comm_sat_ratio = eq.seq_comm[eq.partition.comm_saturated.front()];
  }
  if (!eq.partition.comp_saturated.empty()) {
    eq.comp_sat_ratio = eq.seq_comp[eq.partition.comp_saturated.front()];
  }
  return eq;
}

SystemEquilibrium system_equilibrium(const System& s) {
  SystemEquilibrium out;
  out.rates = AllocationMatrix(s.num_workers(), s.num_apps());
  out.workers.reserve(s.workers.size());
  for (int n = 0; n < s.num_workers(); ++n) {
    WorkerEquilibrium eq = worker_equilibrium(s.workers[n], s.apps);
    for (int k = 0; k < s.num_apps(); ++k) {
      out.rates.at(n, k) = eq.rates[k];
    }
    out.workers.push_back(std::move(eq));
  }
  out.totals = out.rates.totals();
  return out;
}

SaturationThresholds saturation_thresholds(const std::vector<Application>& apps,
                                           double worker_power) {
  const int count = static_cast<int>(apps.size());
  double sum_inv_ratio = 0.0;
  double sum_ratio = 0.0;
  for (const Application& a : apps) {
    sum_inv_ratio += 1.0 / a.ratio();
    sum_ratio += a.ratio();
  }
  SaturationThresholds t;
  t.lower = worker_power * count / sum_inv_ratio;
  t.upper = worker_power / count * sum_ratio;
  return t;
}

std::vector<double> regime_change_ratios(const std::vector<Application>& apps) {
  const int count = static_cast<int>(apps.size());
  double sum_inv_ratio = 0.0;
  for (const Application& a : apps) {
    sum_inv_ratio += 1.0 / a.ratio();
  }
  std::vector<double> r(apps.size());
  for (std::size_t k = 0; k < apps.size(); ++k) {
    r[k] = count / (apps[k].ratio() * sum_inv_ratio);
  }
  return r;
}

DegradationBounds degradation_bounds(const std::vector<Application>& apps,
                                     double worker_power) {
  (void)worker_power;  // bounds are ratios; power cancels
  const int count = static_cast<int>(apps.size());
  if (count < 2) {
    throw MalformedInstance("degradation bounds need at least two applications");
  }
  double sum_inv_ratio = 0.0;
  double sum_inv_data = 0.0;
  double sum_inv_flops = 0.0;
  double min_data = apps[0].data, max_data = apps[0].data;
  double min_flops = apps[0].flops, max_flops = apps[0].flops;
  for (const Application& a : apps) {
    sum_inv_ratio += 1.0 / a.ratio();
    sum_inv_data += 1.0 / a.data;
    sum_inv_flops += 1.0 / a.flops;
    min_data = std::min(min_data, a.data);
    max_data = std::max(max_data, a.data);
    min_flops = std::min(min_flops, a.flops);
    max_flops = std::max(max_flops, a.flops);
  }
  const double scale = count / sum_inv_ratio;
  DegradationBounds b;
  b.max_throughput = scale * min_flops / min_data;
  b.min_throughput = scale * max_flops / max_data;
  b.avg_throughput = scale * sum_inv_data / sum_inv_flops;
  return b;
}

}  // namespace botnash

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
// Cooperative reference allocations over the utility polytope and the
// machinery that quantifies how inefficient the non-cooperative
// equilibrium is: price of anarchy, selfishness degradation factor,
// Pareto-inefficiency characterization, equivalent subsystems and the
// Braess-paradox falsification harness.

#ifndef BOTNASH_ALLOCATIONS_HPP
#define BOTNASH_ALLOCATIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "botnash/equilibrium.hpp"
#include "botnash/lp.hpp"
#include "botnash/model.hpp"

namespace botnash {

// Allocation maximizing the total throughput sum_k alpha_k. Any optimal
// vertex may be returned; the objective value is the contract.
AllocationMatrix max_sum_throughput(const System& s);

// Lexicographic max-min over per-application totals, by iterated LP:
// raise a common floor as far as possible, freeze the applications whose
// tight constraints block further increase, repeat.
AllocationMatrix max_min_fair(const System& s);

// Approximate maximizer of sum_k log alpha_k (the Nash bargaining
// objective) by Frank-Wolfe: linearize at the current point, call the
// simplex as linear oracle, line-search on the segment. Stops when the
// relative objective improvement drops below tol or after max_iters.
AllocationMatrix proportional_fair(const System& s, double tol = 1e-8,
                                   int max_iters = 10000);

// rho(alpha, beta) = min_k alpha_k / beta_k. alpha is strictly
// Pareto-superior to beta iff rho > 1. Throws ZeroBaseline if some
// beta_k <= 0.
double pareto_comparison(const std::vector<double>& alpha,
                         const std::vector<double>& beta);

// Ratio of an optimal metric value to its value at the equilibrium.
struct InefficiencyReport {
  std::string metric;
  double optimal_value = 0.0;
  double nash_value = 0.0;
  double ratio = 1.0;  // optimal / nash, >= 1
};

// Inefficiency of the equilibrium for the average-throughput metric.
InefficiencyReport price_of_anarchy_instance(const System& s);

// Largest uniform multiplicative improvement over the equilibrium point
// available inside the utility set, with a witnessing allocation:
//   I(S) = max { t : some feasible alpha has alpha_k >= t alpha^nash_k }.
struct SdfReport {
  double factor = 1.0;
  AllocationMatrix witness;
};

SdfReport sdf_instance(const System& s);

// Necessary and sufficient condition for the equilibrium to be Pareto
// inefficient: applications are not all identical and some worker is
// strictly communication-saturated for everyone while another is strictly
// computation-saturated for everyone. Workers exactly at a regime
// boundary waste neither resource and cannot witness inefficiency.
struct ParetoInefficiency {
  bool inefficient = false;
  int comm_saturated_worker = -1;  // 0-based; -1 when absent
  int comp_saturated_worker = -1;
};

ParetoInefficiency pareto_inefficiency_predicate(const System& s);

// Capacity-reduced system with the same equilibrium whose equilibrium is
// Pareto optimal: on a fully communication-saturated worker the unused CPU
// power is trimmed to sum_k B/(K c_k), on a fully computation-saturated
// worker the unused bandwidth is trimmed to sum_k W c_k / K. Verifies the
// subsystem and equilibrium-preservation properties and throws
// SubsystemViolation if they fail (implementation bug, not bad input).
System equivalent_subsystem(const System& s);

enum class BraessVerdict { NoParadox, ParadoxDetected };

struct BraessResult {
  BraessVerdict verdict = BraessVerdict::NoParadox;
  // rho(initial totals, augmented totals): a paradox is rho > 1.
  double rho_initial_vs_augmented = 1.0;
  // rho(augmented totals, initial totals), >= 1 when no application lost.
  double rho_augmented_vs_initial = 1.0;
  std::vector<double> initial_totals;
  std::vector<double> augmented_totals;
};

// Compares the equilibria of an instance and a resource-augmented copy.
// This scheduling model admits no Braess paradox, so ParadoxDetected can
// only mean an implementation bug; the operation exists as a
// falsification harness. Throws NotAnAugmentation if `augmented` is not
// the same game with capacities >= `initial`.
BraessResult braess_check(const System& initial, const System& augmented);

// Seeded hill-climbing over instances reporting the best selfishness
// degradation factor found. A lower bound only; the supremum over all
// systems is not computed.
struct SdfSearchResult {
  System best;
  double factor = 1.0;
  int improvements = 0;
};

SdfSearchResult sdf_search(std::uint64_t seed, int iterations,
                           int max_apps = 3, int max_workers = 3);

}  // namespace botnash

#endif  // BOTNASH_ALLOCATIONS_HPP

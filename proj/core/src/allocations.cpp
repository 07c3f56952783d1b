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

#include "botnash/allocations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "botnash/rng.hpp"

namespace botnash {

namespace {

// Polytope rows lifted into an LP with `extra` trailing variables.
LinearProgram polytope_lp(const UtilityPolytope& poly, int extra = 0) {
  LinearProgram lp;
  lp.objective.assign(poly.num_vars() + extra, 0.0);
  for (std::size_t i = 0; i < poly.rows.size(); ++i) {
    std::vector<double> row(poly.num_vars() + extra, 0.0);
    std::copy(poly.rows[i].begin(), poly.rows[i].end(), row.begin());
    lp.add_row(std::move(row), poly.bounds[i]);
  }
  return lp;
}

AllocationMatrix matrix_from_solution(const UtilityPolytope& poly,
                                      const std::vector<double>& x) {
  AllocationMatrix a(poly.num_workers, poly.num_apps);
  for (int n = 0; n < poly.num_workers; ++n) {
    for (int k = 0; k < poly.num_apps; ++k) {
      a.at(n, k) = x[poly.var(n, k)];
    }
  }
  return a;
}

LpSolution solve_or_throw(const LinearProgram& lp, const char* what) {
  LpSolution sol = simplex_solve(lp);
  if (sol.status != LpStatus::Optimal) {
    std::ostringstream msg;
    msg << what << ": expected an optimum over the compact utility set, got "
        << to_string(sol.status);
    throw NumericalBreakdown(msg.str());
  }
  return sol;
}

}  // namespace

AllocationMatrix max_sum_throughput(const System& s) {
  const UtilityPolytope poly = build_polytope(s);
  LinearProgram lp = polytope_lp(poly);
  std::fill(lp.objective.begin(), lp.objective.end(), 1.0);
  const LpSolution sol = solve_or_throw(lp, "max_sum_throughput");
  return matrix_from_solution(poly, sol.x);
}

AllocationMatrix max_min_fair(const System& s) {
  const UtilityPolytope poly = build_polytope(s);
  const int apps = s.num_apps();
  const int vars = poly.num_vars();

  std::vector<bool> frozen(apps, false);
  std::vector<double> floor_level(apps, 0.0);
  int frozen_count = 0;

  auto total_row = [&](int k, int extra, double t_coeff) {
    // -sum_n x_{n,k} + t_coeff * t <= bound form is assembled by callers.
    std::vector<double> row(vars + extra, 0.0);
    for (int n = 0; n < poly.num_workers; ++n) {
      row[poly.var(n, k)] = -1.0;
    }
    if (extra > 0) {
      row[vars] = t_coeff;
    }
    return row;
  };

  while (frozen_count < apps) {
    // Raise a common floor t for the unfrozen applications.
    LinearProgram lp = polytope_lp(poly, 1);
    lp.objective[vars] = 1.0;
    for (int k = 0; k < apps; ++k) {
      if (frozen[k]) {
        lp.add_row(total_row(k, 1, 0.0), -floor_level[k]);
      } else {
        lp.add_row(total_row(k, 1, 1.0), 0.0);
      }
    }
    const double level = solve_or_throw(lp, "max_min_fair").value;
    const double eps = 1e-9 * std::max(1.0, std::abs(level));

    // An application freezes when its total cannot rise above the new
    // floor while every other one keeps it.
    std::vector<int> newly;
    for (int k = 0; k < apps; ++k) {
      if (frozen[k]) {
        continue;
      }
      LinearProgram probe = polytope_lp(poly);
      for (int n = 0; n < poly.num_workers; ++n) {
        probe.objective[poly.var(n, k)] = 1.0;
      }
      for (int j = 0; j < apps; ++j) {
        const double floor_j = frozen[j] ? floor_level[j] : level;
        probe.add_row(total_row(j, 0, 0.0), -floor_j);
      }
      if (solve_or_throw(probe, "max_min_fair").value <= level + eps) {
        newly.push_back(k);
      }
    }
    if (newly.empty()) {
      // Cannot distinguish a blocking set numerically; the floor is
      // jointly tight, so everything left sits at `level`.
      for (int k = 0; k < apps; ++k) {
        if (!frozen[k]) {
          newly.push_back(k);
        }
      }
    }
    for (int k : newly) {
      frozen[k] = true;
      floor_level[k] = level;
      ++frozen_count;
    }
  }

  // Any point meeting all floors has exactly the leximin totals; extract one.
  LinearProgram witness = polytope_lp(poly);
  std::fill(witness.objective.begin(), witness.objective.end(), 1.0);
  for (int k = 0; k < apps; ++k) {
    witness.add_row(total_row(k, 0, 0.0), -floor_level[k]);
  }
  return matrix_from_solution(poly, solve_or_throw(witness, "max_min_fair").x);
}

AllocationMatrix proportional_fair(const System& s, double tol, int max_iters) {
  const UtilityPolytope poly = build_polytope(s);
  const int apps = s.num_apps();

  // The equilibrium is strictly positive, which makes it a valid interior
  // starting point for the log objective.
  std::vector<double> x = system_equilibrium(s).rates.flat();
  std::vector<double> totals = poly.totals(x);
  for (int k = 0; k < apps; ++k) {
    if (!(totals[k] > 0.0)) {
      throw DegenerateInstance("application " + std::to_string(k + 1) +
                               " has zero throughput; log utility undefined");
    }
  }

  auto log_utility = [&](const std::vector<double>& t) {
    double f = 0.0;
    for (double v : t) {
      if (!(v > 0.0)) {
        return -std::numeric_limits<double>::infinity();
      }
      f += std::log(v);
    }
    return f;
  };

  double value = log_utility(totals);
  for (int iter = 0; iter < max_iters; ++iter) {
    LinearProgram lp = polytope_lp(poly);
    for (int n = 0; n < poly.num_workers; ++n) {
      for (int k = 0; k < apps; ++k) {
        lp.objective[poly.var(n, k)] = 1.0 / totals[k];
      }
    }
    const LpSolution vertex = solve_or_throw(lp, "proportional_fair");
    const std::vector<double> vertex_totals = poly.totals(vertex.x);

    std::vector<double> dir(apps);
    for (int k = 0; k < apps; ++k) {
      dir[k] = vertex_totals[k] - totals[k];
    }
    auto slope = [&](double lambda) {
      double g = 0.0;
      for (int k = 0; k < apps; ++k) {
        const double t = totals[k] + lambda * dir[k];
        if (!(t > 0.0)) {
          return -std::numeric_limits<double>::infinity();
        }
        g += dir[k] / t;
      }
      return g;
    };

    if (slope(0.0) <= tol) {
      break;  // Frank-Wolfe gap closed
    }
    double lo = 0.0;
    double hi = 1.0;
    if (slope(1.0) >= 0.0) {
      lo = 1.0;
    } else {
      for (int step = 0; step < 100; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (slope(mid) > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
    const double lambda = lo;
    if (lambda <= 0.0) {
      break;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] += lambda * (vertex.x[j] - x[j]);
    }
    totals = poly.totals(x);
    const double next = log_utility(totals);
    if (next - value <= tol * std::max(1.0, std::abs(value))) {
      value = std::max(value, next);
      break;
    }
    value = next;
  }
  return matrix_from_solution(poly, x);
}

double pareto_comparison(const std::vector<double>& alpha,
                         const std::vector<double>& beta) {
  if (alpha.size() != beta.size()) {
    throw ShapeMismatch("pareto comparison needs vectors of equal length");
  }
  double rho = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (!(beta[k] > 0.0)) {
      throw ZeroBaseline("baseline component " + std::to_string(k + 1) +
                         " is not strictly positive");
    }
    rho = std::min(rho, alpha[k] / beta[k]);
  }
  return rho;
}

InefficiencyReport price_of_anarchy_instance(const System& s) {
  const std::vector<double> nash = system_equilibrium(s).totals;
  double nash_sum = 0.0;
  for (double v : nash) {
    if (!(v > 0.0)) {
      throw ZeroBaseline("equilibrium throughput is not strictly positive");
    }
    nash_sum += v;
  }
  const std::vector<double> best = max_sum_throughput(s).totals();
  double best_sum = 0.0;
  for (double v : best) {
    best_sum += v;
  }
  InefficiencyReport report;
  report.metric = "average-throughput";
  report.optimal_value = best_sum / s.num_apps();
  report.nash_value = nash_sum / s.num_apps();
  report.ratio = best_sum / nash_sum;
  return report;
}

SdfReport sdf_instance(const System& s) {
  const std::vector<double> nash = system_equilibrium(s).totals;
  for (double v : nash) {
    if (!(v > 0.0)) {
      throw ZeroBaseline("equilibrium throughput is not strictly positive");
    }
  }
  const UtilityPolytope poly = build_polytope(s);
  const int vars = poly.num_vars();

  // maximize t subject to: polytope, and per application
  //   t * nash_k - sum_n x_{n,k} <= 0.
  LinearProgram lp = polytope_lp(poly, 1);
  lp.objective[vars] = 1.0;
  for (int k = 0; k < s.num_apps(); ++k) {
    std::vector<double> row(vars + 1, 0.0);
    for (int n = 0; n < poly.num_workers; ++n) {
      row[poly.var(n, k)] = -1.0;
    }
    row[vars] = nash[k];
    lp.add_row(std::move(row), 0.0);
  }
  const LpSolution sol = solve_or_throw(lp, "sdf_instance");
  SdfReport report;
  report.factor = sol.value;
  report.witness = matrix_from_solution(poly, sol.x);
  return report;
}

ParetoInefficiency pareto_inefficiency_predicate(const System& s) {
  const int apps = s.num_apps();
  constexpr double kTieTol = 1e-12;

  double min_ratio = s.apps[0].ratio();
  double max_ratio = min_ratio;
  for (const Application& a : s.apps) {
    min_ratio = std::min(min_ratio, a.ratio());
    max_ratio = std::max(max_ratio, a.ratio());
  }
  const bool apps_differ = (max_ratio - min_ratio) > kTieTol * max_ratio;

  ParetoInefficiency out;
  for (int n = 0; n < s.num_workers(); ++n) {
    const double worker_ratio = s.workers[n].ratio();
    double sum_inv_gamma = 0.0;  // sum_k C / c_k
    double sum_gamma = 0.0;      // sum_k c_k / C
    for (const Application& a : s.apps) {
      sum_inv_gamma += worker_ratio / a.ratio();
      sum_gamma += a.ratio() / worker_ratio;
    }
    // Strictly inside the saturated regime: the other resource has idle
    // time. A worker sitting exactly on the boundary wastes nothing and
    // cannot witness inefficiency.
    if (out.comm_saturated_worker < 0 && sum_inv_gamma < apps * (1.0 - kTieTol)) {
      out.comm_saturated_worker = n;
    }
    if (out.comp_saturated_worker < 0 && sum_gamma < apps * (1.0 - kTieTol)) {
      out.comp_saturated_worker = n;
    }
  }
  out.inefficient = apps_differ && out.comm_saturated_worker >= 0 &&
                    out.comp_saturated_worker >= 0;
  return out;
}

System equivalent_subsystem(const System& s) {
  const SystemEquilibrium eq = system_equilibrium(s);
  const int apps = s.num_apps();

  System sub = s;
  for (int n = 0; n < s.num_workers(); ++n) {
    const Worker& w = s.workers[n];
    switch (eq.workers[n].partition.kind) {
      case SaturationCase::AllCommSaturated: {
        double used_power = 0.0;
        for (const Application& a : s.apps) {
          used_power += w.bandwidth / (apps * a.ratio());
        }
        sub.workers[n].power = used_power;
        break;
      }
      case SaturationCase::AllCompSaturated: {
        double used_bandwidth = 0.0;
        for (const Application& a : s.apps) {
          used_bandwidth += w.power * a.ratio() / apps;
        }
        sub.workers[n].bandwidth = used_bandwidth;
        break;
      }
      case SaturationCase::Mixed:
        break;  // both resources already fully used
    }
  }

  for (int n = 0; n < s.num_workers(); ++n) {
    if (sub.workers[n].bandwidth > s.workers[n].bandwidth * (1.0 + kIdentityTol) ||
        sub.workers[n].power > s.workers[n].power * (1.0 + kIdentityTol)) {
      std::ostringstream msg;
      msg << "subsystem capacity exceeds original at worker " << n + 1;
      throw SubsystemViolation(msg.str());
    }
  }
  const SystemEquilibrium sub_eq = system_equilibrium(sub);
  for (int n = 0; n < s.num_workers(); ++n) {
    for (int k = 0; k < apps; ++k) {
      const double a = eq.rates.at(n, k);
      const double b = sub_eq.rates.at(n, k);
      if (std::abs(a - b) > kConstraintTol * std::max(1.0, std::abs(a))) {
        std::ostringstream msg;
        msg << "subsystem equilibrium deviates at worker " << n + 1 << ", app "
            << k + 1 << " (" << b << " vs " << a << ")";
        throw SubsystemViolation(msg.str());
      }
    }
  }
  return sub;
}

BraessResult braess_check(const System& initial, const System& augmented) {
  if (initial.num_apps() != augmented.num_apps() ||
      initial.num_workers() != augmented.num_workers()) {
    throw NotAnAugmentation("systems differ in shape");
  }
  for (int k = 0; k < initial.num_apps(); ++k) {
    if (initial.apps[k].data != augmented.apps[k].data ||
        initial.apps[k].flops != augmented.apps[k].flops) {
      throw NotAnAugmentation("application " + std::to_string(k + 1) +
                              " differs between the two systems");
    }
  }
  for (int n = 0; n < initial.num_workers(); ++n) {
    if (augmented.workers[n].bandwidth < initial.workers[n].bandwidth ||
        augmented.workers[n].power < initial.workers[n].power) {
      throw NotAnAugmentation("capacity decreased at worker " + std::to_string(n + 1));
    }
  }

  BraessResult result;
  result.initial_totals = system_equilibrium(initial).totals;
  result.augmented_totals = system_equilibrium(augmented).totals;
  result.rho_initial_vs_augmented =
      pareto_comparison(result.initial_totals, result.augmented_totals);
  result.rho_augmented_vs_initial =
      pareto_comparison(result.augmented_totals, result.initial_totals);
  result.verdict = result.rho_initial_vs_augmented > 1.0 + kConstraintTol
                       ? BraessVerdict::ParadoxDetected
                       : BraessVerdict::NoParadox;
  return result;
}

SdfSearchResult sdf_search(std::uint64_t seed, int iterations, int max_apps,
                           int max_workers) {
  Rng rng(seed);
  auto random_system = [&rng, max_apps, max_workers]() {
    System s;
    s.label = "search-candidate";
    const int apps = rng.uniform_int(2, std::max(2, max_apps));
    const int workers = rng.uniform_int(2, std::max(2, max_workers));
    for (int k = 0; k < apps; ++k) {
      s.apps.push_back({rng.log_uniform(1e-1, 1e1), rng.log_uniform(1e-1, 1e1)});
    }
    for (int n = 0; n < workers; ++n) {
      s.workers.push_back({rng.log_uniform(1e-1, 1e1), rng.log_uniform(1e-1, 1e1)});
    }
    return s;
  };

  SdfSearchResult result;
  result.best = random_system();
  result.factor = sdf_instance(result.best).factor;
  int stale = 0;
  for (int iter = 0; iter < iterations; ++iter) {
    // Hill-climb around the incumbent, but restart from a fresh draw when
    // the climb stalls: the factor-one region is a wide plateau.
    if (stale >= 25) {
      const System fresh = random_system();
      double fresh_factor = 0.0;
      try {
        fresh_factor = sdf_instance(fresh).factor;
      } catch (const Error&) {
        continue;
      }
      if (fresh_factor > result.factor + 1e-12) {
        result.best = fresh;
        result.factor = fresh_factor;
        ++result.improvements;
        stale = 0;
      }
      continue;
    }
    System candidate = result.best;
    const double factor = std::exp(rng.uniform(-0.7, 0.7));
    auto bump = [&](double v) { return std::clamp(v * factor, 1e-3, 1e3); };
    switch (rng.uniform_int(0, 3)) {
      case 0: {
        Application& a = candidate.apps[rng.uniform_int(0, candidate.num_apps() - 1)];
        a.data = bump(a.data);
        break;
      }
      case 1: {
        Application& a = candidate.apps[rng.uniform_int(0, candidate.num_apps() - 1)];
        a.flops = bump(a.flops);
        break;
      }
      case 2: {
        Worker& w = candidate.workers[rng.uniform_int(0, candidate.num_workers() - 1)];
        w.bandwidth = bump(w.bandwidth);
        break;
      }
      default: {
        Worker& w = candidate.workers[rng.uniform_int(0, candidate.num_workers() - 1)];
        w.power = bump(w.power);
        break;
      }
    }
    double value = 0.0;
    try {
      value = sdf_instance(candidate).factor;
    } catch (const Error&) {
      ++stale;
      continue;
    }
    if (value > result.factor + 1e-12) {
      result.best = candidate;
      result.factor = value;
      ++result.improvements;
      stale = 0;
    } else {
      ++stale;
    }
  }
  return result;
}

}  // namespace botnash

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
// Command line front end. Exit codes: 0 success, 2 input error, 3 solver
// error, 4 a check that must always hold failed, 5 simulation above
// tolerance.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "botnash/allocations.hpp"
#include "botnash/equilibrium.hpp"
#include "botnash/fluidsim.hpp"
#include "botnash/format.hpp"
#include "botnash/model.hpp"
#include "botnash/rng.hpp"

using namespace botnash;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitFalsified = 4;
constexpr int kExitTolerance = 5;

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (!path || path->empty() || *path == "-") {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) {
    throw MalformedInstance("cannot open output file: " + *path);
  }
  out << content;
}

json provenance(const std::string& command, std::uint64_t seed) {
  json j;
  j["tool"] = "botnash";
  j["version"] = BOTNASH_VERSION;
  j["command"] = command;
  j["seed"] = seed;
  return j;
}

json system_json(const System& s) {
  json j;
  j["label"] = s.label;
  j["apps"] = json::array();
  for (const Application& a : s.apps) {
    j["apps"].push_back({{"b", a.data}, {"w", a.flops}});
  }
  j["workers"] = json::array();
  for (const Worker& w : s.workers) {
    j["workers"].push_back({{"bandwidth", w.bandwidth}, {"power", w.power}});
  }
  return j;
}

json worker_json(const WorkerEquilibrium& w) {
  json j;
  j["case"] = to_string(w.partition.kind);
  j["split"] = w.partition.split;
  j["comm_saturated"] = json::array();
  for (int k : w.partition.comm_saturated) {
    j["comm_saturated"].push_back(k + 1);
  }
  j["comp_saturated"] = json::array();
  for (int k : w.partition.comp_saturated) {
    j["comp_saturated"].push_back(k + 1);
  }
  j["rates"] = w.rates;
  j["seq_comm"] = w.seq_comm;
  j["seq_comp"] = w.seq_comp;
  j["par_comm"] = w.par_comm;
  j["par_comp"] = w.par_comp;
  if (w.comm_sat_ratio) {
    j["comm_sat_ratio"] = *w.comm_sat_ratio;
  }
  if (w.comp_sat_ratio) {
    j["comp_sat_ratio"] = *w.comp_sat_ratio;
  }
  return j;
}

json equilibrium_json(const SystemEquilibrium& eq) {
  json j;
  j["totals"] = eq.totals;
  j["workers"] = json::array();
  for (const WorkerEquilibrium& w : eq.workers) {
    j["workers"].push_back(worker_json(w));
  }
  return j;
}

void csv_vector(std::ostringstream& out, const std::string& prefix,
                const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << prefix << '.' << i + 1 << ',' << format_number(v[i]) << '\n';
  }
}

std::string equilibrium_table(const System& s, const SystemEquilibrium& eq) {
  std::ostringstream out;
  out << "instance: " << s.label << " (" << s.num_apps() << " applications, "
      << s.num_workers() << " workers)\n";
  out << "equilibrium totals (tasks/s):\n";
  for (int k = 0; k < s.num_apps(); ++k) {
    out << "  app " << k + 1 << ": " << format_number(eq.totals[k]) << '\n';
  }
  for (int n = 0; n < s.num_workers(); ++n) {
    const WorkerEquilibrium& w = eq.workers[n];
    out << "worker " << n + 1 << ": " << to_string(w.partition.kind);
    if (w.partition.kind == SaturationCase::Mixed) {
      out << " (split " << w.partition.split << ")";
    }
    out << '\n';
    auto row = [&](const char* name, const std::vector<double>& v) {
      out << "  " << name << ':';
      for (double x : v) {
        out << ' ' << format_number(x);
      }
      out << '\n';
    };
    row("rates", w.rates);
    row("seq comm", w.seq_comm);
    row("seq comp", w.seq_comp);
    row("par comm", w.par_comm);
    row("par comp", w.par_comp);
  }
  return out.str();
}

std::string equilibrium_csv(const SystemEquilibrium& eq) {
  std::ostringstream out;
  out << "key,value\n";
  csv_vector(out, "total", eq.totals);
  for (std::size_t n = 0; n < eq.workers.size(); ++n) {
    const WorkerEquilibrium& w = eq.workers[n];
    const std::string p = "worker." + std::to_string(n + 1);
    out << p << ".case," << to_string(w.partition.kind) << '\n';
    csv_vector(out, p + ".rate", w.rates);
    csv_vector(out, p + ".seq_comm", w.seq_comm);
    csv_vector(out, p + ".seq_comp", w.seq_comp);
    csv_vector(out, p + ".par_comm", w.par_comm);
    csv_vector(out, p + ".par_comp", w.par_comp);
  }
  return out.str();
}

// ---------------------------------------------------------------------------

struct CommonFlags {
  std::string input;
  std::string output;
  std::string format = "table";
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool format_flag = true) {
  cmd->add_option("--input,-i", flags.input, "instance file (JSON)")->required();
  cmd->add_option("--output,-o", flags.output, "write the report here instead of stdout");
  if (format_flag) {
    cmd->add_option("--format,-f", flags.format, "output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
  }
}

int cmd_equilibrium(const CommonFlags& flags) {
  const System s = load_instance(flags.input);
  const SystemEquilibrium eq = system_equilibrium(s);
  if (flags.format == "json") {
    json j;
    j["provenance"] = provenance("equilibrium", 0);
    j["system"] = system_json(s);
    j["nash"] = equilibrium_json(eq);
    emit(flags.output, j.dump(2) + "\n");
  } else if (flags.format == "csv") {
    emit(flags.output, equilibrium_csv(eq));
  } else {
    emit(flags.output, equilibrium_table(s, eq));
  }
  return kExitOk;
}

int cmd_compare(const CommonFlags& flags) {
  const System s = load_instance(flags.input);
  const SystemEquilibrium eq = system_equilibrium(s);
  const std::vector<double> best_sum = max_sum_throughput(s).totals();
  const std::vector<double> fair = max_min_fair(s).totals();
  const std::vector<double> prop = proportional_fair(s).totals();
  const InefficiencyReport poa = price_of_anarchy_instance(s);
  const SdfReport sdf = sdf_instance(s);
  const ParetoInefficiency predicate = pareto_inefficiency_predicate(s);
  const System sub = equivalent_subsystem(s);

  if (flags.format == "json") {
    json j;
    j["provenance"] = provenance("compare", 0);
    j["system"] = system_json(s);
    j["nash"] = equilibrium_json(eq);
    j["references"]["max_sum"] = {{"totals", best_sum},
                                  {"value", std::accumulate(best_sum.begin(), best_sum.end(), 0.0)}};
    j["references"]["max_min"] = {{"totals", fair}};
    j["references"]["proportional_fair"] = {{"totals", prop}};
    j["metrics"]["price_of_anarchy"] = {{"metric", poa.metric},
                                        {"optimal", poa.optimal_value},
                                        {"nash", poa.nash_value},
                                        {"ratio", poa.ratio}};
    j["metrics"]["sdf"] = {{"factor", sdf.factor},
                           {"witness_totals", sdf.witness.totals()}};
    j["metrics"]["pareto_inefficient"] = predicate.inefficient;
    if (predicate.inefficient) {
      j["metrics"]["witness_workers"] = {predicate.comm_saturated_worker + 1,
                                         predicate.comp_saturated_worker + 1};
    }
    json subsystem = json::array();
    for (const Worker& w : sub.workers) {
      subsystem.push_back({{"bandwidth", w.bandwidth}, {"power", w.power}});
    }
    j["equivalent_subsystem"] = subsystem;
    emit(flags.output, j.dump(2) + "\n");
    return kExitOk;
  }

  if (flags.format == "csv") {
    std::ostringstream out;
    out << "key,value\n";
    csv_vector(out, "nash", eq.totals);
    csv_vector(out, "max_sum", best_sum);
    csv_vector(out, "max_min", fair);
    csv_vector(out, "proportional_fair", prop);
    out << "price_of_anarchy," << format_number(poa.ratio) << '\n';
    out << "sdf," << format_number(sdf.factor) << '\n';
    out << "pareto_inefficient," << (predicate.inefficient ? 1 : 0) << '\n';
    for (std::size_t n = 0; n < sub.workers.size(); ++n) {
      out << "subsystem." << n + 1 << ".bandwidth,"
          << format_number(sub.workers[n].bandwidth) << '\n';
      out << "subsystem." << n + 1 << ".power," << format_number(sub.workers[n].power)
          << '\n';
    }
    emit(flags.output, out.str());
    return kExitOk;
  }

  std::ostringstream out;
  out << equilibrium_table(s, eq);
  auto line = [&](const char* name, const std::vector<double>& v) {
    out << name << ':';
    for (double x : v) {
      out << ' ' << format_number(x);
    }
    out << '\n';
  };
  line("max-sum totals", best_sum);
  line("max-min totals", fair);
  line("proportional-fair totals", prop);
  out << "price of anarchy (avg throughput): " << format_number(poa.ratio) << '\n';
  out << "selfishness degradation factor: " << format_number(sdf.factor) << '\n';
  out << "pareto inefficient: " << (predicate.inefficient ? "yes" : "no");
  if (predicate.inefficient) {
    out << " (workers " << predicate.comm_saturated_worker + 1 << " and "
        << predicate.comp_saturated_worker + 1 << ")";
  }
  out << '\n';
  out << "equivalent subsystem capacities:\n";
  for (std::size_t n = 0; n < sub.workers.size(); ++n) {
    out << "  worker " << n + 1 << ": bandwidth "
        << format_number(sub.workers[n].bandwidth) << ", power "
        << format_number(sub.workers[n].power) << '\n';
  }
  emit(flags.output, out.str());
  return kExitOk;
}

std::string sweep_csv(const System& base, int worker, bool sweep_bandwidth,
                      double lo, double hi, int steps) {
  const SaturationThresholds thresholds =
      saturation_thresholds(base.apps, base.workers[worker].power);
  std::ostringstream out;
  out << "# instance: " << base.label << '\n';
  out << "# worker: " << worker + 1 << '\n';
  out << "# resource: " << (sweep_bandwidth ? "bandwidth" : "power") << '\n';
  out << "# bandwidth_threshold_lower: " << format_number(thresholds.lower) << '\n';
  out << "# bandwidth_threshold_upper: " << format_number(thresholds.upper) << '\n';
  out << "swept_value";
  for (int k = 0; k < base.num_apps(); ++k) {
    out << ",alpha_" << k + 1;
  }
  out << ",max,min,avg\n";
  for (int i = 0; i < steps; ++i) {
    const double value = lo + (hi - lo) * i / (steps - 1);
    System s = base;
    if (sweep_bandwidth) {
      s.workers[worker].bandwidth = value;
    } else {
      s.workers[worker].power = value;
    }
    const std::vector<double> totals = system_equilibrium(s).totals;
    out << format_number(value);
    for (double t : totals) {
      out << ',' << format_number(t);
    }
    const double mx = *std::max_element(totals.begin(), totals.end());
    const double mn = *std::min_element(totals.begin(), totals.end());
    const double avg = std::accumulate(totals.begin(), totals.end(), 0.0) / totals.size();
    out << ',' << format_number(mx) << ',' << format_number(mn) << ','
        << format_number(avg) << '\n';
  }
  return out.str();
}

int cmd_sweep(const CommonFlags& flags, int worker, const std::string& resource,
              double lo, double hi, int steps) {
  const System s = load_instance(flags.input);
  if (worker < 1 || worker > s.num_workers()) {
    throw MalformedInstance("sweep worker index out of range: " + std::to_string(worker));
  }
  if (!(lo > 0.0) || !(hi > lo) || steps < 2) {
    throw MalformedInstance("sweep range is degenerate: need 0 < from < to and steps >= 2");
  }
  emit(flags.output, sweep_csv(s, worker - 1, resource == "bandwidth", lo, hi, steps));
  return kExitOk;
}

int cmd_braess_scan(const CommonFlags& flags, std::uint64_t seed, int trials) {
  const System s = load_instance(flags.input);
  if (trials < 1) {
    throw MalformedInstance("braess-scan needs at least one trial");
  }
  Rng rng(seed);
  int paradoxes = 0;
  double min_rho = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    System grown = s;
    Worker& w = grown.workers[rng.uniform_int(0, s.num_workers() - 1)];
    const double factor = rng.log_uniform(1.0, 4.0);
    if (rng.uniform() < 0.5) {
      w.bandwidth *= factor;
    } else {
      w.power *= factor;
    }
    const BraessResult r = braess_check(s, grown);
    if (r.verdict == BraessVerdict::ParadoxDetected) {
      ++paradoxes;
    }
    min_rho = std::min(min_rho, r.rho_augmented_vs_initial);
  }

  if (flags.format == "json") {
    json j;
    j["provenance"] = provenance("braess-scan", seed);
    j["system"] = system_json(s);
    j["trials"] = trials;
    j["paradoxes"] = paradoxes;
    j["min_rho_augmented_vs_initial"] = min_rho;
    emit(flags.output, j.dump(2) + "\n");
  } else if (flags.format == "csv") {
    std::ostringstream out;
    out << "key,value\n";
    out << "trials," << trials << '\n';
    out << "paradoxes," << paradoxes << '\n';
    out << "min_rho_augmented_vs_initial," << format_number(min_rho) << '\n';
    emit(flags.output, out.str());
  } else {
    std::ostringstream out;
    out << "instance: " << s.label << '\n';
    out << "trials: " << trials << " (seed " << seed << ")\n";
    out << "paradoxes detected: " << paradoxes << '\n';
    out << "min rho(augmented, initial): " << format_number(min_rho)
        << "  (single applications may lose; a paradox means all do)\n";
    emit(flags.output, out.str());
  }
  return paradoxes == 0 ? kExitOk : kExitFalsified;
}

int cmd_simulate(const CommonFlags& flags, const SimConfig& cfg, double tolerance) {
  const System s = load_instance(flags.input);
  if (!(cfg.warmup < cfg.horizon)) {
    throw EmptyWindow("simulation window is empty: warmup must be below the horizon");
  }
  const SimTrace trace = run(s, cfg);
  const std::vector<double> errors = compare_to_closed_form(trace, s);
  const std::vector<double> expected = system_equilibrium(s).totals;
  const std::vector<double>& measured = *trace.final_estimate;

  if (!flags.output.empty()) {
    emit(flags.output + ".trace.csv", trace_to_csv(trace));
    emit(flags.output + ".samples.csv", samples_to_csv(trace));
  }

  std::ostringstream out;
  if (flags.format == "json") {
    json j;
    j["provenance"] = provenance("simulate", 0);
    j["system"] = system_json(s);
    j["config"] = {{"horizon", cfg.horizon},
                   {"warmup", cfg.warmup},
                   {"buffer_cap", cfg.buffer_cap},
                   {"measure_window", cfg.measure_window},
                   {"tolerance", tolerance}};
    j["closed_form"] = expected;
    j["measured"] = measured;
    j["relative_error"] = errors;
    out << j.dump(2) << '\n';
  } else if (flags.format == "csv") {
    out << "app,closed_form,measured,relative_error\n";
    for (std::size_t k = 0; k < errors.size(); ++k) {
      out << k + 1 << ',' << format_number(expected[k]) << ','
          << format_number(measured[k]) << ',' << format_number(errors[k]) << '\n';
    }
  } else {
    out << "instance: " << s.label << "  horizon " << format_number(cfg.horizon)
        << "s, warmup " << format_number(cfg.warmup) << "s, window cap "
        << cfg.buffer_cap << "\n";
    out << "app  closed-form  measured  rel-error\n";
    for (std::size_t k = 0; k < errors.size(); ++k) {
      out << "  " << k + 1 << "  " << format_number(expected[k]) << "  "
          << format_number(measured[k]) << "  " << format_number(errors[k]) << '\n';
    }
  }
  const double worst = *std::max_element(errors.begin(), errors.end());
  if (flags.format == "table") {
    out << "worst relative error: " << format_number(worst) << '\n';
  }
  // The comparison always goes to stdout; --output names the CSV pair.
  std::fputs(out.str().c_str(), stdout);
  return worst <= tolerance ? kExitOk : kExitTolerance;
}

// --- repro: regenerate the bundled-instance numbers and check them ---------

struct ReproCheck {
  int failures = 0;
  std::ostringstream out;

  void near(const std::string& name, double actual, double expected, double tol) {
    const bool ok = std::abs(actual - expected) <= tol;
    out << (ok ? "PASS" : "FAIL") << ' ' << name << " = " << format_number(actual)
        << " (expected " << format_number(expected) << ")\n";
    failures += ok ? 0 : 1;
  }
  void truthy(const std::string& name, bool ok) {
    out << (ok ? "PASS" : "FAIL") << ' ' << name << '\n';
    failures += ok ? 0 : 1;
  }
};

int cmd_repro(const std::string& example_id, const std::string& data_dir,
              const std::string& output) {
  const std::string path = data_dir + "/" + example_id + ".json";
  ReproCheck check;
  std::string artifact_csv;

  if (example_id == "example-2x2") {
    const System s = load_instance(path);
    const SystemEquilibrium eq = system_equilibrium(s);
    check.near("equilibrium total app 1", eq.totals[0], 3.0 / 4.0, 1e-12);
    check.near("equilibrium total app 2", eq.totals[1], 3.0 / 4.0, 1e-12);
    const auto cooperative = AllocationMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
    check.truthy("cooperative point (1,1) feasible", is_feasible(s, cooperative).feasible);
    const SdfReport sdf = sdf_instance(s);
    check.near("selfishness degradation factor", sdf.factor, 4.0 / 3.0, 1e-9);
    check.near("price of anarchy", price_of_anarchy_instance(s).ratio, 4.0 / 3.0, 1e-9);
    std::ostringstream csv;
    csv << "key,value\n";
    csv_vector(csv, "nash", eq.totals);
    csv_vector(csv, "sdf_witness", sdf.witness.totals());
    csv << "sdf," << format_number(sdf.factor) << '\n';
    artifact_csv = csv.str();
  } else if (example_id == "smk") {
    const System s = load_instance(path);
    const SystemEquilibrium eq = system_equilibrium(s);
    check.near("equilibrium total app 1", eq.totals[0], 2.0 / 3.0, 1e-12);
    check.near("equilibrium total app 2", eq.totals[1], 1.0 / 3.0, 1e-12);
    check.near("equilibrium total app 3", eq.totals[2], 1.0 / 3.0, 1e-12);
    const std::vector<double> fair = max_min_fair(s).totals();
    for (int k = 0; k < 3; ++k) {
      check.near("max-min total app " + std::to_string(k + 1), fair[k], 0.4, 1e-9);
    }
    const std::vector<double> best = max_sum_throughput(s).totals();
    check.near("profit optimum", std::accumulate(best.begin(), best.end(), 0.0), 2.0, 1e-9);
    const std::vector<double> prop = proportional_fair(s).totals();
    for (int k = 0; k < 3; ++k) {
      check.near("proportional-fair total app " + std::to_string(k + 1), prop[k],
                 eq.totals[k], 1e-4);
    }
    check.near("price of anarchy", price_of_anarchy_instance(s).ratio, 1.5, 1e-9);
    std::ostringstream csv;
    csv << "key,value\n";
    csv_vector(csv, "nash", eq.totals);
    csv_vector(csv, "max_min", fair);
    csv_vector(csv, "max_sum", best);
    csv_vector(csv, "proportional_fair", prop);
    artifact_csv = csv.str();
  } else if (example_id == "fig-degradation") {
    const System s = load_instance(path);
    const SaturationThresholds t = saturation_thresholds(s.apps, s.workers[0].power);
    check.near("lower bandwidth threshold", t.lower, 560.0 / 73.0, 1e-12);
    check.near("upper bandwidth threshold", t.upper, 245.0 / 24.0, 1e-12);
    const DegradationBounds b = degradation_bounds(s.apps, s.workers[0].power);
    check.near("max-throughput degradation", b.max_throughput, 112.0 / 73.0, 1e-12);
    check.near("min-throughput degradation", b.min_throughput, 84.0 / 73.0, 1e-12);
    check.near("avg-throughput degradation", b.avg_throughput, 2466.0 / 2263.0, 1e-12);
    auto measures = [&s](double bandwidth) {
      System copy = s;
      copy.workers[0].bandwidth = bandwidth;
      const std::vector<double> totals = system_equilibrium(copy).totals;
      return std::array<double, 3>{
          *std::max_element(totals.begin(), totals.end()),
          *std::min_element(totals.begin(), totals.end()),
          std::accumulate(totals.begin(), totals.end(), 0.0) / totals.size()};
    };
    const auto before = measures(t.lower);
    const auto after = measures(t.upper);
    check.truthy("max throughput lower at the upper threshold", after[0] < before[0]);
    check.truthy("min throughput lower at the upper threshold", after[1] < before[1]);
    check.truthy("avg throughput lower at the upper threshold", after[2] < before[2]);
    artifact_csv = sweep_csv(s, 0, true, 5.0, 12.0, 141);
  } else {
    throw MalformedInstance("unknown repro id: " + example_id +
                            " (expected example-2x2, smk or fig-degradation)");
  }

  std::fputs(check.out.str().c_str(), stdout);
  if (!output.empty()) {
    emit(output, artifact_csv);
  }
  return check.failures == 0 ? kExitOk : kExitFalsified;
}

int dispatch(const std::function<int()>& body) {
  try {
    return body();
  } catch (const MalformedInstance& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NonPositiveParameter& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ShapeMismatch& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const EmptyWindow& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NotAnAugmentation& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const SubsystemViolation& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kExitFalsified;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equilibria of selfish bag-of-tasks schedulers on master-worker platforms"};
  app.set_version_flag("--version", BOTNASH_VERSION);
  app.require_subcommand(1);

  CommonFlags eq_flags;
  CLI::App* eq_cmd = app.add_subcommand(
      "equilibrium", "closed-form equilibrium rates, partitions and time ratios");
  add_common(eq_cmd, eq_flags);

  CommonFlags cmp_flags;
  CLI::App* cmp_cmd = app.add_subcommand(
      "compare", "equilibrium vs cooperative reference allocations and metrics");
  add_common(cmp_cmd, cmp_flags);

  CommonFlags sweep_flags;
  int sweep_worker = 1;
  std::string sweep_resource = "bandwidth";
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_steps = 0;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "CSV of equilibrium totals while one resource capacity varies");
  add_common(sweep_cmd, sweep_flags, false);
  sweep_cmd->add_option("--worker", sweep_worker, "1-based worker to modify")
      ->capture_default_str();
  sweep_cmd->add_option("--resource", sweep_resource, "bandwidth or power")
      ->check(CLI::IsMember({"bandwidth", "power"}))
      ->capture_default_str();
  sweep_cmd->add_option("--from", sweep_from, "range start (> 0)")->required();
  sweep_cmd->add_option("--to", sweep_to, "range end (> from)")->required();
  sweep_cmd->add_option("--steps", sweep_steps, "number of samples (>= 2)")->required();

  CommonFlags braess_flags;
  std::uint64_t braess_seed = 1;
  int braess_trials = 1000;
  CLI::App* braess_cmd = app.add_subcommand(
      "braess-scan", "random resource augmentations; exits 4 on any paradox");
  add_common(braess_cmd, braess_flags);
  braess_cmd->add_option("--seed", braess_seed, "random seed")->capture_default_str();
  braess_cmd->add_option("--trials", braess_trials, "number of augmentations (>= 1)")
      ->capture_default_str();

  CommonFlags sim_flags;
  SimConfig sim_cfg;
  bool warmup_set = false;
  double sim_tolerance = 0.05;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "fluid simulation of the flooding schedulers vs the closed form");
  add_common(sim_cmd, sim_flags);
  sim_cmd->add_option("--horizon", sim_cfg.horizon, "simulated seconds")
      ->capture_default_str();
  sim_cmd->add_option("--warmup", sim_cfg.warmup, "seconds dropped before measuring (default: horizon/10)")
      ->each([&warmup_set](const std::string&) { warmup_set = true; });
  sim_cmd->add_option("--window", sim_cfg.measure_window, "seconds per throughput sample")
      ->capture_default_str();
  sim_cmd->add_option("--buffer-cap", sim_cfg.buffer_cap,
                      "max transferred-but-uncomputed tasks per (app, worker)")
      ->capture_default_str();
  sim_cmd->add_option("--tolerance", sim_tolerance,
                      "max relative error vs the closed form before exit 5")
      ->capture_default_str();

  std::string repro_id;
  std::string repro_data_dir = BOTNASH_DATA_DIR;
  std::string repro_output;
  CLI::App* repro_cmd = app.add_subcommand(
      "repro", "regenerate a bundled example and check its constants");
  repro_cmd->add_option("id", repro_id, "example-2x2 | smk | fig-degradation")->required();
  repro_cmd->add_option("--data-dir", repro_data_dir, "directory with instance files")
      ->capture_default_str();
  repro_cmd->add_option("--output,-o", repro_output, "write the regenerated artifact CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (eq_cmd->parsed()) {
    return dispatch([&] { return cmd_equilibrium(eq_flags); });
  }
  if (cmp_cmd->parsed()) {
    return dispatch([&] { return cmd_compare(cmp_flags); });
  }
  if (sweep_cmd->parsed()) {
    return dispatch([&] {
      return cmd_sweep(sweep_flags, sweep_worker, sweep_resource, sweep_from, sweep_to,
                       sweep_steps);
    });
  }
  if (braess_cmd->parsed()) {
    return dispatch([&] { return cmd_braess_scan(braess_flags, braess_seed, braess_trials); });
  }
  if (sim_cmd->parsed()) {
    if (!warmup_set) {
      sim_cfg.warmup = sim_cfg.horizon / 10.0;
    }
    return dispatch([&] { return cmd_simulate(sim_flags, sim_cfg, sim_tolerance); });
  }
  if (repro_cmd->parsed()) {
    return dispatch([&] { return cmd_repro(repro_id, repro_data_dir, repro_output); });
  }
  return kExitInput;
}

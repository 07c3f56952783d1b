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

#ifndef BOTNASH_MODEL_HPP
#define BOTNASH_MODEL_HPP

#include <string>
#include <vector>

#include "botnash/errors.hpp"

namespace botnash {

// Default tolerance of constraint checks.
inline constexpr double kConstraintTol = 1e-9;
// Tolerance of identities that hold by construction.
inline constexpr double kIdentityTol = 1e-12;

// A bag-of-tasks application. Every task ships `data` Mb from the master
// and costs `flops` Mflop on the worker it lands on.
struct Application {
  double data = 0.0;   // b, task input size (Mb)
  double flops = 0.0;  // w, task computation size (Mflop)

  // c = b / w, communication-to-computation ratio of one task. Always
  // recomputed from data and flops, never stored.
  double ratio() const { return data / flops; }
};

// A worker of the master-worker platform: a private link of capacity
// `bandwidth` Mb/s and a CPU of `power` Mflop/s. The master itself computes
// nothing and its network card is never a bottleneck, so it carries no
// resource of its own.
struct Worker {
  double bandwidth = 0.0;  // B (Mb/s)
  double power = 0.0;      // W (Mflop/s)

  // C = B / W, communication-to-computation ratio of the worker.
  double ratio() const { return bandwidth / power; }
};

// A full problem instance: K applications compete on N workers.
// Application and worker positions are stable identities; all external
// output is 1-based, in-memory indices are 0-based.
struct System {
  std::string label;
  std::vector<Application> apps;
  std::vector<Worker> workers;

  int num_apps() const { return static_cast<int>(apps.size()); }
  int num_workers() const { return static_cast<int>(workers.size()); }
};

// Unvalidated instance description, as read from a file or built by hand.
struct RawInstance {
  std::string label;
  std::vector<double> task_data;   // b, per application
  std::vector<double> task_flops;  // w, per application
  std::vector<double> bandwidth;   // B, per worker
  std::vector<double> power;       // W, per worker
};

// Checks lengths and positivity and assembles a System.
// Throws MalformedInstance on length mismatch or empty vectors,
// NonPositiveParameter on any value <= 0 or not finite.
System validate_system(const RawInstance& raw);

// Strict JSON ingestion of the instance format
//   {"label": str, "apps": [{"b":..,"w":..}...],
//    "workers": [{"bandwidth":..,"power":..}...]}
// Unknown keys are rejected ("label" may be omitted). Units are fixed:
// Mb, Mflop, Mb/s, Mflop/s. Diagnostics name the offending field, 1-based.
System parse_instance(const std::string& json_text);
System load_instance(const std::string& path);

// Lossless JSON for the same schema; parse_instance(instance_to_json(s))
// reproduces s exactly.
std::string instance_to_json(const System& s);

// Task throughputs alpha[worker][app] in tasks/s for one allocation.
// Entries may be infeasible or even negative; is_feasible() judges them.
class AllocationMatrix {
 public:
  AllocationMatrix() = default;
  AllocationMatrix(int num_workers, int num_apps)
      : workers_(num_workers), apps_(num_apps),
        rates_(static_cast<std::size_t>(num_workers) * num_apps, 0.0) {}

  static AllocationMatrix from_rows(const std::vector<std::vector<double>>& rows);

  double& at(int worker, int app) { return rates_[index(worker, app)]; }
  double at(int worker, int app) const { return rates_[index(worker, app)]; }

  int num_workers() const { return workers_; }
  int num_apps() const { return apps_; }

  // Per-application totals alpha_k = sum over workers.
  std::vector<double> totals() const;

  const std::vector<double>& flat() const { return rates_; }  // worker-major

 private:
  std::size_t index(int worker, int app) const {
    return static_cast<std::size_t>(worker) * apps_ + app;
  }
  int workers_ = 0;
  int apps_ = 0;
  std::vector<double> rates_;
};

// Per-application totals of an allocation.
std::vector<double> aggregate(const AllocationMatrix& a);

struct FeasibilityResult {
  bool feasible = false;
  // Empty when feasible, else a human-readable description of the first
  // violated constraint. Scan order: per worker, non-negativity, then
  // communication, then computation.
  std::string violation;

  explicit operator bool() const { return feasible; }
};

// True iff for every worker n
//   sum_k alpha[n][k] * b_k <= B_n * (1 + tol)   (communication)
//   sum_k alpha[n][k] * w_k <= W_n * (1 + tol)   (computation)
// and every entry >= -tol. Throws ShapeMismatch if `a` is not N x K.
FeasibilityResult is_feasible(const System& s, const AllocationMatrix& a,
                              double tol = kConstraintTol);

// The utility polytope: one variable per (worker, app) pair, two capacity
// rows per worker, implicit non-negativity. Its points are exactly the
// allocation matrices accepted by is_feasible at tol = 0.
struct UtilityPolytope {
  int num_workers = 0;
  int num_apps = 0;
  std::vector<std::vector<double>> rows;  // rows[i] . x <= bounds[i]
  std::vector<double> bounds;

  int num_vars() const { return num_workers * num_apps; }
  int var(int worker, int app) const { return worker * num_apps + app; }

  // Linear map from polytope variables to per-application totals.
  std::vector<double> totals(const std::vector<double>& x) const;

  bool contains(const std::vector<double>& x, double tol) const;
};

UtilityPolytope build_polytope(const System& s);

}  // namespace botnash

#endif  // BOTNASH_MODEL_HPP

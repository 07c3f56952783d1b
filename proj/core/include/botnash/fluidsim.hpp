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
// Deterministic event-driven fluid simulator of selfish flooding
// schedulers under ideal fair sharing. Each application keeps every worker
// fed: it starts a transfer whenever its transfer slot is free and fewer
// than Q of its tasks sit transferred-but-uncomputed on that worker, and
// computes its buffered tasks one at a time. Ongoing transfers on a link
// share the bandwidth equally; ongoing computations share the CPU equally.
// Remaining volumes are integrated analytically between events, so the
// fluid dynamics carry no discretization error.

#ifndef BOTNASH_FLUIDSIM_HPP
#define BOTNASH_FLUIDSIM_HPP

#include <optional>
#include <string>
#include <vector>

#include "botnash/model.hpp"

namespace botnash {

struct SimConfig {
  double horizon = 2000.0;       // simulated seconds
  double warmup = 200.0;         // seconds discarded before measuring
  int buffer_cap = 2;            // Q, max transferred-but-uncomputed tasks per (app, worker)
  double measure_window = 50.0;  // seconds per throughput sample
};

enum class EventKind { TransferStart, TransferDone, ComputeStart, ComputeDone };

const char* to_string(EventKind k);

struct SimEvent {
  double time = 0.0;
  EventKind kind = EventKind::TransferStart;
  int app = 0;     // 0-based
  int worker = 0;  // 0-based
};

struct ThroughputSample {
  double window_start = 0.0;
  int app = 0;
  double throughput = 0.0;  // tasks/s over one measurement window
};

// Resource accounting for one (worker, app) pair.
struct PairActivity {
  double transferred_mb = 0.0;     // bandwidth integrated over the full run
  double computed_mflop = 0.0;     // CPU integrated over the full run
  long long transfers_completed = 0;
  long long tasks_completed = 0;   // full run
  double inflight_transfer_mb = 0.0;    // delivered part of the unfinished transfer
  double inflight_compute_mflop = 0.0;  // done part of the unfinished computation
  double window_transfer_busy = 0.0;    // seconds with an ongoing transfer in [warmup, horizon]
  double window_compute_busy = 0.0;
  long long window_completions = 0;
  int peak_window_level = 0;       // max buffered + computing ever observed
};

struct WorkerActivity {
  double link_busy = 0.0;  // seconds with >= 1 ongoing transfer, full run
  double cpu_busy = 0.0;
};

struct SimTrace {
  std::vector<SimEvent> events;  // time-ordered
  std::vector<ThroughputSample> samples;
  // Per-application throughput over [warmup, horizon]; absent when the
  // measurement window is empty.
  std::optional<std::vector<double>> final_estimate;
  double measured_seconds = 0.0;
  std::vector<std::vector<PairActivity>> pairs;  // [worker][app]
  std::vector<WorkerActivity> worker_activity;
};

// Runs the simulation. Degenerate configs (warmup >= horizon) produce a
// trace without samples or final estimate, not a failure. Throws
// MalformedInstance on a config that cannot be simulated at all
// (buffer_cap < 1, horizon < 0, measure_window <= 0, warmup < 0).
SimTrace run(const System& s, const SimConfig& cfg);

// Observed saturation flags per (worker, app): an application is counted
// communication-saturated when its transfer slot was busy more than a
// fraction 1 - eps of the measurement window, computation-saturated
// likewise for its compute slot. Exactly critical workers saturate both.
// Throws EmptyWindow if the trace has no measurement window.
struct EmpiricalPartition {
  std::vector<std::vector<bool>> comm_saturated;  // [worker][app]
  std::vector<std::vector<bool>> comp_saturated;
};

EmpiricalPartition empirical_partition(const SimTrace& trace, const System& s,
                                       double eps = 0.02);

// Relative error of the measured per-application totals against the
// closed-form equilibrium. Throws EmptyWindow on an unmeasured trace.
std::vector<double> compare_to_closed_form(const SimTrace& trace, const System& s);

// CSV exports. Columns: time,kind,app,worker and window_start,app,throughput
// (1-based indices, 12 significant digits, LF line endings).
std::string trace_to_csv(const SimTrace& trace);
std::string samples_to_csv(const SimTrace& trace);

}  // namespace botnash

#endif  // BOTNASH_FLUIDSIM_HPP

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

#include "botnash/fluidsim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "botnash/equilibrium.hpp"
#include "botnash/format.hpp"

namespace botnash {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::TransferStart:
      return "transfer_start";
    case EventKind::TransferDone:
      return "transfer_done";
    case EventKind::ComputeStart:
      return "compute_start";
    case EventKind::ComputeDone:
      return "compute_done";
  }
  return "?";
}

namespace {

constexpr double kIdle = -1.0;

// Live state of one (worker, app) pair: at most one ongoing transfer, at
// most one ongoing computation, plus ready tasks waiting in the buffer.
struct PairState {
  double transfer_remaining = kIdle;  // Mb still to move, < 0 when idle
  double compute_remaining = kIdle;   // Mflop still to crunch, < 0 when idle
  int buffered = 0;

  bool transferring() const { return transfer_remaining >= 0.0; }
  bool computing() const { return compute_remaining >= 0.0; }
  int window_level() const { return buffered + (computing() ? 1 : 0); }
};

struct Sim {
  const System& sys;
  const SimConfig& cfg;
  SimTrace trace;

  std::vector<std::vector<PairState>> state;  // [worker][app]
  std::vector<int> ongoing_transfers;         // per worker
  std::vector<int> ongoing_computations;
  std::vector<std::vector<long long>> window_counts;  // [window][app]
  double clock = 0.0;

  Sim(const System& s, const SimConfig& c) : sys(s), cfg(c) {
    const int workers = s.num_workers();
    const int apps = s.num_apps();
    state.assign(workers, std::vector<PairState>(apps));
    ongoing_transfers.assign(workers, 0);
    ongoing_computations.assign(workers, 0);
    trace.pairs.assign(workers, std::vector<PairActivity>(apps));
    trace.worker_activity.assign(workers, {});
    const double span = cfg.horizon - cfg.warmup;
    const int windows = span > 0.0 ? static_cast<int>(std::floor(span / cfg.measure_window + 1e-9)) : 0;
    window_counts.assign(windows, std::vector<long long>(apps, 0));
  }

  void record(EventKind kind, int worker, int app) {
    trace.events.push_back({clock, kind, app, worker});
  }

  void note_window_level(int worker, int app) {
    PairActivity& pa = trace.pairs[worker][app];
    pa.peak_window_level = std::max(pa.peak_window_level, state[worker][app].window_level());
  }

  void start_transfer(int worker, int app) {
    state[worker][app].transfer_remaining = sys.apps[app].data;
    ++ongoing_transfers[worker];
    record(EventKind::TransferStart, worker, app);
  }

  void start_compute(int worker, int app) {
    PairState& ps = state[worker][app];
    --ps.buffered;
    ps.compute_remaining = sys.apps[app].flops;
    ++ongoing_computations[worker];
    record(EventKind::ComputeStart, worker, app);
    note_window_level(worker, app);
  }

  // Flooding rule: refill the transfer slot whenever it is free and fewer
  // than Q tasks of this pair sit transferred-but-uncomputed.
  void maybe_start_transfer(int worker, int app) {
    const PairState& ps = state[worker][app];
    if (!ps.transferring() && ps.window_level() < cfg.buffer_cap) {
      start_transfer(worker, app);
    }
  }

  // Move every ongoing activity forward by dt seconds of fair sharing.
  void advance(double dt) {
    if (dt <= 0.0) {
      return;
    }
    const double win_lo = std::max(clock, cfg.warmup);
    const double win_hi = std::min(clock + dt, cfg.horizon);
    const double window_overlap = std::max(0.0, win_hi - win_lo);
    for (int n = 0; n < sys.num_workers(); ++n) {
      const double comm_rate =
          ongoing_transfers[n] > 0 ? sys.workers[n].bandwidth / ongoing_transfers[n] : 0.0;
      const double comp_rate =
          ongoing_computations[n] > 0 ? sys.workers[n].power / ongoing_computations[n] : 0.0;
      if (ongoing_transfers[n] > 0) {
        trace.worker_activity[n].link_busy += dt;
      }
      if (ongoing_computations[n] > 0) {
        trace.worker_activity[n].cpu_busy += dt;
      }
      for (int k = 0; k < sys.num_apps(); ++k) {
        PairState& ps = state[n][k];
        PairActivity& pa = trace.pairs[n][k];
        if (ps.transferring()) {
          const double moved = std::min(comm_rate * dt, ps.transfer_remaining);
          ps.transfer_remaining -= moved;
          pa.transferred_mb += moved;
          pa.window_transfer_busy += window_overlap;
        }
        if (ps.computing()) {
          const double done = std::min(comp_rate * dt, ps.compute_remaining);
          ps.compute_remaining -= done;
          pa.computed_mflop += done;
          pa.window_compute_busy += window_overlap;
        }
      }
    }
  }

  void complete_transfer(int worker, int app) {
    PairState& ps = state[worker][app];
    PairActivity& pa = trace.pairs[worker][app];
    ps.transfer_remaining = kIdle;
    --ongoing_transfers[worker];
    ++pa.transfers_completed;
    ++ps.buffered;
    record(EventKind::TransferDone, worker, app);
    note_window_level(worker, app);
    if (!ps.computing()) {
      start_compute(worker, app);
    }
    maybe_start_transfer(worker, app);
  }

  void complete_compute(int worker, int app) {
    PairState& ps = state[worker][app];
    PairActivity& pa = trace.pairs[worker][app];
    ps.compute_remaining = kIdle;
    --ongoing_computations[worker];
    ++pa.tasks_completed;
    record(EventKind::ComputeDone, worker, app);
    if (clock > cfg.warmup && clock <= cfg.horizon) {
      ++pa.window_completions;
      const int idx = static_cast<int>((clock - cfg.warmup) / cfg.measure_window);
      if (idx >= 0 && idx < static_cast<int>(window_counts.size())) {
        ++window_counts[idx][app];
      }
    }
    if (ps.buffered > 0) {
      start_compute(worker, app);
    }
    maybe_start_transfer(worker, app);
  }

  void run_loop() {
    for (int n = 0; n < sys.num_workers(); ++n) {
      for (int k = 0; k < sys.num_apps(); ++k) {
        maybe_start_transfer(n, k);
      }
    }

    while (true) {
      // Earliest finishing activity; ties resolve by scan order
      // (worker, app, transfer before computation).
      double best_dt = -1.0;
      int best_worker = -1;
      int best_app = -1;
      bool best_is_transfer = true;
      for (int n = 0; n < sys.num_workers(); ++n) {
        const double comm_rate =
            ongoing_transfers[n] > 0 ? sys.workers[n].bandwidth / ongoing_transfers[n] : 0.0;
        const double comp_rate =
            ongoing_computations[n] > 0 ? sys.workers[n].power / ongoing_computations[n] : 0.0;
        for (int k = 0; k < sys.num_apps(); ++k) {
          const PairState& ps = state[n][k];
          if (ps.transferring()) {
            const double dt = ps.transfer_remaining / comm_rate;
            if (best_dt < 0.0 || dt < best_dt) {
              best_dt = dt;
              best_worker = n;
              best_app = k;
              best_is_transfer = true;
            }
          }
          if (ps.computing()) {
            const double dt = ps.compute_remaining / comp_rate;
            if (best_dt < 0.0 || dt < best_dt) {
              best_dt = dt;
              best_worker = n;
              best_app = k;
              best_is_transfer = false;
            }
          }
        }
      }
      if (best_dt < 0.0) {
        break;  // nothing ongoing (cannot happen with Q >= 1)
      }
      if (clock + best_dt > cfg.horizon) {
        advance(cfg.horizon - clock);
        clock = cfg.horizon;
        break;
      }
      advance(best_dt);
      clock += best_dt;
      PairState& ps = state[best_worker][best_app];
      if (best_is_transfer) {
        ps.transfer_remaining = 0.0;
        complete_transfer(best_worker, best_app);
      } else {
        ps.compute_remaining = 0.0;
        complete_compute(best_worker, best_app);
      }
    }
  }

  void finalize() {
    for (int n = 0; n < sys.num_workers(); ++n) {
      for (int k = 0; k < sys.num_apps(); ++k) {
        const PairState& ps = state[n][k];
        PairActivity& pa = trace.pairs[n][k];
        if (ps.transferring()) {
          pa.inflight_transfer_mb = sys.apps[k].data - ps.transfer_remaining;
        }
        if (ps.computing()) {
          pa.inflight_compute_mflop = sys.apps[k].flops - ps.compute_remaining;
        }
      }
    }
    const double span = cfg.horizon - cfg.warmup;
    trace.measured_seconds = std::max(0.0, span);
    if (span > 0.0) {
      std::vector<double> estimate(sys.num_apps(), 0.0);
      for (int k = 0; k < sys.num_apps(); ++k) {
        long long done = 0;
        for (int n = 0; n < sys.num_workers(); ++n) {
          done += trace.pairs[n][k].window_completions;
        }
        estimate[k] = static_cast<double>(done) / span;
      }
      trace.final_estimate = std::move(estimate);
      for (std::size_t w = 0; w < window_counts.size(); ++w) {
        const double start = cfg.warmup + static_cast<double>(w) * cfg.measure_window;
        for (int k = 0; k < sys.num_apps(); ++k) {
          trace.samples.push_back(
              {start, k, static_cast<double>(window_counts[w][k]) / cfg.measure_window});
        }
      }
    }
  }
};

}  // namespace

SimTrace run(const System& s, const SimConfig& cfg) {
  if (cfg.buffer_cap < 1) {
    throw MalformedInstance("simulation buffer capacity must be >= 1");
  }
  if (!(cfg.horizon >= 0.0) || !(cfg.warmup >= 0.0)) {
    throw MalformedInstance("simulation horizon and warmup must be >= 0");
  }
  if (!(cfg.measure_window > 0.0)) {
    throw MalformedInstance("simulation measure window must be > 0");
  }
  Sim sim(s, cfg);
  sim.run_loop();
  sim.finalize();
  return std::move(sim.trace);
}

EmpiricalPartition empirical_partition(const SimTrace& trace, const System& s,
                                       double eps) {
  if (!(trace.measured_seconds > 0.0)) {
    throw EmptyWindow("trace has no measurement window");
  }
  EmpiricalPartition part;
  part.comm_saturated.assign(s.num_workers(), std::vector<bool>(s.num_apps(), false));
  part.comp_saturated.assign(s.num_workers(), std::vector<bool>(s.num_apps(), false));
  for (int n = 0; n < s.num_workers(); ++n) {
    for (int k = 0; k < s.num_apps(); ++k) {
      const PairActivity& pa = trace.pairs[n][k];
      const double comm_fraction = pa.window_transfer_busy / trace.measured_seconds;
      const double comp_fraction = pa.window_compute_busy / trace.measured_seconds;
      part.comm_saturated[n][k] = comm_fraction > 1.0 - eps;
      part.comp_saturated[n][k] = comp_fraction > 1.0 - eps;
    }
  }
  return part;
}

std::vector<double> compare_to_closed_form(const SimTrace& trace, const System& s) {
  if (!trace.final_estimate.has_value()) {
    throw EmptyWindow("trace has no measurement window");
  }
  const std::vector<double> expected = system_equilibrium(s).totals;
  const std::vector<double>& measured = *trace.final_estimate;
  std::vector<double> errors(expected.size(), 0.0);
  for (std::size_t k = 0; k < expected.size(); ++k) {
    errors[k] = std::abs(measured[k] - expected[k]) / expected[k];
  }
  return errors;
}

std::string trace_to_csv(const SimTrace& trace) {
  std::ostringstream out;
  out << "time,kind,app,worker\n";
  for (const SimEvent& e : trace.events) {
    out << format_number(e.time) << ',' << to_string(e.kind) << ',' << e.app + 1
        << ',' << e.worker + 1 << '\n';
  }
  return out.str();
}

std::string samples_to_csv(const SimTrace& trace) {
  std::ostringstream out;
  out << "window_start,app,throughput\n";
  for (const ThroughputSample& s : trace.samples) {
    out << format_number(s.window_start) << ',' << s.app + 1 << ','
        << format_number(s.throughput) << '\n';
  }
  return out.str();
}

}  // namespace botnash

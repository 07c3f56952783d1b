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

#include "botnash/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace botnash {

using nlohmann::json;

namespace {

// Diagnostics use 1-based element indices, matching every other output.
void require_positive(double v, const std::string& field) {
  if (!std::isfinite(v) || v <= 0.0) {
    std::ostringstream msg;
    msg << field << ": expected a positive finite value, got " << v;
    throw NonPositiveParameter(msg.str());
  }
}

}  // namespace

System validate_system(const RawInstance& raw) {
  if (raw.task_data.size() != raw.task_flops.size()) {
    throw MalformedInstance("apps: task data and computation vectors differ in length");
  }
  if (raw.bandwidth.size() != raw.power.size()) {
    throw MalformedInstance("workers: bandwidth and power vectors differ in length");
  }
  if (raw.task_data.empty()) {
    throw MalformedInstance("apps: at least one application is required");
  }
  if (raw.bandwidth.empty()) {
    throw MalformedInstance("workers: at least one worker is required");
  }

  System s;
  s.label = raw.label;
  s.apps.reserve(raw.task_data.size());
  for (std::size_t k = 0; k < raw.task_data.size(); ++k) {
    require_positive(raw.task_data[k], "apps[" + std::to_string(k + 1) + "].b");
    require_positive(raw.task_flops[k], "apps[" + std::to_string(k + 1) + "].w");
    s.apps.push_back({raw.task_data[k], raw.task_flops[k]});
  }
  s.workers.reserve(raw.bandwidth.size());
  for (std::size_t n = 0; n < raw.bandwidth.size(); ++n) {
    require_positive(raw.bandwidth[n], "workers[" + std::to_string(n + 1) + "].bandwidth");
    require_positive(raw.power[n], "workers[" + std::to_string(n + 1) + "].power");
    s.workers.push_back({raw.bandwidth[n], raw.power[n]});
  }
  return s;
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw MalformedInstance(where + ": unknown key \"" + item.key() + "\"");
    }
  }
}

double number_at(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) {
    throw MalformedInstance(where + "." + key + ": missing");
  }
  if (!obj[key].is_number()) {
    throw MalformedInstance(where + "." + key + ": expected a number");
  }
  return obj[key].get<double>();
}

}  // namespace

System parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw MalformedInstance(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw MalformedInstance("instance: expected a JSON object");
  }
  reject_unknown_keys(j, {"label", "apps", "workers"}, "instance");

  RawInstance raw;
  if (j.contains("label")) {
    if (!j["label"].is_string()) {
      throw MalformedInstance("label: expected a string");
    }
    raw.label = j["label"].get<std::string>();
  }
  if (!j.contains("apps") || !j["apps"].is_array()) {
    throw MalformedInstance("apps: expected an array");
  }
  if (!j.contains("workers") || !j["workers"].is_array()) {
    throw MalformedInstance("workers: expected an array");
  }

  int k = 0;
  for (const auto& app : j["apps"]) {
    const std::string where = "apps[" + std::to_string(++k) + "]";
    if (!app.is_object()) {
      throw MalformedInstance(where + ": expected an object");
    }
    reject_unknown_keys(app, {"b", "w"}, where);
    raw.task_data.push_back(number_at(app, "b", where));
    raw.task_flops.push_back(number_at(app, "w", where));
  }
  int n = 0;
  for (const auto& worker : j["workers"]) {
    const std::string where = "workers[" + std::to_string(++n) + "]";
    if (!worker.is_object()) {
      throw MalformedInstance(where + ": expected an object");
    }
    reject_unknown_keys(worker, {"bandwidth", "power"}, where);
    raw.bandwidth.push_back(number_at(worker, "bandwidth", where));
    raw.power.push_back(number_at(worker, "power", where));
  }
  return validate_system(raw);
}

System load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw MalformedInstance("cannot open instance file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string instance_to_json(const System& s) {
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
  return j.dump(2);
}

AllocationMatrix AllocationMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw ShapeMismatch("allocation: empty matrix");
  }
  AllocationMatrix a(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int n = 0; n < a.num_workers(); ++n) {
    if (rows[n].size() != rows.front().size()) {
      throw ShapeMismatch("allocation: ragged rows");
    }
    for (int k = 0; k < a.num_apps(); ++k) {
      if (!std::isfinite(rows[n][k])) {
        throw ShapeMismatch("allocation: non-finite entry");
      }
      a.at(n, k) = rows[n][k];
    }
  }
  return a;
}

std::vector<double> AllocationMatrix::totals() const {
  std::vector<double> t(apps_, 0.0);
  for (int n = 0; n < workers_; ++n) {
    for (int k = 0; k < apps_; ++k) {
      t[k] += at(n, k);
    }
  }
  return t;
}

std::vector<double> aggregate(const AllocationMatrix& a) { return a.totals(); }

FeasibilityResult is_feasible(const System& s, const AllocationMatrix& a, double tol) {
  if (a.num_workers() != s.num_workers() || a.num_apps() != s.num_apps()) {
    std::ostringstream msg;
    msg << "allocation is " << a.num_workers() << "x" << a.num_apps()
        << ", system needs " << s.num_workers() << "x" << s.num_apps();
    throw ShapeMismatch(msg.str());
  }
  for (int n = 0; n < s.num_workers(); ++n) {
    for (int k = 0; k < s.num_apps(); ++k) {
      if (a.at(n, k) < -tol) {
        std::ostringstream msg;
        msg << "worker " << n + 1 << ", app " << k + 1 << ": negative rate "
            << a.at(n, k);
        return {false, msg.str()};
      }
    }
    double data = 0.0;
    double flops = 0.0;
    for (int k = 0; k < s.num_apps(); ++k) {
      data += a.at(n, k) * s.apps[k].data;
      flops += a.at(n, k) * s.apps[k].flops;
    }
    if (data > s.workers[n].bandwidth * (1.0 + tol)) {
      std::ostringstream msg;
      msg << "worker " << n + 1 << ": communication capacity exceeded (" << data
          << " > " << s.workers[n].bandwidth << " Mb/s)";
      return {false, msg.str()};
    }
    if (flops > s.workers[n].power * (1.0 + tol)) {
      std::ostringstream msg;
      msg << "worker " << n + 1 << ": computation capacity exceeded (" << flops
          << " > " << s.workers[n].power << " Mflop/s)";
      return {false, msg.str()};
    }
  }
  return {true, ""};
}

UtilityPolytope build_polytope(const System& s) {
  UtilityPolytope p;
  p.num_workers = s.num_workers();
  p.num_apps = s.num_apps();
  const int vars = p.num_vars();
  for (int n = 0; n < p.num_workers; ++n) {
    std::vector<double> comm(vars, 0.0);
    std::vector<double> comp(vars, 0.0);
    for (int k = 0; k < p.num_apps; ++k) {
      comm[p.var(n, k)] = s.apps[k].data;
      comp[p.var(n, k)] = s.apps[k].flops;
    }
    p.rows.push_back(std::move(comm));
    p.bounds.push_back(s.workers[n].bandwidth);
    p.rows.push_back(std::move(comp));
    p.bounds.push_back(s.workers[n].power);
  }
  return p;
}

std::vector<double> UtilityPolytope::totals(const std::vector<double>& x) const {
  std::vector<double> t(num_apps, 0.0);
  for (int n = 0; n < num_workers; ++n) {
    for (int k = 0; k < num_apps; ++k) {
      t[k] += x[var(n, k)];
    }
  }
  return t;
}

bool UtilityPolytope::contains(const std::vector<double>& x, double tol) const {
  if (static_cast<int>(x.size()) != num_vars()) {
    throw ShapeMismatch("polytope point has wrong dimension");
  }
  for (double v : x) {
    if (v < -tol) {
      return false;
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double lhs = 0.0;
    for (int j = 0; j < num_vars(); ++j) {
      lhs += rows[i][j] * x[j];
    }
    if (lhs > bounds[i] * (1.0 + tol)) {
      return false;
    }
  }
  return true;
}

}  // namespace botnash

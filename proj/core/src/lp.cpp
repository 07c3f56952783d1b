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

#include "botnash/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace botnash {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-9;
constexpr double kFeasibilityTol = 1e-9;

struct Tableau {
  int num_structural = 0;       // structural + slack columns, artificials behind
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<int> basis;

  int width() const { return rows.empty() ? num_structural : static_cast<int>(rows[0].size()); }

  void pivot(int r, int c) {
    const double p = rows[r][c];
    if (std::abs(p) < kPivotTol || !std::isfinite(p)) {
      throw NumericalBreakdown("simplex pivot below tolerance");
    }
    const double inv = 1.0 / p;
    for (double& v : rows[r]) {
      v *= inv;
    }
    rhs[r] *= inv;
    rows[r][c] = 1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r) {
        continue;
      }
      const double f = rows[i][c];
      if (f == 0.0) {
        continue;
      }
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        rows[i][j] -= f * rows[r][j];
      }
      rows[i][c] = 0.0;
      rhs[i] -= f * rhs[r];
      if (rhs[i] < 0.0 && rhs[i] > -kFeasibilityTol) {
        rhs[i] = 0.0;  // keep the basis feasible against round-off
      }
    }
    basis[r] = c;
  }
};

// Bland's rule: smallest improving column enters, smallest basic index
// leaves among minimum ratios. Deterministic and cycle-free.
LpStatus optimize(Tableau& t, const std::vector<double>& cost) {
  const int m = static_cast<int>(t.rows.size());
  const int width = t.width();
  while (true) {
    // Reduced costs, recomputed from scratch: the tableaus here are tiny
    // and this avoids drift entirely.
    int entering = -1;
    for (int j = 0; j < width && entering < 0; ++j) {
      double rc = cost[j];
      for (int i = 0; i < m; ++i) {
        rc -= cost[t.basis[i]] * t.rows[i][j];
      }
      if (rc > kReducedCostTol) {
        entering = j;
      }
    }
    if (entering < 0) {
      return LpStatus::Optimal;
    }

    int leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    bool tiny_positive = false;
    for (int i = 0; i < m; ++i) {
      const double a = t.rows[i][entering];
      if (a > kPivotTol) {
        const double ratio = t.rhs[i] / a;
        if (ratio < best_ratio ||
            (ratio == best_ratio && leaving >= 0 && t.basis[i] < t.basis[leaving])) {
          best_ratio = ratio;
          leaving = i;
        }
      } else if (a > 0.0) {
        tiny_positive = true;
      }
    }
    if (leaving < 0) {
      if (tiny_positive) {
        throw NumericalBreakdown("simplex ratio test has only sub-tolerance pivots");
      }
      return LpStatus::Unbounded;
    }
    t.pivot(leaving, entering);
  }
}

}  // namespace

void LinearProgram::add_row(std::vector<double> coeffs, double bound) {
  if (static_cast<int>(coeffs.size()) != num_vars()) {
    throw std::invalid_argument("lp row width does not match variable count");
  }
  rows.push_back(std::move(coeffs));
  bounds.push_back(bound);
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Unbounded:
      return "unbounded";
    case LpStatus::Infeasible:
      return "infeasible";
  }
  return "?";
}

LpSolution simplex_solve(const LinearProgram& lp) {
  const int n = lp.num_vars();
  const int m = static_cast<int>(lp.rows.size());
  if (n < 1) {
    throw std::invalid_argument("lp has no variables");
  }
  if (lp.bounds.size() != lp.rows.size()) {
    throw std::invalid_argument("lp rows and bounds differ in length");
  }
  if (!lp.lower_bounds.empty() && static_cast<int>(lp.lower_bounds.size()) != n) {
    throw std::invalid_argument("lp lower bounds have wrong length");
  }
  for (double c : lp.objective) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("lp objective has a non-finite coefficient");
    }
  }
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(lp.rows[i].size()) != n) {
      throw std::invalid_argument("lp row width does not match variable count");
    }
    for (double a : lp.rows[i]) {
      if (!std::isfinite(a)) {
        throw std::invalid_argument("lp constraint has a non-finite coefficient");
      }
    }
    if (!std::isfinite(lp.bounds[i])) {
      throw std::invalid_argument("lp bound is not finite");
    }
  }

  // Shift to x = lb + y, y >= 0.
  std::vector<double> lb(n, 0.0);
  if (!lp.lower_bounds.empty()) {
    lb = lp.lower_bounds;
  }
  std::vector<double> shifted_bounds(m);
  for (int i = 0; i < m; ++i) {
    double shift = 0.0;
    for (int j = 0; j < n; ++j) {
      shift += lp.rows[i][j] * lb[j];
    }
    shifted_bounds[i] = lp.bounds[i] - shift;
  }

  // Equilibrate rows then columns; pivots are judged in the scaled tableau.
  std::vector<std::vector<double>> a(lp.rows);
  std::vector<double> row_scale(m, 1.0);
  for (int i = 0; i < m; ++i) {
    double mx = 0.0;
    for (double v : a[i]) {
      mx = std::max(mx, std::abs(v));
    }
    if (mx > 0.0) {
      row_scale[i] = 1.0 / mx;
      for (double& v : a[i]) {
        v *= row_scale[i];
      }
      shifted_bounds[i] *= row_scale[i];
    }
  }
  std::vector<double> col_scale(n, 1.0);
  for (int j = 0; j < n; ++j) {
    double mx = 0.0;
    for (int i = 0; i < m; ++i) {
      mx = std::max(mx, std::abs(a[i][j]));
    }
    if (mx > 0.0) {
      col_scale[j] = 1.0 / mx;
      for (int i = 0; i < m; ++i) {
        a[i][j] *= col_scale[j];
      }
    }
  }

  // Build the tableau: structural + slack columns, artificials for rows
  // whose shifted bound is negative.
  Tableau t;
  t.num_structural = n + m;
  t.rows.assign(m, std::vector<double>(n + m, 0.0));
  t.rhs = shifted_bounds;
  t.basis.assign(m, 0);
  std::vector<int> artificial_rows;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      t.rows[i][j] = a[i][j];
    }
    t.rows[i][n + i] = 1.0;
    if (t.rhs[i] < 0.0) {
      for (double& v : t.rows[i]) {
        v = -v;
      }
      t.rhs[i] = -t.rhs[i];
      artificial_rows.push_back(i);
    } else {
      t.basis[i] = n + i;
    }
  }

  if (!artificial_rows.empty()) {
    const int base_width = n + m;
    const int num_art = static_cast<int>(artificial_rows.size());
    for (int i = 0; i < m; ++i) {
      t.rows[i].resize(base_width + num_art, 0.0);
    }
    std::vector<double> phase1_cost(base_width + num_art, 0.0);
    for (int idx = 0; idx < num_art; ++idx) {
      const int row = artificial_rows[idx];
      t.rows[row][base_width + idx] = 1.0;
      t.basis[row] = base_width + idx;
      phase1_cost[base_width + idx] = -1.0;
    }
    if (optimize(t, phase1_cost) != LpStatus::Optimal) {
      // Phase I is bounded by construction (objective <= 0).
      throw NumericalBreakdown("phase-one simplex did not terminate at an optimum");
    }
    double infeasibility = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] >= base_width) {
        infeasibility += t.rhs[i];
      }
    }
    if (infeasibility > kFeasibilityTol) {
      return {LpStatus::Infeasible, 0.0, {}};
    }
    // Drive leftover zero-level artificials out of the basis; rows that
    // offer no pivot are redundant and dropped.
    std::vector<bool> drop(m, false);
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < base_width) {
        continue;
      }
      int col = -1;
      for (int j = 0; j < base_width && col < 0; ++j) {
        if (std::abs(t.rows[i][j]) > kPivotTol) {
          col = j;
        }
      }
      if (col >= 0) {
        t.pivot(i, col);
      } else {
        drop[i] = true;
      }
    }
    Tableau compact;
    compact.num_structural = base_width;
    for (int i = 0; i < m; ++i) {
      if (drop[i]) {
        continue;
      }
      t.rows[i].resize(base_width);
      compact.rows.push_back(std::move(t.rows[i]));
      compact.rhs.push_back(t.rhs[i]);
      compact.basis.push_back(t.basis[i]);
    }
    t = std::move(compact);
  }

  std::vector<double> phase2_cost(t.width(), 0.0);
  for (int j = 0; j < n; ++j) {
    phase2_cost[j] = lp.objective[j] * col_scale[j];
  }
  const LpStatus status = optimize(t, phase2_cost);
  if (status == LpStatus::Unbounded) {
    return {LpStatus::Unbounded, 0.0, {}};
  }

  LpSolution out;
  out.status = LpStatus::Optimal;
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < n) {
      out.x[t.basis[i]] = t.rhs[i];
    }
  }
  for (int j = 0; j < n; ++j) {
    out.x[j] = lb[j] + col_scale[j] * out.x[j];
  }
  out.value = 0.0;
  for (int j = 0; j < n; ++j) {
    out.value += lp.objective[j] * out.x[j];
  }
  return out;
}

}  // namespace botnash

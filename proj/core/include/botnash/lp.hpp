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

#ifndef BOTNASH_LP_HPP
#define BOTNASH_LP_HPP

#include <vector>

#include "botnash/errors.hpp"

namespace botnash {

// Dense linear program
//   maximize objective . x
//   subject to rows[i] . x <= bounds[i] for each row, x >= lower_bounds
// (lower bounds default to 0). Equalities are expressed as paired
// inequalities. Instances here are tiny (N K + 1 variables), so a dense
// tableau is the right tool.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> bounds;
  std::vector<double> lower_bounds;  // empty means all zero

  int num_vars() const { return static_cast<int>(objective.size()); }
  void add_row(std::vector<double> coeffs, double bound);
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

// Two-phase primal simplex with Bland's rule: deterministic pivoting, so
// results are bit-reproducible. Rows and columns are equilibrated before
// solving; a selected pivot smaller than 1e-11 in the scaled tableau
// raises NumericalBreakdown.
LpSolution simplex_solve(const LinearProgram& lp);

}  // namespace botnash

#endif  // BOTNASH_LP_HPP

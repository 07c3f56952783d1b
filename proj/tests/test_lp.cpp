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

#include <doctest.h>

#include <cmath>

#include "botnash/lp.hpp"
#include "botnash/rng.hpp"
#include "test_support.hpp"

using namespace botnash;

TEST_CASE("simplex solves the textbook cases") {
  SUBCASE("single bounded variable") {
    LinearProgram lp;
    lp.objective = {1.0};
    lp.add_row({1.0}, 3.0);
    const LpSolution sol = simplex_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.x[0] == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("shared budget") {
    LinearProgram lp;
    lp.objective = {1.0, 1.0};
    lp.add_row({1.0, 1.0}, 1.0);
    const LpSolution sol = simplex_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("unbounded ray") {
    LinearProgram lp;
    lp.objective = {1.0};
    lp.add_row({-1.0}, 1.0);
    CHECK(simplex_solve(lp).status == LpStatus::Unbounded);
  }
  SUBCASE("no constraints at all") {
    LinearProgram lp;
    lp.objective = {1.0};
    CHECK(simplex_solve(lp).status == LpStatus::Unbounded);
    lp.objective = {-1.0};
    const LpSolution sol = simplex_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(0.0));
  }
}

TEST_CASE("phase one handles negative right-hand sides") {
  SUBCASE("feasible floor") {
    LinearProgram lp;
    lp.objective = {-1.0};  // minimize x
    lp.add_row({-1.0}, -2.0);  // x >= 2
    lp.add_row({1.0}, 5.0);
    const LpSolution sol = simplex_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.x[0] == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("contradictory bounds") {
    LinearProgram lp;
    lp.objective = {1.0};
    lp.add_row({1.0}, 1.0);    // x <= 1
    lp.add_row({-1.0}, -2.0);  // x >= 2
    CHECK(simplex_solve(lp).status == LpStatus::Infeasible);
  }
  SUBCASE("equality as paired inequalities") {
    LinearProgram lp;
    lp.objective = {1.0, 2.0};
    lp.add_row({1.0, 1.0}, 1.0);
    lp.add_row({-1.0, -1.0}, -1.0);  // x + y == 1
    const LpSolution sol = simplex_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sol.x[1] == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("variable lower bounds shift the solution") {
  LinearProgram lp;
  lp.objective = {-1.0, 1.0};
  lp.lower_bounds = {0.5, 0.0};
  lp.add_row({1.0, 1.0}, 2.0);
  const LpSolution sol = simplex_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.x[1] == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("simplex rejects malformed programs") {
  LinearProgram lp;
  CHECK_THROWS_AS(simplex_solve(lp), std::invalid_argument);
  lp.objective = {1.0, std::nan("")};
  CHECK_THROWS_AS(simplex_solve(lp), std::invalid_argument);
}

TEST_CASE("simplex agrees with brute-force vertex enumeration") {
  Rng rng(4242);
  for (int trial = 0; trial < 80; ++trial) {
    const LinearProgram lp = testing::make_random_lp(rng, 5, 6);
    const LpSolution sol = simplex_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    const double oracle = testing::enumerate_vertices_optimum(lp);
    CHECK(std::abs(sol.value - oracle) <= 1e-8 * std::max(1.0, std::abs(oracle)));
    // the reported point must satisfy what it claims
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      double lhs = 0.0;
      for (int j = 0; j < lp.num_vars(); ++j) {
        lhs += lp.rows[i][j] * sol.x[j];
      }
      CHECK(lhs <= lp.bounds[i] + 1e-8);
    }
  }
}

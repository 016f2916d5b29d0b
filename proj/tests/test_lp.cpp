// Copyright 2026 The conicdist Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>

#include "conicdist/lp.hpp"

using namespace conicdist;

namespace {

Vec unit() { return Vec::Ones(1); }

}  // namespace

TEST_CASE("one-variable programs") {
  LinearProgram lp(1);
  lp.objective[0] = 1.0;
  lp.add_ge(unit(), 1.0);
  auto out = solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.x[0] == doctest::Approx(1.0));
  CHECK(out.value == doctest::Approx(1.0));

  LinearProgram infeasible(1);
  infeasible.add_le(unit(), -1.0);
  infeasible.lower[0] = 0.0;
  CHECK(solve(infeasible).status == LpStatus::Infeasible);

  LinearProgram unbounded(1);
  unbounded.objective[0] = -1.0;
  unbounded.lower[0] = 0.0;
  CHECK(solve(unbounded).status == LpStatus::Unbounded);
}

TEST_CASE("feasibility") {
  LinearProgram box(1);
  box.lower[0] = 0.0;
  box.upper[0] = 1.0;
  auto r = feasible(box);
  REQUIRE(r.feasible);
  CHECK(r.witness[0] >= 0.0);
  CHECK(r.witness[0] <= 1.0);

  LinearProgram crossed(1);
  crossed.add_ge(unit(), 2.0);
  crossed.add_le(unit(), 1.0);
  CHECK_FALSE(feasible(crossed).feasible);

  auto empty = feasible(LinearProgram(1));
  REQUIRE(empty.feasible);
  CHECK(empty.witness[0] == 0.0);
}

TEST_CASE("random systems match their construction") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> dim(1, 6), rows(1, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = dim(rng);
    const int m = rows(rng);
    Vec point(n);
    for (int j = 0; j < n; ++j) point[j] = g(rng);
    Mat a(m, n);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
    // Feasible: slack above the sampled point. Infeasible: a row and its
    // negation both pushed past each other.
    const bool want_feasible = trial % 2 == 0;
    LinearProgram lp(n);
    Vec rhs = a * point;
    for (int i = 0; i < m; ++i) rhs[i] += std::fabs(g(rng));
    for (int i = 0; i < m; ++i) lp.add_le(a.row(i).transpose(), rhs[i]);
    if (!want_feasible) {
      const double gap = 0.5 + std::fabs(g(rng));
      lp.add_le(-a.row(0).transpose(), -rhs[0] - gap);
    }
    const auto r = feasible(lp);
    CHECK(r.feasible == want_feasible);
    if (r.feasible) CHECK(constraint_violation(lp, r.witness) <= 1e-9);
  }
}

TEST_CASE("solves are deterministic") {
  LinearProgram lp(3);
  lp.objective << 1, 1, 1;
  Mat a(2, 3);
  a << 1, 1, 0, 0, 1, 1;
  Vec b(2);
  b << 1, 1;
  lp.add_ge(a.row(0).transpose(), b[0]);
  lp.add_ge(a.row(1).transpose(), b[1]);
  for (int j = 0; j < 3; ++j) lp.lower[j] = 0.0;
  const auto first = solve(lp);
  const auto second = solve(lp);
  CHECK(first.x == second.x);
  CHECK(first.value == doctest::Approx(1.0));
}

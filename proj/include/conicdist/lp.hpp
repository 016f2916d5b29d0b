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

// Dense primal simplex for the small linear programs that every exact-mode
// subproblem reduces to.

#ifndef CONICDIST_LP_HPP_
#define CONICDIST_LP_HPP_

#include <optional>
#include <vector>

#include "conicdist/numerics.hpp"

namespace conicdist {

/// minimize objective . x  subject to
///   eq_rows x == eq_rhs,  le_rows x <= le_rhs,  lower <= x <= upper.
/// Variables without a bound on a side are unbounded on that side.
struct LinearProgram {
  Vec objective;
  Mat eq_rows;
  Vec eq_rhs;
  Mat le_rows;
  Vec le_rhs;
  std::vector<std::optional<double>> lower;
  std::vector<std::optional<double>> upper;

  /// num_vars free variables, zero objective, no rows.
  explicit LinearProgram(int num_vars = 0);

  int num_vars() const { return static_cast<int>(objective.size()); }

  void add_eq(const Vec& row, double rhs);
  void add_le(const Vec& row, double rhs);
  void add_ge(const Vec& row, double rhs) { add_le(-row, -rhs); }

  /// Throws ConfigError on inconsistent dimensions or lower > upper.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Vec x;  // primal point, only meaningful when Optimal
  double value = 0.0;
};

struct LpOptions {
  /// Absolute feasibility tolerance shared by every caller.
  double feasibility_tol = 1e-9;
  int max_pivots = 200000;
};

/// Bland's rule throughout, so identical input gives identical output.
LpOutcome solve(const LinearProgram& lp, const LpOptions& options = {});

struct FeasibilityResult {
  bool feasible = false;
  Vec witness;
};

/// Phase-one check of the constraints of lp; the objective is ignored.
FeasibilityResult feasible(const LinearProgram& constraints, const LpOptions& options = {});

/// Largest violation of any constraint of lp at x (0 when feasible).
double constraint_violation(const LinearProgram& lp, const Vec& x);

}  // namespace conicdist

#endif  // CONICDIST_LP_HPP_

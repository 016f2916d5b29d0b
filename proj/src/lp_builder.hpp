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

// Small modelling layer over LinearProgram: sparse row expressions, norm
// bounds (exact for L1/LINF) and convex bounds handled by Kelley cutting
// planes (used for L2 norms and operator norms). Internal to the library.

#ifndef CONICDIST_SRC_LP_BUILDER_HPP_
#define CONICDIST_SRC_LP_BUILDER_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "conicdist/lp.hpp"
#include "conicdist/numerics.hpp"

namespace conicdist::detail {

struct Term {
  int var;
  double coef;
};
using Expr = std::vector<Term>;

/// value(x) with *subgradient set to a subgradient at x (same length as x).
using ConvexFn = std::function<double(const Vec& x, Vec* subgradient)>;

class LpBuilder {
 public:
  int add_var(std::optional<double> lo = std::nullopt, std::optional<double> hi = std::nullopt);
  /// Returns the index of the first of n new variables.
  int add_vars(int n, std::optional<double> lo = std::nullopt, std::optional<double> hi = std::nullopt);
  int num_vars() const { return static_cast<int>(lower_.size()); }
  void fix(int var, double value);

  void minimize(Expr objective) { objective_ = std::move(objective); }
  void add_eq(Expr e, double rhs);
  void add_le(Expr e, double rhs);
  void add_ge(Expr e, double rhs);

  /// ||x[first .. first+len)||_kind <= bound.
  void add_norm_le(int first, int len, NormKind kind, const Expr& bound);
  /// g(x[vars]) <= bound, with g convex and g(x) >= |x_j| for every j.
  void add_convex_le(std::vector<int> vars, ConvexFn g, const Expr& bound);

  /// Solves, adding cuts for violated convex bounds until each holds to
  /// relative 1e-10 or max_rounds is reached.
  LpOutcome solve(const LpOptions& options, int max_rounds = 300) const;

 private:
  struct Row {
    Expr e;
    double rhs;
    bool equality;
  };
  struct Convex {
    std::vector<int> vars;
    ConvexFn g;
    Expr bound;
  };

  LinearProgram materialize(const std::vector<Row>& extra) const;

  std::vector<std::optional<double>> lower_;
  std::vector<std::optional<double>> upper_;
  Expr objective_;
  std::vector<Row> rows_;
  std::vector<Convex> convex_;
};

double eval(const Expr& e, const Vec& x);

}  // namespace conicdist::detail

#endif  // CONICDIST_SRC_LP_BUILDER_HPP_

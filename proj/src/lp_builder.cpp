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

#include "lp_builder.hpp"

#include <cmath>

#include "conicdist/error.hpp"

namespace conicdist::detail {

double eval(const Expr& e, const Vec& x) {
  double s = 0.0;
  for (const Term& t : e) s += t.coef * x[t.var];
  return s;
}

int LpBuilder::add_var(std::optional<double> lo, std::optional<double> hi) {
  lower_.push_back(lo);
  upper_.push_back(hi);
  return num_vars() - 1;
}

int LpBuilder::add_vars(int n, std::optional<double> lo, std::optional<double> hi) {
  const int first = num_vars();
  for (int i = 0; i < n; ++i) add_var(lo, hi);
  return first;
}

void LpBuilder::fix(int var, double value) {
  lower_.at(var) = value;
  upper_.at(var) = value;
}

void LpBuilder::add_eq(Expr e, double rhs) { rows_.push_back({std::move(e), rhs, true}); }
void LpBuilder::add_le(Expr e, double rhs) { rows_.push_back({std::move(e), rhs, false}); }

void LpBuilder::add_ge(Expr e, double rhs) {
  for (Term& t : e) t.coef = -t.coef;
  rows_.push_back({std::move(e), -rhs, false});
}

namespace {

Expr minus(const Expr& a, const Expr& b) {
  Expr out = a;
  for (const Term& t : b) out.push_back({t.var, -t.coef});
  return out;
}

}  // namespace

void LpBuilder::add_norm_le(int first, int len, NormKind kind, const Expr& bound) {
  switch (kind) {
    case NormKind::LInf:
      for (int j = 0; j < len; ++j) {
        add_le(minus({{first + j, 1.0}}, bound), 0.0);
        add_le(minus({{first + j, -1.0}}, bound), 0.0);
      }
      break;
    case NormKind::L1: {
      const int aux = add_vars(len, 0.0);
      Expr total;
      for (int j = 0; j < len; ++j) {
        add_le({{first + j, 1.0}, {aux + j, -1.0}}, 0.0);
        add_le({{first + j, -1.0}, {aux + j, -1.0}}, 0.0);
        total.push_back({aux + j, 1.0});
      }
      add_le(minus(total, bound), 0.0);
      break;
    }
    case NormKind::L2: {
      std::vector<int> vars(len);
      for (int j = 0; j < len; ++j) vars[j] = first + j;
      add_convex_le(std::move(vars),
                    [](const Vec& x, Vec* g) {
                      const double n = x.norm();
                      if (n > 0) *g = x / n;
                      else *g = Vec::Zero(x.size());
                      return n;
                    },
                    bound);
      break;
    }
  }
}

void LpBuilder::add_convex_le(std::vector<int> vars, ConvexFn g, const Expr& bound) {
  // |x_j| <= g(x) <= bound keeps the first relaxation bounded.
  for (int v : vars) {
    add_le(minus({{v, 1.0}}, bound), 0.0);
    add_le(minus({{v, -1.0}}, bound), 0.0);
  }
  convex_.push_back({std::move(vars), std::move(g), bound});
}

LinearProgram LpBuilder::materialize(const std::vector<Row>& extra) const {
  const int n = num_vars();
  LinearProgram lp(n);
  lp.lower = lower_;
  lp.upper = upper_;
  for (const Term& t : objective_) lp.objective[t.var] += t.coef;
  int n_eq = 0;
  int n_le = 0;
  for (const auto* rows : {&rows_, &extra}) {
    for (const Row& r : *rows) (r.equality ? n_eq : n_le)++;
  }
  lp.eq_rows = Mat::Zero(n_eq, n);
  lp.eq_rhs = Vec(n_eq);
  lp.le_rows = Mat::Zero(n_le, n);
  lp.le_rhs = Vec(n_le);
  int ie = 0;
  int il = 0;
  for (const auto* rows : {&rows_, &extra}) {
    for (const Row& r : *rows) {
      if (r.equality) {
        for (const Term& t : r.e) lp.eq_rows(ie, t.var) += t.coef;
        lp.eq_rhs[ie++] = r.rhs;
      } else {
        for (const Term& t : r.e) lp.le_rows(il, t.var) += t.coef;
        lp.le_rhs[il++] = r.rhs;
      }
    }
  }
  return lp;
}

LpOutcome LpBuilder::solve(const LpOptions& options, int max_rounds) const {
  std::vector<Row> cuts;
  LpOutcome out;
  for (int round = 0; round < max_rounds; ++round) {
    out = conicdist::solve(materialize(cuts), options);
    if (out.status != LpStatus::Optimal || convex_.empty()) return out;
    bool violated = false;
    for (const Convex& c : convex_) {
      Vec seg(static_cast<Eigen::Index>(c.vars.size()));
      for (size_t j = 0; j < c.vars.size(); ++j) seg[static_cast<Eigen::Index>(j)] = out.x[c.vars[j]];
      Vec grad;
      const double value = c.g(seg, &grad);
      const double b = eval(c.bound, out.x);
      if (value <= b + 1e-10 * (1.0 + std::abs(b))) continue;
      violated = true;
      // g(x) >= g(x0) + <grad, x - x0>; for positively homogeneous g this
      // is <grad, x> <= bound.
      Expr e;
      double rhs = 0.0;
      for (size_t j = 0; j < c.vars.size(); ++j) {
        e.push_back({c.vars[j], grad[static_cast<Eigen::Index>(j)]});
        rhs -= grad[static_cast<Eigen::Index>(j)] * seg[static_cast<Eigen::Index>(j)];
      }
      rhs += value;
      for (const Term& t : c.bound) e.push_back({t.var, -t.coef});
      cuts.push_back({std::move(e), -rhs, false});
    }
    if (!violated) return out;
  }
  return out;
}

}  // namespace conicdist::detail

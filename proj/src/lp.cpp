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

#include "conicdist/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conicdist/error.hpp"

namespace conicdist {

LinearProgram::LinearProgram(int num_vars)
    : objective(Vec::Zero(num_vars)),
      eq_rows(0, num_vars),
      eq_rhs(0),
      le_rows(0, num_vars),
      le_rhs(0),
      lower(num_vars),
      upper(num_vars) {}

void LinearProgram::add_eq(const Vec& row, double rhs) {
  if (row.size() != num_vars()) throw ConfigError("add_eq: row length mismatch");
  eq_rows.conservativeResize(eq_rows.rows() + 1, num_vars());
  eq_rows.row(eq_rows.rows() - 1) = row.transpose();
  eq_rhs.conservativeResize(eq_rhs.size() + 1);
  eq_rhs[eq_rhs.size() - 1] = rhs;
}

void LinearProgram::add_le(const Vec& row, double rhs) {
  if (row.size() != num_vars()) throw ConfigError("add_le: row length mismatch");
  le_rows.conservativeResize(le_rows.rows() + 1, num_vars());
  le_rows.row(le_rows.rows() - 1) = row.transpose();
  le_rhs.conservativeResize(le_rhs.size() + 1);
  le_rhs[le_rhs.size() - 1] = rhs;
}

void LinearProgram::validate() const {
  const int n = num_vars();
  if (eq_rows.cols() != n || le_rows.cols() != n) {
    throw ConfigError("linear program: constraint rows must have one column per variable");
  }
  if (eq_rows.rows() != eq_rhs.size() || le_rows.rows() != le_rhs.size()) {
    throw ConfigError("linear program: right-hand side length does not match row count");
  }
  if (static_cast<int>(lower.size()) != n || static_cast<int>(upper.size()) != n) {
    throw ConfigError("linear program: bound vectors must have one entry per variable");
  }
  for (int j = 0; j < n; ++j) {
    if (lower[j] && upper[j] && *lower[j] > *upper[j]) {
      throw ConfigError("linear program: lower bound exceeds upper bound");
    }
  }
  if (!objective.allFinite() || !eq_rows.allFinite() || !le_rows.allFinite() ||
      !eq_rhs.allFinite() || !le_rhs.allFinite()) {
    throw ConfigError("linear program: coefficients must be finite");
  }
}

double constraint_violation(const LinearProgram& lp, const Vec& x) {
  double worst = 0.0;
  if (lp.eq_rows.rows() > 0) {
    worst = std::max(worst, (lp.eq_rows * x - lp.eq_rhs).cwiseAbs().maxCoeff());
  }
  if (lp.le_rows.rows() > 0) {
    worst = std::max(worst, (lp.le_rows * x - lp.le_rhs).maxCoeff());
  }
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.lower[j]) worst = std::max(worst, *lp.lower[j] - x[j]);
    if (lp.upper[j]) worst = std::max(worst, x[j] - *lp.upper[j]);
  }
  return worst;
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-11;

// x_j = offset_j + sum over its standard-form columns of coef * y_col.
struct VariableMap {
  double offset = 0.0;
  int plus_col = -1;   // coefficient +1
  int minus_col = -1;  // coefficient -1
};

class Tableau {
 public:
  Tableau(Mat rows, Vec rhs, int num_structural, std::vector<int> basis,
          std::vector<bool> artificial)
      : t_(rows.rows() + 1, rows.cols() + 1),
        basis_(std::move(basis)),
        artificial_(std::move(artificial)),
        num_structural_(num_structural) {
    t_.topLeftCorner(rows.rows(), rows.cols()) = rows;
    t_.topRightCorner(rows.rows(), 1) = rhs;
    t_.row(rows.rows()).setZero();
  }

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }

  // Loads the objective row for costs c (one per column).
  void set_costs(const Vec& c) {
    const int m = rows();
    t_.row(m).head(cols()) = c.transpose();
    t_(m, cols()) = 0.0;
    for (int i = 0; i < m; ++i) {
      const double cb = c[basis_[i]];
      if (cb != 0.0) t_.row(m) -= cb * t_.row(i);
    }
  }

  // Runs Bland's rule. Returns false when unbounded.
  bool optimize(const std::vector<bool>& eligible, int max_pivots, int* pivots) {
    const int m = rows();
    const int n = cols();
    while (true) {
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (eligible[j] && t_(m, j) < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a > kPivotTol) best_ratio = std::min(best_ratio, std::max(0.0, t_(i, n)) / a);
      }
      if (best_ratio == std::numeric_limits<double>::infinity()) return false;
      // Bland: among minimum-ratio rows, the lowest basic index leaves.
      int leave = -1;
      const double slack = 1e-12 * (1.0 + best_ratio);
      for (int i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        if (std::max(0.0, t_(i, n)) / a <= best_ratio + slack &&
            (leave < 0 || basis_[i] < basis_[leave])) {
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      if (++*pivots > max_pivots) throw Error("simplex: pivot limit exceeded");
    }
  }

  [[gnu::noinline]] void pivot(int r, int c) {
    const double piv = t_(r, c);
    t_.row(r) /= piv;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    t_(r, c) = 1.0;
    basis_[r] = c;
  }

  // Pivots basic artificials out where possible and drops redundant rows.
  void expel_artificials() {
    for (int i = 0; i < rows(); ++i) {
      if (!artificial_[basis_[i]]) continue;
      int best = -1;
      for (int j = 0; j < num_structural_; ++j) {
        if (std::abs(t_(i, j)) > 1e-9 && (best < 0 || std::abs(t_(i, j)) > std::abs(t_(i, best)))) {
          best = j;
        }
      }
      if (best >= 0) {
        pivot(i, best);
      } else {
        remove_row(i);
        --i;
      }
    }
  }

  double objective_value() const { return -t_(rows(), cols()); }

  const std::vector<int>& basis() const { return basis_; }

  Vec basic_solution() const {
    Vec y = Vec::Zero(cols());
    for (int i = 0; i < rows(); ++i) y[basis_[i]] = t_(i, cols());
    return y;
  }

 private:
  void remove_row(int r) {
    const int total = static_cast<int>(t_.rows());
    Mat next(total - 1, t_.cols());
    next.topRows(r) = t_.topRows(r);
    next.bottomRows(total - 1 - r) = t_.bottomRows(total - 1 - r);
    t_ = std::move(next);
    basis_.erase(basis_.begin() + r);
  }

  Mat t_;
  std::vector<int> basis_;
  std::vector<bool> artificial_;
  int num_structural_;
};

}  // namespace

LpOutcome solve(const LinearProgram& lp, const LpOptions& options) {
  lp.validate();
  const int n = lp.num_vars();

  // Standard-form columns for the original variables.
  std::vector<VariableMap> vars(n);
  int ny = 0;
  std::vector<std::pair<int, double>> range_rows;  // (column, width)
  for (int j = 0; j < n; ++j) {
    auto& v = vars[j];
    if (lp.lower[j]) {
      v.offset = *lp.lower[j];
      v.plus_col = ny++;
      if (lp.upper[j]) range_rows.emplace_back(v.plus_col, *lp.upper[j] - *lp.lower[j]);
    } else if (lp.upper[j]) {
      v.offset = *lp.upper[j];
      v.minus_col = ny++;
    } else {
      v.plus_col = ny++;
      v.minus_col = ny++;
    }
  }
  // Substitution matrix: x = offset + M y.
  Mat m_sub = Mat::Zero(n, ny);
  Vec offset(n);
  for (int j = 0; j < n; ++j) {
    offset[j] = vars[j].offset;
    if (vars[j].plus_col >= 0) m_sub(j, vars[j].plus_col) = 1.0;
    if (vars[j].minus_col >= 0) m_sub(j, vars[j].minus_col) = -1.0;
  }

  const int n_eq = static_cast<int>(lp.eq_rows.rows());
  const int n_le = static_cast<int>(lp.le_rows.rows()) + static_cast<int>(range_rows.size());
  const int m = n_eq + n_le;
  const int n_struct = ny + n_le;

  Mat a = Mat::Zero(m, n_struct);
  Vec b(m);
  if (n_eq > 0) {
    a.topLeftCorner(n_eq, ny) = lp.eq_rows * m_sub;
    b.head(n_eq) = lp.eq_rhs - lp.eq_rows * offset;
  }
  int row = n_eq;
  for (Eigen::Index i = 0; i < lp.le_rows.rows(); ++i, ++row) {
    a.block(row, 0, 1, ny) = lp.le_rows.row(i) * m_sub;
    b[row] = lp.le_rhs[i] - lp.le_rows.row(i).dot(offset);
    a(row, ny + (row - n_eq)) = 1.0;
  }
  for (const auto& [col, width] : range_rows) {
    a(row, col) = 1.0;
    b[row] = width;
    a(row, ny + (row - n_eq)) = 1.0;
    ++row;
  }

  // Nonnegative right-hand sides; rows whose slack stays +1 start basic.
  std::vector<int> basis(m, -1);
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0) {
      a.row(i) *= -1.0;
      b[i] = -b[i];
    }
    if (i >= n_eq && a(i, ny + (i - n_eq)) > 0) {
      basis[i] = ny + (i - n_eq);
    } else {
      ++n_art;
    }
  }
  const int n_cols = n_struct + n_art;
  Mat full = Mat::Zero(m, n_cols);
  full.leftCols(n_struct) = a;
  std::vector<bool> artificial(n_cols, false);
  int next_art = n_struct;
  for (int i = 0; i < m; ++i) {
    if (basis[i] < 0) {
      full(i, next_art) = 1.0;
      artificial[next_art] = true;
      basis[i] = next_art++;
    }
  }

  const Mat original = full;
  Tableau tab(std::move(full), b, n_struct, basis, artificial);
  int pivots = 0;
  const double bscale = 1.0 + (m > 0 ? b.cwiseAbs().maxCoeff() : 0.0);

  if (n_art > 0) {
    Vec phase_one = Vec::Zero(n_cols);
    for (int j = 0; j < n_cols; ++j) {
      if (artificial[j]) phase_one[j] = 1.0;
    }
    tab.set_costs(phase_one);
    std::vector<bool> eligible(n_cols, true);
    tab.optimize(eligible, options.max_pivots, &pivots);
    if (tab.objective_value() > options.feasibility_tol * bscale) {
      return LpOutcome{LpStatus::Infeasible, Vec(), 0.0};
    }
    tab.expel_artificials();
  }

  Vec costs = Vec::Zero(n_cols);
  costs.head(ny) = m_sub.transpose() * lp.objective;
  tab.set_costs(costs);
  std::vector<bool> eligible(n_cols);
  for (int j = 0; j < n_cols; ++j) eligible[j] = !artificial[j];
  if (!tab.optimize(eligible, options.max_pivots, &pivots)) {
    return LpOutcome{LpStatus::Unbounded, Vec(), -std::numeric_limits<double>::infinity()};
  }
  Vec y = tab.basic_solution();
  // The tableau drifts over many pivots; recompute the basic values from
  // the original rows and keep whichever point fits them better.
  if (m > 0 && !tab.basis().empty()) {
    const auto& bas = tab.basis();
    Mat cols(m, static_cast<Eigen::Index>(bas.size()));
    for (size_t k = 0; k < bas.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = original.col(bas[k]);
    const Vec yb = cols.colPivHouseholderQr().solve(b);
    Vec refined = Vec::Zero(n_cols);
    for (size_t k = 0; k < bas.size(); ++k) refined[bas[k]] = yb[static_cast<Eigen::Index>(k)];
    auto misfit = [&](const Vec& v) {
      const double neg = v.size() ? std::max(0.0, -v.minCoeff()) : 0.0;
      return std::max(m > 0 ? (original * v - b).cwiseAbs().maxCoeff() : 0.0, neg);
    };
    if (yb.allFinite() && misfit(refined) < misfit(y)) y = refined;
  }
  LpOutcome out;
  out.status = LpStatus::Optimal;
  out.x = offset + m_sub * y.head(ny);
  out.value = lp.objective.dot(out.x);
  return out;
}

FeasibilityResult feasible(const LinearProgram& constraints, const LpOptions& options) {
  LinearProgram phase = constraints;
  phase.objective.setZero();
  const LpOutcome out = solve(phase, options);
  FeasibilityResult r;
  r.feasible = out.status == LpStatus::Optimal;
  if (r.feasible) r.witness = out.x;
  return r;
}

}  // namespace conicdist

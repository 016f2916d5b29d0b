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

#include "conicdist/process.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conicdist/error.hpp"

namespace conicdist {

void ConicProcess::validate() const {
  if (k.dim() != x_dim()) {
    throw ConfigError("process: cone dimension " + std::to_string(k.dim()) +
                      " does not match x_dim " + std::to_string(x_dim()));
  }
  if (!a.allFinite()) throw ConfigError("process: A has non-finite entries");
}

void validate_blocks(const ConicProcess& f, const std::vector<StructureBlock>& blocks) {
  for (size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    const std::string where = "block " + std::to_string(i) + ": ";
    if (b.p.rows() != f.y_dim()) throw ConfigError(where + "P must have y_dim rows");
    if (b.q.cols() != f.x_dim()) throw ConfigError(where + "Q must have x_dim columns");
    if (!b.p.allFinite() || !b.q.allFinite()) throw ConfigError(where + "non-finite entries");
  }
}

int numerical_rank(const Mat& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& sv = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, sv[0]);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) ++r;
  }
  return r;
}

PerturbationAssignment PerturbationAssignment::make(std::vector<Mat> t,
                                                    const std::vector<StructureBlock>& blocks) {
  if (t.size() != blocks.size()) throw ConfigError("perturbation: one T_i per block required");
  PerturbationAssignment pa;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i].rows() != blocks[i].v_dim() || t[i].cols() != blocks[i].u_dim()) {
      throw ConfigError("perturbation: T_" + std::to_string(i) + " must be v_dim x u_dim");
    }
    const double n = operator_norm(t[i], blocks[i].u_norm, blocks[i].v_norm);
    pa.norms.push_back(n);
    pa.rank_at_most_one.push_back(numerical_rank(t[i]) <= 1);
    pa.size = std::max(pa.size, n);
  }
  pa.t = std::move(t);
  return pa;
}

PerturbationAssignment PerturbationAssignment::scaled(double c,
                                                      const std::vector<StructureBlock>& blocks) const {
  std::vector<Mat> ts;
  for (const Mat& m : t) ts.push_back(c * m);
  return make(std::move(ts), blocks);
}

AdjointData adjoint(const ConicProcess& f) {
  f.validate();
  return AdjointData{f.a.transpose(), polar(f.k)};
}

SingularityResult is_singular(const ConicProcess& f, const LpOptions& options) {
  f.validate();
  HomogeneousConstraints side{f.a, Mat(0, f.x_dim())};
  auto x = nonzero_element_with(f.k, side, options);
  return SingularityResult{x.has_value(), std::move(x)};
}

SurjectivityResult is_surjective(const ConicProcess& f, const LpOptions& options) {
  f.validate();
  if (f.y_dim() == 0) return {};
  // y* certifies nonsurjectivity iff -A^T y* in K*, i.e. (A R)^T y* >= 0.
  const Mat ar = f.a * f.k.ray_matrix();
  HomogeneousConstraints side{Mat(0, f.y_dim()), -ar.transpose()};
  auto y = nonzero_element_with(PolyhedralCone::full(f.y_dim()), side, options);
  SurjectivityResult r;
  r.surjective = !y.has_value();
  r.witness = std::move(y);
  return r;
}

ConicProcess perturb(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                     const std::vector<Mat>& t) {
  validate_blocks(f, blocks);
  if (t.size() != blocks.size()) throw ConfigError("perturb: one T_i per block required");
  ConicProcess g = f;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i].rows() != blocks[i].v_dim() || t[i].cols() != blocks[i].u_dim()) {
      throw ConfigError("perturb: T_" + std::to_string(i) + " must be v_dim x u_dim");
    }
    g.a += blocks[i].p * t[i] * blocks[i].q;
  }
  return g;
}

double nonsurjectivity_residual(const ConicProcess& f, const Vec& y_star) {
  const Vec g = -(f.a.transpose() * y_star);
  double worst = 0.0;
  for (const Vec& r : f.k.rays()) worst = std::max(worst, r.dot(g));
  return worst;
}

namespace {

// max over s in {+-1}^n of score(s); s and -s are identified.
template <typename Score>
double max_over_signs(int n, int cap, Score&& score) {
  if (n > cap) {
    throw ConfigError("operator_norm: sign enumeration over " + std::to_string(n) +
                      " coordinates exceeds the cap of " + std::to_string(cap));
  }
  if (n == 0) return 0.0;
  double best = 0.0;
  const unsigned long half = 1UL << (n - 1);
  Vec s(n);
  for (unsigned long mask = 0; mask < half; ++mask) {
    s[0] = 1.0;
    for (int j = 1; j < n; ++j) s[j] = ((mask >> (j - 1)) & 1UL) ? -1.0 : 1.0;
    best = std::max(best, score(s));
  }
  return best;
}

}  // namespace

double operator_norm(const Mat& t, NormKind from, NormKind to, int sign_cap) {
  if (t.size() == 0) return 0.0;
  switch (from) {
    case NormKind::L1: {
      double best = 0.0;
      for (Eigen::Index j = 0; j < t.cols(); ++j) best = std::max(best, norm(to, t.col(j)));
      return best;
    }
    case NormKind::LInf:
      return max_over_signs(static_cast<int>(t.cols()), sign_cap,
                            [&](const Vec& s) { return norm(to, t * s); });
    case NormKind::L2:
      switch (to) {
        case NormKind::L2:
          return largest_singular_value(t);
        case NormKind::LInf:
          return t.rowwise().norm().maxCoeff();
        case NormKind::L1:
          // ||T||_{2->1} = ||T^T||_{inf->2}
          return max_over_signs(static_cast<int>(t.rows()), sign_cap,
                                [&](const Vec& s) { return (t.transpose() * s).norm(); });
      }
  }
  return 0.0;
}

}  // namespace conicdist

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

// The conic process F(x) = {Ax} for x in K (empty otherwise), its adjoint
// F*(y*) = A^T y* + K*, and structured perturbations F + sum_i P_i T_i Q_i.

#ifndef CONICDIST_PROCESS_HPP_
#define CONICDIST_PROCESS_HPP_

#include <optional>
#include <vector>

#include "conicdist/cones.hpp"
#include "conicdist/lp.hpp"
#include "conicdist/numerics.hpp"

namespace conicdist {

struct ConicProcess {
  NormKind x_norm = NormKind::L2;
  NormKind y_norm = NormKind::L2;
  Mat a;  // y_dim x x_dim
  PolyhedralCone k = PolyhedralCone::full(0);

  int x_dim() const { return static_cast<int>(a.cols()); }
  int y_dim() const { return static_cast<int>(a.rows()); }
  /// Throws ConfigError when the cone lives in the wrong space.
  void validate() const;
};

struct AdjointData {
  Mat a_transpose;
  PolyhedralCone k_polar = PolyhedralCone::full(0);
};

/// One (P_i, Q_i) pair: P maps V_i -> Y, Q maps X -> U_i.
struct StructureBlock {
  Mat p;  // y_dim x v_dim
  Mat q;  // u_dim x x_dim
  NormKind u_norm = NormKind::L2;
  NormKind v_norm = NormKind::L2;

  int u_dim() const { return static_cast<int>(q.rows()); }
  int v_dim() const { return static_cast<int>(p.cols()); }
};

void validate_blocks(const ConicProcess& f, const std::vector<StructureBlock>& blocks);

/// T_i : U_i -> V_i together with the induced norms.
struct PerturbationAssignment {
  std::vector<Mat> t;
  std::vector<double> norms;
  std::vector<bool> rank_at_most_one;
  double size = 0.0;  // max_i ||T_i||

  static PerturbationAssignment make(std::vector<Mat> t, const std::vector<StructureBlock>& blocks);
  PerturbationAssignment scaled(double c, const std::vector<StructureBlock>& blocks) const;
};

AdjointData adjoint(const ConicProcess& f);

struct SingularityResult {
  bool singular = false;
  std::optional<Vec> witness;  // x != 0, x in K, Ax = 0
};
SingularityResult is_singular(const ConicProcess& f, const LpOptions& options = {});

struct SurjectivityResult {
  bool surjective = true;
  /// y* != 0 with -A^T y* in K*, ||y*||_inf = 1, when not surjective.
  std::optional<Vec> witness;
};
/// Surjective iff the adjoint process is nonsingular.
SurjectivityResult is_surjective(const ConicProcess& f, const LpOptions& options = {});

/// Same cone, matrix A + sum_i P_i T_i Q_i.
ConicProcess perturb(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                     const std::vector<Mat>& t);

/// Largest absolute violation of -A^T y* in K* (0 when y* certifies
/// nonsurjectivity exactly).
double nonsurjectivity_residual(const ConicProcess& f, const Vec& y_star);

/// Induced norm of T : (R^cols, from) -> (R^rows, to). Exact for every pair;
/// pairs that need sign enumeration are capped at sign_cap dimensions.
double operator_norm(const Mat& t, NormKind from, NormKind to, int sign_cap = 12);

int numerical_rank(const Mat& m, double rel_tol = 1e-10);

}  // namespace conicdist

#endif  // CONICDIST_PROCESS_HPP_

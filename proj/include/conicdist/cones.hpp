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

// Polyhedral convex cones held in both generator form (nonnegative
// combinations of rays) and inequality form (<h, x> >= 0 for every h).

#ifndef CONICDIST_CONES_HPP_
#define CONICDIST_CONES_HPP_

#include <optional>
#include <vector>

#include "conicdist/lp.hpp"
#include "conicdist/numerics.hpp"

namespace conicdist {

class PolyhedralCone {
 public:
  enum class Tag { General, Full, Zero };

  /// R^dim. Generators are +-e_j, no inequalities.
  static PolyhedralCone full(int dim);
  /// {0}. No generators, inequalities +-e_j.
  static PolyhedralCone zero(int dim);
  /// Nonnegative orthant.
  static PolyhedralCone nonneg(int dim);
  /// cone(rays). Zero rays are dropped and parallel duplicates merged; the
  /// inequality form is derived by double description.
  static PolyhedralCone from_rays(int dim, const std::vector<Vec>& rays);
  /// {x : <h, x> >= 0 for all h}. Generators derived by double description.
  static PolyhedralCone from_halfspaces(int dim, const std::vector<Vec>& halfspaces);

  int dim() const { return dim_; }
  Tag tag() const { return tag_; }
  const std::vector<Vec>& rays() const { return rays_; }
  const std::vector<Vec>& halfspaces() const { return halfspaces_; }
  /// dim x rays().size()
  Mat ray_matrix() const;
  /// halfspaces().size() x dim
  Mat halfspace_matrix() const;

 private:
  PolyhedralCone(int dim, Tag tag, std::vector<Vec> rays, std::vector<Vec> halfspaces);
  friend PolyhedralCone polar(const PolyhedralCone& k);

  int dim_ = 0;
  Tag tag_ = Tag::General;
  std::vector<Vec> rays_;
  std::vector<Vec> halfspaces_;
};

/// Negative polar {x* : <x*, x> <= 0 for all x in K}.
PolyhedralCone polar(const PolyhedralCone& k);

/// Inequality-form check: <h, x> >= -tol for every (LInf-normalized) h.
bool member(const PolyhedralCone& k, const Vec& x, double tol = 1e-9);
/// Generator-form check: an LP over lambda >= 0 with R lambda = x.
bool member_by_generators(const PolyhedralCone& k, const Vec& x, const LpOptions& options = {});

/// Homogeneous side constraints: eq * x == 0 and le * x <= 0.
struct HomogeneousConstraints {
  Mat eq;
  Mat le;
};

/// Some x != 0 in K satisfying the side constraints, or nullopt. The search
/// fixes x_j = +1 for j = 0..n-1, then x_j = -1, with the other coordinates
/// boxed to [-1, 1]; the first feasible LP wins, so ||x||_inf = 1.
std::optional<Vec> nonzero_element_with(const PolyhedralCone& k,
                                        const HomogeneousConstraints& extra,
                                        const LpOptions& options = {});

/// Extreme rays (plus +-lineality basis) of {x in R^dim : H x >= 0} by
/// enumerating active sets. Exposed for tests.
std::vector<Vec> extreme_rays(int dim, const std::vector<Vec>& halfspaces);

}  // namespace conicdist

#endif  // CONICDIST_CONES_HPP_

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

// Random instance generators and small reference computations shared by
// the test binaries.

#ifndef CONICDIST_TESTS_SUPPORT_HPP_
#define CONICDIST_TESTS_SUPPORT_HPP_

#include <cmath>
#include <random>
#include <vector>

#include "conicdist/distance.hpp"

namespace conicdist::testing {

struct RandomInstance {
  ConicProcess f;
  std::vector<StructureBlock> blocks;
  std::vector<Vec> rays;  // generators as drawn
};

inline Mat gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  return m;
}

inline NormKind polyhedral_norm(std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(0, 1)(rng) ? NormKind::L1 : NormKind::LInf;
}

inline StructureBlock random_block(int m, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(1, 2);
  StructureBlock b;
  b.p = gaussian(m, d(rng), rng);
  b.q = gaussian(d(rng), n, rng);
  b.u_norm = polyhedral_norm(rng);
  b.v_norm = polyhedral_norm(rng);
  return b;
}

// Surjective process with x_dim, y_dim <= 3, a cone spanned by at most four
// rays, k <= 2 blocks and L1 / LINF norms.
inline RandomInstance random_exact_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ydim(1, 2), xdim(2, 3), nrays(3, 4), nblocks(1, 2);
  while (true) {
    RandomInstance r;
    const int m = ydim(rng);
    const int n = xdim(rng);
    const int count = nrays(rng);
    for (int i = 0; i < count; ++i) r.rays.push_back(gaussian(n, 1, rng).col(0));
    r.f.a = gaussian(m, n, rng);
    r.f.k = PolyhedralCone::from_rays(n, r.rays);
    r.f.x_norm = polyhedral_norm(rng);
    r.f.y_norm = polyhedral_norm(rng);
    if (!is_surjective(r.f).surjective) continue;
    const int k = nblocks(rng);
    for (int i = 0; i < k; ++i) r.blocks.push_back(random_block(m, n, rng));
    return r;
  }
}

// Smallest singular value through the eigenvalues of A^T A.
inline double sigma_min_by_eigen(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a.transpose() * a);
  return std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
}

inline bool rel_close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace conicdist::testing

#endif  // CONICDIST_TESTS_SUPPORT_HPP_

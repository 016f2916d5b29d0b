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

#include "nnls.hpp"

#include <cmath>
#include <vector>

namespace conicdist::detail {

Vec nnls(const Mat& e, const Vec& f, int max_iterations) {
  const Eigen::Index n = e.cols();
  Vec x = Vec::Zero(n);
  std::vector<bool> passive(n, false);
  const double tol = 1e-12 * (1.0 + e.cwiseAbs().maxCoeff()) * (1.0 + f.cwiseAbs().maxCoeff());

  auto solve_passive = [&](Vec* z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[j]) idx.push_back(j);
    }
    Mat ep(e.rows(), static_cast<Eigen::Index>(idx.size()));
    for (size_t k = 0; k < idx.size(); ++k) ep.col(k) = e.col(idx[k]);
    const Vec zp = ep.completeOrthogonalDecomposition().solve(f);
    z->setZero(n);
    for (size_t k = 0; k < idx.size(); ++k) (*z)[idx[k]] = zp[k];
  };

  for (int outer = 0; outer < max_iterations; ++outer) {
    const Vec w = e.transpose() * (f - e * x);
    Eigen::Index t = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w[j] > tol && (t < 0 || w[j] > w[t])) t = j;
    }
    if (t < 0) break;
    passive[t] = true;
    for (int inner = 0; inner < max_iterations; ++inner) {
      Vec z;
      solve_passive(&z);
      bool all_positive = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z[j] <= 0) all_positive = false;
      }
      if (all_positive) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z[j] <= 0) alpha = std::min(alpha, x[j] / (x[j] - z[j]));
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x[j] <= tol) {
          passive[j] = false;
          x[j] = 0.0;
        }
      }
    }
  }
  return x;
}

std::optional<Vec> least_distance(const Mat& g, const Vec& h) {
  const Eigen::Index d = g.cols();
  if (g.rows() == 0) return Vec::Zero(d);
  Mat e(d + 1, g.rows());
  e.topRows(d) = g.transpose();
  e.row(d) = h.transpose();
  Vec f = Vec::Zero(d + 1);
  f[d] = 1.0;
  const Vec u = nnls(e, f);
  const Vec r = e * u - f;
  if (r.norm() <= 1e-12 || std::abs(r[d]) <= 1e-14) return std::nullopt;
  return Vec(-r.head(d) / r[d]);
}

}  // namespace conicdist::detail

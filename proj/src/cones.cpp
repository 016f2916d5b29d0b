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

#include "conicdist/cones.hpp"

#include <algorithm>
#include <cmath>

#include "conicdist/error.hpp"

namespace conicdist {

namespace {

constexpr double kRayTol = 1e-9;

std::optional<Vec> normalized(const Vec& v) {
  const double s = v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0;
  if (s <= kZeroTol) return std::nullopt;
  return Vec(v / s);
}

// Normalizes, drops zeros and merges parallel duplicates, keeping first
// occurrences in input order.
std::vector<Vec> canonical(int dim, const std::vector<Vec>& input) {
  std::vector<Vec> out;
  for (const Vec& v : input) {
    if (v.size() != dim) throw ConfigError("cone: vector dimension does not match ambient dimension");
    if (!v.allFinite()) throw ConfigError("cone: non-finite coordinates");
    auto n = normalized(v);
    if (!n) continue;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Vec& w) {
      return (w - *n).lpNorm<Eigen::Infinity>() <= kRayTol;
    });
    if (!seen) out.push_back(*n);
  }
  return out;
}

Mat stack_rows(int dim, const std::vector<Vec>& rows) {
  Mat m(static_cast<Eigen::Index>(rows.size()), dim);
  for (size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return m;
}

// Orthonormal basis (as columns) of the null space of m, plus its rank.
Mat null_space(const Mat& m, int dim, int* rank_out = nullptr) {
  if (m.rows() == 0) {
    if (rank_out) *rank_out = 0;
    return Mat::Identity(dim, dim);
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) ++rank;
  }
  if (rank_out) *rank_out = rank;
  return svd.matrixV().rightCols(dim - rank);
}

// Calls fn(indices) for every size-r subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int r, Fn&& fn) {
  if (r > n || r < 0) return;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Vec> extreme_rays(int dim, const std::vector<Vec>& halfspaces) {
  const std::vector<Vec> hs = canonical(dim, halfspaces);
  const Mat h = stack_rows(dim, hs);
  int rank = 0;
  const Mat lineality = null_space(h, dim, &rank);
  std::vector<Vec> rays;
  for (Eigen::Index j = 0; j < lineality.cols(); ++j) {
    rays.push_back(lineality.col(j));
    rays.push_back(-lineality.col(j));
  }
  const int pointed_dim = rank;
  if (pointed_dim == 0) return canonical(dim, rays);

  const int n_h = static_cast<int>(hs.size());
  for_each_subset(n_h, pointed_dim - 1, [&](const std::vector<int>& active) {
    Mat m(static_cast<Eigen::Index>(active.size()) + lineality.cols(), dim);
    for (size_t i = 0; i < active.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = h.row(active[i]);
    if (lineality.cols() > 0) m.bottomRows(lineality.cols()) = lineality.transpose();
    const Mat ns = null_space(m, dim);
    if (ns.cols() != 1) return;
    auto d = normalized(ns.col(0));
    if (!d) return;
    const Vec hd = h * *d;
    if (hd.minCoeff() >= -kRayTol) {
      rays.push_back(*d);
    } else if ((-hd).minCoeff() >= -kRayTol) {
      rays.push_back(-*d);
    }
  });
  return canonical(dim, rays);
}

PolyhedralCone::PolyhedralCone(int dim, Tag tag, std::vector<Vec> rays, std::vector<Vec> halfspaces)
    : dim_(dim), tag_(tag), rays_(std::move(rays)), halfspaces_(std::move(halfspaces)) {}

PolyhedralCone PolyhedralCone::full(int dim) {
  if (dim < 0) throw ConfigError("cone: negative dimension");
  std::vector<Vec> rays;
  for (int j = 0; j < dim; ++j) {
    rays.push_back(Vec::Unit(dim, j));
    rays.push_back(-Vec::Unit(dim, j));
  }
  return PolyhedralCone(dim, Tag::Full, std::move(rays), {});
}

PolyhedralCone PolyhedralCone::zero(int dim) {
  PolyhedralCone k = full(dim);
  return PolyhedralCone(dim, Tag::Zero, {}, k.rays_);
}

PolyhedralCone PolyhedralCone::nonneg(int dim) {
  if (dim < 0) throw ConfigError("cone: negative dimension");
  std::vector<Vec> unit;
  for (int j = 0; j < dim; ++j) unit.push_back(Vec::Unit(dim, j));
  return PolyhedralCone(dim, dim == 0 ? Tag::Zero : Tag::General, unit, unit);
}

PolyhedralCone PolyhedralCone::from_rays(int dim, const std::vector<Vec>& rays) {
  if (dim < 0) throw ConfigError("cone: negative dimension");
  std::vector<Vec> gens = canonical(dim, rays);
  if (gens.empty()) return zero(dim);
  std::vector<Vec> hs = extreme_rays(dim, gens);
  const Tag tag = hs.empty() ? Tag::Full : Tag::General;
  return PolyhedralCone(dim, tag, std::move(gens), std::move(hs));
}

PolyhedralCone PolyhedralCone::from_halfspaces(int dim, const std::vector<Vec>& halfspaces) {
  if (dim < 0) throw ConfigError("cone: negative dimension");
  std::vector<Vec> hs = canonical(dim, halfspaces);
  if (hs.empty()) return full(dim);
  std::vector<Vec> gens = extreme_rays(dim, hs);
  const Tag tag = gens.empty() ? Tag::Zero : Tag::General;
  return PolyhedralCone(dim, tag, std::move(gens), std::move(hs));
}

Mat PolyhedralCone::ray_matrix() const {
  Mat r(dim_, static_cast<Eigen::Index>(rays_.size()));
  for (size_t j = 0; j < rays_.size(); ++j) r.col(static_cast<Eigen::Index>(j)) = rays_[j];
  return r;
}

Mat PolyhedralCone::halfspace_matrix() const { return stack_rows(dim_, halfspaces_); }

PolyhedralCone polar(const PolyhedralCone& k) {
  std::vector<Vec> rays;
  std::vector<Vec> hs;
  for (const Vec& h : k.halfspaces()) rays.push_back(-h);
  for (const Vec& r : k.rays()) hs.push_back(-r);
  PolyhedralCone::Tag tag = PolyhedralCone::Tag::General;
  if (k.tag() == PolyhedralCone::Tag::Full) tag = PolyhedralCone::Tag::Zero;
  if (k.tag() == PolyhedralCone::Tag::Zero) tag = PolyhedralCone::Tag::Full;
  // The polar of R^n is {0}; keep its canonical +-e_j inequality form.
  if (tag == PolyhedralCone::Tag::Zero) return PolyhedralCone::zero(k.dim());
  if (tag == PolyhedralCone::Tag::Full) return PolyhedralCone::full(k.dim());
  return PolyhedralCone(k.dim(), tag, std::move(rays), std::move(hs));
}

bool member(const PolyhedralCone& k, const Vec& x, double tol) {
  if (x.size() != k.dim()) throw ConfigError("member: dimension mismatch");
  const double scale = std::max(1.0, x.size() ? x.lpNorm<Eigen::Infinity>() : 0.0);
  for (const Vec& h : k.halfspaces()) {
    if (h.dot(x) < -tol * scale) return false;
  }
  return true;
}

bool member_by_generators(const PolyhedralCone& k, const Vec& x, const LpOptions& options) {
  if (x.size() != k.dim()) throw ConfigError("member: dimension mismatch");
  const int r = static_cast<int>(k.rays().size());
  if (r == 0) return x.size() == 0 || x.lpNorm<Eigen::Infinity>() <= options.feasibility_tol;
  LinearProgram lp(r);
  const Mat rm = k.ray_matrix();
  for (int i = 0; i < k.dim(); ++i) lp.add_eq(rm.row(i).transpose(), x[i]);
  for (int j = 0; j < r; ++j) lp.lower[j] = 0.0;
  return feasible(lp, options).feasible;
}

std::optional<Vec> nonzero_element_with(const PolyhedralCone& k, const HomogeneousConstraints& extra,
                                        const LpOptions& options) {
  const int n = k.dim();
  if ((extra.eq.rows() > 0 && extra.eq.cols() != n) || (extra.le.rows() > 0 && extra.le.cols() != n)) {
    throw ConfigError("nonzero_element_with: side constraints have the wrong column count");
  }
  LinearProgram base(n);
  for (const Vec& h : k.halfspaces()) base.add_ge(h, 0.0);
  for (Eigen::Index i = 0; i < extra.eq.rows(); ++i) base.add_eq(extra.eq.row(i).transpose(), 0.0);
  for (Eigen::Index i = 0; i < extra.le.rows(); ++i) base.add_le(extra.le.row(i).transpose(), 0.0);
  for (int j = 0; j < n; ++j) {
    base.lower[j] = -1.0;
    base.upper[j] = 1.0;
  }
  for (double sign : {1.0, -1.0}) {
    for (int j = 0; j < n; ++j) {
      LinearProgram lp = base;
      lp.lower[j] = sign;
      lp.upper[j] = sign;
      const FeasibilityResult r = feasible(lp, options);
      if (r.feasible) return r.witness;
    }
  }
  return std::nullopt;
}

}  // namespace conicdist

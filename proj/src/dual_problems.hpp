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

// Subproblems of the dual characterization shared by the dual solver and
// the rank-one search. Internal to the library.
//
// A "cell" fixes, for every block, a vertex e_i of B_{V_i}; inside it the
// nonconvex ||P_i^T y*||_{V_i*} is replaced by the linear <P_i e_i, y*>, so
// the test "value <= t" becomes one LP in (y*, s_i) with s_i = z_i u_i*.

#ifndef CONICDIST_SRC_DUAL_PROBLEMS_HPP_
#define CONICDIST_SRC_DUAL_PROBLEMS_HPP_

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "conicdist/distance.hpp"

namespace conicdist::detail {

using Cell = std::vector<Vec>;

struct DualPoint {
  Vec y;
  std::vector<Vec> s;
  ExtendedNonneg value = ExtendedNonneg::infinity();
};

/// max_i ||s_i||_{U_i*} / ||P_i^T y||_{V_i*} with the z/0 convention.
ExtendedNonneg dual_value(const std::vector<StructureBlock>& blocks, const Vec& y,
                          const std::vector<Vec>& s);

std::vector<std::vector<Vec>> vertex_sets(const std::vector<StructureBlock>& blocks);

/// Every cell whose vertices attain ||P_i^T y||_{V_i*} (ties within 1e-9).
std::vector<Cell> attaining_cells(const std::vector<StructureBlock>& blocks, const Vec& y,
                                  std::size_t cap = 64);

std::optional<DualPoint> cell_feasible(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                       const Cell& cell, double t, const LpOptions& lp);

/// Smallest t in the cell if it is below `below` (pass +inf for no bound).
std::optional<DualPoint> cell_minimum(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                      const Cell& cell, double below, const SolverOptions& options);

/// Best value for a fixed y: min t s.t. ||s_i|| <= t ||P_i^T y||,
/// sum_i Q_i^T s_i in A^T y + K*.
std::optional<DualPoint> inner_fixed_y(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                       const Vec& y, const LpOptions& lp);

/// Moves between attaining cells while the value strictly decreases.
DualPoint cell_walk(const ConicProcess& f, const std::vector<StructureBlock>& blocks, DualPoint start,
                    const SolverOptions& options);

Vec random_unit(int dim, std::mt19937_64& rng);

/// Coordinate-wise golden-section search on the hyperspherical angles of y.
/// Returns the best point seen; fn returns +inf where undefined.
Vec polish_on_sphere(const std::function<double(const Vec&)>& fn, Vec y, int sweeps = 80);

/// Membership rows of the cone generators: for every ray r of K the pair
/// (A r, {Q_i r}).
struct RayImages {
  std::vector<Vec> a_r;
  std::vector<std::vector<Vec>> q_r;  // [ray][block]
};
RayImages ray_images(const ConicProcess& f, const std::vector<Mat>& qs);

}  // namespace conicdist::detail

#endif  // CONICDIST_SRC_DUAL_PROBLEMS_HPP_

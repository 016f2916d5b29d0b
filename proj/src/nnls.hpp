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

// Lawson-Hanson nonnegative least squares and the least-distance program
// built on it. Internal to the library.

#ifndef CONICDIST_SRC_NNLS_HPP_
#define CONICDIST_SRC_NNLS_HPP_

#include <optional>

#include "conicdist/numerics.hpp"

namespace conicdist::detail {

/// argmin ||E x - f||_2 over x >= 0.
Vec nnls(const Mat& e, const Vec& f, int max_iterations = 500);

/// argmin ||s||_2 subject to G s >= h; nullopt when the system is infeasible.
std::optional<Vec> least_distance(const Mat& g, const Vec& h);

}  // namespace conicdist::detail

#endif  // CONICDIST_SRC_NNLS_HPP_

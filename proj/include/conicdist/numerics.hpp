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

// Norms on coordinate spaces, their duals, and the extended nonnegative
// reals used for ratios such as z / ||P* y*||.

#ifndef CONICDIST_NUMERICS_HPP_
#define CONICDIST_NUMERICS_HPP_

#include <Eigen/Dense>

#include <compare>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace conicdist {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Absolute tolerance used when comparing norms and denominators against 0.
inline constexpr double kZeroTol = 1e-12;

enum class NormKind { L1, L2, LInf };

/// L1 <-> LInf, L2 <-> L2.
NormKind dual(NormKind kind);
bool is_polyhedral(NormKind kind);
std::string_view to_string(NormKind kind);
/// Accepts "L1", "L2", "LINF" (case-insensitive, "Linf"/"inf" too).
NormKind parse_norm_kind(std::string_view text);

double norm(NormKind kind, const Vec& x);

/// A dual element u* with <u*, x> = ||x|| and ||u*||_dual = 1. Ties between
/// coordinates of equal magnitude go to the lowest index. Throws DomainError
/// when ||x|| <= zero_tol.
Vec norming_functional(NormKind kind, const Vec& x, double zero_tol = kZeroTol);

/// Vertices of the closed unit ball. L1 gives +-e_j in the order
/// e_0, -e_0, e_1, -e_1, ...; LInf gives all 2^dim sign vectors in binary
/// order with + before -. L2 throws DomainError (non-polyhedral norm).
std::vector<Vec> ball_extreme_points(NormKind kind, int dim);

double smallest_singular_value(const Mat& a);
double largest_singular_value(const Mat& a);

/// Value in [0, +inf] with the conventions z/0 = +inf (z > 0), 0/0 = 0 and
/// z/inf = 0.
class ExtendedNonneg {
 public:
  constexpr ExtendedNonneg() = default;
  explicit ExtendedNonneg(double v);

  static constexpr ExtendedNonneg infinity() {
    ExtendedNonneg e;
    e.value_ = std::numeric_limits<double>::infinity();
    return e;
  }
  static ExtendedNonneg ratio(double numerator, double denominator,
                              double zero_tol = kZeroTol);

  bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  double value() const { return value_; }

  friend auto operator<=>(const ExtendedNonneg&, const ExtendedNonneg&) = default;

 private:
  double value_ = 0.0;
};

/// "+inf" or the number printed with 17 significant digits.
std::string to_string(ExtendedNonneg v);

}  // namespace conicdist

#endif  // CONICDIST_NUMERICS_HPP_

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

#include "conicdist/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "conicdist/error.hpp"

namespace conicdist {

NormKind dual(NormKind kind) {
  switch (kind) {
    case NormKind::L1:
      return NormKind::LInf;
    case NormKind::LInf:
      return NormKind::L1;
    case NormKind::L2:
      break;
  }
  return NormKind::L2;
}

bool is_polyhedral(NormKind kind) { return kind != NormKind::L2; }

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::L1:
      return "L1";
    case NormKind::L2:
      return "L2";
    case NormKind::LInf:
      return "LINF";
  }
  return "?";
}

NormKind parse_norm_kind(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "L1") return NormKind::L1;
  if (upper == "L2") return NormKind::L2;
  if (upper == "LINF" || upper == "INF" || upper == "L_INF") return NormKind::LInf;
  throw SchemaError("unknown norm kind '" + std::string(text) + "' (expected L1, L2 or LINF)");
}

double norm(NormKind kind, const Vec& x) {
  if (x.size() == 0) return 0.0;
  switch (kind) {
    case NormKind::L1:
      return x.lpNorm<1>();
    case NormKind::L2:
      return x.norm();
    case NormKind::LInf:
      return x.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

Vec norming_functional(NormKind kind, const Vec& x, double zero_tol) {
  const double nx = norm(kind, x);
  if (!(nx > zero_tol)) {
    throw DomainError("norming functional undefined for the zero vector");
  }
  Vec u = Vec::Zero(x.size());
  switch (kind) {
    case NormKind::L2:
      u = x / nx;
      break;
    case NormKind::L1:
      // Sign vector; zero coordinates get 0, which keeps ||u||_inf = 1.
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (x[j] > 0) u[j] = 1.0;
        else if (x[j] < 0) u[j] = -1.0;
      }
      break;
    case NormKind::LInf: {
      Eigen::Index best = 0;
      for (Eigen::Index j = 1; j < x.size(); ++j) {
        if (std::abs(x[j]) > std::abs(x[best])) best = j;
      }
      u[best] = x[best] > 0 ? 1.0 : -1.0;
      break;
    }
  }
  return u;
}

std::vector<Vec> ball_extreme_points(NormKind kind, int dim) {
  if (dim < 0) throw ConfigError("ball_extreme_points: negative dimension");
  std::vector<Vec> points;
  switch (kind) {
    case NormKind::L2:
      throw DomainError("non-polyhedral norm: the L2 unit ball has no finite vertex set");
    case NormKind::L1:
      for (int j = 0; j < dim; ++j) {
        points.push_back(Vec::Unit(dim, j));
        points.push_back(-Vec::Unit(dim, j));
      }
      break;
    case NormKind::LInf: {
      if (dim > 30) throw ConfigError("ball_extreme_points: LINF dimension too large");
      const unsigned long count = 1UL << dim;
      for (unsigned long mask = 0; mask < count; ++mask) {
        Vec s(dim);
        for (int j = 0; j < dim; ++j) {
          // Bit j of mask selects the sign of coordinate dim-1-j so that the
          // first coordinate varies slowest.
          s[j] = ((mask >> (dim - 1 - j)) & 1UL) ? -1.0 : 1.0;
        }
        points.push_back(std::move(s));
      }
      break;
    }
  }
  return points;
}

double smallest_singular_value(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().minCoeff();
}

double largest_singular_value(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().maxCoeff();
}

ExtendedNonneg::ExtendedNonneg(double v) : value_(v) {
  if (std::isnan(v) || v < 0.0) {
    throw DomainError("ExtendedNonneg: value must be a nonnegative real or +inf");
  }
}

ExtendedNonneg ExtendedNonneg::ratio(double numerator, double denominator,
                                     double zero_tol) {
  if (std::isnan(numerator) || std::isnan(denominator) || numerator < -zero_tol ||
      denominator < -zero_tol) {
    throw DomainError("ExtendedNonneg::ratio expects nonnegative operands");
  }
  if (std::isinf(denominator)) return ExtendedNonneg(0.0);
  if (std::isinf(numerator)) return infinity();
  if (denominator <= zero_tol) {
    return numerator <= zero_tol ? ExtendedNonneg(0.0) : infinity();
  }
  return ExtendedNonneg(std::max(0.0, numerator) / denominator);
}

std::string to_string(ExtendedNonneg v) {
  if (v.is_infinite()) return "+inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v.value());
  return buf;
}

}  // namespace conicdist

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

#include <doctest.h>

#include <random>

#include "conicdist/cones.hpp"

using namespace conicdist;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

std::vector<Vec> random_rays(int dim, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Vec> rays;
  for (int i = 0; i < count; ++i) {
    Vec r(dim);
    for (int j = 0; j < dim; ++j) r[j] = g(rng);
    rays.push_back(r);
  }
  return rays;
}

bool contains(const PolyhedralCone& outer, const PolyhedralCone& inner) {
  for (const Vec& r : inner.rays()) {
    if (!member_by_generators(outer, r)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("polar of standard cones") {
  const auto orthant = polar(PolyhedralCone::nonneg(2));
  CHECK(member(orthant, v2(-1, -2)));
  CHECK_FALSE(member(orthant, v2(1, -2)));
  CHECK(polar(PolyhedralCone::full(2)).tag() == PolyhedralCone::Tag::Zero);
  CHECK(polar(PolyhedralCone::zero(2)).tag() == PolyhedralCone::Tag::Full);
}

TEST_CASE("polar of a single ray is a half-plane") {
  const auto k = polar(PolyhedralCone::from_rays(2, {v2(1, 1)}));
  // Direct description: y1 + y2 <= 0.
  for (const Vec& y : {v2(-1, 0), v2(1, -1), v2(-1, 1), v2(-3, 2.5)}) CHECK(member(k, y));
  for (const Vec& y : {v2(1, 0), v2(0.1, 0), v2(1, 1)}) CHECK_FALSE(member(k, y));
}

TEST_CASE("membership") {
  const auto orthant = PolyhedralCone::nonneg(2);
  CHECK(member(orthant, v2(1, 2)));
  CHECK_FALSE(member(orthant, v2(-1, 2)));
  CHECK(member(PolyhedralCone::from_rays(2, {v2(1, 1)}), v2(2, 2)));
  CHECK_FALSE(member(PolyhedralCone::from_rays(2, {v2(1, 1)}), v2(2, 1)));
}

TEST_CASE("degenerate generators are cleaned up") {
  const auto k = PolyhedralCone::from_rays(2, {v2(0, 0), v2(1, 1), v2(2, 2)});
  CHECK(k.rays().size() == 1);
}

TEST_CASE("nonzero elements under extra constraints") {
  HomogeneousConstraints diag;
  diag.eq = Mat(1, 2);
  diag.eq << 1, -1;
  auto x = nonzero_element_with(PolyhedralCone::nonneg(2), diag);
  REQUIRE(x);
  CHECK((*x)[0] > 0);
  CHECK((*x)[0] == doctest::Approx((*x)[1]));

  HomogeneousConstraints both;
  both.eq = Mat::Identity(2, 2);
  CHECK_FALSE(nonzero_element_with(PolyhedralCone::nonneg(2), both));

  HomogeneousConstraints anti;
  anti.eq = Mat(1, 2);
  anti.eq << 1, 1;
  auto y = nonzero_element_with(PolyhedralCone::full(2), anti);
  REQUIRE(y);
  CHECK(y->norm() > 0);
  CHECK((*y)[0] == doctest::Approx(-(*y)[1]));
}

TEST_CASE("bipolar on random cones") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 4), count(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = dim(rng);
    const auto rays = random_rays(d, count(rng), rng);
    const auto k = PolyhedralCone::from_rays(d, rays);
    const auto kk = polar(polar(k));
    for (const Vec& r : rays) CHECK(member(kk, r, 1e-9));
    for (const Vec& r : kk.rays()) CHECK(member(k, r, 1e-9));
  }
}

TEST_CASE("polar reverses inclusion") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + trial % 2;
    auto rays = random_rays(d, 3, rng);
    const auto small = PolyhedralCone::from_rays(d, {rays[0], rays[1]});
    const auto big = PolyhedralCone::from_rays(d, rays);
    REQUIRE(contains(big, small));
    CHECK(contains(polar(small), polar(big)));
  }
}

TEST_CASE("generator and halfspace membership agree") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + trial % 3;
    const auto k = PolyhedralCone::from_rays(d, random_rays(d, 4, rng));
    for (int s = 0; s < 10; ++s) {
      Vec x(d);
      for (int j = 0; j < d; ++j) x[j] = g(rng);
      CHECK(member(k, x) == member_by_generators(k, x));
    }
  }
}

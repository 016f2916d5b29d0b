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

#include "conicdist/distance.hpp"
#include "conicdist/error.hpp"
#include "support.hpp"

using namespace conicdist;

namespace {

ConicProcess scalar(PolyhedralCone k) { return {NormKind::L1, NormKind::L1, Mat::Ones(1, 1), std::move(k)}; }

std::vector<QBlock> scalar_q(double q) { return {{Mat::Constant(1, 1, q), NormKind::L1}}; }

Vec one(double v) { return Vec::Constant(1, v); }

SolverOptions exact() { return {}; }

}  // namespace

TEST_CASE("Phi on the scalar example") {
  const auto e = phi(scalar(PolyhedralCone::full(1)), scalar_q(1.0), {one(2.0)}, exact());
  CHECK(e.value.value() == doctest::Approx(0.5));
  REQUIRE(e.witness);
  CHECK(e.residual <= 1e-12);
  CHECK(phi_witness_residual(scalar(PolyhedralCone::full(1)), scalar_q(1.0), {one(2.0)}, *e.witness) <= 1e-12);
}

TEST_CASE("Phi of zero data is infinite") {
  CHECK(phi(scalar(PolyhedralCone::full(1)), scalar_q(1.0), {one(0.0)}, exact()).value.is_infinite());
}

TEST_CASE("Phi scales inversely") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto in = testing::random_exact_instance(rng);
    const auto qb = q_blocks(in.blocks);
    std::vector<Vec> y;
    for (const auto& b : in.blocks) y.push_back(b.p * testing::gaussian(b.v_dim(), 1, rng));
    const auto base = phi(in.f, qb, y, exact());
    if (base.value.is_infinite() || base.value.value() == 0.0) continue;
    std::vector<Vec> y3;
    for (const auto& v : y) y3.push_back(3.0 * v);
    CHECK(phi(in.f, qb, y3, exact()).value.value() == doctest::Approx(base.value.value() / 3.0).epsilon(1e-8));
  }
}

TEST_CASE("quantity4 on the Eckart-Young instance") {
  Mat a(2, 2);
  a << 3, 0, 0, 1;
  ConicProcess f{NormKind::L2, NormKind::L2, a, PolyhedralCone::full(2)};
  StructureBlock b{Mat::Identity(2, 2), Mat::Identity(2, 2), NormKind::L2, NormKind::L2};
  SolverOptions o;
  o.mode = Mode::Sampled;
  const Vec e2 = -Vec::Unit(2, 1);
  CHECK(phi(f, q_blocks({b}), {e2}, o).value.value() == doctest::Approx(1.0).epsilon(1e-9));
  const auto q4 = quantity4(f, {b}, o);
  CHECK(q4.alpha.value() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Phi never undercuts the dual distance") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 15; ++trial) {
    const auto in = testing::random_exact_instance(rng);
    const auto alpha = distance_dual(in.f, in.blocks, exact()).alpha;
    if (alpha.is_infinite()) continue;
    const auto qb = q_blocks(in.blocks);
    for (int s = 0; s < 5; ++s) {
      std::vector<Vec> y;
      for (const auto& b : in.blocks) {
        Vec v = testing::gaussian(b.v_dim(), 1, rng);
        y.push_back(b.p * (v / norm(b.v_norm, v)));
      }
      CHECK(phi(in.f, qb, y, exact()).value.value() >= alpha.value() - 1e-6);
    }
  }
}

TEST_CASE("theorem of the alternative on scalar examples") {
  auto r = alternative_check(scalar(PolyhedralCone::full(1)), scalar_q(1.0), {one(1.0)}, exact());
  CHECK(r.which == AlternativeSystem::SystemII);
  REQUIRE(r.y_star.size() == 1);
  CHECK(r.y_star[0] > 0);
  CHECK(r.u_star[0][0] == doctest::Approx(-1.0));

  r = alternative_check(scalar(PolyhedralCone::full(1)), scalar_q(0.0), {one(1.0)}, exact());
  CHECK(r.which == AlternativeSystem::SystemI);
  CHECK(r.margin > 0);

  r = alternative_check(scalar(PolyhedralCone::nonneg(1)), scalar_q(1.0), {one(-1.0)}, exact());
  CHECK(r.which == AlternativeSystem::SystemII);
  CHECK(r.y_star[0] < 0);
  CHECK(to_string(AlternativeSystem::SystemI) != to_string(AlternativeSystem::SystemII));
}

TEST_CASE("reciprocal supremum of a scalar process") {
  StructureBlock b{Mat::Ones(1, 1), Mat::Constant(1, 1, 2.0), NormKind::L1, NormKind::L1};
  const auto r = reciprocal_sup(scalar(PolyhedralCone::full(1)), b, exact());
  // x = v, so sup |2x| over |v| <= 1 is 2.
  CHECK(r.value.value() == doctest::Approx(2.0));
  CHECK(r.sampled_lower <= r.value);
}

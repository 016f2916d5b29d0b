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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "conicdist/distance.hpp"
#include "conicdist/error.hpp"
#include "support.hpp"

using namespace conicdist;
using conicdist::testing::gaussian;
using conicdist::testing::rel_close;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double val(const ExtendedNonneg& e) { return e.is_infinite() ? HUGE_VAL : e.value(); }

// Exact-mode instances used by criteria 2 and 4.
std::vector<testing::RandomInstance> exact_corpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<testing::RandomInstance> out;
  for (int i = 0; i < count; ++i) out.push_back(testing::random_exact_instance(rng));
  return out;
}

void criterion1() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(2, 4);
  const auto t0 = Clock::now();
  double worst = 0.0;
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = dim(rng);
    ConicProcess f{NormKind::L2, NormKind::L2, gaussian(d, d, rng), PolyhedralCone::full(d)};
    std::vector<StructureBlock> b{{Mat::Identity(d, d), Mat::Identity(d, d), NormKind::L2, NormKind::L2}};
    SolverOptions o;
    o.mode = Mode::Sampled;
    o.seed = static_cast<std::uint64_t>(i);
    const double alpha = val(distance_dual(f, b, o).alpha);
    const double sigma = testing::sigma_min_by_eigen(f.a);
    const double err = std::fabs(alpha - sigma) / std::max(1.0, sigma);
    worst = std::max(worst, err);
    if (err > 1e-3) ++bad;
  }
  const double secs = seconds_since(t0);
  report(1, bad == 0 && secs < 30.0, "Eckart-Young, 100 square L2 instances",
         fmt("max scaled error %.2e, %.0f failures, %.1f s", worst, bad, secs));
}

void criterion2_and_4() {
  const auto corpus = exact_corpus(50, 202);
  const auto t0 = Clock::now();
  double worst = 0.0;
  double worst_general = 0.0;
  int bad = 0, bad4 = 0, finite = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const auto& in = corpus[i];
    SolverOptions o;
    o.mode = Mode::Exact;
    o.seed = i;
    const DistanceReport r = verify_equalities(in.f, in.blocks, o);
    const double q3 = val(r.q_dual);
    const double q2 = val(r.q_rank_one);
    const double q4 = val(r.q_phi);
    if (std::isinf(q3)) {
      if (!std::isinf(q2) || !std::isinf(q4)) ++bad;
      continue;
    }
    ++finite;
    const double gap = std::max({std::fabs(q2 - q3), std::fabs(q4 - q3), std::fabs(q2 - q4)});
    worst = std::max(worst, gap);
    if (!(gap <= 1e-5)) ++bad;
    for (double bound : r.general.bounds) {
      worst_general = std::max(worst_general, q3 - bound);
      if (bound < q3 - 1e-9) ++bad;
    }
    // Criterion 4: the certificate sits exactly on the boundary.
    bool ok4 = false;
    if (r.rank_one.certificate) {
      const auto& t = r.rank_one.certificate->t;
      const bool at = is_surjective(perturb(in.f, in.blocks, t.t), o.lp).surjective;
      const auto shrunk = t.scaled(1.0 - 1e-3, in.blocks);
      const bool below = is_surjective(perturb(in.f, in.blocks, shrunk.t), o.lp).surjective;
      ok4 = !at && below;
    }
    if (!ok4) ++bad4;
  }
  const double secs = seconds_since(t0);
  report(2, bad == 0 && secs < 60.0, "four quantities agree on 50 exact-mode instances",
         fmt("max pairwise gap %.2e, general bound deficit %.2e, ", worst, worst_general) +
             fmt("%.0f failures, %.0f finite, %.1f s", bad, finite, secs));
  report(4, bad4 == 0, "rank-one certificate is tight",
         fmt("%.0f of %.0f instances failed", bad4, finite));
}

// Independent check of the witness returned by alternative_check.
bool witness_ok(const testing::RandomInstance& in, const std::vector<QBlock>& qb,
                const std::vector<Vec>& ys, const AlternativeResult& r, double* worst) {
  const double tol = 1e-9;
  if (r.which == AlternativeSystem::SystemI) {
    Vec combo = Vec::Zero(in.f.y_dim());
    for (size_t i = 0; i < ys.size(); ++i) combo += r.w[i] * ys[i];
    double res = (in.f.a * r.x - combo).cwiseAbs().maxCoeff();
    bool strict = true;
    for (size_t i = 0; i < ys.size(); ++i) {
      strict = strict && r.w[i] - norm(qb[i].u_norm, qb[i].q * r.x) >= 1e-9;
    }
    const bool in_cone = member_by_generators(in.f.k, r.x);
    *worst = std::max(*worst, res);
    return res <= tol && strict && in_cone;
  }
  if (r.y_star.norm() <= tol) return false;
  Vec g = in.f.a.transpose() * r.y_star;
  double res = 0.0;
  for (size_t i = 0; i < ys.size(); ++i) {
    const double c = r.y_star.dot(ys[i]);
    res = std::max(res, -c);
    res = std::max(res, norm(dual(qb[i].u_norm), r.u_star[i]) - 1.0);
    g += c * (qb[i].q.transpose() * r.u_star[i]);
  }
  for (const Vec& ray : in.rays) res = std::max(res, ray.dot(g));
  *worst = std::max(*worst, res);
  return res <= tol;
}

void criterion3() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> scale(-2.0, 2.0);
  int bad = 0, first = 0, second = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto in = testing::random_exact_instance(rng);
    const auto qb = q_blocks(in.blocks);
    const double c = std::pow(10.0, scale(rng));
    std::vector<Vec> ys;
    for (size_t j = 0; j < qb.size(); ++j) ys.push_back(c * gaussian(in.f.y_dim(), 1, rng).col(0));
    SolverOptions o;
    try {
      const AlternativeResult r = alternative_check(in.f, qb, ys, o);
      (r.which == AlternativeSystem::SystemI ? first : second)++;
      if (!witness_ok(in, qb, ys, r, &worst)) ++bad;
    } catch (const InconsistencyError& e) {
      std::printf("  instance %d: %s\n", i, e.what());
      ++bad;
    }
  }
  report(3, bad == 0, "dichotomy on 200 random instances",
         fmt("%.0f failures; system (i) %.0f, system (ii) %.0f", bad, first, second) +
             fmt(", max witness residual %.2e", worst));
}

void criterion5() {
  Mat a(2, 2);
  a << 3, 0, 0, 1;
  Mat p(2, 1), q(1, 2);
  p << 1, 0;
  q << 1, 0;
  bool ok = true;
  std::string detail;
  for (NormKind k : {NormKind::L1, NormKind::LInf}) {
    ConicProcess f{k, k, a, PolyhedralCone::full(2)};
    SolverOptions o;
    o.mode = Mode::Exact;
    const DistanceReport r = verify_equalities(f, {{p, q, k, k}}, o);
    for (const auto& e : {r.q_general, r.q_rank_one, r.q_dual, r.q_phi}) {
      ok = ok && std::fabs(val(e) - 3.0) <= 1e-9;
    }
    detail += std::string(to_string(k)) + fmt(": %.17g %.17g", val(r.q_dual), val(r.q_rank_one)) +
              fmt(" %.17g %.17g; ", val(r.q_phi), val(r.q_general));
  }
  ConicProcess f{NormKind::L2, NormKind::L2, a, PolyhedralCone::full(2)};
  SolverOptions o;
  o.mode = Mode::Sampled;
  const double un = val(distance_dual(f, {{Mat::Identity(2, 2), Mat::Identity(2, 2), NormKind::L2, NormKind::L2}}, o).alpha);
  ok = ok && std::fabs(un - 1.0) <= 1e-3;
  detail += fmt("unstructured L2: %.17g", un);
  report(5, ok, "masked diag(3,1)", detail);
}

void criterion6() {
  std::mt19937_64 rng(606);
  int bad_scale = 0, bad_mono = 0, bad_phi = 0;
  for (int i = 0; i < 50; ++i) {
    auto in = testing::random_exact_instance(rng);
    SolverOptions o;
    o.mode = Mode::Exact;
    const double base = val(distance_dual(in.f, in.blocks, o).alpha);
    for (double c : {0.5, 2.0, 10.0}) {
      ConicProcess g = in.f;
      g.a *= c;
      const double scaled = val(distance_dual(g, in.blocks, o).alpha);
      const bool ok = std::isinf(base) ? std::isinf(scaled) : rel_close(scaled, c * base, 1e-6);
      if (!ok) ++bad_scale;
    }
    auto more = in.blocks;
    more.push_back(testing::random_block(in.f.y_dim(), in.f.x_dim(), rng));
    const double extended = val(distance_dual(in.f, more, o).alpha);
    if (!(extended <= base + 1e-9)) ++bad_mono;

    const auto qb = q_blocks(in.blocks);
    std::vector<Vec> ys;
    for (size_t j = 0; j < qb.size(); ++j) ys.push_back(gaussian(in.f.y_dim(), 1, rng).col(0));
    const double phi1 = val(phi(in.f, qb, ys, o).value);
    for (double c : {0.5, 3.0}) {
      std::vector<Vec> cys = ys;
      for (auto& y : cys) y *= c;
      const double phic = val(phi(in.f, qb, cys, o).value);
      const bool ok = std::isinf(phi1) ? std::isinf(phic) : rel_close(phic, phi1 / c, 1e-6);
      if (!ok) ++bad_phi;
    }
  }
  report(6, bad_scale + bad_mono + bad_phi == 0, "invariances over 50 instances each",
         fmt("scaling failures %.0f, monotonicity failures %.0f, phi homogeneity failures %.0f", bad_scale,
             bad_mono, bad_phi));
}

void criterion7() {
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<int> dim(2, 3), side(1, 2);
  int bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int d = dim(rng);
    ConicProcess f{testing::polyhedral_norm(rng), testing::polyhedral_norm(rng), gaussian(d, d, rng),
                   PolyhedralCone::full(d)};
    StructureBlock b{gaussian(d, side(rng), rng), gaussian(side(rng), d, rng), testing::polyhedral_norm(rng),
                     testing::polyhedral_norm(rng)};
    SolverOptions o;
    o.mode = Mode::Exact;
    o.seed = static_cast<std::uint64_t>(i);
    const double alpha = val(distance_dual(f, {b}, o).alpha);
    const ReciprocalSup s = reciprocal_sup(f, b, o);
    const double sup = val(s.value);
    double err;
    if (std::isinf(alpha)) {
      err = sup == 0.0 ? 0.0 : HUGE_VAL;
    } else {
      err = std::fabs(sup * alpha - 1.0);
    }
    if (!(val(s.sampled_lower) <= sup * (1.0 + 1e-9))) ++bad;
    worst = std::max(worst, err);
    if (!(err <= 1e-4)) ++bad;
  }
  report(7, bad == 0, "reciprocal supremum on 50 k=1 instances",
         fmt("max relative error %.2e, %.0f failures", worst, bad));
}

}  // namespace

int main() {
  criterion1();
  criterion2_and_4();
  criterion3();
  criterion5();
  criterion6();
  criterion7();
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

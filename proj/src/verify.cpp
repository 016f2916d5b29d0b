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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "conicdist/distance.hpp"
#include "conicdist/error.hpp"

namespace conicdist {

namespace {

bool leq(const ExtendedNonneg& a, const ExtendedNonneg& b, double tol) {
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return a.value() <= b.value() + tol;
}

bool close(const ExtendedNonneg& a, const ExtendedNonneg& b, double tol) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  return std::fabs(a.value() - b.value()) <= tol;
}

std::string gap(const ExtendedNonneg& a, const ExtendedNonneg& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() == b.is_infinite() ? "0" : "+inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", a.value() - b.value());
  return buf;
}

class Stopwatch {
 public:
  explicit Stopwatch(double* sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    *sink_ = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  double* sink_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

DistanceReport verify_equalities(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                 const SolverOptions& options, bool run_alternatives) {
  f.validate();
  validate_blocks(f, blocks);
  require_mode_supported(blocks, options.mode);
  DistanceReport r;
  r.options = options;
  r.notes.push_back("fourth quantity denominator read as ||P_i^* y*||");
  if (f.k.tag() == PolyhedralCone::Tag::Full) r.sigma_min = smallest_singular_value(f.a);

  auto add = [&](std::string name, bool ok, std::string detail) {
    r.passed = r.passed && ok;
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    Stopwatch w(&r.timings_ms["surjectivity"]);
    const auto s = is_surjective(f, options.lp);
    r.surjective = s.surjective;
    r.nonsurjectivity_witness = s.witness;
  }
  if (!r.surjective) {
    r.q_general = r.q_rank_one = r.q_dual = r.q_phi = ExtendedNonneg(0.0);
    r.dual.alpha = ExtendedNonneg(0.0);
    r.dual.nonsurjectivity_witness = r.nonsurjectivity_witness;
    r.rank_one.alpha_upper = ExtendedNonneg(0.0);
    r.rank_one.nonsurjectivity_witness = r.nonsurjectivity_witness;
    r.general.alpha_upper = ExtendedNonneg(0.0);
    r.phi.alpha = ExtendedNonneg(0.0);
    r.notes.push_back("process is not surjective; all four quantities are 0");
    add("nonsurjectivity_witness", nonsurjectivity_residual(f, *r.nonsurjectivity_witness) <= 1e-9,
        "witness residual");
    return r;
  }

  {
    Stopwatch w(&r.timings_ms["dual"]);
    r.dual = distance_dual(f, blocks, options);
  }
  {
    Stopwatch w(&r.timings_ms["rank_one"]);
    r.rank_one = distance_rank_one_search(f, blocks, options);
  }
  {
    Stopwatch w(&r.timings_ms["general"]);
    std::vector<Vec> seeds;
    if (r.rank_one.certificate) seeds.push_back(r.rank_one.certificate->y_star);
    if (r.dual.certificate) seeds.push_back(r.dual.certificate->y_star);
    r.general = distance_general_search(f, blocks, options, seeds);
  }
  {
    Stopwatch w(&r.timings_ms["phi"]);
    std::vector<std::vector<Vec>> seeds;
    if (r.rank_one.certificate) seeds.push_back(r.rank_one.certificate->v);
    r.phi = quantity4(f, blocks, options, seeds);
  }
  r.q_dual = r.dual.alpha;
  r.q_rank_one = r.rank_one.alpha_upper;
  r.q_general = r.general.alpha_upper;
  r.q_phi = r.phi.alpha;

  const double tol = options.tol;
  if (options.mode == Mode::Exact) {
    add("dual_le_rank_one", leq(r.q_dual, r.q_rank_one, tol), "q2 - q3 = " + gap(r.q_rank_one, r.q_dual));
    add("dual_le_general", leq(r.q_dual, r.q_general, tol), "q1 - q3 = " + gap(r.q_general, r.q_dual));
    add("phi_eq_dual", close(r.q_phi, r.q_dual, tol), "q4 - q3 = " + gap(r.q_phi, r.q_dual));
    add("rank_one_eq_dual", close(r.q_rank_one, r.q_dual, tol), "q2 - q3 = " + gap(r.q_rank_one, r.q_dual));
  } else {
    r.notes.push_back("sampled mode: q2 - q3 = " + gap(r.q_rank_one, r.q_dual) +
                      ", q1 - q3 = " + gap(r.q_general, r.q_dual) + ", q4 - q3 = " + gap(r.q_phi, r.q_dual));
  }
  if (r.dual.certificate) {
    add("dual_certificate_residual", r.dual.certificate->residual <= 1e-9,
        "membership residual " + std::to_string(r.dual.certificate->residual));
  }
  if (r.rank_one.certificate) {
    const auto& c = *r.rank_one.certificate;
    add("rank_one_certificate_nonsurjective", !c.perturbed_surjective,
        "perturbed process with ||T|| = " + std::to_string(c.t.size));
    const auto shrunk = c.t.scaled(1.0 - 1e-3, blocks);
    add("shrunk_certificate_surjective", is_surjective(perturb(f, blocks, shrunk.t), options.lp).surjective,
        "(1 - 1e-3) T keeps the process surjective");
  } else {
    add("rank_one_certificate_present", r.q_dual.is_infinite(),
        "no rank-one certificate although the dual distance is finite");
  }
  if (r.general.best) {
    add("general_bound_above_dual", leq(r.q_dual, ExtendedNonneg(r.general.best->size), 1e-9 + tol),
        "best general assignment " + std::to_string(r.general.best->size));
  }

  if (run_alternatives && options.mode == Mode::Exact && !r.q_phi.is_infinite() && r.q_phi.value() > 0 &&
      !r.phi.v.empty()) {
    Stopwatch w(&r.timings_ms["alternatives"]);
    const std::vector<QBlock> qb = q_blocks(blocks);
    const double a = r.q_phi.value();
    for (const auto& [psi, expected] : {std::pair{a * (1.0 + 1e-3), AlternativeSystem::SystemII},
                                        std::pair{a * (1.0 - 1e-3), AlternativeSystem::SystemI}}) {
      // Phi(psi P v) = Phi(P v) / psi straddles 1 around psi = alpha.
      std::vector<Vec> ys;
      for (size_t i = 0; i < blocks.size(); ++i) ys.push_back(psi * (blocks[i].p * r.phi.v[i]));
      AlternativeRecord rec;
      rec.psi = psi;
      rec.expected = expected;
      try {
        rec.result = alternative_check(f, qb, ys, options);
        rec.passed = rec.result.which == expected && rec.result.residual <= 1e-9;
      } catch (const InconsistencyError& e) {
        rec.passed = false;
        r.notes.push_back(e.what());
      }
      add(std::string("alternative_") + std::string(to_string(expected)), rec.passed,
          "psi = " + std::to_string(psi));
      r.alternatives.push_back(std::move(rec));
    }
  }
  return r;
}

}  // namespace conicdist

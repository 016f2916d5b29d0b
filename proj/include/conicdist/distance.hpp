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

// Structured distance to nonsurjectivity of a conic process, computed four
// ways:
//   q1  general T_i found by search (upper bound),
//   q2  rank-one T_i built from a searched adjoint witness (upper bound),
//   q3  the dual characterization over (y*, u_i*, z_i) (exact for L1/LINF),
//   q4  min over v_i in B_{V_i} of Phi((P_i v_i)).
// For surjective F the four agree; certificates for each are returned.

#ifndef CONICDIST_DISTANCE_HPP_
#define CONICDIST_DISTANCE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conicdist/lp.hpp"
#include "conicdist/numerics.hpp"
#include "conicdist/process.hpp"

namespace conicdist {

enum class Mode { Exact, Sampled };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);
/// Exact when every block norm is L1 or LINF.
Mode default_mode(const std::vector<StructureBlock>& blocks);
/// Throws ModeError("exact mode requires polyhedral norms") when needed.
void require_mode_supported(const std::vector<StructureBlock>& blocks, Mode mode);

struct SolverOptions {
  Mode mode = Mode::Exact;
  double tol = 1e-6;
  int budget = 10000;
  std::uint64_t seed = 0;
  LpOptions lp;
  double bisection_abs = 1e-13;
  double bisection_rel = 1e-12;
  int bisection_max_iterations = 200;
};

// ---------------------------------------------------------------- quantity 3

/// sum_i z_i Q_i^T u_i* in A^T y* + K*, ||u_i*||_{U_i*} <= 1, z_i >= 0.
struct DualCertificate {
  Vec y_star;
  std::vector<Vec> u_star;
  std::vector<double> z;
  ExtendedNonneg value;   // max_i z_i / ||P_i^T y*||_{V_i*}
  double residual = 0.0;  // membership violation
};

ExtendedNonneg dual_certificate_value(const std::vector<StructureBlock>& blocks,
                                      const Vec& y_star, const std::vector<double>& z);
double dual_certificate_residual(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                 const DualCertificate& cert);

struct DualDistance {
  ExtendedNonneg alpha;
  std::optional<DualCertificate> certificate;
  /// Set instead of a certificate when F itself is not surjective.
  std::optional<Vec> nonsurjectivity_witness;
};

DualDistance distance_dual(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                           const SolverOptions& options);

// ---------------------------------------------------------------- quantity 2

/// T u = <u*, u> / ||Q x|| * v with u* the norming functional of Q x in U.
/// ||T|| <= ||v|| / ||Q x|| and T (Q x) = v. Throws DomainError if Q x = 0.
Mat build_rank_one(const Vec& x, const Vec& v, const Mat& q, NormKind u_norm);
Mat build_rank_one(const Vec& x, const Vec& v, const StructureBlock& block);

/// Rank-one T_i = (z_i / ||P_i^T y*||) v_i u_i*^T with ||v_i||_{V_i} = 1,
/// making F + sum_i P_i T_i Q_i nonsurjective with witness y*.
struct RankOneCertificate {
  Vec y_star;
  std::vector<Vec> v;
  std::vector<Vec> u_star;
  std::vector<double> z;
  PerturbationAssignment t;
  bool perturbed_surjective = true;
  double residual = 0.0;  // nonsurjectivity residual of y* for the perturbed process
};

/// Turns an adjoint witness (y*, s_i = z_i u_i*) into explicit T_i by the
/// rank-one construction applied to F*.
RankOneCertificate rank_one_from_dual(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                      const Vec& y_star, const std::vector<Vec>& s,
                                      const LpOptions& lp = {});

struct RankOneSearch {
  ExtendedNonneg alpha_upper = ExtendedNonneg::infinity();
  std::optional<RankOneCertificate> certificate;
  std::optional<Vec> nonsurjectivity_witness;
};

RankOneSearch distance_rank_one_search(const ConicProcess& f,
                                       const std::vector<StructureBlock>& blocks,
                                       const SolverOptions& options);

// ---------------------------------------------------------------- quantity 1

struct GeneralSearch {
  ExtendedNonneg alpha_upper = ExtendedNonneg::infinity();
  std::optional<PerturbationAssignment> best;
  Vec best_witness;
  /// Every verified nonsurjective assignment size found, in search order.
  std::vector<double> bounds;
};

/// For sampled witnesses y* (plus seed_witnesses), the smallest general
/// T_i making y* a nonsurjectivity witness of F + sum P_i T_i Q_i.
GeneralSearch distance_general_search(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                      const SolverOptions& options,
                                      const std::vector<Vec>& seed_witnesses = {});

// ---------------------------------------------------------------- Phi / q4

struct QBlock {
  Mat q;
  NormKind u_norm = NormKind::L2;
};
std::vector<QBlock> q_blocks(const std::vector<StructureBlock>& blocks);

/// sum_i <y*, y_i> Q_i^T u_i* in A^T(-y*) + K*, <y*, y_i> >= 0.
struct PhiWitness {
  Vec y_star;
  std::vector<Vec> u_star;
};

struct PhiEvaluation {
  std::vector<Vec> y_list;
  ExtendedNonneg value = ExtendedNonneg::infinity();
  std::optional<PhiWitness> witness;
  double residual = 0.0;
};

PhiEvaluation phi(const ConicProcess& f, const std::vector<QBlock>& blocks,
                  const std::vector<Vec>& y_list, const SolverOptions& options);
double phi_witness_residual(const ConicProcess& f, const std::vector<QBlock>& blocks,
                            const std::vector<Vec>& y_list, const PhiWitness& w);

struct Quantity4 {
  ExtendedNonneg alpha = ExtendedNonneg::infinity();
  std::vector<Vec> v;
  PhiEvaluation at_best;
};

/// Minimizes Phi((P_i v_i)) over v_i in the unit balls; seeds are tried
/// first, then seeded random samples, then local polish.
Quantity4 quantity4(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                    const SolverOptions& options,
                    const std::vector<std::vector<Vec>>& seeds = {});

// ------------------------------------------------------- theorem of alternative

enum class AlternativeSystem { SystemI, SystemII };
std::string_view to_string(AlternativeSystem s);

struct AlternativeResult {
  AlternativeSystem which = AlternativeSystem::SystemI;
  // System I: sum_i w_i y_i in F(x), ||Q_i x|| < w_i.
  Vec x;
  std::vector<double> w;
  double margin = 0.0;  // min_i (w_i - ||Q_i x||)
  // System II.
  Vec y_star;
  std::vector<Vec> u_star;
  double residual = 0.0;  // of the reported system
};

/// Exactly one system is solvable for surjective F; throws
/// InconsistencyError (with residuals) when both or neither are detected.
AlternativeResult alternative_check(const ConicProcess& f, const std::vector<QBlock>& blocks,
                                    const std::vector<Vec>& y_list, const SolverOptions& options);

// ------------------------------------------------------------ reciprocal sup

struct ReciprocalSup {
  ExtendedNonneg value;  // sup { ||Q x|| : P v in F(x), ||v|| <= 1 }
  ExtendedNonneg sampled_lower;
  Vec x;
  Vec v;
};

/// Single block only. Random directions give a lower bound; the vertex
/// enumeration of B_{U*} then attains the sup exactly.
ReciprocalSup reciprocal_sup(const ConicProcess& f, const StructureBlock& block,
                             const SolverOptions& options);

// -------------------------------------------------------------- verification

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AlternativeRecord {
  double psi = 0.0;
  AlternativeSystem expected = AlternativeSystem::SystemI;
  AlternativeResult result;
  bool passed = false;
};

struct DistanceReport {
  SolverOptions options;
  bool surjective = true;
  std::optional<Vec> nonsurjectivity_witness;
  ExtendedNonneg q_general = ExtendedNonneg::infinity();
  ExtendedNonneg q_rank_one = ExtendedNonneg::infinity();
  ExtendedNonneg q_dual = ExtendedNonneg::infinity();
  ExtendedNonneg q_phi = ExtendedNonneg::infinity();
  double sigma_min = 0.0;  // Eckart-Young reference for the unstructured K = X case
  DualDistance dual;
  RankOneSearch rank_one;
  GeneralSearch general;
  Quantity4 phi;
  std::vector<AlternativeRecord> alternatives;
  std::vector<CheckResult> checks;
  bool passed = true;
  std::vector<std::string> notes;
  std::map<std::string, double> timings_ms;
};

/// Runs all four solvers and the cross-checks. With run_alternatives the
/// theorem-of-the-alternative sub-checks are added (exact mode only).
DistanceReport verify_equalities(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                 const SolverOptions& options, bool run_alternatives = false);

}  // namespace conicdist

#endif  // CONICDIST_DISTANCE_HPP_

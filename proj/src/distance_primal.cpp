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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "conicdist/distance.hpp"
#include "conicdist/error.hpp"
#include "dual_problems.hpp"
#include "lp_builder.hpp"

namespace conicdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Operator norm of t (from -> to) and a subgradient w x^T, where x is a
// maximizing unit source vector and w norms t x.
double operator_norm_subgradient(const Mat& t, NormKind from, NormKind to, Mat* grad) {
  Vec x = Vec::Zero(t.cols());
  double best = -1.0;
  auto consider = [&](const Vec& cand) {
    const double v = norm(to, t * cand);
    if (v > best) {
      best = v;
      x = cand;
    }
  };
  switch (from) {
    case NormKind::L1:
      for (Eigen::Index j = 0; j < t.cols(); ++j) consider(Vec::Unit(t.cols(), j));
      break;
    case NormKind::LInf:
      for (const Vec& s : ball_extreme_points(NormKind::LInf, static_cast<int>(t.cols()))) consider(s);
      break;
    case NormKind::L2:
      if (to == NormKind::L2) {
        Eigen::JacobiSVD<Mat> svd(t, Eigen::ComputeThinV);
        consider(svd.matrixV().col(0));
      } else if (to == NormKind::LInf) {
        Eigen::Index row = 0;
        t.rowwise().norm().maxCoeff(&row);
        const double n = t.row(row).norm();
        consider(n > 0 ? Vec(t.row(row).transpose() / n) : Vec::Unit(t.cols(), 0));
      } else {
        for (const Vec& s : ball_extreme_points(NormKind::LInf, static_cast<int>(t.rows()))) {
          const Vec ts = t.transpose() * s;
          const double n = ts.norm();
          if (n > 0) consider(ts / n);
        }
        if (best < 0) consider(Vec::Unit(t.cols(), 0));
      }
      break;
  }
  const Vec tx = t * x;
  if (norm(to, tx) <= 0.0) {
    *grad = Mat::Zero(t.rows(), t.cols());
    return 0.0;
  }
  *grad = norming_functional(to, tx, 0.0) * x.transpose();
  return best;
}

}  // namespace

Mat build_rank_one(const Vec& x, const Vec& v, const Mat& q, NormKind u_norm) {
  if (q.cols() != x.size()) throw ConfigError("build_rank_one: Q and x dimensions disagree");
  const Vec qx = q * x;
  const double n = norm(u_norm, qx);
  if (!(n > kZeroTol)) {
    throw DomainError("build_rank_one: Qx = 0, the perturbation cannot act on x through this block");
  }
  return v * norming_functional(u_norm, qx).transpose() / n;
}

Mat build_rank_one(const Vec& x, const Vec& v, const StructureBlock& block) {
  if (v.size() != block.v_dim()) throw ConfigError("build_rank_one: v must lie in V");
  return build_rank_one(x, v, block.q, block.u_norm);
}

RankOneCertificate rank_one_from_dual(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                      const Vec& y_star, const std::vector<Vec>& s, const LpOptions& lp) {
  RankOneCertificate c;
  c.y_star = y_star;
  std::vector<Mat> ts;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    const Vec phi = b.p.transpose() * y_star;
    const double p = norm(dual(b.v_norm), phi);
    const double z = norm(dual(b.u_norm), s[i]);
    const Vec u = z > 0.0 ? Vec(s[i] / z) : Vec::Zero(b.u_dim());
    const Vec v_hat = p > kZeroTol ? norming_functional(dual(b.v_norm), phi) : Vec::Zero(b.v_dim());
    c.v.push_back(-v_hat);
    c.u_star.push_back(u);
    c.z.push_back(z);
    if (z > 0.0 && p > kZeroTol) {
      // Rank-one map on the adjoint side: S (P^T y*) = z u*, so that
      // F* - Q^T S P^T is singular at y*; T = -S^T acts on F.
      const Mat s_map = build_rank_one(y_star / z, u, b.p.transpose(), dual(b.v_norm));
      ts.push_back(-s_map.transpose());
    } else {
      ts.push_back(Mat::Zero(b.v_dim(), b.u_dim()));
    }
  }
  c.t = PerturbationAssignment::make(std::move(ts), blocks);
  const ConicProcess g = perturb(f, blocks, c.t.t);
  c.residual = nonsurjectivity_residual(g, y_star);
  c.perturbed_surjective = is_surjective(g, lp).surjective;
  return c;
}

RankOneSearch distance_rank_one_search(const ConicProcess& f,
                                       const std::vector<StructureBlock>& blocks,
                                       const SolverOptions& options) {
  f.validate();
  validate_blocks(f, blocks);
  require_mode_supported(blocks, options.mode);
  RankOneSearch out;
  const auto surj = is_surjective(f, options.lp);
  if (!surj.surjective) {
    out.alpha_upper = ExtendedNonneg(0.0);
    out.nonsurjectivity_witness = surj.witness;
    return out;
  }
  if (f.y_dim() == 0) return out;

  std::mt19937_64 rng(options.seed ^ 0x9E3779B97F4A7C15ULL);
  auto value_at = [&](const Vec& y) {
    auto p = detail::inner_fixed_y(f, blocks, y, options.lp);
    return p ? p->value.value() : kInf;
  };
  std::vector<std::pair<double, Vec>> pool;
  const int n = std::max(1, options.budget);
  for (int i = 0; i < n; ++i) {
    Vec y = detail::random_unit(f.y_dim(), rng);
    pool.emplace_back(value_at(y), std::move(y));
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::optional<detail::DualPoint> best;
  const size_t starts = std::min<size_t>(4, pool.size());
  for (size_t i = 0; i < starts; ++i) {
    if (!std::isfinite(pool[i].first)) break;
    std::optional<detail::DualPoint> p;
    if (options.mode == Mode::Exact) {
      p = detail::inner_fixed_y(f, blocks, pool[i].second, options.lp);
      if (p) p = detail::cell_walk(f, blocks, *p, options);
    } else {
      p = detail::inner_fixed_y(f, blocks, detail::polish_on_sphere(value_at, pool[i].second),
                                options.lp);
    }
    if (p && (!best || p->value < best->value)) best = std::move(p);
  }
  if (options.mode == Mode::Exact) {
    // Random directions miss dual points confined to a lower-dimensional
    // set; the exact cell search always finds them.
    const DualDistance d = distance_dual(f, blocks, options);
    if (d.certificate && !d.alpha.is_infinite() && (!best || d.alpha < best->value)) {
      detail::DualPoint p;
      p.y = d.certificate->y_star;
      for (size_t i = 0; i < blocks.size(); ++i) p.s.push_back(d.certificate->z[i] * d.certificate->u_star[i]);
      p.value = detail::dual_value(blocks, p.y, p.s);
      best = std::move(p);
    }
  }
  if (!best || best->value.is_infinite()) return out;

  out.certificate = rank_one_from_dual(f, blocks, best->y, best->s, options.lp);
  out.alpha_upper = ExtendedNonneg(out.certificate->t.size);
  return out;
}

GeneralSearch distance_general_search(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                      const SolverOptions& options,
                                      const std::vector<Vec>& seed_witnesses) {
  f.validate();
  validate_blocks(f, blocks);
  GeneralSearch out;
  if (f.y_dim() == 0) return out;

  std::vector<Vec> witnesses = seed_witnesses;
  std::mt19937_64 rng(options.seed ^ 0xD1B54A32D192ED03ULL);
  const int n = std::max(16, options.budget / 100);
  for (int i = 0; i < n; ++i) witnesses.push_back(detail::random_unit(f.y_dim(), rng));

  std::vector<Mat> qs;
  for (const auto& b : blocks) qs.push_back(b.q);
  const detail::RayImages ri = detail::ray_images(f, qs);

  bool polyhedral = true;
  for (const auto& blk : blocks) {
    polyhedral = polyhedral && is_polyhedral(blk.u_norm) && is_polyhedral(blk.v_norm);
  }
  auto solve_lp = [&](const Vec& y) -> std::optional<std::vector<Mat>> {
    // min t  s.t. ||T_i|| <= t and y is a nonsurjectivity witness of
    // A + sum P_i T_i Q_i, i.e. <r, -(A + ...)^T y> <= 0 for every ray r.
    detail::LpBuilder b;
    const int t = b.add_var(0.0);
    std::vector<int> first;
    for (const auto& blk : blocks) first.push_back(b.add_vars(blk.v_dim() * blk.u_dim()));
    for (size_t r = 0; r < ri.a_r.size(); ++r) {
      detail::Expr e;
      for (size_t i = 0; i < blocks.size(); ++i) {
        const Vec phi = blocks[i].p.transpose() * y;
        const Vec& qr = ri.q_r[r][i];
        const int dv = blocks[i].v_dim();
        for (int col = 0; col < blocks[i].u_dim(); ++col) {
          for (int row = 0; row < dv; ++row) {
            const double c = phi[row] * qr[col];
            if (c != 0.0) e.push_back({first[i] + row + col * dv, -c});
          }
        }
      }
      b.add_le(e, ri.a_r[r].dot(y));
    }
    for (size_t i = 0; i < blocks.size(); ++i) {
      const int dv = blocks[i].v_dim();
      const int du = blocks[i].u_dim();
      std::vector<int> vars(static_cast<size_t>(dv * du));
      for (int j = 0; j < dv * du; ++j) vars[static_cast<size_t>(j)] = first[i] + j;
      const NormKind from = blocks[i].u_norm;
      const NormKind to = blocks[i].v_norm;
      b.add_convex_le(std::move(vars),
                      [dv, du, from, to](const Vec& flat, Vec* g) {
                        const Mat tm = Eigen::Map<const Mat>(flat.data(), dv, du);
                        Mat grad;
                        const double v = operator_norm_subgradient(tm, from, to, &grad);
                        *g = Eigen::Map<const Vec>(grad.data(), grad.size());
                        return v;
                      },
                      {{t, 1.0}});
    }
    b.minimize({{t, 1.0}});
    const LpOutcome sol = b.solve(options.lp);
    if (sol.status != LpStatus::Optimal) return std::nullopt;
    std::vector<Mat> ts;
    for (size_t i = 0; i < blocks.size(); ++i) {
      const int dv = blocks[i].v_dim();
      const int du = blocks[i].u_dim();
      ts.push_back(Eigen::Map<const Mat>(sol.x.data() + first[i], dv, du));
    }
    return ts;
  };
  // Only T_i^T P_i^T y enters the witness condition, so the minimal norm
  // is attained by the rank-one map built from the fixed-y dual problem.
  auto solve_reduced = [&](const Vec& y) -> std::optional<std::vector<Mat>> {
    auto p = detail::inner_fixed_y(f, blocks, y, options.lp);
    if (!p || p->value.is_infinite()) return std::nullopt;
    return rank_one_from_dual(f, blocks, y, p->s, options.lp).t.t;
  };
  auto record = [&](std::vector<Mat> ts, const Vec& y) {
    if (is_surjective(perturb(f, blocks, ts), options.lp).surjective) return;
    auto pa = PerturbationAssignment::make(std::move(ts), blocks);
    out.bounds.push_back(pa.size);
    if (out.alpha_upper.is_infinite() || pa.size < out.alpha_upper.value()) {
      out.alpha_upper = ExtendedNonneg(pa.size);
      out.best = std::move(pa);
      out.best_witness = y;
    }
  };
  std::normal_distribution<double> gauss;
  for (const Vec& y : witnesses) {
    auto ts = polyhedral ? solve_lp(y) : solve_reduced(y);
    if (!ts) continue;
    // A full-rank variant: add D_i with D_i^T P_i^T y = 0, which leaves y a
    // witness and can only raise the norm of the minimal assignment.
    std::vector<Mat> wide = *ts;
    double size = 0.0;
    for (size_t i = 0; i < blocks.size(); ++i) {
      size = std::max(size, operator_norm(wide[i], blocks[i].u_norm, blocks[i].v_norm));
    }
    for (size_t i = 0; i < blocks.size(); ++i) {
      const Vec phi = blocks[i].p.transpose() * y;
      const double pp = phi.squaredNorm();
      Mat d(blocks[i].v_dim(), blocks[i].u_dim());
      for (Eigen::Index e = 0; e < d.size(); ++e) d.data()[e] = gauss(rng);
      if (pp > kZeroTol) d -= phi * (phi.transpose() * d) / pp;
      const double dn = operator_norm(d, blocks[i].u_norm, blocks[i].v_norm);
      if (dn > kZeroTol && size > 0.0) wide[i] += (0.5 * size / dn) * d;
    }
    record(std::move(*ts), y);
    record(std::move(wide), y);
  }
  return out;
}

ReciprocalSup reciprocal_sup(const ConicProcess& f, const StructureBlock& block,
                             const SolverOptions& options) {
  f.validate();
  validate_blocks(f, {block});
  const int n = f.x_dim();
  ReciprocalSup out;
  out.value = ExtendedNonneg(0.0);
  out.sampled_lower = ExtendedNonneg(0.0);

  // max <e, Q x>  s.t.  A x = P v, x in K, ||v||_V <= 1.
  auto solve_direction = [&](const Vec& e, Vec* x, Vec* v) -> double {
    detail::LpBuilder b;
    const int x0 = b.add_vars(n);
    const int v0 = b.add_vars(block.v_dim());
    const int one = b.add_var(1.0, 1.0);
    for (int row = 0; row < f.y_dim(); ++row) {
      detail::Expr ex;
      for (int j = 0; j < n; ++j) {
        if (f.a(row, j) != 0.0) ex.push_back({x0 + j, f.a(row, j)});
      }
      for (int j = 0; j < block.v_dim(); ++j) {
        if (block.p(row, j) != 0.0) ex.push_back({v0 + j, -block.p(row, j)});
      }
      b.add_eq(ex, 0.0);
    }
    for (const Vec& h : f.k.halfspaces()) {
      detail::Expr ex;
      for (int j = 0; j < n; ++j) {
        if (h[j] != 0.0) ex.push_back({x0 + j, h[j]});
      }
      b.add_ge(ex, 0.0);
    }
    b.add_norm_le(v0, block.v_dim(), block.v_norm, {{one, 1.0}});
    const Vec c = block.q.transpose() * e;
    detail::Expr obj;
    for (int j = 0; j < n; ++j) obj.push_back({x0 + j, -c[j]});
    b.minimize(obj);
    const LpOutcome sol = b.solve(options.lp);
    if (sol.status == LpStatus::Unbounded) return kInf;
    if (sol.status != LpStatus::Optimal) return 0.0;
    *x = sol.x.segment(x0, n);
    *v = sol.x.segment(v0, block.v_dim());
    return norm(block.u_norm, block.q * *x);
  };

  auto record = [&](double value, const Vec& x, const Vec& v) {
    const ExtendedNonneg ev = std::isinf(value) ? ExtendedNonneg::infinity() : ExtendedNonneg(value);
    if (ev > out.value) {
      out.value = ev;
      out.x = x;
      out.v = v;
    }
  };

  const int du = block.u_dim();
  if (du == 0) return out;
  std::mt19937_64 rng(options.seed ^ 0x94D049BB133111EBULL);
  const int samples = std::max(8, options.budget / 500);
  const NormKind dual_u = dual(block.u_norm);
  for (int i = 0; i < samples; ++i) {
    Vec e = detail::random_unit(du, rng);
    e /= norm(dual_u, e);
    Vec x, v;
    record(solve_direction(e, &x, &v), x, v);
  }
  out.sampled_lower = out.value;

  if (is_polyhedral(block.u_norm)) {
    for (const Vec& e : ball_extreme_points(dual_u, du)) {
      Vec x, v;
      record(solve_direction(e, &x, &v), x, v);
    }
  } else if (!out.value.is_infinite()) {
    const Vec start = out.x.size() ? Vec(block.q * out.x) : detail::random_unit(du, rng);
    auto neg = [&](const Vec& e) {
      Vec x, v;
      const double val = solve_direction(e, &x, &v);
      return -val;
    };
    const Vec e = detail::polish_on_sphere(neg, start.norm() > 0 ? start : detail::random_unit(du, rng));
    Vec x, v;
    record(solve_direction(e, &x, &v), x, v);
  }
  return out;
}

}  // namespace conicdist

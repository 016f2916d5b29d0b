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

using detail::Expr;
using detail::LpBuilder;

Expr dot_expr(int first, const Vec& c, double scale = 1.0) {
  Expr e;
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    if (c[j] != 0.0) e.push_back({first + static_cast<int>(j), scale * c[j]});
  }
  return e;
}

void check_y_list(const ConicProcess& f, const std::vector<QBlock>& blocks,
                  const std::vector<Vec>& y_list) {
  if (y_list.size() != blocks.size()) throw ConfigError("y_list must have one entry per block");
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (y_list[i].size() != f.y_dim()) throw ConfigError("y_list entries must lie in Y");
    if (blocks[i].q.cols() != f.x_dim()) throw ConfigError("Q blocks must act on X");
  }
}

struct PhiPoint {
  Vec y;
  std::vector<Vec> s;
};

// Membership rows: <r, sum_i Q_i^T s_i + A^T y*> <= 0 for every ray r of K.
void add_membership(LpBuilder& b, const ConicProcess& f, const std::vector<QBlock>& blocks, int y0,
                    const std::vector<int>& s0) {
  std::vector<Mat> qs;
  for (const auto& blk : blocks) qs.push_back(blk.q);
  const detail::RayImages ri = detail::ray_images(f, qs);
  for (size_t r = 0; r < ri.a_r.size(); ++r) {
    Expr e = dot_expr(y0, ri.a_r[r]);
    for (size_t i = 0; i < blocks.size(); ++i) {
      const Expr si = dot_expr(s0[i], ri.q_r[r][i]);
      e.insert(e.end(), si.begin(), si.end());
    }
    b.add_le(e, 0.0);
  }
}

PhiPoint extract(const LpOutcome& out, const ConicProcess& f, const std::vector<QBlock>& blocks, int y0,
                 const std::vector<int>& s0) {
  PhiPoint p;
  p.y = out.x.segment(y0, f.y_dim());
  for (size_t i = 0; i < blocks.size(); ++i) p.s.push_back(out.x.segment(s0[i], blocks[i].q.rows()));
  return p;
}

// Feasibility of ||s_i|| <= psi <y*, y_i> under sum_i <y*, y_i> = 1.
std::optional<PhiPoint> phi_feasible(const ConicProcess& f, const std::vector<QBlock>& blocks,
                                     const std::vector<Vec>& y_list, double psi, const LpOptions& lp) {
  LpBuilder b;
  const int y0 = b.add_vars(f.y_dim());
  std::vector<int> s0;
  for (const auto& blk : blocks) s0.push_back(b.add_vars(static_cast<int>(blk.q.rows())));
  Expr total;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const Expr c = dot_expr(y0, y_list[i]);
    b.add_ge(c, 0.0);
    b.add_norm_le(s0[i], static_cast<int>(blocks[i].q.rows()), dual(blocks[i].u_norm),
                  dot_expr(y0, y_list[i], psi));
    total.insert(total.end(), c.begin(), c.end());
  }
  b.add_eq(total, 1.0);
  add_membership(b, f, blocks, y0, s0);
  const LpOutcome out = b.solve(lp);
  if (out.status != LpStatus::Optimal) return std::nullopt;
  return extract(out, f, blocks, y0, s0);
}

// Single block: <y*, y_1> = 1, minimize ||s||.
std::optional<PhiPoint> phi_single(const ConicProcess& f, const std::vector<QBlock>& blocks,
                                   const std::vector<Vec>& y_list, const LpOptions& lp) {
  LpBuilder b;
  const int t = b.add_var(0.0);
  const int y0 = b.add_vars(f.y_dim());
  const int du = static_cast<int>(blocks[0].q.rows());
  const std::vector<int> s0{b.add_vars(du)};
  b.add_eq(dot_expr(y0, y_list[0]), 1.0);
  b.add_norm_le(s0[0], du, dual(blocks[0].u_norm), {{t, 1.0}});
  add_membership(b, f, blocks, y0, s0);
  b.minimize({{t, 1.0}});
  const LpOutcome out = b.solve(lp);
  if (out.status != LpStatus::Optimal) return std::nullopt;
  return extract(out, f, blocks, y0, s0);
}

ExtendedNonneg phi_value(const std::vector<QBlock>& blocks, const std::vector<Vec>& y_list,
                         const PhiPoint& p) {
  double worst = 0.0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const double c = std::max(0.0, p.y.dot(y_list[i]));
    const ExtendedNonneg r = ExtendedNonneg::ratio(norm(dual(blocks[i].u_norm), p.s[i]), c);
    if (r.is_infinite()) return r;
    worst = std::max(worst, r.value());
  }
  return ExtendedNonneg(worst);
}

PhiWitness to_witness(const std::vector<Vec>& y_list, const PhiPoint& p) {
  PhiWitness w;
  w.y_star = p.y;
  for (size_t i = 0; i < p.s.size(); ++i) {
    const double c = p.y.dot(y_list[i]);
    w.u_star.push_back(c > kZeroTol ? Vec(p.s[i] / c) : Vec::Zero(p.s[i].size()));
  }
  return w;
}

}  // namespace

std::vector<QBlock> q_blocks(const std::vector<StructureBlock>& blocks) {
  std::vector<QBlock> out;
  for (const auto& b : blocks) out.push_back({b.q, b.u_norm});
  return out;
}

double phi_witness_residual(const ConicProcess& f, const std::vector<QBlock>& blocks,
                            const std::vector<Vec>& y_list, const PhiWitness& w) {
  Vec g = f.a.transpose() * w.y_star;
  double res = 0.0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const double c = w.y_star.dot(y_list[i]);
    res = std::max(res, -c);
    g += c * (blocks[i].q.transpose() * w.u_star[i]);
  }
  const Vec scaled = f.k.ray_matrix().transpose() * g;
  if (scaled.size()) res = std::max(res, scaled.maxCoeff());
  return std::max(0.0, res);
}

PhiEvaluation phi(const ConicProcess& f, const std::vector<QBlock>& blocks,
                  const std::vector<Vec>& y_list, const SolverOptions& options) {
  f.validate();
  check_y_list(f, blocks, y_list);
  PhiEvaluation out;
  out.y_list = y_list;
  if (blocks.empty() || f.y_dim() == 0) return out;

  std::optional<PhiPoint> best;
  if (blocks.size() == 1) {
    best = phi_single(f, blocks, y_list, options.lp);
  } else {
    double hi = 1.0;
    const double cap = std::ldexp(1.0, 60);
    while (!(best = phi_feasible(f, blocks, y_list, hi, options.lp))) {
      hi *= 2.0;
      if (hi > cap) break;
    }
    if (best) {
      double lo = 0.0;
      for (int it = 0; it < options.bisection_max_iterations; ++it) {
        if (hi - lo <= options.bisection_abs + options.bisection_rel * hi) break;
        const double mid = 0.5 * (lo + hi);
        if (auto p = phi_feasible(f, blocks, y_list, mid, options.lp)) {
          hi = mid;
          best = std::move(p);
        } else {
          lo = mid;
        }
      }
    }
  }
  if (!best) return out;
  out.value = phi_value(blocks, y_list, *best);
  out.witness = to_witness(y_list, *best);
  out.residual = phi_witness_residual(f, blocks, y_list, *out.witness);
  return out;
}

Quantity4 quantity4(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                    const SolverOptions& options, const std::vector<std::vector<Vec>>& seeds) {
  f.validate();
  validate_blocks(f, blocks);
  require_mode_supported(blocks, options.mode);
  Quantity4 out;
  if (!is_surjective(f, options.lp).surjective) {
    out.alpha = ExtendedNonneg(0.0);
    return out;
  }
  const std::vector<QBlock> qb = q_blocks(blocks);

  auto evaluate = [&](const std::vector<Vec>& v) {
    std::vector<Vec> ys;
    for (size_t i = 0; i < blocks.size(); ++i) ys.push_back(blocks[i].p * v[i]);
    return phi(f, qb, ys, options);
  };
  auto consider = [&](std::vector<Vec> v) {
    PhiEvaluation e = evaluate(v);
    if (out.v.empty() || e.value < out.alpha) {
      out.alpha = e.value;
      out.v = std::move(v);
      out.at_best = std::move(e);
    }
  };
  auto to_sphere = [&](size_t i, Vec v) {
    const double n = norm(blocks[i].v_norm, v);
    return n > kZeroTol ? Vec(v / n) : v;
  };

  for (const auto& s : seeds) {
    if (s.size() == blocks.size()) consider(s);
  }
  std::mt19937_64 rng(options.seed ^ 0xBF58476D1CE4E5B9ULL);
  const int samples = std::max(4, options.budget / 200);
  for (int k = 0; k < samples; ++k) {
    std::vector<Vec> v;
    for (size_t i = 0; i < blocks.size(); ++i) {
      v.push_back(to_sphere(i, detail::random_unit(blocks[i].v_dim(), rng)));
    }
    consider(std::move(v));
  }
  if (out.v.empty()) return out;

  // Pattern search over the unit spheres.
  for (double h = 0.25; h > 1e-6; h *= 0.5) {
    bool improved = true;
    while (improved && !out.alpha.is_infinite()) {
      improved = false;
      for (size_t i = 0; i < blocks.size(); ++i) {
        for (int j = 0; j < blocks[i].v_dim(); ++j) {
          for (double sign : {1.0, -1.0}) {
            std::vector<Vec> v = out.v;
            v[i][j] += sign * h;
            v[i] = to_sphere(i, v[i]);
            const ExtendedNonneg before = out.alpha;
            consider(std::move(v));
            if (out.alpha.value() < before.value() * (1.0 - 1e-12)) improved = true;
          }
        }
      }
    }
  }
  return out;
}

std::string_view to_string(AlternativeSystem s) {
  return s == AlternativeSystem::SystemI ? "SystemI" : "SystemII";
}

AlternativeResult alternative_check(const ConicProcess& f, const std::vector<QBlock>& blocks,
                                    const std::vector<Vec>& y_list, const SolverOptions& options) {
  f.validate();
  check_y_list(f, blocks, y_list);
  const int n = f.x_dim();
  const size_t k = blocks.size();

  // System (i): maximize delta with ||Q_i x|| <= w_i - delta and sum w = 1.
  LpBuilder b;
  const int x0 = b.add_vars(n);
  const int w0 = b.add_vars(static_cast<int>(k));
  const int delta = b.add_var(std::nullopt, 1.0);
  for (int row = 0; row < f.y_dim(); ++row) {
    Expr e = dot_expr(x0, f.a.row(row).transpose());
    for (size_t i = 0; i < k; ++i) {
      if (y_list[i][row] != 0.0) e.push_back({w0 + static_cast<int>(i), -y_list[i][row]});
    }
    b.add_eq(e, 0.0);
  }
  for (const Vec& h : f.k.halfspaces()) b.add_ge(dot_expr(x0, h), 0.0);
  Expr sum_w;
  for (size_t i = 0; i < k; ++i) {
    const int du = static_cast<int>(blocks[i].q.rows());
    const int z0 = b.add_vars(du);
    for (int r = 0; r < du; ++r) {
      Expr e = dot_expr(x0, blocks[i].q.row(r).transpose());
      e.push_back({z0 + r, -1.0});
      b.add_eq(e, 0.0);
    }
    b.add_norm_le(z0, du, blocks[i].u_norm, {{w0 + static_cast<int>(i), 1.0}, {delta, -1.0}});
    sum_w.push_back({w0 + static_cast<int>(i), 1.0});
  }
  b.add_eq(sum_w, 1.0);
  b.minimize({{delta, -1.0}});
  const LpOutcome first = b.solve(options.lp);

  AlternativeResult out;
  bool system_i = false;
  if (first.status == LpStatus::Optimal) {
    out.x = first.x.segment(x0, n);
    out.w.resize(k);
    Vec combo = Vec::Zero(f.y_dim());
    double margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < k; ++i) {
      out.w[i] = first.x[w0 + static_cast<int>(i)];
      combo += out.w[i] * y_list[i];
      margin = std::min(margin, out.w[i] - norm(blocks[i].u_norm, blocks[i].q * out.x));
    }
    out.margin = k ? margin : 0.0;
    double res = (f.a * out.x - combo).lpNorm<Eigen::Infinity>();
    for (const Vec& h : f.k.halfspaces()) res = std::max(res, -h.dot(out.x));
    out.residual = res;
    system_i = out.margin > 1e-9;
  }

  const auto second = phi_feasible(f, blocks, y_list, 1.0, options.lp);
  std::optional<PhiWitness> w2;
  double res2 = 0.0;
  if (second) {
    w2 = to_witness(y_list, *second);
    res2 = phi_witness_residual(f, blocks, y_list, *w2);
    for (size_t i = 0; i < k; ++i) {
      res2 = std::max(res2, norm(dual(blocks[i].u_norm), w2->u_star[i]) - 1.0);
    }
  }
  if (system_i == second.has_value()) {
    throw InconsistencyError(std::string("alternative_check: ") +
                             (system_i ? "both systems" : "neither system") +
                             " solvable; system (i) margin " + std::to_string(out.margin) +
                             ", system (ii) residual " + std::to_string(res2));
  }
  if (system_i) {
    out.which = AlternativeSystem::SystemI;
    return out;
  }
  AlternativeResult ii;
  ii.which = AlternativeSystem::SystemII;
  ii.y_star = w2->y_star;
  ii.u_star = w2->u_star;
  ii.residual = res2;
  return ii;
}

}  // namespace conicdist

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

#include "dual_problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conicdist/error.hpp"
#include "lp_builder.hpp"
#include "nnls.hpp"

namespace conicdist::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Expr dot_expr(int first, const Vec& coeffs, double scale = 1.0) {
  Expr e;
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] != 0.0) e.push_back({first + static_cast<int>(j), scale * coeffs[j]});
  }
  return e;
}

Vec segment(const Vec& x, int first, int len) { return x.segment(first, len); }

}  // namespace

RayImages ray_images(const ConicProcess& f, const std::vector<Mat>& qs) {
  RayImages out;
  for (const Vec& r : f.k.rays()) {
    out.a_r.push_back(f.a * r);
    std::vector<Vec> per_block;
    for (const Mat& q : qs) per_block.push_back(q * r);
    out.q_r.push_back(std::move(per_block));
  }
  return out;
}

ExtendedNonneg dual_value(const std::vector<StructureBlock>& blocks, const Vec& y,
                          const std::vector<Vec>& s) {
  ExtendedNonneg worst(0.0);
  for (size_t i = 0; i < blocks.size(); ++i) {
    const double z = norm(dual(blocks[i].u_norm), s[i]);
    const double p = norm(dual(blocks[i].v_norm), blocks[i].p.transpose() * y);
    worst = std::max(worst, ExtendedNonneg::ratio(z, p));
  }
  return worst;
}

std::vector<std::vector<Vec>> vertex_sets(const std::vector<StructureBlock>& blocks) {
  std::vector<std::vector<Vec>> sets;
  for (const auto& b : blocks) {
    if (b.v_dim() == 0) sets.push_back({Vec()});
    else sets.push_back(ball_extreme_points(b.v_norm, b.v_dim()));
  }
  return sets;
}

std::vector<Cell> attaining_cells(const std::vector<StructureBlock>& blocks, const Vec& y,
                                  std::size_t cap) {
  std::vector<std::vector<Vec>> choices;
  for (const auto& b : blocks) {
    const Vec phi = b.p.transpose() * y;
    std::vector<Vec> best;
    if (b.v_dim() == 0) {
      best.push_back(Vec());
    } else {
      const auto verts = ball_extreme_points(b.v_norm, b.v_dim());
      double top = -kInf;
      for (const Vec& e : verts) top = std::max(top, e.dot(phi));
      for (const Vec& e : verts) {
        if (e.dot(phi) >= top - 1e-9 * (1.0 + std::abs(top))) best.push_back(e);
      }
    }
    choices.push_back(std::move(best));
  }
  std::vector<Cell> cells{Cell{}};
  for (const auto& options : choices) {
    std::vector<Cell> next;
    for (const Cell& c : cells) {
      for (const Vec& e : options) {
        if (next.size() >= cap) break;
        Cell d = c;
        d.push_back(e);
        next.push_back(std::move(d));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

std::optional<DualPoint> cell_feasible(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                       const Cell& cell, double t, const LpOptions& lp) {
  const int m = f.y_dim();
  LpBuilder b;
  const int y0 = b.add_vars(m);
  std::vector<int> s0;
  for (const auto& blk : blocks) s0.push_back(b.add_vars(blk.u_dim()));

  Expr total;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const Vec d = blocks[i].v_dim() ? Vec(blocks[i].p * cell[i]) : Vec::Zero(m);
    const Expr c = dot_expr(y0, d);
    b.add_ge(c, 0.0);
    b.add_norm_le(s0[i], blocks[i].u_dim(), dual(blocks[i].u_norm), dot_expr(y0, d, t));
    total.insert(total.end(), c.begin(), c.end());
  }
  b.add_eq(total, 1.0);

  std::vector<Mat> qs;
  for (const auto& blk : blocks) qs.push_back(blk.q);
  const RayImages ri = ray_images(f, qs);
  for (size_t r = 0; r < ri.a_r.size(); ++r) {
    Expr e = dot_expr(y0, ri.a_r[r], -1.0);
    for (size_t i = 0; i < blocks.size(); ++i) {
      const Expr si = dot_expr(s0[i], ri.q_r[r][i]);
      e.insert(e.end(), si.begin(), si.end());
    }
    b.add_le(e, 0.0);
  }

  const LpOutcome out = b.solve(lp);
  if (out.status != LpStatus::Optimal) return std::nullopt;
  DualPoint p;
  p.y = segment(out.x, y0, m);
  for (size_t i = 0; i < blocks.size(); ++i) p.s.push_back(segment(out.x, s0[i], blocks[i].u_dim()));
  p.value = dual_value(blocks, p.y, p.s);
  return p;
}

std::optional<DualPoint> cell_minimum(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                      const Cell& cell, double below, const SolverOptions& options) {
  double hi;
  std::optional<DualPoint> best;
  if (std::isfinite(below)) {
    best = cell_feasible(f, blocks, cell, below, options.lp);
    if (!best) return std::nullopt;
    hi = below;
  } else {
    hi = 1.0;
    const double cap = std::ldexp(1.0, 60);
    while (!(best = cell_feasible(f, blocks, cell, hi, options.lp))) {
      hi *= 2.0;
      if (hi > cap) return std::nullopt;
    }
  }
  double lo = 0.0;
  for (int it = 0; it < options.bisection_max_iterations; ++it) {
    if (hi - lo <= options.bisection_abs + options.bisection_rel * hi) break;
    const double mid = 0.5 * (lo + hi);
    if (auto p = cell_feasible(f, blocks, cell, mid, options.lp)) {
      hi = mid;
      best = std::move(p);
    } else {
      lo = mid;
    }
  }
  return best;
}

std::optional<DualPoint> inner_fixed_y(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                       const Vec& y, const LpOptions& lp) {
  std::vector<Mat> qs;
  for (const auto& blk : blocks) qs.push_back(blk.q);
  const RayImages ri = ray_images(f, qs);

  if (blocks.size() == 1 && blocks[0].u_norm == NormKind::L2) {
    // Least-distance program: min ||s||_2 s.t. <Q r, s> <= <A r, y>.
    const int du = blocks[0].u_dim();
    Mat g(static_cast<Eigen::Index>(ri.a_r.size()), du);
    Vec h(static_cast<Eigen::Index>(ri.a_r.size()));
    for (size_t r = 0; r < ri.a_r.size(); ++r) {
      g.row(static_cast<Eigen::Index>(r)) = -ri.q_r[r][0].transpose();
      h[static_cast<Eigen::Index>(r)] = -ri.a_r[r].dot(y);
    }
    auto s = least_distance(g, h);
    if (!s) return std::nullopt;
    DualPoint p{y, {*s}, ExtendedNonneg::infinity()};
    p.value = dual_value(blocks, p.y, p.s);
    return p;
  }

  LpBuilder b;
  const int t = b.add_var(0.0);
  std::vector<int> s0;
  for (const auto& blk : blocks) s0.push_back(b.add_vars(blk.u_dim()));
  for (size_t i = 0; i < blocks.size(); ++i) {
    const double p = norm(dual(blocks[i].v_norm), blocks[i].p.transpose() * y);
    b.add_norm_le(s0[i], blocks[i].u_dim(), dual(blocks[i].u_norm), {{t, p}});
  }
  for (size_t r = 0; r < ri.a_r.size(); ++r) {
    Expr e;
    for (size_t i = 0; i < blocks.size(); ++i) {
      const Expr si = dot_expr(s0[i], ri.q_r[r][i]);
      e.insert(e.end(), si.begin(), si.end());
    }
    b.add_le(e, ri.a_r[r].dot(y));
  }
  b.minimize({{t, 1.0}});
  const LpOutcome out = b.solve(lp);
  if (out.status != LpStatus::Optimal) return std::nullopt;
  DualPoint p;
  p.y = y;
  for (size_t i = 0; i < blocks.size(); ++i) p.s.push_back(segment(out.x, s0[i], blocks[i].u_dim()));
  p.value = dual_value(blocks, p.y, p.s);
  return p;
}

DualPoint cell_walk(const ConicProcess& f, const std::vector<StructureBlock>& blocks, DualPoint start,
                    const SolverOptions& options) {
  DualPoint cur = std::move(start);
  for (int step = 0; step < 50; ++step) {
    std::optional<DualPoint> next;
    const double below =
        cur.value.is_infinite() ? kInf : cur.value.value() * (1.0 - 1e-12);
    for (const Cell& cell : attaining_cells(blocks, cur.y)) {
      auto p = cell_minimum(f, blocks, cell, below, options);
      if (p && (!next || p->value < next->value)) next = std::move(p);
    }
    if (!next || !(next->value < cur.value)) break;
    cur = std::move(*next);
  }
  return cur;
}

Vec random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(dim);
  do {
    for (int j = 0; j < dim; ++j) v[j] = normal(rng);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

namespace {

std::vector<double> to_angles(const Vec& y) {
  const Eigen::Index m = y.size();
  std::vector<double> th(static_cast<size_t>(m - 1));
  for (Eigen::Index k = 0; k + 1 < m; ++k) {
    if (k + 2 == m) {
      th[static_cast<size_t>(k)] = std::atan2(y[k + 1], y[k]);
    } else {
      th[static_cast<size_t>(k)] = std::atan2(y.tail(m - k - 1).norm(), y[k]);
    }
  }
  return th;
}

Vec from_angles(const std::vector<double>& th, Eigen::Index m) {
  Vec y(m);
  double running = 1.0;
  for (Eigen::Index k = 0; k + 1 < m; ++k) {
    y[k] = running * std::cos(th[static_cast<size_t>(k)]);
    running *= std::sin(th[static_cast<size_t>(k)]);
  }
  y[m - 1] = running;
  return y;
}

}  // namespace

Vec polish_on_sphere(const std::function<double(const Vec&)>& fn, Vec y, int sweeps) {
  const Eigen::Index m = y.size();
  y /= y.norm();
  double best = fn(y);
  if (m < 2) {
    if (fn(-y) < best) y = -y;
    return y;
  }
  std::vector<double> th = to_angles(y);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  std::vector<double> h(th.size(), 0.25);
  int quiet = 0;
  for (int sweep = 0; sweep < sweeps && quiet < 2; ++sweep) {
    const double before = best;
    for (size_t k = 0; k < th.size(); ++k) {
      auto at = [&](double angle) {
        std::vector<double> t2 = th;
        t2[k] = angle;
        return fn(from_angles(t2, m));
      };
      double a = th[k] - h[k];
      double b = th[k] + h[k];
      double c = b - ratio * (b - a);
      double d = a + ratio * (b - a);
      double fc = at(c);
      double fd = at(d);
      for (int it = 0; it < 40; ++it) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - ratio * (b - a);
          fc = at(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + ratio * (b - a);
          fd = at(d);
        }
      }
      const double cand = fc < fd ? c : d;
      const double fcand = std::min(fc, fd);
      if (fcand < best) {
        const double moved = std::fabs(cand - th[k]);
        best = fcand;
        th[k] = cand;
        // Landing near the bracket edge means the minimum may lie beyond it.
        h[k] = moved > 0.9 * h[k] ? std::min(2.0 * h[k], 3.2) : std::max(0.5 * h[k], 2.0 * moved);
      } else {
        h[k] = std::max(0.5 * h[k], 1e-12);
      }
    }
    quiet = before - best <= 1e-15 * (1.0 + std::fabs(best)) ? quiet + 1 : 0;
  }
  return from_angles(th, m);
}

}  // namespace conicdist::detail

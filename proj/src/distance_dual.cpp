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
#include <cctype>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "conicdist/distance.hpp"
#include "conicdist/error.hpp"
#include "dual_problems.hpp"

namespace conicdist {

std::string_view to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "sampled"; }

Mode parse_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "exact") return Mode::Exact;
  if (lower == "sampled") return Mode::Sampled;
  throw ConfigError("unknown mode '" + std::string(text) + "' (expected exact or sampled)");
}

Mode default_mode(const std::vector<StructureBlock>& blocks) {
  for (const auto& b : blocks) {
    if (!is_polyhedral(b.u_norm) || !is_polyhedral(b.v_norm)) return Mode::Sampled;
  }
  return Mode::Exact;
}

void require_mode_supported(const std::vector<StructureBlock>& blocks, Mode mode) {
  if (mode == Mode::Exact && default_mode(blocks) != Mode::Exact) {
    throw ModeError("exact mode requires polyhedral norms");
  }
}

ExtendedNonneg dual_certificate_value(const std::vector<StructureBlock>& blocks, const Vec& y_star,
                                      const std::vector<double>& z) {
  if (z.size() != blocks.size()) throw ConfigError("dual certificate: one z_i per block required");
  ExtendedNonneg worst(0.0);
  for (size_t i = 0; i < blocks.size(); ++i) {
    const double p = norm(dual(blocks[i].v_norm), blocks[i].p.transpose() * y_star);
    worst = std::max(worst, ExtendedNonneg::ratio(z[i], p));
  }
  return worst;
}

double dual_certificate_residual(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                                 const DualCertificate& cert) {
  Vec g = -(f.a.transpose() * cert.y_star);
  double worst = 0.0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    g += cert.z[i] * (blocks[i].q.transpose() * cert.u_star[i]);
    worst = std::max(worst, norm(dual(blocks[i].u_norm), cert.u_star[i]) - 1.0);
    worst = std::max(worst, -cert.z[i]);
  }
  for (const Vec& r : f.k.rays()) worst = std::max(worst, r.dot(g));
  return std::max(worst, 0.0);
}

namespace {

DualCertificate to_certificate(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                               const detail::DualPoint& p) {
  DualCertificate c;
  c.y_star = p.y;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const double z = norm(dual(blocks[i].u_norm), p.s[i]);
    c.z.push_back(z);
    c.u_star.push_back(z > 0.0 ? Vec(p.s[i] / z) : Vec::Zero(p.s[i].size()));
  }
  c.value = dual_certificate_value(blocks, c.y_star, c.z);
  c.residual = dual_certificate_residual(f, blocks, c);
  return c;
}

std::optional<detail::DualPoint> exact_search(const ConicProcess& f,
                                              const std::vector<StructureBlock>& blocks,
                                              const SolverOptions& options) {
  const auto sets = detail::vertex_sets(blocks);
  double count = 1.0;
  for (const auto& s : sets) count *= static_cast<double>(s.size());
  if (count > 1e6) throw ConfigError("exact mode: too many V-ball vertex combinations");

  std::optional<detail::DualPoint> best;
  std::vector<size_t> idx(sets.size(), 0);
  while (true) {
    detail::Cell cell;
    for (size_t i = 0; i < sets.size(); ++i) cell.push_back(sets[i][idx[i]]);
    const double below = best ? best->value.value() * (1.0 - 1e-10)
                              : std::numeric_limits<double>::infinity();
    if (auto p = detail::cell_minimum(f, blocks, cell, below, options)) {
      if (!best || p->value < best->value) best = std::move(p);
    }
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == sets[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return best;
}

std::optional<detail::DualPoint> sampled_search(const ConicProcess& f,
                                                const std::vector<StructureBlock>& blocks,
                                                const SolverOptions& options) {
  const int m = f.y_dim();
  std::mt19937_64 rng(options.seed);
  auto value_at = [&](const Vec& y) {
    auto p = detail::inner_fixed_y(f, blocks, y, options.lp);
    return p ? p->value.value() : std::numeric_limits<double>::infinity();
  };
  const int n = std::max(1, options.budget);
  std::vector<std::pair<double, Vec>> pool;
  for (int i = 0; i < n; ++i) {
    Vec y = detail::random_unit(m, rng);
    pool.emplace_back(value_at(y), std::move(y));
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::optional<detail::DualPoint> best;
  const size_t starts = std::min<size_t>(3, pool.size());
  for (size_t i = 0; i < starts; ++i) {
    if (!std::isfinite(pool[i].first)) break;
    const Vec y = detail::polish_on_sphere(value_at, pool[i].second);
    auto p = detail::inner_fixed_y(f, blocks, y, options.lp);
    if (p && (!best || p->value < best->value)) best = std::move(p);
  }
  return best;
}

}  // namespace

DualDistance distance_dual(const ConicProcess& f, const std::vector<StructureBlock>& blocks,
                           const SolverOptions& options) {
  f.validate();
  validate_blocks(f, blocks);
  require_mode_supported(blocks, options.mode);
  DualDistance out;
  const auto surj = is_surjective(f, options.lp);
  if (!surj.surjective) {
    out.alpha = ExtendedNonneg(0.0);
    out.nonsurjectivity_witness = surj.witness;
    return out;
  }
  if (f.y_dim() == 0) {
    out.alpha = ExtendedNonneg::infinity();
    return out;
  }
  const auto best = options.mode == Mode::Exact ? exact_search(f, blocks, options)
                                                : sampled_search(f, blocks, options);
  if (!best || best->value.is_infinite()) {
    out.alpha = ExtendedNonneg::infinity();
    return out;
  }
  out.certificate = to_certificate(f, blocks, *best);
  out.alpha = out.certificate->value;
  return out;
}

}  // namespace conicdist

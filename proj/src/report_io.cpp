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

#include <cmath>
#include <cstdio>
#include <sstream>

#include "conicdist/error.hpp"
#include "conicdist/io.hpp"
#include "json_emit.hpp"

namespace conicdist {

namespace {

using detail::Json;
using detail::to_json;

constexpr double kResidualMatch = 1e-12;

Json vec_list(const std::vector<Vec>& vs) {
  Json a = Json::array();
  for (const Vec& v : vs) a.push_back(to_json(v));
  return a;
}

Json mat_list(const std::vector<Mat>& ms) {
  Json a = Json::array();
  for (const Mat& m : ms) a.push_back(to_json(m));
  return a;
}

Vec read_vec(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SchemaError(path + "[" + std::to_string(i) + "]: expected a number");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

std::vector<Vec> read_vec_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  std::vector<Vec> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(read_vec(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Mat read_mat(const Json& j, const std::string& path, int cols) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array of rows");
  Mat m(static_cast<Eigen::Index>(j.size()), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    const Vec row = read_vec(j[r], path + "[" + std::to_string(r) + "]");
    if (row.size() != cols) throw SchemaError(path + "[" + std::to_string(r) + "]: expected " + std::to_string(cols) + " entries");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

ExtendedNonneg read_extended(const Json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "+inf") return ExtendedNonneg::infinity();
  if (!j.is_number() || j.get<double>() < 0) throw SchemaError(path + ": expected a nonnegative number or \"+inf\"");
  return ExtendedNonneg(j.get<double>());
}

const Json& at(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(path + "." + key + ": missing");
  return j.at(key);
}

double rank_one_residual(const Instance& in, const std::vector<Mat>& t, const Vec& y) {
  return nonsurjectivity_residual(perturb(in.process, in.blocks, t), y);
}

void check_residual(StoredReport& out, const std::string& path, const Json& stored, double recomputed) {
  if (!stored.is_number()) throw SchemaError(path + ": expected a number");
  const double s = stored.get<double>();
  out.residuals[path] = recomputed;
  if (!(std::fabs(s - recomputed) <= kResidualMatch)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: stored %.17g, recomputed %.17g", path.c_str(), s, recomputed);
    throw InconsistencyError(buf);
  }
}

std::string fmt(const ExtendedNonneg& v) { return to_string(v); }

}  // namespace

std::string serialize_report(const DistanceReport& r, const Instance& in, bool include_timings) {
  Json root;
  root["mode"] = std::string(to_string(r.options.mode));
  root["seed"] = r.options.seed;
  root["tol"] = r.options.tol;
  root["budget"] = r.options.budget;
  root["surjective"] = r.surjective;
  if (r.nonsurjectivity_witness) {
    root["nonsurjectivity_witness"] = {
        {"y_star", to_json(*r.nonsurjectivity_witness)},
        {"residual", nonsurjectivity_residual(in.process, *r.nonsurjectivity_witness)}};
  }
  root["quantities"] = {{"general", to_json(r.q_general)},
                        {"rank_one", to_json(r.q_rank_one)},
                        {"dual", to_json(r.q_dual)},
                        {"phi", to_json(r.q_phi)}};
  root["sigma_min"] = r.sigma_min;

  Json certs = Json::object();
  if (r.dual.certificate) {
    const auto& c = *r.dual.certificate;
    certs["dual"] = {{"y_star", to_json(c.y_star)},
                     {"u_star", vec_list(c.u_star)},
                     {"z", c.z},
                     {"value", to_json(c.value)},
                     {"residual", dual_certificate_residual(in.process, in.blocks, c)}};
  }
  if (r.rank_one.certificate) {
    const auto& c = *r.rank_one.certificate;
    certs["rank_one"] = {{"y_star", to_json(c.y_star)},
                         {"v", vec_list(c.v)},
                         {"u_star", vec_list(c.u_star)},
                         {"z", c.z},
                         {"T", mat_list(c.t.t)},
                         {"norms", c.t.norms},
                         {"size", c.t.size},
                         {"perturbed_surjective", c.perturbed_surjective},
                         {"residual", rank_one_residual(in, c.t.t, c.y_star)}};
  }
  if (r.general.best) {
    const auto& g = *r.general.best;
    certs["general"] = {{"y_star", to_json(r.general.best_witness)},
                        {"T", mat_list(g.t)},
                        {"norms", g.norms},
                        {"size", g.size},
                        {"bounds_found", r.general.bounds.size()},
                        {"residual", rank_one_residual(in, g.t, r.general.best_witness)}};
  }
  if (!r.phi.v.empty() && r.phi.at_best.witness) {
    const auto& w = *r.phi.at_best.witness;
    certs["phi"] = {{"v", vec_list(r.phi.v)},
                    {"y_list", vec_list(r.phi.at_best.y_list)},
                    {"y_star", to_json(w.y_star)},
                    {"u_star", vec_list(w.u_star)},
                    {"value", to_json(r.phi.at_best.value)},
                    {"residual", phi_witness_residual(in.process, q_blocks(in.blocks), r.phi.at_best.y_list, w)}};
  }
  root["certificates"] = certs;

  root["alternatives"] = Json::array();
  for (const auto& a : r.alternatives) {
    Json j = {{"psi", a.psi},
              {"expected", std::string(to_string(a.expected))},
              {"found", std::string(to_string(a.result.which))},
              {"residual", a.result.residual},
              {"passed", a.passed}};
    if (a.result.which == AlternativeSystem::SystemI) {
      j["x"] = to_json(a.result.x);
      j["w"] = a.result.w;
      j["margin"] = a.result.margin;
    } else {
      j["y_star"] = to_json(a.result.y_star);
      j["u_star"] = vec_list(a.result.u_star);
    }
    root["alternatives"].push_back(j);
  }
  root["checks"] = Json::array();
  for (const auto& c : r.checks) {
    root["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  root["passed"] = r.passed;
  root["notes"] = r.notes;
  if (include_timings) {
    Json t = Json::object();
    for (const auto& [k, v] : r.timings_ms) t[k] = v;
    root["timings_ms"] = t;
  }
  return detail::dump17(root);
}

StoredReport parse_report(const std::string& json_text, const Instance& in) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw SchemaError("$: expected an object");
  StoredReport out;
  const Json& mode = at(root, "mode", "$");
  if (!mode.is_string()) throw SchemaError("mode: expected a string");
  out.mode = mode.get<std::string>();
  const Json& seed = at(root, "seed", "$");
  if (!seed.is_number_integer()) throw SchemaError("seed: expected an integer");
  out.seed = seed.get<std::uint64_t>();
  const Json& tol = at(root, "tol", "$");
  if (!tol.is_number()) throw SchemaError("tol: expected a number");
  out.tol = tol.get<double>();
  const Json& budget = at(root, "budget", "$");
  if (!budget.is_number_integer()) throw SchemaError("budget: expected an integer");
  out.budget = budget.get<int>();
  const Json& passed = at(root, "passed", "$");
  if (!passed.is_boolean()) throw SchemaError("passed: expected a boolean");
  out.passed = passed.get<bool>();

  const Json& q = at(root, "quantities", "$");
  for (const char* name : {"general", "rank_one", "dual", "phi"}) {
    out.quantities[name] = read_extended(at(q, name, "quantities"), std::string("quantities.") + name);
  }

  if (root.contains("nonsurjectivity_witness")) {
    const Json& w = root["nonsurjectivity_witness"];
    const Vec y = read_vec(at(w, "y_star", "nonsurjectivity_witness"), "nonsurjectivity_witness.y_star");
    if (y.size() != in.process.y_dim()) throw SchemaError("nonsurjectivity_witness.y_star: wrong dimension");
    check_residual(out, "nonsurjectivity_witness.residual", at(w, "residual", "nonsurjectivity_witness"),
                   nonsurjectivity_residual(in.process, y));
  }

  const Json& certs = at(root, "certificates", "$");
  const size_t k = in.blocks.size();
  auto block_vecs = [&](const Json& j, const std::string& path, bool u_side) {
    std::vector<Vec> vs = read_vec_list(j, path);
    if (vs.size() != k) throw SchemaError(path + ": expected " + std::to_string(k) + " entries");
    for (size_t i = 0; i < k; ++i) {
      const int want = u_side ? in.blocks[i].u_dim() : in.blocks[i].v_dim();
      if (vs[i].size() != want) throw SchemaError(path + "[" + std::to_string(i) + "]: wrong dimension");
    }
    return vs;
  };
  auto y_vec = [&](const Json& j, const std::string& path) {
    const Vec y = read_vec(j, path);
    if (y.size() != in.process.y_dim()) throw SchemaError(path + ": wrong dimension");
    return y;
  };
  auto t_list = [&](const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != k) throw SchemaError(path + ": expected " + std::to_string(k) + " matrices");
    std::vector<Mat> ts;
    for (size_t i = 0; i < k; ++i) {
      const std::string p = path + "[" + std::to_string(i) + "]";
      Mat t = read_mat(j[i], p, in.blocks[i].u_dim());
      if (t.rows() != in.blocks[i].v_dim()) throw SchemaError(p + ": wrong number of rows");
      ts.push_back(std::move(t));
    }
    return ts;
  };

  if (certs.contains("dual")) {
    const Json& d = certs["dual"];
    DualCertificate c;
    c.y_star = y_vec(at(d, "y_star", "certificates.dual"), "certificates.dual.y_star");
    c.u_star = block_vecs(at(d, "u_star", "certificates.dual"), "certificates.dual.u_star", true);
    const Vec z = read_vec(at(d, "z", "certificates.dual"), "certificates.dual.z");
    if (static_cast<size_t>(z.size()) != k) throw SchemaError("certificates.dual.z: wrong length");
    c.z.assign(z.data(), z.data() + z.size());
    check_residual(out, "certificates.dual.residual", at(d, "residual", "certificates.dual"),
                   dual_certificate_residual(in.process, in.blocks, c));
  }
  if (certs.contains("rank_one")) {
    const Json& d = certs["rank_one"];
    const Vec y = y_vec(at(d, "y_star", "certificates.rank_one"), "certificates.rank_one.y_star");
    const auto t = t_list(at(d, "T", "certificates.rank_one"), "certificates.rank_one.T");
    check_residual(out, "certificates.rank_one.residual", at(d, "residual", "certificates.rank_one"),
                   rank_one_residual(in, t, y));
  }
  if (certs.contains("general")) {
    const Json& d = certs["general"];
    const Vec y = y_vec(at(d, "y_star", "certificates.general"), "certificates.general.y_star");
    const auto t = t_list(at(d, "T", "certificates.general"), "certificates.general.T");
    check_residual(out, "certificates.general.residual", at(d, "residual", "certificates.general"),
                   rank_one_residual(in, t, y));
  }
  if (certs.contains("phi")) {
    const Json& d = certs["phi"];
    const std::vector<Vec> ys = read_vec_list(at(d, "y_list", "certificates.phi"), "certificates.phi.y_list");
    if (ys.size() != k) throw SchemaError("certificates.phi.y_list: wrong length");
    for (const Vec& y : ys) {
      if (y.size() != in.process.y_dim()) throw SchemaError("certificates.phi.y_list: wrong dimension");
    }
    PhiWitness w;
    w.y_star = y_vec(at(d, "y_star", "certificates.phi"), "certificates.phi.y_star");
    w.u_star = block_vecs(at(d, "u_star", "certificates.phi"), "certificates.phi.u_star", true);
    check_residual(out, "certificates.phi.residual", at(d, "residual", "certificates.phi"),
                   phi_witness_residual(in.process, q_blocks(in.blocks), ys, w));
  }
  return out;
}

std::vector<GapRow> compare_reports(const StoredReport& stored, const DistanceReport& fresh, double tol) {
  const std::pair<const char*, ExtendedNonneg> now[] = {
      {"general", fresh.q_general}, {"rank_one", fresh.q_rank_one}, {"dual", fresh.q_dual}, {"phi", fresh.q_phi}};
  std::vector<GapRow> rows;
  for (const auto& [name, value] : now) {
    GapRow row;
    row.name = name;
    row.stored = stored.quantities.at(name);
    row.fresh = value;
    if (row.stored.is_infinite() || row.fresh.is_infinite()) {
      row.gap = row.stored.is_infinite() == row.fresh.is_infinite() ? 0.0 : HUGE_VAL;
    } else {
      row.gap = std::fabs(row.stored.value() - row.fresh.value());
    }
    const double scale = row.fresh.is_infinite() ? 1.0 : std::max(1.0, row.fresh.value());
    row.ok = row.gap <= tol * scale;
    rows.push_back(row);
  }
  return rows;
}

std::string format_gap_table(const std::vector<GapRow>& rows) {
  std::ostringstream os;
  char line[200];
  std::snprintf(line, sizeof line, "%-10s %-24s %-24s %-12s %s\n", "quantity", "stored", "computed", "gap", "status");
  os << line;
  for (const auto& r : rows) {
    char gap[32];
    if (std::isinf(r.gap)) {
      std::snprintf(gap, sizeof gap, "+inf");
    } else {
      std::snprintf(gap, sizeof gap, "%.3e", r.gap);
    }
    std::snprintf(line, sizeof line, "%-10s %-24s %-24s %-12s %s\n", r.name.c_str(), fmt(r.stored).c_str(),
                  fmt(r.fresh).c_str(), gap, r.ok ? "ok" : "MISMATCH");
    os << line;
  }
  return os.str();
}

}  // namespace conicdist

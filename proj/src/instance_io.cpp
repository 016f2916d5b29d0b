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

#include <fstream>
#include <sstream>

#include "conicdist/error.hpp"
#include "conicdist/io.hpp"
#include "json_emit.hpp"

namespace conicdist {

namespace {

using detail::Json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

int dim_field(const Json& obj, const std::string& key) {
  const Json& j = field(obj, key, "");
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(key, "expected a nonnegative integer");
  return static_cast<int>(j.get<long long>());
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Vec vector_of(const Json& j, const std::string& path, int expected) {
  if (!j.is_array()) fail(path, "expected an array");
  if (expected >= 0 && static_cast<int>(j.size()) != expected) {
    fail(path, "expected " + std::to_string(expected) + " entries");
  }
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

// rows/cols < 0 means "taken from the data".
Mat matrix_of(const Json& j, const std::string& path, int rows, int cols) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  if (rows >= 0 && static_cast<int>(j.size()) != rows) {
    fail(path, "expected " + std::to_string(rows) + " rows");
  }
  if (cols < 0) cols = j.empty() ? 0 : (j[0].is_array() ? static_cast<int>(j[0].size()) : -1);
  Mat m(static_cast<Eigen::Index>(j.size()), std::max(cols, 0));
  for (size_t r = 0; r < j.size(); ++r) {
    m.row(static_cast<Eigen::Index>(r)) = vector_of(j[r], path + "[" + std::to_string(r) + "]", cols).transpose();
  }
  return m;
}

NormKind norm_of(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a norm tag");
  try {
    return parse_norm_kind(j.get<std::string>());
  } catch (const SchemaError& e) {
    fail(path, e.what());
  }
}

Json norm_json(NormKind k) { return std::string(to_string(k)); }

}  // namespace

Instance parse_instance(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("$", "expected an object");
  Instance in;
  const int n = dim_field(root, "x_dim");
  const int m = dim_field(root, "y_dim");
  const Json& norms = field(root, "norms", "");
  in.process.x_norm = norm_of(field(norms, "X", "norms"), "norms.X");
  in.process.y_norm = norm_of(field(norms, "Y", "norms"), "norms.Y");
  in.process.a = matrix_of(field(root, "A", ""), "A", m, n);

  const Json& cone = field(root, "cone", "");
  const Json& type = field(cone, "type", "cone");
  if (!type.is_string()) fail("cone.type", "expected a string");
  in.cone_type = type.get<std::string>();
  const bool has_rays = cone.contains("rays");
  if (in.cone_type == "full" || in.cone_type == "nonneg") {
    if (has_rays) fail("cone.rays", "only allowed with type \"rays\"");
    in.process.k = in.cone_type == "full" ? PolyhedralCone::full(n) : PolyhedralCone::nonneg(n);
  } else if (in.cone_type == "rays") {
    const Json& rays = field(cone, "rays", "cone");
    if (!rays.is_array()) fail("cone.rays", "expected an array of vectors");
    for (size_t i = 0; i < rays.size(); ++i) {
      in.cone_rays.push_back(vector_of(rays[i], "cone.rays[" + std::to_string(i) + "]", n));
    }
    in.process.k = PolyhedralCone::from_rays(n, in.cone_rays);
  } else {
    fail("cone.type", "expected \"full\", \"nonneg\" or \"rays\"");
  }

  const Json& blocks = field(root, "blocks", "");
  if (!blocks.is_array()) fail("blocks", "expected an array");
  for (size_t i = 0; i < blocks.size(); ++i) {
    const std::string path = "blocks[" + std::to_string(i) + "]";
    const Json& b = blocks[i];
    StructureBlock blk;
    blk.p = matrix_of(field(b, "P", path), path + ".P", m, -1);
    blk.q = matrix_of(field(b, "Q", path), path + ".Q", -1, n);
    blk.u_norm = norm_of(field(b, "norm_U", path), path + ".norm_U");
    blk.v_norm = norm_of(field(b, "norm_V", path), path + ".norm_V");
    in.blocks.push_back(std::move(blk));
  }
  try {
    in.process.validate();
    validate_blocks(in.process, in.blocks);
  } catch (const ConfigError& e) {
    throw SchemaError(e.what());
  }
  return in;
}

Instance load_instance(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw SchemaError(path + ": cannot open file");
  std::stringstream ss;
  ss << file.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const Instance& in) {
  Json root;
  root["x_dim"] = in.process.x_dim();
  root["y_dim"] = in.process.y_dim();
  root["norms"] = {{"X", norm_json(in.process.x_norm)}, {"Y", norm_json(in.process.y_norm)}};
  root["A"] = detail::to_json(in.process.a);
  Json cone;
  cone["type"] = in.cone_type;
  if (in.cone_type == "rays") {
    cone["rays"] = Json::array();
    for (const Vec& r : in.cone_rays) cone["rays"].push_back(detail::to_json(r));
  }
  root["cone"] = cone;
  root["blocks"] = Json::array();
  for (const auto& b : in.blocks) {
    root["blocks"].push_back({{"P", detail::to_json(b.p)},
                              {"Q", detail::to_json(b.q)},
                              {"norm_U", norm_json(b.u_norm)},
                              {"norm_V", norm_json(b.v_norm)}});
  }
  return detail::dump17(root);
}

bool same_instance(const Instance& a, const Instance& b) {
  auto same = [](const Mat& x, const Mat& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
  };
  if (a.process.x_norm != b.process.x_norm || a.process.y_norm != b.process.y_norm) return false;
  if (!same(a.process.a, b.process.a) || a.cone_type != b.cone_type) return false;
  if (a.cone_rays.size() != b.cone_rays.size() || a.blocks.size() != b.blocks.size()) return false;
  for (size_t i = 0; i < a.cone_rays.size(); ++i) {
    if (!same(a.cone_rays[i], b.cone_rays[i])) return false;
  }
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    const auto& x = a.blocks[i];
    const auto& y = b.blocks[i];
    if (!same(x.p, y.p) || !same(x.q, y.q) || x.u_norm != y.u_norm || x.v_norm != y.v_norm) return false;
  }
  return true;
}

}  // namespace conicdist

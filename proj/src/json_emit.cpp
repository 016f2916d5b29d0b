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

#include "json_emit.hpp"

#include <cmath>
#include <cstdio>

#include "conicdist/error.hpp"

namespace conicdist::detail {

namespace {

void emit(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        emit(value, indent + 2, out);
      }
      out += "\n" + std::string(static_cast<size_t>(indent), ' ') + "}";
      return;
    }
    case Json::value_t::array: {
      // Numeric arrays stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && e.is_primitive();
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += "\n" + pad;
        emit(e, indent + 2, out);
      }
      if (!flat && !j.empty()) out += "\n" + std::string(static_cast<size_t>(indent), ' ');
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) throw Error("cannot serialize a non-finite number");
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump17(const Json& j) {
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json to_json(const Mat& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Vec(m.row(r).transpose())));
  return a;
}

Json to_json(const ExtendedNonneg& v) {
  if (v.is_infinite()) return "+inf";
  return v.value();
}

}  // namespace conicdist::detail

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

#ifndef CONICDIST_SRC_JSON_EMIT_HPP_
#define CONICDIST_SRC_JSON_EMIT_HPP_

#include <string>

#include <json.hpp>

#include "conicdist/numerics.hpp"

namespace conicdist::detail {

using Json = nlohmann::ordered_json;

/// Pretty printer that writes floating point values with %.17g.
std::string dump17(const Json& j);

Json to_json(const Vec& v);
Json to_json(const Mat& m);
Json to_json(const ExtendedNonneg& v);

}  // namespace conicdist::detail

#endif  // CONICDIST_SRC_JSON_EMIT_HPP_

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

#include <doctest.h>

#include <filesystem>
#include <regex>

#include <json.hpp>

#include "conicdist/error.hpp"
#include "conicdist/io.hpp"

using namespace conicdist;
namespace fs = std::filesystem;

namespace {

const std::string kMasked = R"({
  "x_dim": 2, "y_dim": 2, "norms": {"X": "L1", "Y": "L1"},
  "A": [[3, 0], [0, 1]], "cone": {"type": "full"},
  "blocks": [{"P": [[1], [0]], "Q": [[1, 0]], "norm_U": "L1", "norm_V": "L1"}]
})";

std::string schema_message(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("every corpus instance round-trips") {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(CONICDIST_INSTANCE_DIR)) {
    if (entry.path().extension() != ".json" || entry.path().stem() == "malformed_row") continue;
    CAPTURE(entry.path().string());
    const Instance a = load_instance(entry.path().string());
    const std::string once = serialize_instance(a);
    const Instance b = parse_instance(once);
    CHECK(same_instance(a, b));
    CHECK(serialize_instance(b) == once);
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("schema errors name the field") {
  const std::string bad = std::string(CONICDIST_INSTANCE_DIR) + "/malformed_row.json";
  CHECK_THROWS_WITH_AS(load_instance(bad), doctest::Contains("A[1]: expected 3 entries"), SchemaError);

  auto j = nlohmann::json::parse(kMasked);
  j["norms"]["X"] = "L7";
  CHECK(schema_message(j.dump()).find("norms.X") != std::string::npos);

  j = nlohmann::json::parse(kMasked);
  j["blocks"][0]["P"] = {{1, 0}, {0, 1}, {1, 1}};
  CHECK(schema_message(j.dump()).find("blocks[0].P") != std::string::npos);

  j = nlohmann::json::parse(kMasked);
  j.erase("y_dim");
  CHECK(schema_message(j.dump()).find("y_dim") != std::string::npos);

  CHECK_THROWS_AS(parse_instance("{not json"), SchemaError);
}

TEST_CASE("report round trip recomputes residuals") {
  const Instance in = parse_instance(kMasked);
  SolverOptions o;
  o.seed = 5;
  const DistanceReport r = verify_equalities(in.process, in.blocks, o, true);
  const std::string text = serialize_report(r, in);
  const StoredReport s = parse_report(text, in);
  CHECK(s.mode == "exact");
  CHECK(s.seed == 5);
  CHECK(s.passed);
  CHECK(s.quantities.at("dual").value() == doctest::Approx(3.0));
  CHECK_FALSE(s.residuals.empty());
  for (const auto& row : compare_reports(s, r, o.tol)) CHECK(row.ok);
  CHECK(format_gap_table(compare_reports(s, r, o.tol)).find("dual") != std::string::npos);

  SUBCASE("a corrupted residual is rejected") {
    auto j = nlohmann::ordered_json::parse(text);
    j["certificates"]["dual"]["residual"] = 1e-3;
    CHECK_THROWS_AS(parse_report(j.dump(), in), InconsistencyError);
  }
  SUBCASE("a corrupted quantity shows up in the gap table") {
    auto j = nlohmann::ordered_json::parse(text);
    j["quantities"]["phi"] = 2.5;
    bool any_bad = false;
    for (const auto& row : compare_reports(parse_report(j.dump(), in), r, o.tol)) any_bad |= !row.ok;
    CHECK(any_bad);
  }
  SUBCASE("timings are optional and everything else is deterministic") {
    const std::string a = serialize_report(r, in, false);
    const std::string b = serialize_report(verify_equalities(in.process, in.blocks, o, true), in, false);
    CHECK(a == b);
    CHECK(a.find("timings_ms") == std::string::npos);
  }
}

TEST_CASE("infinity sentinel and 17 significant digits") {
  const Instance in = load_instance(std::string(CONICDIST_INSTANCE_DIR) + "/all_p_zero.json");
  const DistanceReport r = verify_equalities(in.process, in.blocks, SolverOptions{});
  const std::string text = serialize_report(r, in, false);
  CHECK(text.find("\"+inf\"") != std::string::npos);
  CHECK(parse_report(text, in).quantities.at("dual").is_infinite());

  CHECK(to_string(ExtendedNonneg(0.1)) == "0.10000000000000001");
  CHECK(to_string(ExtendedNonneg::infinity()) == "+inf");
}

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

#include <cmath>
#include <string>

#include "conicdist/conicdist.h"

namespace {

const char* kMasked = R"({
  "x_dim": 2, "y_dim": 2, "norms": {"X": "L1", "Y": "L1"},
  "A": [[3, 0], [0, 1]], "cone": {"type": "full"},
  "blocks": [{"P": [[1], [0]], "Q": [[1, 0]], "norm_U": "L1", "norm_V": "L1"}]
})";

const char* kL2 = R"({
  "x_dim": 2, "y_dim": 2, "norms": {"X": "L2", "Y": "L2"},
  "A": [[3, 0], [0, 1]], "cone": {"type": "full"},
  "blocks": [{"P": [[1, 0], [0, 1]], "Q": [[1, 0], [0, 1]], "norm_U": "L2", "norm_V": "L2"}]
})";

std::string take(char* s) {
  std::string out = s ? s : "";
  cd_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("instance handles") {
  cd_instance* inst = nullptr;
  REQUIRE(cd_instance_load_json(kMasked, &inst) == CD_OK);
  char* text = nullptr;
  REQUIRE(cd_instance_to_json(inst, &text) == CD_OK);
  cd_instance* again = nullptr;
  CHECK(cd_instance_load_json(text, &again) == CD_OK);
  cd_string_free(text);
  cd_instance_destroy(again);

  int surjective = -1;
  char* witness = nullptr;
  CHECK(cd_check_surjective(inst, &surjective, &witness) == CD_OK);
  CHECK(surjective == 1);
  cd_string_free(witness);
  cd_instance_destroy(inst);

  CHECK(cd_instance_load_json("{\"x_dim\": 1}", &inst) == CD_ERR_SCHEMA);
  CHECK(std::string(cd_last_error()).size() > 0);
  CHECK(cd_instance_load_json(nullptr, &inst) == CD_ERR_ARGUMENT);
  CHECK(cd_version()[0] != '\0');
}

TEST_CASE("distance and verify through handles") {
  cd_instance* inst = nullptr;
  REQUIRE(cd_instance_load_json(kMasked, &inst) == CD_OK);
  cd_options o;
  cd_options_default(&o);
  o.mode = CD_MODE_EXACT;

  cd_report* r = nullptr;
  REQUIRE(cd_verify(inst, &o, &r) == CD_OK);
  CHECK(cd_report_passed(r) == 1);
  for (const char* name : {"general", "rank_one", "dual", "phi"}) {
    double v = 0;
    REQUIRE(cd_report_quantity(r, name, &v) == CD_OK);
    CHECK(v == doctest::Approx(3.0).epsilon(1e-6));
  }
  double v = 0;
  CHECK(cd_report_quantity(r, "nope", &v) == CD_ERR_ARGUMENT);

  char* json = nullptr;
  REQUIRE(cd_report_to_json(r, 0, &json) == CD_OK);
  const std::string stored = take(json);
  int matches = 0;
  char* table = nullptr;
  CHECK(cd_report_compare_json(r, stored.c_str(), &matches, &table) == CD_OK);
  CHECK(matches == 1);
  CHECK(take(table).find("dual") != std::string::npos);

  char* summary = nullptr;
  CHECK(cd_report_summary(r, &summary) == CD_OK);
  CHECK_FALSE(take(summary).empty());
  cd_report_destroy(r);
  cd_instance_destroy(inst);
}

TEST_CASE("mode errors and infinite quantities") {
  cd_instance* inst = nullptr;
  REQUIRE(cd_instance_load_json(kL2, &inst) == CD_OK);
  cd_options o;
  cd_options_default(&o);
  o.mode = CD_MODE_EXACT;
  cd_report* r = nullptr;
  CHECK(cd_compute_distance(inst, &o, &r) == CD_ERR_MODE);
  CHECK(std::string(cd_last_error()).find("exact mode requires polyhedral norms") != std::string::npos);
  cd_instance_destroy(inst);

  const char* zero_p = R"({
    "x_dim": 1, "y_dim": 1, "norms": {"X": "L1", "Y": "L1"}, "A": [[1]],
    "cone": {"type": "full"},
    "blocks": [{"P": [[0]], "Q": [[1]], "norm_U": "L1", "norm_V": "L1"}]})";
  REQUIRE(cd_instance_load_json(zero_p, &inst) == CD_OK);
  cd_options_default(&o);
  REQUIRE(cd_compute_distance(inst, &o, &r) == CD_OK);
  double v = 0;
  CHECK(cd_report_quantity(r, "dual", &v) == CD_OK);
  CHECK(std::isinf(v));
  cd_report_destroy(r);
  cd_instance_destroy(inst);
}

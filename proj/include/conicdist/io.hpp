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

// JSON instance files and distance reports.

#ifndef CONICDIST_IO_HPP_
#define CONICDIST_IO_HPP_

#include <map>
#include <string>
#include <vector>

#include "conicdist/distance.hpp"
#include "conicdist/process.hpp"

namespace conicdist {

struct Instance {
  ConicProcess process;
  std::vector<StructureBlock> blocks;
  std::string cone_type = "full";  // "full", "nonneg" or "rays"
  std::vector<Vec> cone_rays;      // as written, for "rays"
};

/// Throws SchemaError naming the offending field, e.g. "A[1]: expected 3 entries".
Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::string& path);
std::string serialize_instance(const Instance& instance);
bool same_instance(const Instance& a, const Instance& b);

/// Numbers are written with 17 significant digits and infinity as "+inf".
std::string serialize_report(const DistanceReport& report, const Instance& instance,
                             bool include_timings = true);

struct StoredReport {
  std::string mode;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int budget = 0;
  bool passed = false;
  std::map<std::string, ExtendedNonneg> quantities;  // general, rank_one, dual, phi
  std::map<std::string, double> residuals;
};

/// Recomputes every stored residual from the stored certificates and throws
/// InconsistencyError when one differs by more than 1e-12.
StoredReport parse_report(const std::string& json_text, const Instance& instance);

struct GapRow {
  std::string name;
  ExtendedNonneg stored;
  ExtendedNonneg fresh;
  double gap = 0.0;  // +inf when exactly one side is infinite
  bool ok = true;
};

std::vector<GapRow> compare_reports(const StoredReport& stored, const DistanceReport& fresh, double tol);
std::string format_gap_table(const std::vector<GapRow>& rows);

}  // namespace conicdist

#endif  // CONICDIST_IO_HPP_

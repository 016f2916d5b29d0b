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

#include "conicdist/conicdist.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "conicdist/error.hpp"
#include "conicdist/io.hpp"
#include "json_emit.hpp"

struct cd_instance {
  conicdist::Instance data;
};

struct cd_report {
  conicdist::Instance instance;
  conicdist::DistanceReport report;
};

namespace {

using namespace conicdist;

thread_local std::string last_error;

cd_status fail(cd_status s, const char* what) {
  last_error = what;
  return s;
}

template <typename Fn>
cd_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const SchemaError& e) {
    return fail(CD_ERR_SCHEMA, e.what());
  } catch (const ModeError& e) {
    return fail(CD_ERR_MODE, e.what());
  } catch (const ConfigError& e) {
    return fail(CD_ERR_CONFIG, e.what());
  } catch (const DomainError& e) {
    return fail(CD_ERR_DOMAIN, e.what());
  } catch (const InconsistencyError& e) {
    return fail(CD_ERR_INCONSISTENT, e.what());
  } catch (const std::exception& e) {
    return fail(CD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CD_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SolverOptions to_options(const cd_options* o, const Instance& in) {
  cd_options d;
  cd_options_default(&d);
  if (!o) o = &d;
  if (!(o->tol > 0.0)) throw ConfigError("tol must be positive");
  if (o->budget < 1) throw ConfigError("budget must be at least 1");
  SolverOptions s;
  switch (o->mode) {
    case CD_MODE_AUTO: s.mode = default_mode(in.blocks); break;
    case CD_MODE_EXACT: s.mode = Mode::Exact; break;
    case CD_MODE_SAMPLED: s.mode = Mode::Sampled; break;
    default: throw ConfigError("unknown mode");
  }
  s.tol = o->tol;
  s.budget = o->budget;
  s.seed = o->seed;
  return s;
}

cd_status run(const cd_instance* instance, const cd_options* options, cd_report** out, bool alternatives) {
  if (!instance || !out) return fail(CD_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const SolverOptions s = to_options(options, instance->data);
    auto* r = new cd_report{instance->data, {}};
    try {
      r->report = verify_equalities(instance->data.process, instance->data.blocks, s, alternatives);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
    return CD_OK;
  });
}

cd_status load(const std::string& text, bool is_path, cd_instance** out) {
  if (!out) return fail(CD_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cd_instance{is_path ? load_instance(text) : parse_instance(text)};
    return CD_OK;
  });
}

}  // namespace

extern "C" {

const char* cd_version(void) { return "0.1.0"; }

const char* cd_last_error(void) { return last_error.c_str(); }

void cd_string_free(char* s) { std::free(s); }

void cd_options_default(cd_options* options) {
  if (!options) return;
  options->mode = CD_MODE_AUTO;
  options->tol = 1e-6;
  options->budget = 10000;
  options->seed = 0;
}

cd_status cd_instance_load_file(const char* path, cd_instance** out) {
  if (!path) return fail(CD_ERR_ARGUMENT, "null path");
  return load(path, true, out);
}

cd_status cd_instance_load_json(const char* json, cd_instance** out) {
  if (!json) return fail(CD_ERR_ARGUMENT, "null json");
  return load(json, false, out);
}

cd_status cd_instance_to_json(const cd_instance* instance, char** out) {
  if (!instance || !out) return fail(CD_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(serialize_instance(instance->data));
    return CD_OK;
  });
}

void cd_instance_destroy(cd_instance* instance) { delete instance; }

cd_status cd_check_surjective(const cd_instance* instance, int* surjective, char** json_out) {
  if (!instance || !surjective) return fail(CD_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = is_surjective(instance->data.process);
    *surjective = r.surjective ? 1 : 0;
    if (json_out) {
      detail::Json j;
      j["surjective"] = r.surjective;
      if (r.witness) j["witness"] = detail::to_json(*r.witness);
      *json_out = copy_string(detail::dump17(j));
    }
    return CD_OK;
  });
}

cd_status cd_compute_distance(const cd_instance* instance, const cd_options* options, cd_report** out) {
  return run(instance, options, out, false);
}

cd_status cd_verify(const cd_instance* instance, const cd_options* options, cd_report** out) {
  return run(instance, options, out, true);
}

cd_status cd_report_to_json(const cd_report* report, int include_timings, char** out) {
  if (!report || !out) return fail(CD_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(serialize_report(report->report, report->instance, include_timings != 0));
    return CD_OK;
  });
}

int cd_report_passed(const cd_report* report) { return report && report->report.passed ? 1 : 0; }

cd_status cd_report_quantity(const cd_report* report, const char* name, double* value) {
  if (!report || !name || !value) return fail(CD_ERR_ARGUMENT, "null argument");
  const auto& r = report->report;
  const std::string n = name;
  const ExtendedNonneg* q = n == "general"    ? &r.q_general
                            : n == "rank_one" ? &r.q_rank_one
                            : n == "dual"     ? &r.q_dual
                            : n == "phi"      ? &r.q_phi
                                              : nullptr;
  if (!q) return fail(CD_ERR_ARGUMENT, "unknown quantity name");
  *value = q->is_infinite() ? HUGE_VAL : q->value();
  return CD_OK;
}

cd_status cd_report_summary(const cd_report* report, char** out) {
  if (!report || !out) return fail(CD_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::string s;
    for (const auto& c : report->report.checks) {
      if (!c.passed) s += "FAILED " + c.name + ": " + c.detail + "\n";
    }
    for (const auto& n : report->report.notes) s += "note: " + n + "\n";
    *out = copy_string(s);
    return CD_OK;
  });
}

void cd_report_destroy(cd_report* report) { delete report; }

cd_status cd_report_compare_json(const cd_report* fresh, const char* stored_json, int* matches, char** table) {
  if (!fresh || !stored_json || !matches) return fail(CD_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const StoredReport stored = parse_report(stored_json, fresh->instance);
    const auto rows = compare_reports(stored, fresh->report, fresh->report.options.tol);
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.ok;
    *matches = ok ? 1 : 0;
    if (table) *table = copy_string(format_gap_table(rows));
    return CD_OK;
  });
}

}  // extern "C"

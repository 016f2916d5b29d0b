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

// conicdist command line: check, distance, verify.
//
// Exit codes: 0 success (surjective / suite passed), 1 input error,
// 2 process not surjective (check), 3 verification or report mismatch.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "conicdist/conicdist.h"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNotSurjective = 2;
constexpr int kMismatch = 3;

struct InstanceDeleter {
  void operator()(cd_instance* p) const { cd_instance_destroy(p); }
};
struct ReportDeleter {
  void operator()(cd_report* p) const { cd_report_destroy(p); }
};
struct StringDeleter {
  void operator()(char* p) const { cd_string_free(p); }
};
using InstancePtr = std::unique_ptr<cd_instance, InstanceDeleter>;
using ReportPtr = std::unique_ptr<cd_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Flags {
  std::string mode = "auto";
  double tol = 1e-6;
  int budget = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

int mode_value(const std::string& m) {
  if (m == "exact") return CD_MODE_EXACT;
  if (m == "sampled") return CD_MODE_SAMPLED;
  return CD_MODE_AUTO;
}

cd_options to_options(const Flags& f) {
  cd_options o;
  cd_options_default(&o);
  o.mode = mode_value(f.mode);
  o.tol = f.tol;
  o.budget = f.budget;
  o.seed = f.seed;
  return o;
}

int report_error(const std::string& context) {
  std::cerr << "error: " << context << cd_last_error() << "\n";
  return kInputError;
}

InstancePtr load(const std::string& path, int* code) {
  cd_instance* raw = nullptr;
  if (cd_instance_load_file(path.c_str(), &raw) != CD_OK) {
    *code = report_error(path + ": ");
    return nullptr;
  }
  return InstancePtr(raw);
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
  return static_cast<bool>(f);
}

void add_solver_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--mode", f.mode, "exact or sampled (default: exact when all block norms are polyhedral)")
      ->check(CLI::IsMember({"exact", "sampled", "auto"}));
  cmd->add_option("--tol", f.tol, "equality tolerance")->capture_default_str();
  cmd->add_option("--budget", f.budget, "sampling budget")->capture_default_str();
  cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd->add_option("--out", f.out, "write the JSON report here instead of stdout");
}

int cmd_check(const std::string& path) {
  int code = kOk;
  InstancePtr in = load(path, &code);
  if (!in) return code;
  int surjective = 0;
  char* json = nullptr;
  if (cd_check_surjective(in.get(), &surjective, &json) != CD_OK) return report_error("");
  StringPtr owned(json);
  std::cout << json;
  return surjective ? kOk : kNotSurjective;
}

int cmd_distance(const std::string& path, const Flags& flags) {
  int code = kOk;
  InstancePtr in = load(path, &code);
  if (!in) return code;
  const cd_options o = to_options(flags);
  cd_report* raw = nullptr;
  if (cd_compute_distance(in.get(), &o, &raw) != CD_OK) return report_error("");
  ReportPtr report(raw);
  char* json = nullptr;
  if (cd_report_to_json(report.get(), 1, &json) != CD_OK) return report_error("");
  StringPtr owned(json);
  if (flags.out.empty()) {
    std::cout << json;
  } else if (!write_text(flags.out, json)) {
    std::cerr << "error: cannot write " << flags.out << "\n";
    return kInputError;
  }
  return kOk;
}

struct VerifyOutcome {
  int code = kOk;
  std::string text;
  std::string json;
  ReportPtr report;
};

std::string fmt_quantity(const cd_report* r, const char* name) {
  double v = 0.0;
  cd_report_quantity(r, name, &v);
  if (std::isinf(v)) return "+inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

VerifyOutcome verify_one(const std::string& path, const cd_options& o) {
  VerifyOutcome out;
  cd_instance* inst = nullptr;
  if (cd_instance_load_file(path.c_str(), &inst) != CD_OK) {
    out.code = kInputError;
    out.text = "error: " + path + ": " + cd_last_error() + "\n";
    return out;
  }
  InstancePtr in(inst);
  cd_report* raw = nullptr;
  if (cd_verify(in.get(), &o, &raw) != CD_OK) {
    out.code = kInputError;
    out.text = "error: " + path + ": " + cd_last_error() + "\n";
    return out;
  }
  out.report.reset(raw);
  const bool passed = cd_report_passed(raw) != 0;
  std::ostringstream os;
  os << (passed ? "PASS " : "FAIL ") << path << "\n";
  for (const char* q : {"general", "rank_one", "dual", "phi"}) {
    os << "  " << q << std::string(10 - std::strlen(q), ' ') << fmt_quantity(raw, q) << "\n";
  }
  char* summary = nullptr;
  if (cd_report_summary(raw, &summary) == CD_OK) {
    StringPtr owned(summary);
    std::istringstream lines(summary);
    for (std::string line; std::getline(lines, line);) {
      if (!passed || line.rfind("note", 0) != 0) os << "  " << line << "\n";
    }
  }
  out.text = os.str();
  char* json = nullptr;
  if (cd_report_to_json(raw, 1, &json) == CD_OK) {
    out.json = json;
    cd_string_free(json);
  }
  out.code = passed ? kOk : kMismatch;
  return out;
}

int thread_count() {
  const char* env = std::getenv("CONIC_DIST_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) return 1;
  return static_cast<int>(std::min<long>(n, 256));
}

int cmd_verify(const std::vector<std::string>& paths, const Flags& flags, const std::string& stored) {
  if (!stored.empty() && paths.size() != 1) {
    std::cerr << "error: --report needs exactly one instance\n";
    return kInputError;
  }
  if (!flags.out.empty() && paths.size() != 1) {
    std::cerr << "error: --out needs exactly one instance\n";
    return kInputError;
  }
  const cd_options o = to_options(flags);
  std::vector<VerifyOutcome> results(paths.size());
  const size_t workers = std::min<size_t>(static_cast<size_t>(thread_count()), paths.size());
  if (workers <= 1) {
    for (size_t i = 0; i < paths.size(); ++i) results[i] = verify_one(paths[i], o);
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (size_t i = w; i < paths.size(); i += workers) results[i] = verify_one(paths[i], o);
      });
    }
    for (auto& t : pool) t.join();
  }

  int code = kOk;
  for (const auto& r : results) {
    std::cout << r.text;
    code = std::max(code, r.code);
  }
  if (!flags.out.empty() && !results[0].json.empty() && !write_text(flags.out, results[0].json)) {
    std::cerr << "error: cannot write " << flags.out << "\n";
    return kInputError;
  }
  if (!stored.empty() && results[0].report) {
    std::ifstream f(stored);
    if (!f) {
      std::cerr << "error: cannot open " << stored << "\n";
      return kInputError;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    int matches = 0;
    char* table = nullptr;
    const cd_status s = cd_report_compare_json(results[0].report.get(), ss.str().c_str(), &matches, &table);
    if (s == CD_ERR_INCONSISTENT) {
      std::cout << "report " << stored << " does not reproduce: " << cd_last_error() << "\n";
      return kMismatch;
    }
    if (s != CD_OK) return report_error(stored + ": ");
    StringPtr owned(table);
    std::cout << "comparison with " << stored << "\n" << table;
    if (!matches) return kMismatch;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured distance to ill-posedness of conic systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cd_version());

  std::string check_path;
  auto* check = app.add_subcommand("check", "Decide surjectivity; exit 0 if surjective, 2 if not");
  check->add_option("instance", check_path, "instance JSON")->required();

  Flags dist_flags;
  std::string dist_path;
  auto* distance = app.add_subcommand("distance", "Compute all four distance quantities");
  distance->add_option("instance", dist_path, "instance JSON")->required();
  add_solver_flags(distance, dist_flags);

  Flags verify_flags;
  std::vector<std::string> verify_paths;
  std::string stored_report;
  auto* verify = app.add_subcommand("verify", "Run the equality suite; exit 0 iff it passes");
  verify->add_option("instances", verify_paths, "instance JSON files")->required();
  verify->add_option("--report", stored_report, "compare against a stored report");
  add_solver_flags(verify, verify_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  if (check->parsed()) return cmd_check(check_path);
  if (distance->parsed()) return cmd_distance(dist_path, dist_flags);
  return cmd_verify(verify_paths, verify_flags, stored_report);
}

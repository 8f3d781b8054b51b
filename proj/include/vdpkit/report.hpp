#pragma once

// Certificate suites and the versioned JSON report they produce. Records are
// computed independently (possibly in parallel) and sorted by
// (module, operation, inputs), so a report depends only on its config.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vdpkit/parallel.hpp"
#include "vdpkit/polynomial.hpp"

namespace vdp::report {

inline constexpr const char* kSchema = "vdpkit-report/1";
inline constexpr const char* kVersion = "0.3.0";

struct Config {
  // Largest level per suite.
  std::size_t family_n_max = 10;
  std::size_t forms_n_max = 6;
  std::size_t generation_n_max = 5;
  std::size_t homology_n_max = 20;
  // Gröbner reduction steps per certificate.
  std::uint64_t budget = 1'000'000;
  // Candidate fields per generation target.
  std::size_t pool_budget = 4000;
  std::uint64_t seed = 20240611;
  // Coefficient degree of the generation battery at n = 3; one less per
  // extra dimension, never below 1.
  unsigned degree_bound = 2;
  double tol_drift = 1e-9;
  double tol_distortion = 1e-6;
  OrderKind order = OrderKind::Degrevlex;
  std::size_t flow_points = 5;
  std::size_t flow_steps = 1000;

  // Not serialized: the report is identical either way.
  Execution execution = Execution::Parallel;

  // Sets every suite limit.
  void set_n_max(std::size_t n);
  unsigned generation_degree(std::size_t n) const;
  // Throws std::invalid_argument on a non-positive field or a level below 3.
  void validate() const;

  nlohmann::json to_json() const;
  // Accepts a config object or a whole report; missing keys keep defaults.
  static Config from_json(const nlohmann::json& j);
};

enum class Verdict { Pass, Fail, BudgetExceeded };
std::string verdict_name(Verdict v);

struct Record {
  std::string module;
  std::string operation;
  nlohmann::json inputs;
  Verdict verdict = Verdict::Pass;
  nlohmann::json payload;

  nlohmann::json to_json() const;
};

struct Report {
  std::string version = kVersion;
  Config config;
  std::vector<Record> records;

  // Fail beats budget exhaustion beats pass.
  Verdict overall() const;
  // 0 pass, 1 certificate failure, 3 budget exhausted.
  int exit_code() const;
  std::size_t count(Verdict v) const;

  nlohmann::json to_json() const;
  // Human summary derived from the records.
  std::string summary() const;
};

const std::vector<std::string>& suite_names();

// suite is one of family, forms, generation, homology, all. Throws
// std::invalid_argument for anything else.
Report run_suite(const std::string& suite, const Config& config);

}  // namespace vdp::report

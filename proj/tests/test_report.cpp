#include <doctest.h>

#include <set>
#include <stdexcept>

#include "vdpkit/report.hpp"

using namespace vdp;
using namespace vdp::report;

namespace {

Config small() {
  Config c;
  c.family_n_max = 6;
  c.forms_n_max = 4;
  c.generation_n_max = 4;
  c.homology_n_max = 10;
  return c;
}

}  // namespace

TEST_CASE("config round trip and validation") {
  Config c = small();
  c.seed = 7;
  c.order = OrderKind::Lex;
  c.tol_drift = 3e-10;
  Config back = Config::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(back.order == OrderKind::Lex);

  // A whole report is accepted as well.
  nlohmann::json rep{{"schema", kSchema}, {"config", c.to_json()}, {"records", nlohmann::json::array()}};
  CHECK(Config::from_json(rep).seed == 7);
  // Missing keys keep their defaults.
  CHECK(Config::from_json(nlohmann::json::object()).to_json() == Config{}.to_json());

  Config bad = small();
  bad.budget = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = small();
  bad.forms_n_max = 2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = small();
  bad.tol_distortion = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(Config{}.validate());
}

TEST_CASE("generation degree schedule") {
  Config c;
  CHECK(c.generation_degree(3) == 2);
  CHECK(c.generation_degree(4) == 1);
  CHECK(c.generation_degree(5) == 1);
  c.degree_bound = 3;
  CHECK(c.generation_degree(4) == 2);
}

TEST_CASE("every suite passes on a small config") {
  for (const std::string suite : {"family", "forms", "generation", "homology"}) {
    CAPTURE(suite);
    Report r = run_suite(suite, small());
    CHECK(r.overall() == Verdict::Pass);
    CHECK(r.exit_code() == 0);
    CHECK_FALSE(r.records.empty());
    for (const auto& rec : r.records) CHECK(rec.module == suite);
  }
  CHECK_THROWS_AS(run_suite("nope", small()), std::invalid_argument);
}

TEST_CASE("records are sorted, unique and identical across execution modes") {
  Config par = small();
  par.execution = Execution::Parallel;
  Config ser = par;
  ser.execution = Execution::Serial;
  Report a = run_suite("all", par);
  Report b = run_suite("all", ser);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_json().dump() == run_suite("all", par).to_json().dump());

  std::set<std::string> keys;
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    const auto& r = a.records[k];
    CHECK(keys.insert(r.module + "/" + r.operation + "/" + r.inputs.dump()).second);
    if (k == 0) continue;
    const auto& p = a.records[k - 1];
    const bool ordered = p.module < r.module || (p.module == r.module && (p.operation < r.operation ||
                                                  (p.operation == r.operation && p.inputs < r.inputs)));
    CHECK(ordered);
  }
}

TEST_CASE("report document") {
  Report r = run_suite("homology", small());
  auto j = r.to_json();
  CHECK(j.at("schema") == kSchema);
  CHECK(j.at("version") == kVersion);
  CHECK(j.at("overall") == "pass");
  CHECK(j.at("counts").at("pass") == r.records.size());
  CHECK(j.at("config").at("n_max").at("homology") == 10);
  const auto& first = j.at("records").at(0);
  for (const char* key : {"module", "operation", "inputs", "verdict", "payload"}) CHECK(first.contains(key));
  CHECK(r.summary().find("overall: pass") != std::string::npos);
}

TEST_CASE("budget exhaustion is reported, not converted") {
  Config c = small();
  c.budget = 2;
  Report r = run_suite("family", c);
  CHECK(r.count(Verdict::BudgetExceeded) > 0);
  CHECK(r.count(Verdict::Fail) == 0);
  CHECK(r.overall() == Verdict::BudgetExceeded);
  CHECK(r.exit_code() == 3);
  CHECK(r.summary().find("budget_exceeded: family.") != std::string::npos);

  Config g = small();
  g.pool_budget = 1;
  Report rg = run_suite("generation", g);
  CHECK(rg.count(Verdict::BudgetExceeded) > 0);
  CHECK(rg.exit_code() == 3);
}

TEST_CASE("failures dominate the overall verdict") {
  Config c = small();
  c.tol_drift = 1e-30;
  Report r = run_suite("forms", c);
  CHECK(r.count(Verdict::Fail) > 0);
  CHECK(r.overall() == Verdict::Fail);
  CHECK(r.exit_code() == 1);
}

TEST_CASE("convergence summary") {
  Report r = run_suite("forms", small());
  const Record* summary = nullptr;
  for (const auto& rec : r.records) {
    if (rec.operation == "convergence_summary") summary = &rec;
  }
  REQUIRE(summary != nullptr);
  CHECK(summary->verdict == Verdict::Pass);
  const auto measured = summary->payload.at("measured").get<std::size_t>();
  CHECK(2 * measured >= small().flow_points);
  CHECK(summary->payload.at("min_order").get<double>() >= 3.5);
  CHECK(summary->payload.at("max_order").get<double>() <= 4.5);
}

// Command-line front end. Exit codes: 0 pass, 1 certificate failure,
// 2 usage error, 3 budget exhausted.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "vdpkit/errors.hpp"
#include "vdpkit/expression.hpp"
#include "vdpkit/family.hpp"
#include "vdpkit/flow.hpp"
#include "vdpkit/generation.hpp"
#include "vdpkit/homology.hpp"
#include "vdpkit/report.hpp"

namespace {

using namespace vdp;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerifyArgs {
  std::string suite;
  std::optional<std::size_t> n_max;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> pool_budget;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> degree_bound;
  std::optional<double> tol_drift;
  std::optional<double> tol_distortion;
  std::optional<std::string> order;
  std::string config_path;
  std::string report_path = "vdpkit-report.json";
  bool tex = false;
  bool serial = false;
};

std::optional<std::uint64_t> env_budget() {
  const char* v = std::getenv("VDPKIT_BUDGET");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long b = std::strtoull(v, &end, 10);
  if (*end != '\0' || b == 0 || v[0] == '-') throw UsageError("VDPKIT_BUDGET must be a positive integer");
  return b;
}

// Precedence: explicit flag, then VDPKIT_BUDGET, then config file, then default.
report::Config make_config(const VerifyArgs& a) {
  report::Config c;
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) throw UsageError("cannot read config " + a.config_path);
    try {
      c = report::Config::from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("bad config " + a.config_path + ": " + e.what());
    }
  }
  if (auto b = env_budget()) c.budget = *b;
  if (a.n_max) {
    if (a.suite == "all") {
      c.set_n_max(*a.n_max);
    } else if (a.suite == "family") {
      c.family_n_max = *a.n_max;
    } else if (a.suite == "forms") {
      c.forms_n_max = *a.n_max;
    } else if (a.suite == "generation") {
      c.generation_n_max = *a.n_max;
    } else {
      c.homology_n_max = *a.n_max;
    }
  }
  if (a.budget) c.budget = *a.budget;
  if (a.pool_budget) c.pool_budget = *a.pool_budget;
  if (a.seed) c.seed = *a.seed;
  if (a.degree_bound) c.degree_bound = *a.degree_bound;
  if (a.tol_drift) c.tol_drift = *a.tol_drift;
  if (a.tol_distortion) c.tol_distortion = *a.tol_distortion;
  if (a.order) c.order = parse_order_kind(*a.order);
  c.execution = a.serial ? Execution::Serial : Execution::Parallel;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

std::vector<homology::HomologyTable> tables_for(const report::Config& c) {
  auto tables = homology::base_tables();
  for (std::size_t n = 7; n <= c.homology_n_max; ++n) tables.push_back(homology::table_recursive(n));
  for (auto [k, l] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {2, 1}, {3, 2}}) {
    tables.push_back(homology::xpq_table(k, l));
  }
  return tables;
}

int cmd_verify(const VerifyArgs& a) {
  const report::Config c = make_config(a);
  const report::Report r = report::run_suite(a.suite, c);
  std::ofstream out(a.report_path);
  if (!out) throw UsageError("cannot write report " + a.report_path);
  out << r.to_json().dump(2) << "\n";
  std::cout << r.summary();
  std::cout << "report: " << a.report_path << "\n";
  if (a.tex && (a.suite == "homology" || a.suite == "all")) {
    std::cout << homology::to_tex(tables_for(c));
  } else if (a.suite == "homology") {
    std::cout << "\n";
    for (const auto& t : tables_for(c)) std::cout << homology::to_text(t);
  }
  return r.exit_code();
}

int cmd_build(std::size_t n) {
  if (n < 3 || n > kMaxVars) throw UsageError("build needs 3 <= n <= " + std::to_string(kMaxVars));
  const auto rec = family::family_record(n);
  const auto m = family::build_matrix(n);
  std::cout << to_string(rec.p) << "\n";
  std::cout << "f = " << to_string(rec.f) << "\n";
  std::cout << "g = " << to_string(rec.g) << "\n";
  std::cout << "p = f*z" << rec.y_variable << " - g\n";
  for (int row = 1; row <= 2; ++row) {
    for (int col = 1; col <= 2; ++col) {
      std::cout << "M[" << row << "," << col << "] = " << to_string(m.at(row, col)) << "\n";
    }
  }
  return kPass;
}

int cmd_realize(std::size_t n, const std::string& text, unsigned degree_bound, std::size_t pool_budget) {
  if (n < 3 || n > 8) throw UsageError("realize needs 3 <= n <= 8");
  PolyForm alpha;
  try {
    alpha = parse_form(text, n, n - 3);
  } catch (const ParseError& e) {
    throw UsageError(std::string("cannot parse form: ") + e.what());
  }
  generation::GenerationOptions opts;
  opts.degree_bound = degree_bound;
  opts.max_pool = pool_budget;
  generation::RealizationCertificate cert;
  try {
    cert = generation::realize_exact(forms::Surface::level(n), alpha, opts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::cout << "alpha    = " << to_string(cert.alpha) << "\n";
  std::cout << "d(alpha) = " << to_string(cert.d_alpha) << "\n";
  std::cout << "xi       = " << generation::to_string(cert.expr) << "\n";
  std::cout << "tier     = " << generation::tier_name(cert.tier) << "\n";
  std::cout << "residual = " << generation::residual_string(cert) << "\n";
  if (!cert.valid) std::cout << "failure  = " << cert.failure << "\n";
  return cert.valid ? kPass : kFail;
}

struct FlowArgs {
  std::size_t n = 3;
  std::size_t i = 1;
  std::size_t j = 2;
  double t = 1.0;
  std::size_t steps = 1000;
  std::uint64_t seed = report::Config{}.seed;
  std::size_t point = 0;
  double tol_drift = report::Config{}.tol_drift;
  double tol_distortion = report::Config{}.tol_distortion;
};

int cmd_flow(const FlowArgs& a) {
  if (a.n < 3 || a.n > 10) throw UsageError("flow needs 3 <= n <= 10");
  if (a.i < 1 || a.j < 1 || a.i > a.n || a.j > a.n || a.i == a.j) {
    throw UsageError("flow needs distinct indices in 1.." + std::to_string(a.n));
  }
  if (a.steps == 0) throw UsageError("--steps must be positive");
  const auto s = forms::Surface::level(a.n);
  const auto x = family::sample_points(a.n, a.point + 1, a.seed).back();
  forms::Point z;
  for (const auto& v : x) z.emplace_back(v.get_d(), 0.0);
  const auto r = forms::flow_rk4(s, forms::delta(s, a.i, a.j), z, a.t, a.steps);
  std::cout.precision(6);
  std::cout << "start    =";
  for (const auto& v : x) std::cout << " " << to_string(v);
  std::cout << "\nend      =";
  for (const auto& v : r.endpoint) std::cout << " (" << v.real() << "," << v.imag() << ")";
  std::cout << std::scientific;
  std::cout << "\ndrift    = " << r.drift << "\n";
  std::cout << "distort  = " << r.volume_distortion << "\n";
  std::cout << "steps    = " << r.steps_taken << (r.blew_up ? " (blew up)" : "") << "\n";
  const bool ok = !r.blew_up && r.drift < a.tol_drift && r.volume_distortion < a.tol_distortion;
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for the hypersurfaces p_n = 0 of products of unipotent matrices"};
  app.require_subcommand(1);

  std::size_t build_n = 0;
  auto* build = app.add_subcommand("build", "Print p_n, its modification decomposition and M_n");
  build->add_option("n", build_n, "Level")->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a certificate suite and write a JSON report");
  verify->add_option("suite", va.suite, "family | forms | generation | homology | all")
      ->required()
      ->check(CLI::IsMember(report::suite_names()));
  verify->add_option("--n-max", va.n_max, "Largest level (all suites for 'all')");
  verify->add_option("--budget", va.budget, "Gröbner reduction steps per certificate");
  verify->add_option("--pool-budget", va.pool_budget, "Candidate fields per generation target");
  verify->add_option("--seed", va.seed, "Seed for sample points");
  verify->add_option("--degree-bound", va.degree_bound, "Generation coefficient degree at n = 3");
  verify->add_option("--tol-drift", va.tol_drift, "Flow drift tolerance");
  verify->add_option("--tol-distortion", va.tol_distortion, "Flow volume distortion tolerance");
  verify->add_option("--order", va.order, "Monomial order")->check(CLI::IsMember({"degrevlex", "lex", "deglex"}));
  verify->add_option("--config", va.config_path, "Config or report JSON to start from");
  verify->add_option("--report", va.report_path, "Report path")->capture_default_str();
  verify->add_flag("--tex", va.tex, "Print the homology tables as a LaTeX tabular");
  verify->add_flag("--serial", va.serial, "Run certificates one after another");

  std::size_t realize_n = 0;
  std::string realize_form;
  unsigned realize_degree = 3;
  std::size_t realize_pool = report::Config{}.pool_budget;
  auto* realize = app.add_subcommand("realize", "Realize d(alpha) by a bracket expression");
  realize->add_option("n", realize_n, "Level")->required();
  realize->add_option("form", realize_form, "An (n-3)-form, e.g. \"z2 dz3\"")->required();
  realize->add_option("--degree-bound", realize_degree, "Coefficient degree bound")->capture_default_str();
  realize->add_option("--pool-budget", realize_pool, "Candidate fields per target")->capture_default_str();

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "Integrate the flow of delta_ij from a seeded sample point");
  flow->add_option("n", fa.n, "Level")->required();
  flow->add_option("i", fa.i, "First index")->required();
  flow->add_option("j", fa.j, "Second index")->required();
  flow->add_option("--t", fa.t, "Final time")->capture_default_str();
  flow->add_option("--steps", fa.steps, "RK4 steps")->capture_default_str();
  flow->add_option("--seed", fa.seed, "Seed for the start point")->capture_default_str();
  flow->add_option("--point", fa.point, "Index of the sample point")->capture_default_str();
  flow->add_option("--tol-drift", fa.tol_drift, "Drift tolerance")->capture_default_str();
  flow->add_option("--tol-distortion", fa.tol_distortion, "Distortion tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*build) return cmd_build(build_n);
    if (*verify) return cmd_verify(va);
    if (*realize) return cmd_realize(realize_n, realize_form, realize_degree, realize_pool);
    if (*flow) return cmd_flow(fa);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const CertificateFailure& e) {
    std::cerr << "certificate failure: " << e.what() << "\n";
    return kFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

#include "vdpkit/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vdpkit/errors.hpp"
#include "vdpkit/expression.hpp"
#include "vdpkit/family.hpp"
#include "vdpkit/flow.hpp"
#include "vdpkit/forms.hpp"
#include "vdpkit/generation.hpp"
#include "vdpkit/homology.hpp"

namespace vdp::report {

using nlohmann::json;

namespace {

struct Outcome {
  Verdict verdict = Verdict::Pass;
  json payload = json::object();
};

struct Task {
  std::string module;
  std::string operation;
  json inputs;
  std::function<Outcome()> run;
};

Verdict pass_if(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

std::string order_name(OrderKind k) {
  switch (k) {
    case OrderKind::Degrevlex: return "degrevlex";
    case OrderKind::Lex: return "lex";
    case OrderKind::Deglex: return "deglex";
  }
  return "?";
}

json strings(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

json point_json(const std::vector<Rational>& x) {
  json out = json::array();
  for (const auto& v : x) out.push_back(to_string(v));
  return out;
}

forms::Point to_point(const std::vector<Rational>& x) {
  forms::Point z;
  for (const auto& v : x) z.emplace_back(v.get_d(), 0.0);
  return z;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

GroebnerOptions groebner(const Config& c) {
  GroebnerOptions o;
  o.budget = c.budget;
  o.order = c.order;
  return o;
}

// ------------------------------------------------------------------ family

void family_tasks(const Config& c, std::vector<Task>& out) {
  const GroebnerOptions go = groebner(c);
  const std::size_t top = c.family_n_max;
  const std::map<std::size_t, std::string> displayed{
      {3, "z1 + z3 + z1*z3*z2 - 1"}, {4, "z1*z2 - 1 + z4*(z1 + z3 + z1*z3*z2)"}};
  for (const auto& [n, text] : displayed) {
    if (n > top) continue;
    out.push_back({"family", "build_pn", {{"n", n}}, [n, text] {
                     const Polynomial p = family::build_pn(n);
                     const Polynomial expected = parse_polynomial(text, n);
                     return Outcome{pass_if(p == expected),
                                    {{"polynomial", to_string(p)}, {"expected", to_string(expected)}}};
                   }});
  }
  for (std::size_t n = 3; n <= top; ++n) {
    out.push_back({"family", "check_recursion", {{"n", n}}, [n] {
                     auto r = family::check_recursion(n);
                     return Outcome{pass_if(r.passed),
                                    {{"constant", r.constant}, {"p_n", to_string(r.from_matrix)}}};
                   }});
    out.push_back({"family", "check_fiber_equation", {{"n", n}}, [n] {
                     auto r = family::check_fiber_equation(n);
                     return Outcome{pass_if(r.passed),
                                    {{"constrained_entry", r.constrained_entry},
                                     {"target_value", r.target_value},
                                     {"matches_pn", r.matches_pn},
                                     {"determinant_one", r.determinant_one}}};
                   }});
    out.push_back({"family", "check_smooth", {{"n", n}}, [n, go] {
                     auto r = family::check_smooth(n, go);
                     return Outcome{pass_if(r.passed),
                                    {{"contains_one", r.passed},
                                     {"generators", r.generators},
                                     {"reductions", r.reductions},
                                     {"pairs", r.pairs}}};
                   }});
    out.push_back({"family", "modification_decomposition", {{"n", n}}, [n, go] {
                     auto r = family::modification_decomposition(n, go);
                     return Outcome{pass_if(r.passed),
                                    {{"f", to_string(r.record.f)},
                                     {"g", to_string(r.record.g)},
                                     {"y_variable", r.record.y_variable},
                                     {"identity_holds", r.identity_holds},
                                     {"center_dimension", r.center_dimension},
                                     {"expected_dimension", r.expected_dimension}}};
                   }});
    out.push_back({"family", "check_divisor_complement", {{"n", n}}, [n, go] {
                     auto r = family::check_divisor_complement(n, go);
                     return Outcome{pass_if(r.passed),
                                    {{"generators", strings(r.generators)},
                                     {"split_identity", r.split_identity},
                                     {"empty", r.empty},
                                     {"reductions", r.reductions}}};
                   }});
    if (n >= 4) {
      out.push_back({"family", "check_center_iso", {{"n", n}}, [n, go] {
                       auto r = family::check_center_iso(n, go);
                       return Outcome{pass_if(r.passed),
                                      {{"center", strings(r.center)},
                                       {"graph_generator", to_string(r.graph_generator)},
                                       {"ideals_equal", r.ideals_equal},
                                       {"dimension", r.dimension},
                                       {"expected_dimension", r.expected_dimension}}};
                     }});
    }
  }
  for (std::size_t n = 3; n <= std::min<std::size_t>(top, 6); ++n) {
    const std::size_t count = c.flow_points;
    const std::uint64_t seed = c.seed;
    out.push_back({"family", "sample_points", {{"n", n}, {"count", count}, {"seed", seed}}, [=] {
                     const Polynomial p = family::build_pn(n);
                     json pts = json::array();
                     bool on = true;
                     for (const auto& x : family::sample_points(n, count, seed)) {
                       on = on && eval(p, x) == 0;
                       pts.push_back(point_json(x));
                     }
                     return Outcome{pass_if(on), {{"points", pts}, {"on_surface", on}}};
                   }});
  }
}

// ------------------------------------------------------------------- forms

void forms_tasks(const Config& c, std::vector<Task>& out) {
  for (std::size_t n = 3; n <= c.forms_n_max; ++n) {
    out.push_back({"forms", "volume_atlas", {{"n", n}}, [n] {
                     const auto s = forms::Surface::level(n);
                     auto a = forms::volume_atlas(s);
                     return Outcome{pass_if(a.passed && a.involutive),
                                    {{"signs", a.signs}, {"involutive", a.involutive}}};
                   }});
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        out.push_back({"forms", "divergence_free", {{"n", n}, {"i", i}, {"j", j}}, [n, i, j] {
                         const auto s = forms::Surface::level(n);
                         const auto v = forms::delta(s, i, j);
                         const bool tangent = forms::is_tangent(s, v);
                         const bool free = tangent && forms::divergence_free(s, v);
                         return Outcome{pass_if(free),
                                        {{"field", forms::to_string(v)},
                                         {"tangent", tangent},
                                         {"theta", forms::to_string(s, forms::theta(s, v))},
                                         {"divergence_free", free}}};
                       }});
      }
    }
  }

  // Numeric evidence: delta_12 on X_3 from seeded sample points.
  const auto points = family::sample_points(3, c.flow_points, c.seed);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto x = points[k];
    const json inputs{{"n", 3}, {"i", 1}, {"j", 2}, {"point", k}, {"t", 1.0}, {"steps", c.flow_steps}};
    out.push_back({"forms", "flow_rk4", inputs, [x, c] {
                     const auto s = forms::Surface::level(3);
                     auto r = forms::flow_rk4(s, forms::delta(s, 1, 2), to_point(x), 1.0, c.flow_steps);
                     json end = json::array();
                     for (const auto& z : r.endpoint) end.push_back({z.real(), z.imag()});
                     const bool ok = !r.blew_up && r.drift < c.tol_drift && r.volume_distortion < c.tol_distortion;
                     return Outcome{pass_if(ok),
                                    {{"start", point_json(x)},
                                     {"endpoint", end},
                                     {"drift", number(r.drift)},
                                     {"volume_distortion", number(r.volume_distortion)},
                                     {"blew_up", r.blew_up}}};
                   }});
    out.push_back({"forms", "convergence_order", {{"n", 3}, {"i", 1}, {"j", 2}, {"point", k}, {"t", 1.0}}, [x] {
                     const auto s = forms::Surface::level(3);
                     auto e = forms::convergence_order(s, forms::delta(s, 1, 2), to_point(x), 1.0);
                     json errs = json::array();
                     for (double v : e.endpoint_errors) errs.push_back(number(v));
                     // NaN: every error sits at the rounding floor, the scheme is exact here.
                     const bool exact = std::isnan(e.order);
                     const bool ok = exact || (e.order >= 3.5 && e.order <= 4.5);
                     return Outcome{pass_if(ok),
                                    {{"exact", exact},
                                     {"steps", e.steps},
                                     {"reference_steps", e.reference_steps},
                                     {"endpoint_errors", errs},
                                     {"order", number(e.order)},
                                     {"drift_order", number(e.drift_order)}}};
                   }});
  }
}

// At least half of the starts must give a measured order, all of them in range.
void convergence_summary(const Config& c, std::vector<Record>& records) {
  std::size_t measured = 0, in_range = 0, exact = 0;
  double lo = 0, hi = 0;
  for (const auto& r : records) {
    if (r.module != "forms" || r.operation != "convergence_order" || r.verdict == Verdict::BudgetExceeded) continue;
    if (r.payload.at("exact").get<bool>()) {
      ++exact;
      continue;
    }
    const double order = r.payload.at("order").is_null() ? 0.0 : r.payload.at("order").get<double>();
    lo = measured == 0 ? order : std::min(lo, order);
    hi = measured == 0 ? order : std::max(hi, order);
    ++measured;
    if (order >= 3.5 && order <= 4.5) ++in_range;
  }
  Record s;
  s.module = "forms";
  s.operation = "convergence_summary";
  s.inputs = {{"n", 3}, {"i", 1}, {"j", 2}, {"points", c.flow_points}};
  s.verdict = pass_if(2 * measured >= c.flow_points && in_range == measured);
  s.payload = {{"measured", measured}, {"exact", exact}, {"in_range", in_range}, {"min_order", lo}, {"max_order", hi}};
  records.push_back(std::move(s));
}

// -------------------------------------------------------------- generation

void generation_tasks(const Config& c, std::vector<Task>& out) {
  generation::GenerationOptions opts;
  opts.degree_bound = c.degree_bound + 1;
  opts.max_pool = c.pool_budget;
  // Parallelism lives at the record level.
  opts.execution = Execution::Serial;
  for (std::size_t n = 3; n <= c.generation_n_max; ++n) {
    const unsigned bound = c.generation_degree(n);
    for (const auto& alpha : generation::monomial_generators(n, bound)) {
      const std::string text = to_string(alpha);
      out.push_back({"generation", "realize_exact", {{"n", n}, {"alpha", text}}, [n, alpha, opts] {
                       const auto s = forms::Surface::level(n);
                       auto cert = generation::realize_exact(s, alpha, opts);
                       json weights = json::array();
                       for (const auto& w : cert.weights) weights.push_back(to_string(w));
                       json p{{"d_alpha", to_string(cert.d_alpha)},
                              {"expr", generation::to_string(cert.expr)},
                              {"residual", generation::residual_string(cert)},
                              {"tier", generation::tier_name(cert.tier)},
                              {"weights", weights},
                              {"divergence_free", cert.divergence_free}};
                       if (!cert.failure.empty()) p["failure"] = cert.failure;
                       return Outcome{pass_if(cert.valid), p};
                     }});
    }
  }
}

// Batch summaries derived from the individual certificates.
void generation_summaries(const Config& c, std::vector<Record>& records) {
  std::map<std::size_t, std::map<std::string, std::size_t>> counts;
  for (const auto& r : records) {
    if (r.module != "generation" || r.operation != "realize_exact") continue;
    auto& k = counts[r.inputs.at("n").get<std::size_t>()];
    ++k[verdict_name(r.verdict)];
    if (r.payload.contains("tier") && r.payload.at("tier") == "widened") ++k["widened"];
  }
  for (auto& [n, k] : counts) {
    Record s;
    s.module = "generation";
    s.operation = "verify_generation";
    s.inputs = {{"n", n}, {"degree_bound", c.generation_degree(n)}};
    s.verdict = k["fail"] ? Verdict::Fail : k["budget_exceeded"] ? Verdict::BudgetExceeded : Verdict::Pass;
    s.payload = {{"passed", k["pass"]},
                 {"failed", k["fail"]},
                 {"budget_exceeded", k["budget_exceeded"]},
                 {"widened", k["widened"]},
                 {"header",
                  {"targets are exact forms d(alpha); closed and exact (n-2)-forms agree because "
                   "H_{n-2}(X_n) = 0",
                   "Theta(xi) = iota_xi omega in chart n with omega glued from the chart forms"}}};
    records.push_back(std::move(s));
  }
}

// ---------------------------------------------------------------- homology

json table_json(const homology::HomologyTable& t) {
  json groups = json::array();
  for (int r : t.ranks) groups.push_back(homology::group_name(r));
  json j{{"label", t.label()}, {"ranks", t.ranks}, {"groups", groups}, {"euler", t.euler_characteristic()}};
  if (!t.pi1.empty()) j["pi1"] = t.pi1;
  if (!t.assumptions.empty()) j["assumptions"] = t.assumptions;
  if (!t.trace.empty()) j["trace"] = t.trace;
  return j;
}

void homology_tasks(const Config& c, std::vector<Task>& out) {
  const std::size_t top = c.homology_n_max;
  out.push_back({"homology", "base_tables", json::object(), [] {
                   // Transcribed groups and Euler characteristics of the base cases.
                   const std::vector<std::pair<std::vector<int>, int>> expected{
                       {{1, 0, 1}, 2}, {{1, 1, 1}, 1}, {{1, 0, 0, 1}, 0}, {{1, 0, 1, 0, 1}, 3}, {{1, 0, 1, 1, 0, 1}, 0}};
                   auto tables = homology::base_tables();
                   bool ok = tables.size() == expected.size();
                   json js = json::array();
                   for (std::size_t k = 0; k < tables.size() && ok; ++k) {
                     ok = tables[k].ranks == expected[k].first &&
                          tables[k].euler_characteristic() == expected[k].second;
                     js.push_back(table_json(tables[k]));
                   }
                   ok = ok && homology::euler(5).e == 3 && homology::euler(6).e == 0;
                   return Outcome{pass_if(ok), {{"tables", js}}};
                 }});
  for (std::size_t n = 3; n <= top; ++n) {
    out.push_back({"homology", "euler", {{"n", n}}, [n] {
                     auto led = homology::euler(n);
                     const bool ok = led.consistent && homology::closed_form(n).euler_characteristic() == led.e;
                     return Outcome{pass_if(ok),
                                    {{"e", led.e}, {"e0", led.e0}, {"closed", led.closed}, {"trace", led.trace}}};
                   }});
    if (n < 5) continue;
    out.push_back({"homology", "table_recursive", {{"n", n}}, [n] {
                     auto t = homology::table_recursive(n);
                     auto cf = homology::closed_form(n);
                     const bool ok = t == cf && t.rank(n - 2) == 0 && t.rank(0) == 1 && t.rank(1) == 0;
                     return Outcome{pass_if(ok), {{"recursive", table_json(t)}, {"closed_form", table_json(cf)}}};
                   }});
  }
  for (auto [k, l] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {2, 1}, {3, 2}}) {
    out.push_back({"homology", "xpq_table", {{"k", k}, {"l", l}}, [k, l] {
                     auto t = homology::xpq_table(k, l);
                     const bool ok = t.ranks == std::vector<int>{1, 0, static_cast<int>(k + l - 1)} &&
                                     t.euler_characteristic() == static_cast<int>(k + l);
                     return Outcome{pass_if(ok), table_json(t)};
                   }});
  }
  if (top >= 6) {
    out.push_back({"homology", "cross_check", {{"n_max", top}}, [top] {
                     auto cc = homology::cross_check(top);
                     json rows = json::array();
                     for (const auto& r : cc.rows) {
                       rows.push_back({{"n", r.n},
                                       {"euler", r.euler},
                                       {"tables_agree", r.tables_agree},
                                       {"euler_agrees", r.euler_agrees},
                                       {"codim_two_vanishes", r.codim_two_vanishes}});
                     }
                     return Outcome{pass_if(cc.passed), {{"rows", rows}}};
                   }});
  }
}

}  // namespace

// ------------------------------------------------------------------ Config

void Config::set_n_max(std::size_t n) {
  family_n_max = forms_n_max = generation_n_max = homology_n_max = n;
}

unsigned Config::generation_degree(std::size_t n) const {
  const long d = static_cast<long>(degree_bound) + 3 - static_cast<long>(n);
  return static_cast<unsigned>(std::max(1L, d));
}

void Config::validate() const {
  auto level = [](std::size_t v, const char* name) {
    if (v < 3) throw std::invalid_argument(std::string(name) + " must be at least 3");
  };
  level(family_n_max, "family n_max");
  level(forms_n_max, "forms n_max");
  level(generation_n_max, "generation n_max");
  level(homology_n_max, "homology n_max");
  if (family_n_max > 20 || forms_n_max > 20 || generation_n_max > 20) {
    throw std::invalid_argument("n_max above 20 is only supported by the homology suite");
  }
  if (budget == 0 || pool_budget == 0 || degree_bound == 0 || flow_points == 0 || flow_steps == 0) {
    throw std::invalid_argument("budgets, degree bound and flow sizes must be positive");
  }
  if (!(tol_drift > 0) || !(tol_distortion > 0)) throw std::invalid_argument("tolerances must be positive");
}

json Config::to_json() const {
  return {{"n_max",
           {{"family", family_n_max}, {"forms", forms_n_max}, {"generation", generation_n_max}, {"homology", homology_n_max}}},
          {"budget", budget},
          {"pool_budget", pool_budget},
          {"seed", seed},
          {"degree_bound", degree_bound},
          {"tol_drift", tol_drift},
          {"tol_distortion", tol_distortion},
          {"order", order_name(order)},
          {"flow_points", flow_points},
          {"flow_steps", flow_steps}};
}

Config Config::from_json(const json& in) {
  const json& j = in.contains("schema") && in.contains("config") ? in.at("config") : in;
  Config c;
  if (j.contains("n_max")) {
    const json& n = j.at("n_max");
    c.family_n_max = n.value("family", c.family_n_max);
    c.forms_n_max = n.value("forms", c.forms_n_max);
    c.generation_n_max = n.value("generation", c.generation_n_max);
    c.homology_n_max = n.value("homology", c.homology_n_max);
  }
  c.budget = j.value("budget", c.budget);
  c.pool_budget = j.value("pool_budget", c.pool_budget);
  c.seed = j.value("seed", c.seed);
  c.degree_bound = j.value("degree_bound", c.degree_bound);
  c.tol_drift = j.value("tol_drift", c.tol_drift);
  c.tol_distortion = j.value("tol_distortion", c.tol_distortion);
  if (j.contains("order")) c.order = parse_order_kind(j.at("order").get<std::string>());
  c.flow_points = j.value("flow_points", c.flow_points);
  c.flow_steps = j.value("flow_steps", c.flow_steps);
  return c;
}

// ------------------------------------------------------------------ Report

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

json Record::to_json() const {
  return {{"module", module}, {"operation", operation}, {"inputs", inputs}, {"verdict", verdict_name(verdict)},
          {"payload", payload}};
}

std::size_t Report::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [v](const Record& r) { return r.verdict == v; }));
}

Verdict Report::overall() const {
  if (count(Verdict::Fail) > 0) return Verdict::Fail;
  if (count(Verdict::BudgetExceeded) > 0) return Verdict::BudgetExceeded;
  return Verdict::Pass;
}

int Report::exit_code() const {
  switch (overall()) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::BudgetExceeded: return 3;
  }
  return 1;
}

json Report::to_json() const {
  json recs = json::array();
  for (const auto& r : records) recs.push_back(r.to_json());
  return {{"schema", kSchema},
          {"version", version},
          {"config", config.to_json()},
          {"records", recs},
          {"counts",
           {{"pass", count(Verdict::Pass)},
            {"fail", count(Verdict::Fail)},
            {"budget_exceeded", count(Verdict::BudgetExceeded)}}},
          {"overall", verdict_name(overall())}};
}

std::string Report::summary() const {
  std::map<std::string, std::map<std::string, std::array<std::size_t, 3>>> table;
  for (const auto& r : records) ++table[r.module][r.operation][static_cast<int>(r.verdict)];
  std::ostringstream o;
  for (const auto& [module, ops] : table) {
    o << module << "\n";
    for (const auto& [op, k] : ops) {
      o << "  " << op << std::string(op.size() < 28 ? 28 - op.size() : 1, ' ') << k[0] << " pass";
      if (k[1]) o << ", " << k[1] << " fail";
      if (k[2]) o << ", " << k[2] << " budget exceeded";
      o << "\n";
    }
  }
  for (const auto& r : records) {
    if (r.verdict == Verdict::Pass) continue;
    o << verdict_name(r.verdict) << ": " << r.module << "." << r.operation << " " << r.inputs.dump();
    if (r.payload.contains("error")) o << " (" << r.payload.at("error").get<std::string>() << ")";
    if (r.payload.contains("failure")) o << " (" << r.payload.at("failure").get<std::string>() << ")";
    o << "\n";
  }
  o << "overall: " << verdict_name(overall()) << " (" << records.size() << " records)\n";
  return o.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"family", "forms", "generation", "homology", "all"};
  return names;
}

Report run_suite(const std::string& suite, const Config& config) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  config.validate();
  std::vector<Task> tasks;
  const bool all = suite == "all";
  if (all || suite == "family") family_tasks(config, tasks);
  if (all || suite == "forms") forms_tasks(config, tasks);
  if (all || suite == "generation") generation_tasks(config, tasks);
  if (all || suite == "homology") homology_tasks(config, tasks);

  Report report;
  report.config = config;
  report.records = parallel_map(
      tasks.size(),
      [&](std::size_t k) {
        const Task& t = tasks[k];
        Record r{t.module, t.operation, t.inputs, Verdict::Pass, json::object()};
        try {
          Outcome o = t.run();
          r.verdict = o.verdict;
          r.payload = std::move(o.payload);
        } catch (const BudgetExceeded& e) {
          r.verdict = Verdict::BudgetExceeded;
          r.payload = {{"error", e.what()}};
        }
        return r;
      },
      config.execution);
  if (all || suite == "forms") convergence_summary(config, report.records);
  if (all || suite == "generation") generation_summaries(config, report.records);
  std::sort(report.records.begin(), report.records.end(), [](const Record& a, const Record& b) {
    if (a.module != b.module) return a.module < b.module;
    if (a.operation != b.operation) return a.operation < b.operation;
    return a.inputs < b.inputs;
  });
  return report;
}

}  // namespace vdp::report

// Runs the ten acceptance criteria and prints one line per criterion.
// Exit status is the number of failed criteria.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "vdpkit/expression.hpp"
#include "vdpkit/family.hpp"
#include "vdpkit/flow.hpp"
#include "vdpkit/forms.hpp"
#include "vdpkit/generation.hpp"
#include "vdpkit/groebner.hpp"
#include "vdpkit/homology.hpp"
#include "vdpkit/report.hpp"

using namespace vdp;
using vdp::testing::Gen;
using vdp::testing::kInstances;

namespace {

// Keeps the first failure of a criterion.
struct Check {
  bool ok = true;
  std::string detail;
  void operator()(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string at(const char* what, std::size_t n) { return std::string(what) + " n=" + std::to_string(n); }

bool ranks_are(const homology::HomologyTable& t, const std::vector<int>& expected) {
  for (std::size_t j = 0; j < expected.size() + 4; ++j) {
    if (t.rank(j) != (j < expected.size() ? expected[j] : 0)) return false;
  }
  return true;
}

void construction(Check& c) {
  c(family::build_pn(3) == parse_polynomial("z1 + z3 + z1*z3*z2 - 1", 3), "build_pn(3)");
  c(family::build_pn(4) == parse_polynomial("z1*z2 - 1 + z4*(z1 + z3 + z1*z3*z2)", 4), "build_pn(4)");
  for (std::size_t n = 5; n <= 10; ++n) c(family::check_recursion(n).passed, at("recursion", n));
  for (std::size_t n = 3; n <= 10; ++n) {
    c(family::build_matrix(n).determinant() == Polynomial::constant(n, 1), at("det M", n));
  }
}

void smoothness(Check& c) {
  for (std::size_t n = 3; n <= 6; ++n) c(family::check_smooth(n).passed, at("smooth", n));
}

void emptiness(Check& c) {
  for (std::size_t n = 5; n <= 7; ++n) {
    auto cert = family::check_divisor_complement(n);
    c(cert.empty && cert.passed, at("divisor complement", n));
  }
}

void volume_form(Check& c) {
  for (std::size_t n = 3; n <= 4; ++n) {
    const auto s = forms::Surface::level(n);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (i != j) c(forms::chart_compatibility(s, i, j).passed, at("chart pair", n));
      }
    }
    auto atlas = forms::volume_atlas(s);
    c(atlas.passed && atlas.involutive, at("atlas", n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) c(atlas.signs[i][j] * atlas.signs[j][i] == 1, at("sign table", n));
    }
  }
}

void divergence(Check& c) {
  for (std::size_t n = 3; n <= 4; ++n) {
    const auto s = forms::Surface::level(n);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) c(forms::divergence_free(s, forms::delta(s, i, j)), at("delta", n));
    }
  }
  const auto s5 = forms::Surface::level(5);
  for (auto [i, j] : {std::pair<std::size_t, std::size_t>{1, 2}, {3, 4}, {4, 5}}) {
    c(forms::divergence_free(s5, forms::delta(s5, i, j)), at("delta", 5));
  }
}

void generation_battery(Check& c) {
  for (auto [n, degree] : {std::pair<std::size_t, unsigned>{3, 2}, {4, 1}}) {
    auto batch = generation::verify_generation(n, degree);
    c(batch.failed == 0 && batch.passed == batch.certificates.size() && !batch.certificates.empty(),
      at("verify_generation", n));
    for (const auto& cert : batch.certificates) {
      c(cert.valid && cert.divergence_free && cert.residual.empty(), at("nonzero residual", n));
    }
  }
}

void homology_tables(Check& c) {
  auto b = homology::base_tables();
  c(b.size() == 5, "base table count");
  if (b.size() == 5) {
    c(ranks_are(b[0], {1, 0, 1}), "X_3");
    c(ranks_are(b[1], {1, 1, 1}), "X_3^0");
    c(ranks_are(b[2], {1, 0, 0, 1}), "X_4");
    c(ranks_are(b[3], {1, 0, 1, 0, 1}), "X_5");
    c(ranks_are(b[4], {1, 0, 1, 1, 0, 1}), "X_6");
  }
  for (std::size_t n = 5; n <= 20; ++n) {
    auto t = homology::table_recursive(n);
    c(t == homology::closed_form(n), at("recursive vs closed", n));
    auto e = homology::euler(n);
    c(e.consistent && t.euler_characteristic() == e.e, at("euler", n));
    c(e.e == (n % 2 ? static_cast<long long>((n + 1) / 2) : 0), at("euler closed form", n));
    c(t.rank(n - 2) == 0, at("codimension two", n));
  }
  c(homology::euler(5).e == 3 && homology::euler(6).e == 0, "euler(5), euler(6)");
  c(homology::cross_check(20).passed, "cross check");
}

void xpq(Check& c) {
  for (auto [k, l] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 1}, {3, 2}}) {
    auto t = homology::xpq_table(k, l);
    c(ranks_are(t, {1, 0, static_cast<int>(k + l - 1)}), "xpq ranks");
    c(t.euler_characteristic() == static_cast<int>(k + l), "xpq euler");
  }
}

void flow_evidence(Check& c) {
  const report::Config config;
  const auto s = forms::Surface::level(3);
  const auto v = forms::delta(s, 1, 2);
  std::size_t measured = 0;
  auto points = family::sample_points(3, 5, config.seed);
  c(points.size() == 5, "sample points");
  for (const auto& x : points) {
    forms::Point z;
    for (const auto& q : x) z.emplace_back(q.get_d(), 0.0);
    auto r = forms::flow_rk4(s, v, z, 1.0, 1000);
    c(!r.blew_up && r.drift < 1e-9, "drift");
    c(r.volume_distortion < 1e-6, "volume distortion");
    auto e = forms::convergence_order(s, v, z, 1.0);
    // NaN marks a start where RK4 is exact; every error is at the rounding floor.
    if (std::isnan(e.order)) continue;
    ++measured;
    c(e.order >= 3.5 && e.order <= 4.5, "order " + std::to_string(e.order));
  }
  c(2 * measured >= points.size(), "too few measured orders");
}

void properties(Check& c) {
  {
    Gen gen;
    for (int k = 0; k < kInstances; ++k) {
      const std::size_t n = static_cast<std::size_t>(gen.integer(1, 4));
      Polynomial a = gen.polynomial(n), b = gen.polynomial(n), d = gen.polynomial(n);
      c(a + b == b + a && a * b == b * a, "commutativity");
      c((a + b) + d == a + (b + d) && (a * b) * d == a * (b * d), "associativity");
      c(a * (b + d) == a * b + a * d, "distributivity");
      c(a - a == Polynomial(n) && a * Polynomial::constant(n, 1) == a, "identities");
    }
  }
  {
    Gen gen;
    for (int k = 0; k < kInstances; ++k) {
      const std::size_t n = static_cast<std::size_t>(gen.integer(3, 4));
      const auto s = forms::Surface::level(n);
      const std::size_t chart = static_cast<std::size_t>(gen.integer(0, static_cast<long>(n)));
      const std::size_t degree = static_cast<std::size_t>(gen.integer(0, static_cast<long>(n) - 3));
      auto f = forms::ChartForm::zero(n, chart, degree);
      for (DzMask m = 0; m < (DzMask{1} << n); ++m) {
        if (static_cast<std::size_t>(std::popcount(m)) != degree) continue;
        if (chart != 0 && (m & (DzMask{1} << (chart - 1)))) continue;
        Exponent den;
        if (chart != 0) den = Exponent::variable(chart, static_cast<std::uint16_t>(gen.integer(0, 2)));
        f.add(m, forms::FormCoefficient{gen.polynomial(n, 3, 2), den}, s);
      }
      c(forms::vanishes_on(s, forms::exterior_derivative(s, forms::exterior_derivative(s, f))), "d of d");
    }
  }
  {
    Gen gen;
    const auto s = forms::Surface::level(3);
    auto field = [&] {
      auto v = forms::VectorField::zero(3);
      for (std::size_t i = 1; i <= 3; ++i) {
        for (std::size_t j = i + 1; j <= 3; ++j) {
          if (gen.integer(0, 2) != 0) v += gen.polynomial(3, 2, 1) * forms::delta(s, i, j);
        }
      }
      return v;
    };
    for (int k = 0; k < kInstances; ++k) {
      auto x = field(), y = field(), z = field();
      using forms::lie_bracket;
      c(lie_bracket(x, y) == forms::VectorField::zero(3) - lie_bracket(y, x), "antisymmetry");
      auto jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                 lie_bracket(z, lie_bracket(x, y));
      c(jac.is_zero(), "Jacobi");
    }
  }
  {
    Gen gen;
    const Polynomial p = family::build_pn(3);
    auto gb = buchberger(Ideal(3, {p}), MonomialOrder::degrevlex(3));
    for (int k = 0; k < kInstances; ++k) {
      Polynomial a = gen.polynomial(3), b = gen.polynomial(3), h = gen.polynomial(3);
      Rational q = gen.rational();
      c(normal_form(a + q * b, gb) == normal_form(a, gb) + q * normal_form(b, gb), "normal form linearity");
      c(normal_form(a + h * p, gb) == normal_form(a, gb), "normal form modulo p");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"construction fidelity", construction},
      {"smoothness certificates", smoothness},
      {"emptiness certificates", emptiness},
      {"volume form atlas", volume_form},
      {"divergence-free generators", divergence},
      {"generation battery", generation_battery},
      {"homology tables", homology_tables},
      {"X_{p,q} tables", xpq},
      {"numeric flow evidence", flow_evidence},
      {"property suites", properties},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(c);
    } catch (const std::exception& e) {
      c(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%-4s %2d %-28s %8.2fs%s%s\n", c.ok ? "PASS" : "FAIL", index, name, secs,
                c.ok ? "" : "  ", c.detail.c_str());
    if (!c.ok) ++failed;
  }
  std::fflush(stdout);
  return failed;
}

#include "doctest.h"

#include <stdexcept>

#include "generators.hpp"
#include "vdpkit/expression.hpp"
#include "vdpkit/polynomial.hpp"

using namespace vdp;
using vdp::testing::Gen;
using vdp::testing::kInstances;

TEST_CASE("constructors and basic queries") {
  Polynomial z1 = Polynomial::variable(3, 1);
  Polynomial z3 = Polynomial::variable(3, 3);
  Polynomial p = z1 * z3 + Polynomial::constant(3, Rational(3, 2));
  CHECK(p.size() == 2);
  CHECK(p.total_degree() == 2);
  CHECK(p.degree_in(2) == 0);
  CHECK(p.constant_term() == Rational(3, 2));
  CHECK(p.uses_variable(1));
  CHECK_FALSE(p.uses_variable(2));
  CHECK(Polynomial(3).is_zero());
  CHECK(Polynomial::constant(3, 0).is_zero());
  CHECK_THROWS_AS(Polynomial::variable(3, 0), std::out_of_range);
  CHECK_THROWS_AS(Polynomial::variable(3, 4), std::out_of_range);
}

TEST_CASE("ring mismatch is rejected") {
  CHECK_THROWS_AS(Polynomial::variable(2, 1) + Polynomial::variable(3, 1), std::invalid_argument);
}

TEST_CASE("embed and restrict") {
  Polynomial p = parse_polynomial("z1*z2 - 1", 2);
  Polynomial q = p.embed(4);
  CHECK(q.nvars() == 4);
  CHECK(q.restrict_to(2) == p);
  CHECK_THROWS(parse_polynomial("z3", 3).restrict_to(2));
}

TEST_CASE("partial derivatives and substitution") {
  Polynomial p = parse_polynomial("z1 + z3 + z1*z2*z3 - 1", 3);
  CHECK(partial_derivative(p, 1) == parse_polynomial("1 + z2*z3", 3));
  CHECK(partial_derivative(p, 2) == parse_polynomial("z1*z3", 3));
  CHECK(partial_derivative(p, 3) == parse_polynomial("1 + z1*z2", 3));
  CHECK(substitute(p, 3, parse_polynomial("z1 + 1", 3)) ==
        parse_polynomial("z1 + z1 + 1 + z1*z2*(z1 + 1) - 1", 3));
  CHECK(pow(parse_polynomial("z1 + 1", 1), 3) == parse_polynomial("z1^3 + 3z1^2 + 3z1 + 1", 1));
}

TEST_CASE("divide_exact and remainder") {
  Polynomial a = parse_polynomial("z1*z2 - 1", 3);
  Polynomial b = parse_polynomial("z3^2 + z1 + 2", 3);
  auto q = divide_exact(a * b, a);
  REQUIRE(q);
  CHECK(*q == b);
  CHECK_FALSE(divide_exact(a * b + Polynomial::constant(3, 1), a));
  CHECK(remainder(a * b, a).is_zero());
  CHECK_THROWS_AS(divide_exact(a, Polynomial(3)), std::invalid_argument);
}

TEST_CASE("eval") {
  Polynomial p = parse_polynomial("z1 + z3 + z1*z2*z3 - 1", 3);
  std::vector<Rational> x{Rational(1, 2), 2, Rational(1, 4)};
  CHECK(eval(p, x) == Rational(1, 2) + Rational(1, 4) + Rational(1, 4) - 1);
  std::vector<Rational> short_point{1, 2};
  CHECK_THROWS(eval(p, short_point));
}

TEST_CASE("monomial orders") {
  auto e = [](std::initializer_list<int> xs) {
    Exponent out;
    std::size_t i = 0;
    for (int x : xs) out.set(i++, static_cast<std::uint16_t>(x));
    return out;
  };
  auto drl = MonomialOrder::degrevlex(3);
  auto lex = MonomialOrder::lex(3);
  // z3 > z2 > z1 in both
  CHECK(drl.less(e({1, 0, 0}), e({0, 1, 0})));
  CHECK(lex.less(e({0, 1, 0}), e({0, 0, 1})));
  // degree first under degrevlex
  CHECK(drl.less(e({0, 0, 1}), e({1, 1, 0})));
  CHECK(lex.less(e({1, 1, 0}), e({0, 0, 1})));
  // degrevlex: z2^2 vs z1*z3; the one with smaller z1 power is larger
  CHECK(drl.less(e({1, 0, 1}), e({0, 2, 0})));
  CHECK(drl.compare(e({1, 1, 1}), e({1, 1, 1})) == 0);
  CHECK(parse_order_kind("lex") == OrderKind::Lex);
  CHECK_THROWS(parse_order_kind("grevlex2"));
}

TEST_CASE("property: commutative ring axioms") {
  Gen gen;
  for (int k = 0; k < kInstances; ++k) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 4));
    Polynomial a = gen.polynomial(n), b = gen.polynomial(n), c = gen.polynomial(n);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Polynomial(n));
    CHECK(a * Polynomial::constant(n, 1) == a);
    CHECK(a + Polynomial(n) == a);
  }
}

TEST_CASE("property: mixed partial derivatives commute") {
  Gen gen;
  for (int k = 0; k < kInstances; ++k) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(2, 4));
    Polynomial a = gen.polynomial(n, 6, 4);
    std::size_t i = static_cast<std::size_t>(gen.integer(1, static_cast<long>(n)));
    std::size_t j = static_cast<std::size_t>(gen.integer(1, static_cast<long>(n)));
    CHECK(partial_derivative(partial_derivative(a, i), j) ==
          partial_derivative(partial_derivative(a, j), i));
    // Leibniz
    Polynomial b = gen.polynomial(n);
    CHECK(partial_derivative(a * b, i) ==
          partial_derivative(a, i) * b + a * partial_derivative(b, i));
  }
}

TEST_CASE("property: divide_exact inverts multiplication") {
  Gen gen;
  for (int k = 0; k < kInstances; ++k) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 4));
    Polynomial a = gen.polynomial(n), b = gen.polynomial(n);
    if (b.is_zero()) continue;
    auto q = divide_exact(a * b, b);
    REQUIRE(q);
    CHECK(*q == a);
  }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  Gen gen;
  for (int k = 0; k < kInstances; ++k) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 4));
    Polynomial a = gen.polynomial(n), b = gen.polynomial(n);
    auto x = gen.point(n);
    CHECK(eval(a + b, x) == eval(a, x) + eval(b, x));
    CHECK(eval(a * b, x) == eval(a, x) * eval(b, x));
    std::vector<std::complex<double>> xc;
    for (auto& v : x) xc.emplace_back(v.get_d(), 0.0);
    CHECK(std::abs(eval(a * b, xc) - eval(a * b, x).get_d()) < 1e-9);
  }
}

TEST_CASE("property: substitution commutes with evaluation") {
  Gen gen;
  for (int k = 0; k < kInstances; ++k) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(2, 4));
    Polynomial a = gen.polynomial(n), q = gen.polynomial(n, 3, 2);
    std::size_t i = static_cast<std::size_t>(gen.integer(1, static_cast<long>(n)));
    auto x = gen.point(n);
    auto y = x;
    y[i - 1] = eval(q, x);
    CHECK(eval(substitute(a, i, q), x) == eval(a, y));
  }
}

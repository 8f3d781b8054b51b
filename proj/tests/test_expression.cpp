#include "doctest.h"

#include "generators.hpp"
#include "vdpkit/errors.hpp"
#include "vdpkit/expression.hpp"

using namespace vdp;
using vdp::testing::Gen;
using vdp::testing::kInstances;

TEST_CASE("polynomial grammar") {
  CHECK(to_string(parse_polynomial("z1*z2*z3 + z1 + z3 - 1", 3)) == "z1 + z3 + z1*z2*z3 - 1");
  CHECK(to_string(parse_polynomial("3/2*z1 - z2^2", 2)) == "3/2*z1 - z2^2");
  CHECK(to_string(parse_polynomial("2 z1 z2", 2)) == "2*z1*z2");
  CHECK(to_string(parse_polynomial("(z1 + 1)^2", 1)) == "2*z1 + z1^2 + 1");
  CHECK(to_string(parse_polynomial("-z1 - 1/2", 1)) == "-z1 - 1/2");
  CHECK(to_string(parse_polynomial("0", 3)) == "0");
  CHECK(parse_polynomial("z1/2", 1) == parse_polynomial("1/2*z1", 1));
}

TEST_CASE("polynomial grammar errors") {
  CHECK_THROWS_AS(parse_polynomial("z4", 3), ParseError);
  CHECK_THROWS_AS(parse_polynomial("z0", 3), ParseError);
  CHECK_THROWS_AS(parse_polynomial("z1 +", 3), ParseError);
  CHECK_THROWS_AS(parse_polynomial("z1/z2", 3), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(z1", 3), ParseError);
  CHECK_THROWS_AS(parse_polynomial("z1 # 2", 3), ParseError);
  CHECK_THROWS_AS(parse_polynomial("z1/0", 3), ParseError);
}

TEST_CASE("form grammar") {
  PolyForm f = parse_form("z2 dz1^dz3 + 3/2 dz3^dz1", 3);
  CHECK(f.degree == 2);
  REQUIRE(f.coefficients.size() == 1);
  CHECK(f.coefficients.at(0b101) == parse_polynomial("z2 - 3/2", 3));
  CHECK(to_string(f) == "(z2 - 3/2) dz1^dz3");

  CHECK(parse_form("z1 d z2 ^ d z2", 3).is_zero());
  CHECK(to_string(parse_form("-dz2 + z1*z3 dz1", 3)) == "z1*z3 dz1 - dz2");
  CHECK(parse_form("z1*z2", 3).degree == 0);
  CHECK(parse_form("0", 3, 2).degree == 2);
  CHECK_THROWS_AS(parse_form("dz1 + dz1^dz2", 3), ParseError);
  CHECK_THROWS_AS(parse_form("dz1^dz2", 3, 1), ParseError);
  CHECK_THROWS_AS(parse_form("dz1^", 3), ParseError);
}

TEST_CASE("property: print then parse is the identity") {
  Gen gen;
  for (int k = 0; k < kInstances; ++k) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 5));
    Polynomial p = gen.polynomial(n, 6, 4);
    CHECK(parse_polynomial(to_string(p), n) == p);
    CHECK(parse_polynomial(to_string(p, MonomialOrder::lex(n)), n) == p);

    PolyForm f;
    f.nvars = n;
    f.degree = 1;
    for (std::size_t i = 1; i <= n; ++i) {
      Polynomial c = gen.polynomial(n, 3, 2);
      if (!c.is_zero()) f.coefficients.emplace(DzMask{1} << (i - 1), c);
    }
    CHECK(parse_form(to_string(f), n, 1) == f);
  }
}

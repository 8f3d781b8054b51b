#include "doctest.h"

#include "vdpkit/expression.hpp"
#include "vdpkit/family.hpp"

using namespace vdp;
using namespace vdp::family;

TEST_CASE("low members of the family") {
  CHECK(to_string(build_pn(3)) == "z1 + z3 + z1*z2*z3 - 1");
  CHECK(build_pn(4) == parse_polynomial("z1*z2 - 1 + z4*(z1 + z3 + z1*z2*z3 - 1 + 1)", 4));
  CHECK(to_string(level_polynomial(1)) == "z1 - 1");
  CHECK(to_string(level_polynomial(2)) == "z1*z2 - 1");
  CHECK_THROWS(build_pn(2));
  auto m = build_matrix(3);
  CHECK(to_string(m.at(1, 2)) == "z2");
  CHECK(to_string(m.at(2, 2)) == "z1*z2 + 1");
}

TEST_CASE("degrees and multilinearity") {
  for (std::size_t n = 3; n <= 10; ++n) {
    Polynomial p = build_pn(n);
    CHECK(p.total_degree() == n);
    for (std::size_t i = 1; i <= n; ++i) CHECK(p.degree_in(i) == 1);
  }
}

TEST_CASE("recursion and fibre equation hold up to n = 10") {
  for (std::size_t n = 3; n <= 10; ++n) {
    CHECK(check_recursion(n).passed);
    auto fib = check_fiber_equation(n);
    CHECK(fib.passed);
    CHECK(fib.determinant_one);
  }
}

TEST_CASE("smoothness") {
  for (std::size_t n = 3; n <= 5; ++n) CHECK(check_smooth(n).passed);
}

TEST_CASE("affine modification data") {
  auto d3 = modification_decomposition(3);
  CHECK(d3.passed);
  CHECK(to_string(d3.record.f) == "z1*z3");
  CHECK(to_string(d3.record.g) == "-z1 - z3 + 1");
  CHECK(d3.record.y_variable == 2);
  for (std::size_t n = 4; n <= 6; ++n) {
    auto d = modification_decomposition(n);
    CHECK(d.passed);
    CHECK(d.center_dimension == n - 3);
  }
}

TEST_CASE("divisor complements") {
  for (std::size_t n = 3; n <= 7; ++n) {
    auto c = check_divisor_complement(n);
    CHECK(c.split_identity);
    CHECK(c.empty);
  }
  // Swapping the parities of the two constants gives a nonempty intersection:
  // on p_3 = -2 the point z4 = z1*z2 satisfies p_4 = -1.
  Polynomial a = build_pn(3).embed(4) + Polynomial::constant(4, 2);
  Polynomial b = build_pn(4) + Polynomial::constant(4, 1);
  CHECK_FALSE(contains_one(Ideal(4, {a, b})).contains_one);
}

TEST_CASE("centres are graphs over the lower level") {
  auto c4 = check_center_iso(4);
  CHECK(c4.passed);
  CHECK(to_string(c4.graph_generator) == "1/2*z1 + z3");
  auto c5 = check_center_iso(5);
  CHECK(c5.passed);
  CHECK(to_string(c5.graph_generator) == "z4 + z1*z2 + 1");
  for (std::size_t n = 6; n <= 7; ++n) CHECK(check_center_iso(n).passed);
}

TEST_CASE("sample points lie on the hypersurface and are reproducible") {
  auto a = sample_points(5, 8, 7);
  auto b = sample_points(5, 8, 7);
  CHECK(a == b);
  CHECK(a.size() == 8);
  for (auto& x : a) CHECK(eval(build_pn(5), x) == 0);
}

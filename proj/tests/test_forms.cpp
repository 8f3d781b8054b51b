#include "doctest.h"

#include "generators.hpp"
#include "vdpkit/expression.hpp"
#include "vdpkit/forms.hpp"

using namespace vdp;
using namespace vdp::forms;
using vdp::testing::Gen;
using vdp::testing::kInstances;

namespace {

Polynomial P(const char* s, std::size_t n) { return parse_polynomial(s, n); }

ChartForm ambient(const char* s, std::size_t n) { return ChartForm::from_ambient(parse_form(s, n)); }

DzMask all_but(std::size_t n, std::initializer_list<std::size_t> drop) {
  DzMask m = static_cast<DzMask>((1u << n) - 1);
  for (auto k : drop) m &= ~(DzMask{1} << (k - 1));
  return m;
}

VectorField random_tangent(Gen& gen, const Surface& s) {
  VectorField v = VectorField::zero(s.n);
  for (std::size_t i = 1; i <= s.n; ++i) {
    for (std::size_t j = i + 1; j <= s.n; ++j) {
      if (gen.integer(0, 2) == 0) continue;
      v += gen.polynomial(s.n, 2, 1) * delta(s, i, j);
    }
  }
  return v;
}

}  // namespace

TEST_CASE("delta fields on the cubic surface") {
  Surface s = Surface::level(3);
  VectorField d12 = delta(s, 1, 2);
  CHECK(d12[1] == P("-z1*z3", 3));
  CHECK(d12[2] == P("1 + z2*z3", 3));
  CHECK(d12[3].is_zero());
  CHECK(apply(d12, s.p).is_zero());
  CHECK(apply(d12, P("z2", 3)) == P("1 + z2*z3", 3));
  CHECK((d12 + delta(s, 2, 1)).is_zero());
  CHECK_THROWS_AS(delta(s, 2, 2), std::invalid_argument);
  CHECK(to_string(d12) == "(-z1*z3)*d/dz1 + (z2*z3 + 1)*d/dz2");
}

TEST_CASE("kernels and tangency") {
  Surface s4 = Surface::level(4);
  VectorField d23 = delta(s4, 2, 3);
  CHECK(apply(d23, P("z1", 4)).is_zero());
  CHECK(apply(d23, P("z4", 4)).is_zero());
  CHECK_THROWS(apply(d23, P("z1", 3)));
  for (std::size_t n = 3; n <= 10; ++n) {
    Surface s = Surface::level(n);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) CHECK(apply(delta(s, i, j), s.p).is_zero());
  }
  Surface s5 = Surface::level(5);
  VectorField b = lie_bracket(delta(s5, 1, 2), delta(s5, 3, 4));
  CHECK(divide_exact(apply(b, s5.p), s5.p).has_value());
  CHECK(is_tangent(s5, b));
  CHECK_FALSE(is_tangent(s5, P("z1", 5) * VectorField::coordinate(5, 1)));
}

TEST_CASE("volume charts") {
  Surface s = Surface::level(3);
  ChartForm w2 = volume_chart(s, 2);
  CHECK(to_string(s, w2) == "1/(z1*z3) dz1^dz3");
  CHECK(to_string(s, volume_chart(s, 1)) == "1/(z2*z3 + 1) dz2^dz3");
  CHECK(w2.terms.begin()->second.denominator == Exponent::variable(2));
}

TEST_CASE("restriction to a chart") {
  Surface s = Surface::level(3);
  // dz1^dz2 on chart 1: dz1 -> -(p2 dz2 + p3 dz3)/p1, leaving (p3/p1) dz2^dz3
  ChartForm r = restrict_to_chart(s, ambient("dz1^dz2", 3), 1);
  REQUIRE(r.terms.size() == 1);
  CHECK(r.terms.begin()->first == all_but(3, {1}));
  CHECK(r.terms.begin()->second.numerator == s.partial(3));
  CHECK(r.terms.begin()->second.denominator == Exponent::variable(1));
  ChartForm free_form = ambient("z1 dz2^dz3", 3);
  CHECK(restrict_to_chart(s, free_form, 1).terms == free_form.terms);
}

TEST_CASE("chart compatibility and gluing signs") {
  // By hand: restrict(omega_i, j) = (-1)^(i+j) omega_j.
  for (std::size_t n : {3u, 4u}) {
    Surface s = Surface::level(n);
    VolumeAtlas atlas = volume_atlas(s);
    CHECK(atlas.passed);
    CHECK(atlas.involutive);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j)
        if (i != j) CHECK(atlas.signs[i - 1][j - 1] == ((i + j) % 2 == 0 ? 1 : -1));
  }
  Surface s4 = Surface::level(4);
  CHECK(chart_compatibility(s4, 2, 4).passed);
  CHECK_THROWS(chart_compatibility(s4, 2, 2));
}

TEST_CASE("interior product and exterior derivative basics") {
  Surface s = Surface::level(3);
  CHECK(interior_product(s, VectorField::coordinate(3, 1), ambient("dz1^dz2", 3)).terms ==
        ambient("dz2", 3).terms);
  CHECK(interior_product(s, VectorField::coordinate(3, 2), ambient("dz1^dz2", 3)).terms ==
        ambient("-dz1", 3).terms);
  CHECK_THROWS(interior_product(s, VectorField::coordinate(3, 1), ambient("z1", 3)));
  CHECK(exterior_derivative(s, ambient("5", 3)).is_zero());
  CHECK(exterior_derivative(s, ambient("z1 dz2", 3)).terms == ambient("dz1^dz2", 3).terms);
  VectorField d12 = delta(s, 1, 2);
  CHECK(interior_product(s, d12, interior_product(s, d12, volume_chart(s, 3))).is_zero());
}

TEST_CASE("theta of the basic fields") {
  for (std::size_t n : {3u, 4u}) {
    Surface s = Surface::level(n);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        ChartForm t = theta(s, delta(s, i, j));
        CHECK(vanishes_on(s, exterior_derivative(s, t)));
        // theta(delta_ij) is +- dz over the complement of {i, j}
        ChartForm w = ChartForm::zero(n, 0, n - 2);
        w.terms.emplace(all_but(n, {i, j}), FormCoefficient{Polynomial::constant(n, 1), {}});
        CHECK((equivalent(s, t, w) || equivalent(s, t, scale(w, -1))));
      }
    }
  }
  Surface s3 = Surface::level(3);
  CHECK(theta(s3, VectorField::zero(3)).is_zero());
  CHECK_THROWS_AS(theta(s3, P("z1", 3) * VectorField::coordinate(3, 1)), std::invalid_argument);
}

TEST_CASE("kernel multiples and brackets stay divergence-free") {
  Surface s4 = Surface::level(4);
  VectorField hd = P("z3^2 + z4", 4) * delta(s4, 1, 2);
  CHECK(divergence_free(s4, hd));
  Surface s5 = Surface::level(5);
  VectorField b = lie_bracket(P("z4", 5) * delta(s5, 1, 2), delta(s5, 3, 4));
  CHECK(divergence_free(s5, b, {5}));
  for (auto [i, j] : {std::pair{1, 2}, {3, 4}, {4, 5}}) CHECK(divergence_free(s5, delta(s5, i, j), {5}));
}

TEST_CASE("theta of a bracket is d of the double contraction") {
  for (std::size_t n : {3u, 4u}) {
    Surface s = Surface::level(n);
    for (auto [a, b, c, d] : {std::array{1, 2, 2, 3}, {1, 3, 2, 3}, {1, 2, 1, 3}}) {
      VectorField x = delta(s, a, b), y = delta(s, c, d);
      ChartForm lhs = theta(s, lie_bracket(x, y));
      ChartForm rhs = exterior_derivative(s, interior_product(s, x, interior_product(s, y, volume_chart(s, n))));
      CHECK(equivalent(s, lhs, rhs));
    }
  }
}

TEST_CASE("property: Lie bracket antisymmetry and Jacobi") {
  Gen gen;
  Surface s = Surface::level(3);
  for (int k = 0; k < kInstances; ++k) {
    VectorField x = random_tangent(gen, s), y = random_tangent(gen, s), z = random_tangent(gen, s);
    CHECK(lie_bracket(x, y) == VectorField::zero(3) - lie_bracket(y, x));
    CHECK(lie_bracket(x, x).is_zero());
    VectorField jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                      lie_bracket(z, lie_bracket(x, y));
    CHECK(jac.is_zero());
    CHECK(is_tangent(s, lie_bracket(x, y)));
  }
}

TEST_CASE("property: d of d vanishes on chart forms") {
  Gen gen;
  for (int k = 0; k < kInstances; ++k) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(3, 4));
    Surface s = Surface::level(n);
    const std::size_t chart = static_cast<std::size_t>(gen.integer(0, static_cast<long>(n)));
    const std::size_t degree = static_cast<std::size_t>(gen.integer(0, static_cast<long>(n) - 3));
    ChartForm f = ChartForm::zero(n, chart, degree);
    for (DzMask m = 0; m < (DzMask{1} << n); ++m) {
      if (static_cast<std::size_t>(std::popcount(m)) != degree) continue;
      if (chart != 0 && (m & (DzMask{1} << (chart - 1)))) continue;
      Exponent den;
      if (chart != 0) den = Exponent::variable(chart, static_cast<std::uint16_t>(gen.integer(0, 2)));
      f.add(m, FormCoefficient{gen.polynomial(n, 3, 2), den}, s);
    }
    CHECK(vanishes_on(s, exterior_derivative(s, exterior_derivative(s, f))));
  }
}

TEST_CASE("property: graded Leibniz rule for ambient forms") {
  Gen gen;
  Surface s = Surface::level(4);
  for (int k = 0; k < kInstances; ++k) {
    ChartForm a = ChartForm::zero(4, 0, 1), b = ChartForm::zero(4, 0, 1);
    for (std::size_t i = 1; i <= 4; ++i) {
      a.add(DzMask{1} << (i - 1), FormCoefficient{gen.polynomial(4, 2, 2), {}}, s);
      b.add(DzMask{1} << (i - 1), FormCoefficient{gen.polynomial(4, 2, 2), {}}, s);
    }
    ChartForm lhs = exterior_derivative(s, wedge(s, a, b));
    ChartForm rhs = add(s, wedge(s, exterior_derivative(s, a), b), scale(wedge(s, a, exterior_derivative(s, b)), -1));
    CHECK(lhs.terms == rhs.terms);
  }
}

#include "vdpkit/family.hpp"

#include <random>
#include <stdexcept>

namespace vdp::family {

namespace {

void require_at_least(std::size_t n, std::size_t lo, const char* what) {
  if (n < lo) {
    throw std::invalid_argument(std::string(what) + " requires n >= " + std::to_string(lo) +
                                ", got " + std::to_string(n));
  }
  if (n > kMaxVars) {
    throw std::invalid_argument(std::string(what) + " supports at most " +
                                std::to_string(kMaxVars) + " variables");
  }
}

MatrixWord build_word(std::size_t n) {
  MatrixWord m;
  m.n = n;
  const Polynomial one = Polynomial::constant(n, 1);
  const Polynomial zero(n);
  m.entries = {one, zero, zero, one};
  for (std::size_t k = 1; k <= n; ++k) {
    const Polynomial z = Polynomial::variable(n, k);
    auto& [a, b, c, d] = m.entries;
    if (k % 2 == 1) {
      // right multiplication by [[1, 0], [z, 1]]
      a += b * z;
      c += d * z;
    } else {
      // right multiplication by [[1, z], [0, 1]]
      b += a * z;
      d += c * z;
    }
  }
  return m;
}

Polynomial pn_from_word(const MatrixWord& m) {
  if (m.n % 2 == 1) return m.at(2, 1) - Polynomial::constant(m.n, 1);
  return m.at(2, 2) - Polynomial::constant(m.n, 2);
}

Polynomial level_in(std::size_t k, std::size_t nvars) {
  return level_polynomial(k).embed(nvars);
}

}  // namespace

Polynomial MatrixWord::determinant() const {
  return at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1);
}

MatrixWord build_matrix(std::size_t n) {
  require_at_least(n, 3, "build_matrix");
  return build_word(n);
}

Polynomial build_pn(std::size_t n) {
  require_at_least(n, 3, "build_pn");
  return pn_from_word(build_word(n));
}

Polynomial level_polynomial(std::size_t k) {
  require_at_least(k, 1, "level_polynomial");
  return pn_from_word(build_word(k));
}

int recursion_constant(std::size_t n) { return n % 2 == 1 ? 2 : 1; }

int divisor_constant(std::size_t m) { return m % 2 == 0 ? 2 : 1; }

RecursionCertificate check_recursion(std::size_t n) {
  require_at_least(n, 3, "check_recursion");
  RecursionCertificate cert;
  cert.n = n;
  cert.constant = recursion_constant(n);
  cert.from_matrix = build_pn(n);
  cert.from_recursion =
      level_in(n - 2, n) + Polynomial::variable(n, n) *
                               (level_in(n - 1, n) + Polynomial::constant(n, cert.constant));
  cert.passed = cert.from_matrix == cert.from_recursion;
  return cert;
}

FiberCertificate check_fiber_equation(std::size_t n) {
  require_at_least(n, 3, "check_fiber_equation");
  FiberCertificate cert;
  cert.n = n;
  const MatrixWord m = build_matrix(n);
  const bool odd = n % 2 == 1;
  cert.constrained_entry = odd ? "2,1" : "2,2";
  cert.free_entry = odd ? "2,2" : "2,1";
  cert.target_value = odd ? 1 : 2;
  cert.equation = (odd ? m.at(2, 1) : m.at(2, 2)) - Polynomial::constant(n, cert.target_value);
  cert.matches_pn = cert.equation == build_pn(n);
  cert.determinant_one = m.determinant() == Polynomial::constant(n, 1);
  cert.passed = cert.matches_pn && cert.determinant_one;
  return cert;
}

SmoothnessCertificate check_smooth(std::size_t n, const GroebnerOptions& options) {
  require_at_least(n, 3, "check_smooth");
  const Polynomial p = build_pn(n);
  std::vector<Polynomial> gens{p};
  for (std::size_t i = 1; i <= n; ++i) gens.push_back(partial_derivative(p, i));
  SmoothnessCertificate cert;
  cert.n = n;
  cert.generators = gens.size();
  UnitCertificate unit = contains_one(Ideal(n, std::move(gens)), options);
  cert.passed = unit.contains_one;
  cert.reductions = unit.basis.reductions;
  cert.pairs = unit.basis.pairs_processed;
  cert.basis = std::move(unit.basis.basis);
  return cert;
}

FamilyRecord family_record(std::size_t n) {
  require_at_least(n, 3, "family_record");
  FamilyRecord r;
  r.n = n;
  r.odd = n % 2 == 1;
  r.p = build_pn(n);
  r.constant = recursion_constant(n);
  if (n == 3) {
    // p_3 = z1*z3 * z2 - (1 - z1 - z3)
    const Polynomial z1 = Polynomial::variable(3, 1);
    const Polynomial z3 = Polynomial::variable(3, 3);
    r.f = z1 * z3;
    r.g = Polynomial::constant(3, 1) - z1 - z3;
    r.y_variable = 2;
    r.base_variables = {1, 3};
  } else {
    r.f = level_in(n - 1, n) + Polynomial::constant(n, r.constant);
    r.g = -level_in(n - 2, n);
    r.y_variable = n;
    for (std::size_t i = 1; i < n; ++i) r.base_variables.push_back(i);
  }
  r.center = {r.f, r.g};
  return r;
}

DecompositionCertificate modification_decomposition(std::size_t n,
                                                    const GroebnerOptions& options) {
  DecompositionCertificate cert;
  cert.record = family_record(n);
  const FamilyRecord& r = cert.record;
  cert.identity_holds =
      r.p == r.f * Polynomial::variable(n, r.y_variable) - r.g && !r.f.uses_variable(r.y_variable) &&
      !r.g.uses_variable(r.y_variable);
  cert.f_nonconstant = !r.f.is_constant();
  cert.g_nonconstant = !r.g.is_constant();
  cert.expected_dimension = n - 3;
  // The y coordinate is free in the n-variable ring, hence the shift by one.
  const std::size_t dim =
      dimension(Ideal(n, {r.f, r.g}), MonomialOrder::natural(options.order, n), options);
  cert.center_dimension = dim - 1;
  cert.passed = cert.identity_holds && cert.f_nonconstant && cert.g_nonconstant &&
                cert.center_dimension == cert.expected_dimension;
  return cert;
}

DivisorComplementCertificate check_divisor_complement(std::size_t n,
                                                      const GroebnerOptions& options) {
  require_at_least(n, 3, "check_divisor_complement");
  DivisorComplementCertificate cert;
  cert.n = n;
  const std::size_t m = n - 1;
  const Polynomial a = level_in(n - 2, m) + Polynomial::constant(m, divisor_constant(n - 2));
  const Polynomial b = level_in(n - 1, m) + Polynomial::constant(m, divisor_constant(n - 1));
  cert.generators = {a, b};

  const Polynomial lhs = build_pn(n) + Polynomial::constant(n, divisor_constant(n));
  const Polynomial rhs = a.embed(n) + Polynomial::variable(n, n) * b.embed(n);
  cert.split_identity = lhs == rhs;

  UnitCertificate unit = contains_one(Ideal(m, cert.generators), options);
  cert.empty = unit.contains_one;
  cert.reductions = unit.basis.reductions;
  cert.passed = cert.split_identity && cert.empty;
  return cert;
}

CenterCertificate check_center_iso(std::size_t n, const GroebnerOptions& options) {
  require_at_least(n, 4, "check_center_iso");
  CenterCertificate cert;
  cert.n = n;
  const std::size_t m = n - 1;
  const Polynomial base = level_in(n - 2, m);
  const Polynomial second = level_in(n - 1, m) + Polynomial::constant(m, recursion_constant(n));
  cert.center = {base, second};

  // second = a * z_{n-1} + b with a = p_{n-2} + c_{n-1}, constant modulo base.
  const Polynomial a = partial_derivative(second, m);
  const Polynomial b = substitute(second, m, Polynomial(m));
  const Polynomial a_mod = remainder(a, base);
  cert.linear_coefficient_constant = a_mod.is_constant() && !a_mod.is_zero();
  cert.expected_dimension = n - 3;
  if (!cert.linear_coefficient_constant) return cert;

  const Rational a0 = a_mod.constant_term();
  cert.graph_generator = Polynomial::variable(m, m) + b * Rational(1 / a0);
  cert.ideals_equal =
      ideal_equal(Ideal(m, cert.center), Ideal(m, {base, cert.graph_generator}), options);
  cert.dimension = dimension(Ideal(m, cert.center), MonomialOrder::natural(options.order, m), options);
  cert.passed = cert.ideals_equal && cert.dimension == cert.expected_dimension;
  return cert;
}

std::vector<std::vector<Rational>> sample_points(std::size_t n, std::size_t count,
                                                 std::uint64_t seed) {
  require_at_least(n, 3, "sample_points");
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    // numerator in [-4, 4], denominator in [1, 3]
    const long num = static_cast<long>(rng() % 9) - 4;
    const long den = static_cast<long>(rng() % 3) + 1;
    Rational q(num, den);
    q.canonicalize();
    return q;
  };
  // p_n = p_{n-2} + z_n (p_{n-1} + c) is linear in z_n: solve for it.
  const Polynomial lower = level_polynomial(n - 2).embed(n - 1);
  const Polynomial slope =
      level_polynomial(n - 1) + Polynomial::constant(n - 1, recursion_constant(n));
  const Polynomial p = build_pn(n);
  std::vector<std::vector<Rational>> points;
  while (points.size() < count) {
    std::vector<Rational> x(n - 1);
    for (auto& v : x) v = draw();
    const Rational s = eval(slope, x);
    if (s == 0) continue;
    Rational zn = -eval(lower, x) / s;
    x.push_back(zn);
    if (eval(p, x) != 0) throw std::logic_error("sample point off the hypersurface");
    points.push_back(std::move(x));
  }
  return points;
}

}  // namespace vdp::family

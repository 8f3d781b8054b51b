#pragma once

// Exact sparse multivariate polynomials over Q.
//
// Variables are named z1..zN. Every public function that takes a variable
// index uses the coordinate's own 1-based index (z_i <-> i); the raw
// Exponent accessor is the only 0-based interface.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace vdp {

using Rational = mpq_class;

inline constexpr std::size_t kMaxVars = 16;

class Exponent {
 public:
  Exponent() = default;

  // z_index^power, index 1-based.
  static Exponent variable(std::size_t index, std::uint16_t power = 1);

  std::uint16_t operator[](std::size_t slot) const { return e_[slot]; }
  void set(std::size_t slot, std::uint16_t value);
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Exponent& other) const;
  bool coprime(const Exponent& other) const;
  // Highest slot with a nonzero entry plus one.
  std::size_t support_width() const;

  friend Exponent operator*(const Exponent& a, const Exponent& b);
  // Precondition: b divides a.
  friend Exponent operator/(const Exponent& a, const Exponent& b);
  friend Exponent lcm(const Exponent& a, const Exponent& b);

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.e_ == b.e_; }
  friend auto operator<=>(const Exponent& a, const Exponent& b) { return a.e_ <=> b.e_; }

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint32_t degree_ = 0;
};

enum class OrderKind { Degrevlex, Lex, Deglex };

class MonomialOrder {
 public:
  // significance lists variable slots from most to least significant.
  MonomialOrder(OrderKind kind, std::vector<std::size_t> significance);

  // Natural orders with z_1 < z_2 < ... < z_n.
  static MonomialOrder degrevlex(std::size_t nvars);
  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder deglex(std::size_t nvars);
  static MonomialOrder natural(OrderKind kind, std::size_t nvars);

  // -1, 0, +1.
  int compare(const Exponent& a, const Exponent& b) const;
  bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }

  OrderKind kind() const { return kind_; }
  const std::vector<std::size_t>& significance() const { return significance_; }
  std::string name() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  OrderKind kind_;
  std::vector<std::size_t> significance_;
};

OrderKind parse_order_kind(const std::string& name);

struct Term {
  Exponent exponent;
  Rational coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0);

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(std::size_t nvars, const Exponent& e, const Rational& c = 1);
  // Combines like terms and drops zeros; input order is irrelevant.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  // Descending in the natural degrevlex order (z_n > ... > z_1).
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t index) const;
  Rational constant_term() const;
  Rational coefficient_of(const Exponent& e) const;
  const Term& leading_term(const MonomialOrder& order) const;
  bool uses_variable(std::size_t index) const;

  // Same polynomial in a ring with more (or equally many) variables.
  Polynomial embed(std::size_t nvars) const;
  // Drops to fewer variables; every dropped variable must be unused.
  Polynomial restrict_to(std::size_t nvars) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  std::vector<Term> terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, unsigned k);
Polynomial partial_derivative(const Polynomial& p, std::size_t index);
// Replaces z_index by q.
Polynomial substitute(const Polynomial& p, std::size_t index, const Polynomial& q);

// Quotient q with f = q * d when the multivariate division of f by d leaves
// no remainder; empty otherwise. Throws std::invalid_argument on d = 0.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& d,
                                       const MonomialOrder& order);
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& d);
// Remainder of the division of f by the single divisor d (the normal form
// modulo the principal ideal (d)).
Polynomial remainder(const Polynomial& f, const Polynomial& d);

Rational eval(const Polynomial& p, std::span<const Rational> point);
std::complex<double> eval(const Polynomial& p, std::span<const std::complex<double>> point);

}  // namespace vdp

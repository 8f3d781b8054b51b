#pragma once

// Algebraic vector fields on X_n = {p_n = 0} and differential forms on its
// coordinate charts. Chart i uses the coordinates z_k (k != i); the volume
// form there is
//
//   omega_i = dz_1 ^ ... ^ (no dz_i) ^ ... ^ dz_n / (dp/dz_i).
//
// Form coefficients are quotients N / prod_k (dp/dz_k)^{e_k} of ambient
// polynomials. Identities are decided after clearing denominators and
// reducing numerators modulo p.

#include <map>
#include <string>
#include <vector>

#include "vdpkit/expression.hpp"
#include "vdpkit/polynomial.hpp"

namespace vdp::forms {

struct Surface {
  std::size_t n = 0;
  Polynomial p;
  // grad[k - 1] = dp/dz_k
  std::vector<Polynomial> grad;

  static Surface of(const Polynomial& p);
  // X_n of the family.
  static Surface level(std::size_t n);

  const Polynomial& partial(std::size_t k) const { return grad.at(k - 1); }
  // prod_k (dp/dz_k)^{e[k-1]}
  Polynomial partial_power(const Exponent& e) const;
  // Default chart: the largest index with a nonzero partial derivative.
  std::size_t default_chart() const;
};

// sum_k c_k d/dz_k
struct VectorField {
  std::size_t n = 0;
  std::vector<Polynomial> c;

  static VectorField zero(std::size_t n);
  static VectorField coordinate(std::size_t n, std::size_t k);

  bool is_zero() const;
  const Polynomial& operator[](std::size_t k) const { return c.at(k - 1); }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Polynomial& h, const VectorField& v);
  friend VectorField operator*(const Rational& s, const VectorField& v);
  friend bool operator==(const VectorField&, const VectorField&) = default;
};

// delta_ij = dp/dz_i d/dz_j - dp/dz_j d/dz_i
VectorField delta(const Surface& s, std::size_t i, std::size_t j);
Polynomial apply(const VectorField& v, const Polynomial& h);
VectorField lie_bracket(const VectorField& a, const VectorField& b);
bool is_tangent(const Surface& s, const VectorField& v);
std::string to_string(const VectorField& v);

struct FormCoefficient {
  Polynomial numerator;
  // Slot k-1 holds the power of dp/dz_k in the denominator.
  Exponent denominator;

  friend bool operator==(const FormCoefficient&, const FormCoefficient&) = default;
};

struct ChartForm {
  std::size_t n = 0;
  // 0 for an ambient form; otherwise no term carries dz_chart.
  std::size_t chart = 0;
  std::size_t degree = 0;
  std::map<DzMask, FormCoefficient> terms;

  static ChartForm zero(std::size_t n, std::size_t chart, std::size_t degree);
  static ChartForm from_ambient(const PolyForm& form);
  bool is_zero() const { return terms.empty(); }
  // Adds c to the coefficient of the wedge mask over a common denominator.
  void add(DzMask mask, const FormCoefficient& c, const Surface& s);
};

ChartForm add(const Surface& s, const ChartForm& a, const ChartForm& b);
ChartForm scale(const ChartForm& a, const Rational& c);
// Cancels partial-derivative factors that divide the numerator exactly.
ChartForm normalize(const Surface& s, ChartForm form);

ChartForm volume_chart(const Surface& s, std::size_t i);
// Pulls a form back to chart j via dz_j = -(1/p_j) sum_{k != j} p_k dz_k.
ChartForm restrict_to_chart(const Surface& s, const ChartForm& form, std::size_t j);

ChartForm interior_product(const Surface& s, const VectorField& v, const ChartForm& form);
ChartForm exterior_derivative(const Surface& s, const ChartForm& form);
ChartForm wedge(const Surface& s, const ChartForm& a, const ChartForm& b);

// iota_v omega in the given chart (0 selects the default chart). Throws
// std::invalid_argument unless v is tangent.
ChartForm theta(const Surface& s, const VectorField& v, std::size_t chart = 0);

// d(theta(v)) vanishes on X in each listed chart (empty list: every chart
// with a nonzero partial).
bool divergence_free(const Surface& s, const VectorField& v, std::vector<std::size_t> charts = {});

// True when every coefficient vanishes on X, i.e. p divides its numerator.
bool vanishes_on(const Surface& s, const ChartForm& form);
// a - b vanishes on X; forms in different charts are compared in b's chart.
bool equivalent(const Surface& s, const ChartForm& a, const ChartForm& b);

// Numerators over the common denominator prod p_k^{L_k}; L must dominate
// every term's denominator. Reduced modulo p when requested.
std::map<DzMask, Polynomial> cleared_numerators(const Surface& s, const ChartForm& form,
                                                const Exponent& common, bool reduce_mod_p);
Exponent common_denominator(const ChartForm& form);

struct CompatibilityResult {
  std::size_t i = 0;
  std::size_t j = 0;
  // restrict(omega_i, j) = sign * omega_j; 0 when no sign works.
  int sign = 0;
  bool passed = false;
};

CompatibilityResult chart_compatibility(const Surface& s, std::size_t i, std::size_t j);

struct VolumeAtlas {
  std::size_t n = 0;
  std::vector<ChartForm> charts;
  // signs[i-1][j-1] = epsilon_ij; diagonal 1.
  std::vector<std::vector<int>> signs;
  bool passed = false;
  bool involutive = false;
};

VolumeAtlas volume_atlas(const Surface& s);

std::string to_string(const Surface& s, const ChartForm& form);

}  // namespace vdp::forms

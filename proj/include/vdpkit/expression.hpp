#pragma once

// Text grammar shared by the CLI, reports and tests.
//
//   poly    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (('*' | '/' | <juxtaposition>) factor)*
//   factor  := primary ['^' integer]
//   primary := integer | 'z' integer | '(' poly ')'
//
// Division is only by nonzero constants, so `3/2*z1` is a rational
// coefficient. Forms extend a term with a trailing wedge of differentials,
// `dz1^dz3` (also accepted: `d z1 ^ d z3`), e.g. `z2 dz3 - 3/2*z1*dz2`.
//
// Printing lists terms in ascending order under the active monomial order
// with the constant term last, e.g. `z1 + z3 + z1*z2*z3 - 1`.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "vdpkit/polynomial.hpp"

namespace vdp {

// Bit i-1 set <=> dz_i is a factor. Wedge factors are kept ascending.
using DzMask = std::uint32_t;

// Ambient differential form with polynomial coefficients.
struct PolyForm {
  std::size_t nvars = 0;
  std::size_t degree = 0;
  std::map<DzMask, Polynomial> coefficients;

  bool is_zero() const { return coefficients.empty(); }
  friend bool operator==(const PolyForm&, const PolyForm&) = default;
};

// Parses a polynomial in z1..z{nvars}. Throws ParseError.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars);

// Parses a form. All nonzero terms must share one degree; a bare
// polynomial is a 0-form and `0` is the zero form of the expected degree
// (when given).
PolyForm parse_form(std::string_view text, std::size_t nvars,
                    std::optional<std::size_t> expected_degree = std::nullopt);

std::string to_string(const Polynomial& p);
std::string to_string(const Polynomial& p, const MonomialOrder& order);
std::string to_string(const Exponent& e, std::size_t nvars);
std::string to_string(const Rational& r);
std::string to_string(const PolyForm& form);
// `dz1^dz3`; empty for the empty wedge.
std::string wedge_to_string(DzMask mask);

}  // namespace vdp

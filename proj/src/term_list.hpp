#pragma once

// Term lists sorted ascending under an explicit monomial order, so the
// leading term sits at back(). Shared by exact division and the Gröbner
// engine.

#include <algorithm>
#include <vector>

#include "vdpkit/polynomial.hpp"

namespace vdp::detail {

using TermList = std::vector<Term>;

inline TermList sorted_terms(const Polynomial& p, const MonomialOrder& order) {
  TermList out = p.terms();
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) {
    return order.less(a.exponent, b.exponent);
  });
  return out;
}

inline Polynomial to_polynomial(std::size_t nvars, TermList terms) {
  return Polynomial::from_terms(nvars, std::move(terms));
}

// f <- f - c * x^m * g. Both lists ascending under order; scratch is reused.
inline void sub_scaled(TermList& f, const Rational& c, const Exponent& m, const TermList& g,
                       const MonomialOrder& order, TermList& scratch) {
  scratch.clear();
  scratch.reserve(f.size() + g.size());
  std::size_t i = 0;
  std::size_t j = 0;
  Exponent shifted;
  bool have_shifted = false;
  while (i < f.size() || j < g.size()) {
    if (j < g.size() && !have_shifted) {
      shifted = g[j].exponent * m;
      have_shifted = true;
    }
    int cmp;
    if (i == f.size()) {
      cmp = 1;
    } else if (j == g.size()) {
      cmp = -1;
    } else {
      cmp = order.compare(f[i].exponent, shifted);
    }
    if (cmp < 0) {
      scratch.push_back(std::move(f[i]));
      ++i;
    } else if (cmp > 0) {
      Rational v = g[j].coefficient * c;
      scratch.push_back(Term{shifted, -v});
      ++j;
      have_shifted = false;
    } else {
      Rational v = f[i].coefficient - g[j].coefficient * c;
      if (sgn(v) != 0) scratch.push_back(Term{shifted, std::move(v)});
      ++i;
      ++j;
      have_shifted = false;
    }
  }
  f.swap(scratch);
}

inline void make_monic(TermList& f) {
  if (f.empty()) return;
  Rational lc = f.back().coefficient;
  if (lc == 1) return;
  for (auto& t : f) t.coefficient /= lc;
}

}  // namespace vdp::detail

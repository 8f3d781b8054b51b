#include "vdpkit/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "term_list.hpp"

namespace vdp {

namespace {

void check_index(std::size_t nvars, std::size_t index) {
  if (index < 1 || index > nvars) {
    throw std::out_of_range("variable index z" + std::to_string(index) + " outside z1..z" +
                            std::to_string(nvars));
  }
}

void check_same_ring(const Polynomial& p, const Polynomial& q) {
  if (p.nvars() != q.nvars()) {
    throw std::invalid_argument("variable-count mismatch: " + std::to_string(p.nvars()) +
                                " vs " + std::to_string(q.nvars()));
  }
}

// Natural degrevlex, z_n most significant: true when a > b.
inline bool canonical_greater(const Exponent& a, const Exponent& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

void canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return canonical_greater(a.exponent, b.exponent);
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational sum = terms[i].coefficient;
    while (j < terms.size() && terms[j].exponent == terms[i].exponent) {
      sum += terms[j].coefficient;
      ++j;
    }
    if (sgn(sum) != 0) {
      terms[out].exponent = terms[i].exponent;
      terms[out].coefficient = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

}  // namespace

// ---------------------------------------------------------------- Exponent

Exponent Exponent::variable(std::size_t index, std::uint16_t power) {
  if (index < 1 || index > kMaxVars) throw std::out_of_range("variable index out of range");
  Exponent e;
  e.set(index - 1, power);
  return e;
}

void Exponent::set(std::size_t slot, std::uint16_t value) {
  degree_ = degree_ - e_[slot] + value;
  e_[slot] = value;
}

bool Exponent::divides(const Exponent& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

bool Exponent::coprime(const Exponent& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e_[i] != 0 && other.e_[i] != 0) return false;
  }
  return true;
}

std::size_t Exponent::support_width() const {
  for (std::size_t i = kMaxVars; i > 0; --i) {
    if (e_[i - 1] != 0) return i;
  }
  return 0;
}

Exponent operator*(const Exponent& a, const Exponent& b) {
  Exponent r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    std::uint32_t v = std::uint32_t{a.e_[i]} + b.e_[i];
    if (v > 0xffff) throw std::overflow_error("exponent overflow");
    r.e_[i] = static_cast<std::uint16_t>(v);
  }
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

Exponent operator/(const Exponent& a, const Exponent& b) {
  Exponent r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
  r.degree_ = a.degree_ - b.degree_;
  return r;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r;
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = std::max(a.e_[i], b.e_[i]);
    d += r.e_[i];
  }
  r.degree_ = d;
  return r;
}

// ----------------------------------------------------------- MonomialOrder

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> significance)
    : kind_(kind), significance_(std::move(significance)) {
  std::vector<std::size_t> check = significance_;
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < check.size(); ++i) {
    if (check[i] != i) throw std::invalid_argument("variable permutation is not a permutation");
  }
  if (significance_.size() > kMaxVars) throw std::invalid_argument("too many variables");
}

MonomialOrder MonomialOrder::natural(OrderKind kind, std::size_t nvars) {
  std::vector<std::size_t> sig(nvars);
  for (std::size_t i = 0; i < nvars; ++i) sig[i] = nvars - 1 - i;
  return MonomialOrder(kind, std::move(sig));
}

MonomialOrder MonomialOrder::degrevlex(std::size_t nvars) {
  return natural(OrderKind::Degrevlex, nvars);
}
MonomialOrder MonomialOrder::lex(std::size_t nvars) { return natural(OrderKind::Lex, nvars); }
MonomialOrder MonomialOrder::deglex(std::size_t nvars) {
  return natural(OrderKind::Deglex, nvars);
}

int MonomialOrder::compare(const Exponent& a, const Exponent& b) const {
  switch (kind_) {
    case OrderKind::Lex:
      for (std::size_t v : significance_) {
        if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
      }
      return 0;
    case OrderKind::Deglex:
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      for (std::size_t v : significance_) {
        if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
      }
      return 0;
    case OrderKind::Degrevlex:
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      for (auto it = significance_.rbegin(); it != significance_.rend(); ++it) {
        if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
      }
      return 0;
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case OrderKind::Degrevlex: return "degrevlex";
    case OrderKind::Lex: return "lex";
    case OrderKind::Deglex: return "deglex";
  }
  return "?";
}

OrderKind parse_order_kind(const std::string& name) {
  if (name == "degrevlex") return OrderKind::Degrevlex;
  if (name == "lex") return OrderKind::Lex;
  if (name == "deglex") return OrderKind::Deglex;
  throw std::invalid_argument("unknown monomial order '" + name + "'");
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars > kMaxVars) throw std::invalid_argument("at most 16 variables are supported");
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (sgn(c) != 0) p.terms_.push_back(Term{Exponent{}, c});
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  check_index(nvars, index);
  Polynomial p(nvars);
  p.terms_.push_back(Term{Exponent::variable(index), 1});
  return p;
}

Polynomial Polynomial::monomial(std::size_t nvars, const Exponent& e, const Rational& c) {
  if (e.support_width() > nvars) throw std::invalid_argument("monomial uses variables beyond ring");
  Polynomial p(nvars);
  if (sgn(c) != 0) p.terms_.push_back(Term{e, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  for (const auto& t : terms) {
    if (t.exponent.support_width() > nvars) {
      throw std::invalid_argument("term uses variables beyond ring");
    }
  }
  canonicalize(terms);
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_one());
}

std::uint32_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().exponent.degree();
}

std::uint32_t Polynomial::degree_in(std::size_t index) const {
  check_index(nvars_, index);
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max<std::uint32_t>(d, t.exponent[index - 1]);
  return d;
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().exponent.is_one()) return terms_.back().coefficient;
  return 0;
}

Rational Polynomial::coefficient_of(const Exponent& e) const {
  for (const auto& t : terms_) {
    if (t.exponent == e) return t.coefficient;
  }
  return 0;
}

const Term& Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
  const Term* best = &terms_.front();
  for (const auto& t : terms_) {
    if (order.compare(t.exponent, best->exponent) > 0) best = &t;
  }
  return *best;
}

bool Polynomial::uses_variable(std::size_t index) const {
  check_index(nvars_, index);
  for (const auto& t : terms_) {
    if (t.exponent[index - 1] != 0) return true;
  }
  return false;
}

Polynomial Polynomial::embed(std::size_t nvars) const {
  if (nvars < nvars_) throw std::invalid_argument("embed: target ring is smaller");
  Polynomial p(nvars);
  p.terms_ = terms_;
  return p;
}

Polynomial Polynomial::restrict_to(std::size_t nvars) const {
  for (const auto& t : terms_) {
    if (t.exponent.support_width() > nvars) {
      throw std::invalid_argument("restrict_to: polynomial uses a dropped variable");
    }
  }
  Polynomial p(nvars);
  p.terms_ = terms_;
  return p;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

namespace {

std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && canonical_greater(a[i].exponent, b[j].exponent))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || canonical_greater(b[j].exponent, a[i].exponent)) {
      out.push_back(Term{b[j].exponent, negate_b ? Rational(-b[j].coefficient) : b[j].coefficient});
      ++j;
    } else {
      Rational v = negate_b ? Rational(a[i].coefficient - b[j].coefficient)
                            : Rational(a[i].coefficient + b[j].coefficient);
      if (sgn(v) != 0) out.push_back(Term{a[i].exponent, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  check_same_ring(*this, q);
  terms_ = merge_add(terms_, q.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  check_same_ring(*this, q);
  terms_ = merge_add(terms_, q.terms_, true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& q) {
  *this = *this * q;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= c;
  return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  check_same_ring(p, q);
  Polynomial r(p.nvars_);
  if (p.is_zero() || q.is_zero()) return r;
  // A monomial factor shifts every exponent uniformly, which preserves order.
  if (p.size() == 1 || q.size() == 1) {
    const Polynomial& mono = p.size() == 1 ? p : q;
    const Polynomial& other = p.size() == 1 ? q : p;
    const Term& m = mono.terms_.front();
    r.terms_.reserve(other.size());
    for (const auto& t : other.terms_) {
      r.terms_.push_back(Term{t.exponent * m.exponent, t.coefficient * m.coefficient});
    }
    return r;
  }
  std::vector<Term> prod;
  prod.reserve(p.size() * q.size());
  for (const auto& a : p.terms_) {
    for (const auto& b : q.terms_) {
      prod.push_back(Term{a.exponent * b.exponent, a.coefficient * b.coefficient});
    }
  }
  canonicalize(prod);
  r.terms_ = std::move(prod);
  return r;
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial result = Polynomial::constant(p.nvars(), 1);
  Polynomial base = p;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t index) {
  check_index(p.nvars(), index);
  const std::size_t slot = index - 1;
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    std::uint16_t e = t.exponent[slot];
    if (e == 0) continue;
    Exponent ex = t.exponent;
    ex.set(slot, static_cast<std::uint16_t>(e - 1));
    out.push_back(Term{ex, t.coefficient * e});
  }
  return Polynomial::from_terms(p.nvars(), std::move(out));
}

Polynomial substitute(const Polynomial& p, std::size_t index, const Polynomial& q) {
  check_index(p.nvars(), index);
  check_same_ring(p, q);
  const std::size_t slot = index - 1;
  // Group terms by the power of z_index, then Horner-free accumulation with
  // cached powers of q.
  std::uint32_t max_power = p.degree_in(index);
  std::vector<Polynomial> powers;
  powers.reserve(max_power + 1);
  powers.push_back(Polynomial::constant(p.nvars(), 1));
  for (std::uint32_t k = 1; k <= max_power; ++k) powers.push_back(powers.back() * q);

  std::vector<std::vector<Term>> buckets(max_power + 1);
  for (const auto& t : p.terms()) {
    Exponent ex = t.exponent;
    std::uint16_t e = ex[slot];
    ex.set(slot, 0);
    buckets[e].push_back(Term{ex, t.coefficient});
  }
  Polynomial result(p.nvars());
  for (std::uint32_t k = 0; k <= max_power; ++k) {
    if (buckets[k].empty()) continue;
    result += Polynomial::from_terms(p.nvars(), std::move(buckets[k])) * powers[k];
  }
  return result;
}

namespace {

// Division of f by d; returns (quotient, remainder) as term lists.
std::pair<detail::TermList, detail::TermList> divide(const Polynomial& f, const Polynomial& d,
                                                     const MonomialOrder& order) {
  if (d.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  check_same_ring(f, d);
  detail::TermList work = detail::sorted_terms(f, order);
  const detail::TermList divisor = detail::sorted_terms(d, order);
  const Term& lead = divisor.back();
  detail::TermList quotient;
  detail::TermList rem;
  detail::TermList scratch;
  while (!work.empty()) {
    const Term& top = work.back();
    if (lead.exponent.divides(top.exponent)) {
      Rational c = top.coefficient / lead.coefficient;
      Exponent m = top.exponent / lead.exponent;
      quotient.push_back(Term{m, c});
      detail::sub_scaled(work, c, m, divisor, order, scratch);
    } else {
      rem.push_back(std::move(work.back()));
      work.pop_back();
    }
  }
  return {std::move(quotient), std::move(rem)};
}

}  // namespace

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& d,
                                       const MonomialOrder& order) {
  auto [quotient, rem] = divide(f, d, order);
  if (!rem.empty()) return std::nullopt;
  return Polynomial::from_terms(f.nvars(), std::move(quotient));
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& d) {
  return divide_exact(f, d, MonomialOrder::degrevlex(f.nvars()));
}

Polynomial remainder(const Polynomial& f, const Polynomial& d) {
  auto [quotient, rem] = divide(f, d, MonomialOrder::degrevlex(f.nvars()));
  return Polynomial::from_terms(f.nvars(), std::move(rem));
}

Rational eval(const Polynomial& p, std::span<const Rational> point) {
  if (point.size() != p.nvars()) throw std::invalid_argument("evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    Rational v = t.coefficient;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      for (std::uint16_t k = 0; k < t.exponent[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

std::complex<double> eval(const Polynomial& p, std::span<const std::complex<double>> point) {
  if (point.size() != p.nvars()) throw std::invalid_argument("evaluation point has wrong length");
  std::complex<double> sum = 0.0;
  for (const auto& t : p.terms()) {
    std::complex<double> v = t.coefficient.get_d();
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      for (std::uint16_t k = 0; k < t.exponent[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

}  // namespace vdp

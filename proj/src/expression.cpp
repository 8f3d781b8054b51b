#include "vdpkit/expression.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <vector>

#include "vdpkit/errors.hpp"

namespace vdp {

namespace {

// A term of a form under construction: coefficient times wedge.
struct FormTerm {
  Polynomial coefficient;
  DzMask mask = 0;
  bool has_wedge = false;
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars, bool allow_forms)
      : text_(text), nvars_(nvars), allow_forms_(allow_forms) {}

  std::vector<FormTerm> parse_sum_top() {
    auto terms = parse_sum(true);
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return terms;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool at_differential() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != 'd') return false;
    std::size_t p = pos_ + 1;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() && text_[p] == 'z';
  }

  bool at_factor_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'z' || c == '(';
  }

  unsigned long parse_uint() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 9) fail("integer too large for an index or exponent");
    return std::stoul(digits);
  }

  std::size_t parse_variable_index() {
    std::size_t at = pos_;
    unsigned long idx = parse_uint();
    if (idx < 1 || idx > nvars_) {
      pos_ = at;
      fail("variable z" + std::to_string(idx) + " outside z1..z" + std::to_string(nvars_));
    }
    return idx;
  }

  // Sum of terms; inside parentheses wedges are not allowed.
  std::vector<FormTerm> parse_sum(bool top) {
    std::vector<FormTerm> out;
    bool negative = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negative = true;
    }
    out.push_back(parse_term(negative, top));
    while (true) {
      if (peek('+')) {
        ++pos_;
        out.push_back(parse_term(false, top));
      } else if (peek('-')) {
        ++pos_;
        out.push_back(parse_term(true, top));
      } else {
        break;
      }
    }
    return out;
  }

  FormTerm parse_term(bool negative, bool top) {
    FormTerm t{Polynomial::constant(nvars_, negative ? -1 : 1), 0, false};
    bool first = true;
    while (true) {
      if (allow_forms_ && top && at_differential()) {
        parse_wedge(t);
        break;
      }
      if (!first) {
        if (peek('*')) {
          ++pos_;
          if (allow_forms_ && top && at_differential()) {
            parse_wedge(t);
            break;
          }
          t.coefficient *= parse_factor();
          continue;
        }
        if (peek('/')) {
          ++pos_;
          std::size_t at = pos_;
          Polynomial d = parse_factor();
          if (!d.is_constant() || d.is_zero()) {
            pos_ = at;
            fail("division is only defined by nonzero constants");
          }
          t.coefficient *= Rational(1 / d.constant_term());
          continue;
        }
        if (!at_factor_start()) break;
      }
      t.coefficient *= parse_factor();
      first = false;
    }
    if (first && !t.has_wedge) fail("expected a term");
    return t;
  }

  void parse_wedge(FormTerm& t) {
    t.has_wedge = true;
    int sign = 1;
    while (true) {
      skip_ws();
      ++pos_;  // 'd'
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != 'z') fail("expected dz<k>");
      ++pos_;
      std::size_t idx = parse_variable_index();
      DzMask bit = DzMask{1} << (idx - 1);
      if (t.mask & bit) {
        sign = 0;
      } else {
        // Moving dz_idx into ascending position past the larger entries.
        DzMask higher = t.mask & ~((bit << 1) - 1);
        if (std::popcount(higher) % 2 != 0) sign = -sign;
        t.mask |= bit;
      }
      if (peek('^')) {
        std::size_t save = pos_;
        ++pos_;
        if (at_differential()) continue;
        pos_ = save;
        fail("'^' after a differential must be followed by another differential");
      }
      break;
    }
    if (sign != 1) t.coefficient *= Rational(sign);
  }

  Polynomial parse_factor() {
    Polynomial base = parse_primary();
    if (peek('^')) {
      std::size_t save = pos_;
      ++pos_;
      if (at_differential()) {
        pos_ = save;
        fail("wedge without a leading differential");
      }
      unsigned long k = parse_uint();
      if (k > 1000) fail("exponent too large");
      base = pow(base, static_cast<unsigned>(k));
    }
    return base;
  }

  Polynomial parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_sum(false);
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      Polynomial sum(nvars_);
      for (auto& t : inner) sum += t.coefficient;
      return sum;
    }
    if (c == 'z') {
      ++pos_;
      return Polynomial::variable(nvars_, parse_variable_index());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class value(std::string(text_.substr(start, pos_ - start)));
      return Polynomial::constant(nvars_, Rational(value));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t nvars_;
  bool allow_forms_;
  std::size_t pos_ = 0;
};

std::string coefficient_prefix(const Rational& abs_coef, bool is_constant) {
  if (is_constant) return to_string(abs_coef);
  if (abs_coef == 1) return "";
  return to_string(abs_coef) + "*";
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  Parser parser(text, nvars, false);
  Polynomial sum(nvars);
  for (auto& t : parser.parse_sum_top()) sum += t.coefficient;
  return sum;
}

PolyForm parse_form(std::string_view text, std::size_t nvars,
                    std::optional<std::size_t> expected_degree) {
  if (nvars > 32) throw std::invalid_argument("too many variables for a form");
  Parser parser(text, nvars, true);
  PolyForm form;
  form.nvars = nvars;
  std::optional<std::size_t> degree = expected_degree;
  for (auto& t : parser.parse_sum_top()) {
    if (t.coefficient.is_zero()) continue;
    std::size_t d = static_cast<std::size_t>(std::popcount(t.mask));
    if (degree && *degree != d) {
      throw ParseError("form terms of mixed degree (" + std::to_string(*degree) + " and " +
                           std::to_string(d) + ")",
                       0);
    }
    degree = d;
    auto [it, inserted] = form.coefficients.try_emplace(t.mask, nvars);
    it->second += t.coefficient;
    if (it->second.is_zero()) form.coefficients.erase(it);
  }
  form.degree = degree.value_or(0);
  return form;
}

std::string to_string(const Rational& r) {
  return r.get_str();
}

std::string to_string(const Exponent& e, std::size_t nvars) {
  std::string out;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "z" + std::to_string(i + 1);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Polynomial& p) {
  return to_string(p, MonomialOrder::degrevlex(p.nvars()));
}

std::string to_string(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) return "0";
  std::vector<const Term*> ordered;
  const Term* constant = nullptr;
  for (const auto& t : p.terms()) {
    if (t.exponent.is_one()) {
      constant = &t;
    } else {
      ordered.push_back(&t);
    }
  }
  std::sort(ordered.begin(), ordered.end(),
            [&](const Term* a, const Term* b) { return order.less(a->exponent, b->exponent); });
  if (constant) ordered.push_back(constant);

  std::string out;
  bool first = true;
  for (const Term* t : ordered) {
    const bool negative = sgn(t->coefficient) < 0;
    Rational mag = abs(t->coefficient);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool is_const = t->exponent.is_one();
    out += coefficient_prefix(mag, is_const);
    if (!is_const) out += to_string(t->exponent, p.nvars());
    first = false;
  }
  return out;
}

std::string wedge_to_string(DzMask mask) {
  std::string out;
  for (std::size_t i = 0; i < 32; ++i) {
    if (!(mask & (DzMask{1} << i))) continue;
    if (!out.empty()) out += "^";
    out += "dz" + std::to_string(i + 1);
  }
  return out;
}

std::string to_string(const PolyForm& form) {
  if (form.is_zero()) return "0";
  if (form.degree == 0) return to_string(form.coefficients.begin()->second);
  std::string out;
  for (const auto& [mask, coef] : form.coefficients) {
    std::string c = to_string(coef);
    std::string w = wedge_to_string(mask);
    std::string piece;
    bool negative = false;
    if (w.empty()) {
      piece = "(" + c + ")";
    } else if (c == "1") {
      piece = w;
    } else if (c == "-1") {
      piece = w;
      negative = true;
    } else if (coef.size() == 1 && c.front() == '-') {
      piece = c.substr(1) + " " + w;
      negative = true;
    } else if (coef.size() == 1) {
      piece = c + " " + w;
    } else {
      piece = "(" + c + ") " + w;
    }
    if (out.empty()) {
      out = negative ? "-" + piece : piece;
    } else {
      out += negative ? " - " + piece : " + " + piece;
    }
  }
  return out;
}

}  // namespace vdp

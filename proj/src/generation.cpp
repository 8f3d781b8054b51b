#include "vdpkit/generation.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <set>
#include <stdexcept>

#include "vdpkit/errors.hpp"

namespace vdp::generation {

using forms::ChartForm;
using forms::Surface;
using forms::VectorField;

// ------------------------------------------------------------ BracketExpr

BracketExpr BracketExpr::leaf(const Polynomial& h, std::size_t i, std::size_t j) {
  BracketExpr e;
  e.kind = Kind::Leaf;
  e.h = h;
  e.i = i;
  e.j = j;
  return e;
}

BracketExpr BracketExpr::bracket(BracketExpr a, BracketExpr b) {
  BracketExpr e;
  e.kind = Kind::Bracket;
  e.children.push_back(std::move(a));
  e.children.push_back(std::move(b));
  return e;
}

BracketExpr BracketExpr::sum(std::vector<BracketExpr> terms) {
  BracketExpr e;
  e.kind = Kind::Sum;
  e.children = std::move(terms);
  return e;
}

BracketExpr BracketExpr::scale(const Rational& c, BracketExpr inner) {
  BracketExpr e;
  e.kind = Kind::Scale;
  e.scalar = c;
  e.children.push_back(std::move(inner));
  return e;
}

std::size_t BracketExpr::leaf_count() const {
  if (kind == Kind::Leaf) return 1;
  std::size_t k = 0;
  for (const auto& c : children) k += c.leaf_count();
  return k;
}

std::string to_string(const BracketExpr& e) {
  switch (e.kind) {
    case BracketExpr::Kind::Leaf: {
      std::string d = "d=δ[" + std::to_string(e.i) + "," + std::to_string(e.j) + "]";
      if (e.h.is_constant() && e.h.constant_term() == 1) return "leaf(" + d + ")";
      return "leaf(h=" + vdp::to_string(e.h) + ", " + d + ")";
    }
    case BracketExpr::Kind::Bracket:
      return "bracket(" + to_string(e.children[0]) + ", " + to_string(e.children[1]) + ")";
    case BracketExpr::Kind::Scale:
      return "scale(" + vdp::to_string(e.scalar) + ", " + to_string(e.children[0]) + ")";
    case BracketExpr::Kind::Sum: {
      std::string out = "sum(";
      for (std::size_t k = 0; k < e.children.size(); ++k) {
        if (k) out += ", ";
        out += to_string(e.children[k]);
      }
      return out + ")";
    }
  }
  return "?";
}

VectorField evaluate(const Surface& s, const BracketExpr& e) {
  switch (e.kind) {
    case BracketExpr::Kind::Leaf: {
      VectorField d = forms::delta(s, e.i, e.j);
      if (!forms::apply(d, e.h).is_zero()) {
        throw std::invalid_argument("leaf multiplier " + vdp::to_string(e.h) + " is not in the kernel of δ[" +
                                    std::to_string(e.i) + "," + std::to_string(e.j) + "]");
      }
      return e.h * d;
    }
    case BracketExpr::Kind::Bracket:
      return forms::lie_bracket(evaluate(s, e.children[0]), evaluate(s, e.children[1]));
    case BracketExpr::Kind::Scale:
      return e.scalar * evaluate(s, e.children[0]);
    case BracketExpr::Kind::Sum: {
      VectorField v = VectorField::zero(s.n);
      for (const auto& c : e.children) v += evaluate(s, c);
      return v;
    }
  }
  throw std::logic_error("unknown expression kind");
}

std::string tier_name(Tier t) {
  switch (t) {
    case Tier::Empty: return "empty";
    case Tier::Leaves: return "leaves";
    case Tier::Brackets: return "brackets";
    case Tier::Widened: return "widened";
  }
  return "?";
}

// ------------------------------------------------------------ linear algebra

namespace {

using Image = std::map<DzMask, Polynomial>;
using RowKey = std::pair<DzMask, Exponent>;

DzMask bit(std::size_t k) { return DzMask{1} << (k - 1); }

// Least x (free variables zero, earliest columns preferred as pivots) with
// sum_c x_c cols[c] = rhs, or nothing when inconsistent.
std::optional<std::vector<Rational>> solve_exact(const std::vector<Image>& cols, const Image& rhs) {
  std::map<RowKey, std::size_t> rows;
  auto collect = [&](const Image& im) {
    for (const auto& [mask, poly] : im) {
      for (const auto& t : poly.terms()) rows.try_emplace({mask, t.exponent}, 0);
    }
  };
  for (const auto& c : cols) collect(c);
  collect(rhs);
  std::size_t idx = 0;
  for (auto& [key, r] : rows) r = idx++;

  const std::size_t nc = cols.size();
  std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(nc + 1));
  auto fill = [&](const Image& im, std::size_t col) {
    for (const auto& [mask, poly] : im) {
      for (const auto& t : poly.terms()) a[rows.at({mask, t.exponent})][col] = t.coefficient;
    }
  };
  for (std::size_t c = 0; c < nc; ++c) fill(cols[c], c);
  fill(rhs, nc);

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (std::size_t k = c; k <= nc; ++k) {
      if (a[r][k] != 0) a[r][k] *= inv;
    }
    for (std::size_t q = 0; q < a.size(); ++q) {
      if (q == r || a[q][c] == 0) continue;
      const Rational f = a[q][c];
      for (std::size_t k = c; k <= nc; ++k) {
        if (a[r][k] != 0) a[q][k] -= f * a[r][k];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t q = r; q < a.size(); ++q) {
    if (a[q][nc] != 0) return std::nullopt;
  }
  std::vector<Rational> x(nc);
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = a[k][nc];
  return x;
}

Exponent image_denominator(const ChartForm& f, std::size_t chart) {
  return lcm(forms::common_denominator(f), Exponent::variable(chart));
}

Image image_of(const Surface& s, const ChartForm& f, const Exponent& common) {
  return forms::cleared_numerators(s, f, common, true);
}

ChartForm d_target(const Surface& s, const PolyForm& alpha, std::size_t chart, PolyForm* ambient_out) {
  ChartForm d = forms::exterior_derivative(s, ChartForm::from_ambient(alpha));
  if (ambient_out) {
    ambient_out->nvars = s.n;
    ambient_out->degree = d.degree;
    ambient_out->coefficients.clear();
    for (const auto& [mask, c] : d.terms) ambient_out->coefficients.emplace(mask, c.numerator);
  }
  return forms::restrict_to_chart(s, d, chart);
}

// Exponents in the variables outside {i, j} of total degree <= max_degree.
std::vector<Exponent> kernel_monomials(std::size_t n, std::size_t i, std::size_t j, unsigned max_degree) {
  std::vector<std::size_t> vars;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k != i && k != j) vars.push_back(k);
  }
  std::vector<Exponent> out{Exponent{}};
  for (unsigned d = 1; d <= max_degree; ++d) {
    std::vector<Exponent> next;
    for (const auto& e : out) {
      if (e.degree() != d - 1) continue;
      // Non-decreasing variable order avoids duplicates.
      std::size_t last = 0;
      for (std::size_t k : vars) {
        if (e[k - 1] > 0) last = k;
      }
      for (std::size_t k : vars) {
        if (k < last) continue;
        next.push_back(e * Exponent::variable(k));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> index_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) out.emplace_back(i, j);
  }
  return out;
}

class Pool {
 public:
  Pool(const Surface& s, std::size_t chart, Exponent common, std::size_t limit, std::string target)
      : s_(s), chart_(chart), common_(common), limit_(limit), target_(std::move(target)) {}

  void add(BracketExpr e) {
    const std::string key = to_string(e);
    if (!seen_.insert(key).second) return;
    if (exprs_.size() >= limit_) {
      throw BudgetExceeded("candidate pool for " + target_ + " exceeds " + std::to_string(limit_));
    }
    ChartForm t = forms::theta(s_, evaluate(s_, e), chart_);
    if (!forms::common_denominator(t).divides(common_)) {
      throw std::logic_error("candidate image has an unexpected denominator");
    }
    images_.push_back(image_of(s_, t, common_));
    exprs_.push_back(std::move(e));
  }

  std::size_t size() const { return exprs_.size(); }

  std::optional<BracketExpr> solve(const Image& target) const {
    auto x = solve_exact(images_, target);
    if (!x) return std::nullopt;
    std::vector<BracketExpr> terms;
    for (std::size_t c = 0; c < x->size(); ++c) {
      if ((*x)[c] == 0) continue;
      terms.push_back((*x)[c] == 1 ? exprs_[c] : BracketExpr::scale((*x)[c], exprs_[c]));
    }
    return BracketExpr::sum(std::move(terms));
  }

 private:
  const Surface& s_;
  std::size_t chart_;
  Exponent common_;
  std::size_t limit_;
  std::string target_;
  std::set<std::string> seen_;
  std::vector<BracketExpr> exprs_;
  std::vector<Image> images_;
};

void check_wedge(std::size_t n, DzMask wedge) {
  if (n < 3) throw std::invalid_argument("generation needs n >= 3");
  if (static_cast<std::size_t>(std::popcount(wedge)) != n - 3 || (wedge >> n) != 0) {
    throw std::invalid_argument("wedge selector must pick n-3 distinct differentials among dz1..dz" +
                                std::to_string(n));
  }
}

// Pushes scale factors through a realization so nested sums flatten.
void append_scaled(std::vector<BracketExpr>& out, const Rational& w, const BracketExpr& e) {
  if (e.kind == BracketExpr::Kind::Sum) {
    for (const auto& c : e.children) append_scaled(out, w, c);
    return;
  }
  if (e.kind == BracketExpr::Kind::Scale) {
    append_scaled(out, w * e.scalar, e.children[0]);
    return;
  }
  out.push_back(w == 1 ? e : BracketExpr::scale(w, e));
}

}  // namespace

// ------------------------------------------------------------- realization

MonomialRealization realize_monomial(const Surface& s, const Exponent& m, DzMask wedge,
                                     const GenerationOptions& options) {
  const std::size_t n = s.n;
  check_wedge(n, wedge);
  if (m.support_width() > n) throw std::invalid_argument("monomial uses variables beyond z" + std::to_string(n));
  const std::size_t chart = s.default_chart();

  PolyForm alpha;
  alpha.nvars = n;
  alpha.degree = n - 3;
  alpha.coefficients.emplace(wedge, Polynomial::monomial(n, m));
  PolyForm d_alpha;
  ChartForm target = d_target(s, alpha, chart, &d_alpha);
  MonomialRealization out;
  if (d_alpha.is_zero()) {
    out.expr = BracketExpr::sum();
    return out;
  }
  const Exponent common = image_denominator(target, chart);
  const Image rhs = image_of(s, target, common);
  const std::string label = "d(" + vdp::to_string(m, n) + (wedge ? " " + wedge_to_string(wedge) : std::string()) + ")";
  Pool pool(s, chart, common, options.max_pool, label);
  const unsigned deg = m.degree();

  // Tier 1: h * delta_ij matching a term h dz_K of d(alpha), K = [n] \ {i, j}.
  for (const auto& [mask, coef] : d_alpha.coefficients) {
    std::vector<std::size_t> ij;
    for (std::size_t k = 1; k <= n; ++k) {
      if (!(mask & bit(k))) ij.push_back(k);
    }
    for (const auto& t : coef.terms()) {
      if (t.exponent[ij[0] - 1] == 0 && t.exponent[ij[1] - 1] == 0) {
        pool.add(BracketExpr::leaf(Polynomial::monomial(n, t.exponent), ij[0], ij[1]));
      }
    }
  }
  auto attempt = [&](Tier tier) -> bool {
    if (pool.size() == 0) return false;
    auto e = pool.solve(rhs);
    if (!e) return false;
    out.expr = std::move(*e);
    out.tier = tier;
    out.pool_size = pool.size();
    return true;
  };
  if (attempt(Tier::Leaves)) return out;

  // Tier 2: brackets [h delta_ij, delta_kl].
  const auto pairs = index_pairs(n);
  const unsigned bracket_h = deg >= 2 ? deg - 2 : 0;
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (a == b) continue;
      auto [i, j] = pairs[a];
      auto [k, l] = pairs[b];
      for (const auto& h : kernel_monomials(n, i, j, bracket_h)) {
        if (h.is_one() && b < a) continue;
        pool.add(BracketExpr::bracket(BracketExpr::leaf(Polynomial::monomial(n, h), i, j),
                                      BracketExpr::leaf(Polynomial::constant(n, 1), k, l)));
      }
    }
  }
  if (attempt(Tier::Brackets)) return out;

  if (options.allow_widening) {
    // Tier 3: kernel multiples on both sides. Multipliers one degree above the
    // target are needed already for d(z1*z2 dz3) on X_4.
    const unsigned cap = deg + 1;
    for (auto [i, j] : pairs) {
      for (const auto& h : kernel_monomials(n, i, j, cap)) {
        pool.add(BracketExpr::leaf(Polynomial::monomial(n, h), i, j));
      }
    }
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        if (a == b) continue;
        auto [i, j] = pairs[a];
        auto [k, l] = pairs[b];
        for (const auto& h : kernel_monomials(n, i, j, cap)) {
          for (const auto& g : kernel_monomials(n, k, l, cap - std::min(cap, h.degree()))) {
            if (b < a && h == g) continue;
            pool.add(BracketExpr::bracket(BracketExpr::leaf(Polynomial::monomial(n, h), i, j),
                                          BracketExpr::leaf(Polynomial::monomial(n, g), k, l)));
          }
        }
      }
    }
    if (attempt(Tier::Widened)) return out;
  }
  throw CertificateFailure("no candidate pool spans " + label + " (pool size " + std::to_string(pool.size()) + ")");
}

std::string residual_string(const RealizationCertificate& c) {
  if (c.residual.empty()) return "0";
  PolyForm f;
  f.nvars = c.n;
  f.degree = c.n - 2;
  f.coefficients = c.residual;
  return vdp::to_string(f);
}

RealizationCertificate realize_exact(const Surface& s, const PolyForm& alpha, const GenerationOptions& options) {
  const std::size_t n = s.n;
  if (alpha.nvars != n) throw std::invalid_argument("form lives in the wrong ring");
  if (!alpha.is_zero() && alpha.degree != n - 3) {
    throw std::invalid_argument("expected a " + std::to_string(n - 3) + "-form, got degree " +
                                std::to_string(alpha.degree));
  }
  for (const auto& [mask, coef] : alpha.coefficients) {
    if (coef.total_degree() > options.degree_bound) {
      throw std::invalid_argument("coefficient degree " + std::to_string(coef.total_degree()) +
                                  " exceeds the bound " + std::to_string(options.degree_bound));
    }
  }
  const std::size_t chart = s.default_chart();
  RealizationCertificate cert;
  cert.n = n;
  cert.alpha = alpha;
  cert.alpha.degree = n - 3;
  cert.alpha.nvars = n;
  ChartForm target = d_target(s, cert.alpha, chart, &cert.d_alpha);
  const Exponent common = image_denominator(target, chart);
  const Image rhs = image_of(s, target, common);

  std::vector<BracketExpr> parts;
  try {
    for (const auto& [mask, coef] : alpha.coefficients) {
      for (const auto& t : coef.terms()) {
        MonomialRealization r = realize_monomial(s, t.exponent, mask, options);
        cert.tier = std::max(cert.tier, r.tier);
        if (!r.expr.is_empty_sum()) parts.push_back(std::move(r.expr));
      }
    }
  } catch (const CertificateFailure& e) {
    cert.failure = e.what();
    cert.expr = BracketExpr::sum();
    for (auto& [mask, poly] : rhs) cert.residual.emplace(mask, -poly);
    return cert;
  }

  std::vector<Image> images;
  for (const auto& p : parts) {
    images.push_back(image_of(s, forms::theta(s, evaluate(s, p), chart), common));
  }
  std::vector<BracketExpr> terms;
  if (!parts.empty()) {
    auto w = solve_exact(images, rhs);
    if (!w) {
      cert.failure = "linear system for the part weights is inconsistent";
      cert.expr = BracketExpr::sum();
      for (auto& [mask, poly] : rhs) cert.residual.emplace(mask, -poly);
      return cert;
    }
    cert.weights = *w;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if ((*w)[k] != 0) append_scaled(terms, (*w)[k], parts[k]);
    }
  }
  cert.expr = BracketExpr::sum(std::move(terms));

  // Independent re-check from scratch.
  const VectorField xi = evaluate(s, cert.expr);
  ChartForm diff = forms::add(s, forms::theta(s, xi, chart), forms::scale(target, -1));
  cert.residual = image_of(s, diff, lcm(forms::common_denominator(diff), common));
  cert.divergence_free = forms::divergence_free(s, xi);
  cert.valid = cert.residual.empty() && cert.divergence_free;
  if (!cert.valid && cert.failure.empty()) {
    cert.failure = cert.residual.empty() ? "realizing field is not divergence-free" : "nonzero residual";
  }
  return cert;
}

std::vector<PolyForm> monomial_generators(std::size_t n, unsigned degree_bound) {
  if (n < 3) throw std::invalid_argument("generation needs n >= 3");
  std::vector<Exponent> monomials{Exponent{}};
  for (unsigned d = 1; d <= degree_bound; ++d) {
    std::vector<Exponent> next;
    for (const auto& e : monomials) {
      if (e.degree() != d - 1) continue;
      std::size_t last = 1;
      for (std::size_t k = 1; k <= n; ++k) {
        if (e[k - 1] > 0) last = k;
      }
      for (std::size_t k = last; k <= n; ++k) next.push_back(e * Exponent::variable(k));
    }
    monomials.insert(monomials.end(), next.begin(), next.end());
  }
  std::vector<PolyForm> out;
  for (DzMask wedge = 0; wedge < (DzMask{1} << n); ++wedge) {
    if (static_cast<std::size_t>(std::popcount(wedge)) != n - 3) continue;
    for (const auto& m : monomials) {
      PolyForm f;
      f.nvars = n;
      f.degree = n - 3;
      f.coefficients.emplace(wedge, Polynomial::monomial(n, m));
      out.push_back(std::move(f));
    }
  }
  return out;
}

GenerationBatch verify_generation(std::size_t n, unsigned degree_bound, const GenerationOptions& options) {
  GenerationBatch batch;
  batch.n = n;
  batch.degree_bound = degree_bound;
  batch.header = {
      "targets are exact forms d(alpha); closed and exact (n-2)-forms agree because H_{n-2}(X_n) = 0",
      "Lambda is read as the inverse of Theta composed with d: alpha -> xi with Theta(xi) = d(alpha)",
      "Theta(xi) = iota_xi omega in chart " + std::to_string(n) + ", omega glued from the chart forms"};
  GenerationOptions opts = options;
  opts.degree_bound = std::max(opts.degree_bound, degree_bound);
  const Surface s = Surface::level(n);
  const auto gens = monomial_generators(n, degree_bound);
  batch.certificates = parallel_map(
      gens.size(), [&](std::size_t k) { return realize_exact(s, gens[k], opts); }, options.execution);
  for (const auto& c : batch.certificates) {
    if (c.valid) {
      ++batch.passed;
    } else {
      ++batch.failed;
    }
    if (c.tier == Tier::Widened) ++batch.widened;
  }
  return batch;
}

}  // namespace vdp::generation

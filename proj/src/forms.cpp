#include "vdpkit/forms.hpp"

#include <bit>
#include <stdexcept>

#include "vdpkit/family.hpp"

namespace vdp::forms {

namespace {

DzMask bit(std::size_t k) { return DzMask{1} << (k - 1); }

// (-1)^(number of entries of mask below k)
int sign_below(DzMask mask, std::size_t k) {
  return std::popcount(mask & (bit(k) - 1)) % 2 == 0 ? 1 : -1;
}

Exponent bump(Exponent e, std::size_t k) {
  e.set(k - 1, static_cast<std::uint16_t>(e[k - 1] + 1));
  return e;
}

void require_same_level(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("level mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
  }
}

void require_index(const Surface& s, std::size_t k) {
  if (k < 1 || k > s.n) {
    throw std::out_of_range("index " + std::to_string(k) + " outside 1.." + std::to_string(s.n));
  }
}

}  // namespace

// ----------------------------------------------------------------- Surface

Surface Surface::of(const Polynomial& p) {
  Surface s;
  s.n = p.nvars();
  s.p = p;
  for (std::size_t k = 1; k <= s.n; ++k) s.grad.push_back(partial_derivative(p, k));
  return s;
}

Surface Surface::level(std::size_t n) { return of(family::build_pn(n)); }

Polynomial Surface::partial_power(const Exponent& e) const {
  Polynomial out = Polynomial::constant(n, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    if (e[k - 1] > 0) out *= pow(partial(k), e[k - 1]);
  }
  return out;
}

std::size_t Surface::default_chart() const {
  for (std::size_t k = n; k >= 1; --k) {
    if (!partial(k).is_zero()) return k;
  }
  throw std::domain_error("hypersurface has no chart: p is constant");
}

// ------------------------------------------------------------ VectorField

VectorField VectorField::zero(std::size_t n) {
  return VectorField{n, std::vector<Polynomial>(n, Polynomial(n))};
}

VectorField VectorField::coordinate(std::size_t n, std::size_t k) {
  VectorField v = zero(n);
  v.c.at(k - 1) = Polynomial::constant(n, 1);
  return v;
}

bool VectorField::is_zero() const {
  for (const auto& x : c) {
    if (!x.is_zero()) return false;
  }
  return true;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  require_same_level(n, other.n);
  for (std::size_t k = 0; k < n; ++k) c[k] += other.c[k];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  require_same_level(n, other.n);
  for (std::size_t k = 0; k < n; ++k) c[k] -= other.c[k];
  return *this;
}

VectorField operator*(const Polynomial& h, const VectorField& v) {
  VectorField out = v;
  for (auto& x : out.c) x = h * x;
  return out;
}

VectorField operator*(const Rational& s, const VectorField& v) {
  VectorField out = v;
  for (auto& x : out.c) x *= s;
  return out;
}

VectorField delta(const Surface& s, std::size_t i, std::size_t j) {
  require_index(s, i);
  require_index(s, j);
  if (i == j) throw std::invalid_argument("delta needs two distinct indices");
  VectorField v = VectorField::zero(s.n);
  v.c[j - 1] = s.partial(i);
  v.c[i - 1] = -s.partial(j);
  return v;
}

Polynomial apply(const VectorField& v, const Polynomial& h) {
  require_same_level(v.n, h.nvars());
  Polynomial out(v.n);
  for (std::size_t k = 1; k <= v.n; ++k) {
    if (v.c[k - 1].is_zero()) continue;
    Polynomial d = partial_derivative(h, k);
    if (!d.is_zero()) out += v.c[k - 1] * d;
  }
  return out;
}

VectorField lie_bracket(const VectorField& a, const VectorField& b) {
  require_same_level(a.n, b.n);
  VectorField out = VectorField::zero(a.n);
  for (std::size_t k = 0; k < a.n; ++k) out.c[k] = apply(a, b.c[k]) - apply(b, a.c[k]);
  return out;
}

bool is_tangent(const Surface& s, const VectorField& v) {
  require_same_level(s.n, v.n);
  return remainder(apply(v, s.p), s.p).is_zero();
}

std::string to_string(const VectorField& v) {
  std::string out;
  for (std::size_t k = 1; k <= v.n; ++k) {
    const Polynomial& c = v[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")*d/dz" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

// -------------------------------------------------------------- ChartForm

ChartForm ChartForm::zero(std::size_t n, std::size_t chart, std::size_t degree) {
  ChartForm f;
  f.n = n;
  f.chart = chart;
  f.degree = degree;
  return f;
}

ChartForm ChartForm::from_ambient(const PolyForm& form) {
  ChartForm f = zero(form.nvars, 0, form.degree);
  for (const auto& [mask, coef] : form.coefficients) f.terms.emplace(mask, FormCoefficient{coef, {}});
  return f;
}

void ChartForm::add(DzMask mask, const FormCoefficient& c, const Surface& s) {
  if (c.numerator.is_zero()) return;
  auto it = terms.find(mask);
  if (it == terms.end()) {
    terms.emplace(mask, c);
    return;
  }
  FormCoefficient& a = it->second;
  if (a.denominator == c.denominator) {
    a.numerator += c.numerator;
  } else {
    const Exponent l = lcm(a.denominator, c.denominator);
    a.numerator = a.numerator * s.partial_power(l / a.denominator) +
                  c.numerator * s.partial_power(l / c.denominator);
    a.denominator = l;
  }
  if (a.numerator.is_zero()) terms.erase(it);
}

ChartForm add(const Surface& s, const ChartForm& a, const ChartForm& b) {
  require_same_level(a.n, b.n);
  if (a.degree != b.degree) throw std::invalid_argument("adding forms of different degrees");
  if (a.chart != b.chart) {
    if (a.chart == 0) return add(s, restrict_to_chart(s, a, b.chart), b);
    return add(s, a, restrict_to_chart(s, b, a.chart));
  }
  ChartForm out = a;
  for (const auto& [mask, c] : b.terms) out.add(mask, c, s);
  return out;
}

ChartForm scale(const ChartForm& a, const Rational& c) {
  ChartForm out = ChartForm::zero(a.n, a.chart, a.degree);
  if (c == 0) return out;
  for (const auto& [mask, t] : a.terms) out.terms.emplace(mask, FormCoefficient{t.numerator * c, t.denominator});
  return out;
}

ChartForm normalize(const Surface& s, ChartForm form) {
  for (auto it = form.terms.begin(); it != form.terms.end();) {
    FormCoefficient& c = it->second;
    for (std::size_t k = 1; k <= s.n; ++k) {
      while (c.denominator[k - 1] > 0) {
        auto q = divide_exact(c.numerator, s.partial(k));
        if (!q) break;
        c.numerator = std::move(*q);
        c.denominator.set(k - 1, static_cast<std::uint16_t>(c.denominator[k - 1] - 1));
      }
    }
    it = c.numerator.is_zero() ? form.terms.erase(it) : std::next(it);
  }
  return form;
}

ChartForm volume_chart(const Surface& s, std::size_t i) {
  require_index(s, i);
  ChartForm f = ChartForm::zero(s.n, i, s.n - 1);
  const DzMask all = static_cast<DzMask>((std::uint64_t{1} << s.n) - 1);
  f.terms.emplace(all & ~bit(i), FormCoefficient{Polynomial::constant(s.n, 1), Exponent::variable(i)});
  return f;
}

ChartForm restrict_to_chart(const Surface& s, const ChartForm& form, std::size_t j) {
  require_same_level(s.n, form.n);
  require_index(s, j);
  if (form.chart == j) return form;
  if (s.partial(j).is_zero()) {
    throw std::invalid_argument("degenerate chart " + std::to_string(j) + ": dp/dz" +
                                std::to_string(j) + " vanishes identically");
  }
  ChartForm out = ChartForm::zero(s.n, j, form.degree);
  for (const auto& [mask, c] : form.terms) {
    if (!(mask & bit(j))) {
      out.add(mask, c, s);
      continue;
    }
    const DzMask rest = mask & ~bit(j);
    const int front = sign_below(mask, j);
    const Exponent den = bump(c.denominator, j);
    for (std::size_t k = 1; k <= s.n; ++k) {
      if (k == j || (rest & bit(k)) || s.partial(k).is_zero()) continue;
      const int sign = -front * sign_below(rest, k);
      out.add(rest | bit(k), FormCoefficient{c.numerator * s.partial(k) * Rational(sign), den}, s);
    }
  }
  return normalize(s, std::move(out));
}

ChartForm interior_product(const Surface& s, const VectorField& v, const ChartForm& form) {
  require_same_level(v.n, form.n);
  if (form.degree == 0) throw std::invalid_argument("interior product of a 0-form");
  ChartForm out = ChartForm::zero(form.n, form.chart, form.degree - 1);
  for (const auto& [mask, c] : form.terms) {
    for (std::size_t k = 1; k <= form.n; ++k) {
      if (!(mask & bit(k)) || v[k].is_zero()) continue;
      Polynomial term = c.numerator * v[k];
      if (sign_below(mask, k) < 0) term = -term;
      out.add(mask & ~bit(k), FormCoefficient{std::move(term), c.denominator}, s);
    }
  }
  return out;
}

ChartForm exterior_derivative(const Surface& s, const ChartForm& form) {
  require_same_level(s.n, form.n);
  ChartForm ambient = ChartForm::zero(s.n, 0, form.degree + 1);
  for (const auto& [mask, c] : form.terms) {
    std::vector<std::size_t> dens;
    for (std::size_t k = 1; k <= s.n; ++k) {
      if (c.denominator[k - 1] > 0) dens.push_back(k);
    }
    Exponent new_den = c.denominator;
    for (std::size_t k : dens) new_den = bump(new_den, k);

    // d(N / prod g_k^e_k) = (dN G - N sum_k e_k dg_k G/g_k) / (prod g_k^e_k * G)
    Polynomial big_g = Polynomial::constant(s.n, 1);
    std::vector<Polynomial> others;
    for (std::size_t a = 0; a < dens.size(); ++a) {
      big_g *= s.partial(dens[a]);
      Polynomial o = Polynomial::constant(s.n, c.denominator[dens[a] - 1]);
      for (std::size_t b = 0; b < dens.size(); ++b) {
        if (b != a) o *= s.partial(dens[b]);
      }
      others.push_back(std::move(o));
    }
    for (std::size_t m = 1; m <= s.n; ++m) {
      if (mask & bit(m)) continue;
      Polynomial num = partial_derivative(c.numerator, m) * big_g;
      for (std::size_t a = 0; a < dens.size(); ++a) {
        Polynomial dg = partial_derivative(s.partial(dens[a]), m);
        if (!dg.is_zero()) num -= c.numerator * dg * others[a];
      }
      if (num.is_zero()) continue;
      if (sign_below(mask, m) < 0) num = -num;
      ambient.add(mask | bit(m), FormCoefficient{std::move(num), new_den}, s);
    }
  }
  if (form.chart == 0) return normalize(s, std::move(ambient));
  return restrict_to_chart(s, ambient, form.chart);
}

ChartForm wedge(const Surface& s, const ChartForm& a, const ChartForm& b) {
  require_same_level(a.n, b.n);
  if (a.chart != b.chart) throw std::invalid_argument("wedge of forms in different charts");
  ChartForm out = ChartForm::zero(a.n, a.chart, a.degree + b.degree);
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      if (ma & mb) continue;
      // Each dz_k of b moves past the entries of a above k.
      int sign = 1;
      for (std::size_t k = 1; k <= a.n; ++k) {
        if ((mb & bit(k)) && std::popcount(ma & ~((bit(k) << 1) - 1)) % 2 != 0) sign = -sign;
      }
      Polynomial num = ca.numerator * cb.numerator;
      if (sign < 0) num = -num;
      out.add(ma | mb, FormCoefficient{std::move(num), ca.denominator * cb.denominator}, s);
    }
  }
  return out;
}

ChartForm theta(const Surface& s, const VectorField& v, std::size_t chart) {
  if (chart == 0) chart = s.default_chart();
  if (!is_tangent(s, v)) throw std::invalid_argument("theta: vector field is not tangent to X");
  return interior_product(s, v, volume_chart(s, chart));
}

bool vanishes_on(const Surface& s, const ChartForm& form) {
  for (const auto& [mask, c] : form.terms) {
    if (!remainder(c.numerator, s.p).is_zero()) return false;
  }
  return true;
}

bool equivalent(const Surface& s, const ChartForm& a, const ChartForm& b) {
  if (a.degree != b.degree) return false;
  return vanishes_on(s, add(s, a, scale(b, -1)));
}

bool divergence_free(const Surface& s, const VectorField& v, std::vector<std::size_t> charts) {
  if (charts.empty()) {
    for (std::size_t k = 1; k <= s.n; ++k) {
      if (!s.partial(k).is_zero()) charts.push_back(k);
    }
  }
  for (std::size_t c : charts) {
    if (!vanishes_on(s, exterior_derivative(s, theta(s, v, c)))) return false;
  }
  return true;
}

Exponent common_denominator(const ChartForm& form) {
  Exponent l;
  for (const auto& [mask, c] : form.terms) l = lcm(l, c.denominator);
  return l;
}

std::map<DzMask, Polynomial> cleared_numerators(const Surface& s, const ChartForm& form,
                                                const Exponent& common, bool reduce_mod_p) {
  std::map<DzMask, Polynomial> out;
  for (const auto& [mask, c] : form.terms) {
    if (!c.denominator.divides(common)) {
      throw std::invalid_argument("cleared_numerators: denominator does not divide the common one");
    }
    Polynomial num = c.numerator * s.partial_power(common / c.denominator);
    if (reduce_mod_p) num = remainder(num, s.p);
    if (!num.is_zero()) out.emplace(mask, std::move(num));
  }
  return out;
}

CompatibilityResult chart_compatibility(const Surface& s, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("chart_compatibility needs i != j");
  CompatibilityResult r{i, j, 0, false};
  const ChartForm restricted = restrict_to_chart(s, volume_chart(s, i), j);
  const ChartForm target = volume_chart(s, j);
  for (int sign : {1, -1}) {
    if (equivalent(s, restricted, scale(target, sign))) {
      r.sign = sign;
      r.passed = true;
      break;
    }
  }
  return r;
}

VolumeAtlas volume_atlas(const Surface& s) {
  VolumeAtlas atlas;
  atlas.n = s.n;
  atlas.signs.assign(s.n, std::vector<int>(s.n, 1));
  atlas.passed = true;
  for (std::size_t i = 1; i <= s.n; ++i) atlas.charts.push_back(volume_chart(s, i));
  for (std::size_t i = 1; i <= s.n; ++i) {
    for (std::size_t j = 1; j <= s.n; ++j) {
      if (i == j) continue;
      auto r = chart_compatibility(s, i, j);
      atlas.signs[i - 1][j - 1] = r.sign;
      atlas.passed = atlas.passed && r.passed;
    }
  }
  atlas.involutive = true;
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t j = 0; j < s.n; ++j) {
      if (atlas.signs[i][j] * atlas.signs[j][i] != 1) atlas.involutive = false;
    }
  }
  return atlas;
}

std::string to_string(const Surface& s, const ChartForm& form) {
  if (form.is_zero()) return "0";
  std::string out;
  for (const auto& [mask, c] : form.terms) {
    std::string num = to_string(c.numerator);
    std::string coef;
    if (c.denominator.is_one()) {
      coef = c.numerator.size() > 1 ? "(" + num + ")" : num;
    } else {
      coef = (c.numerator.size() > 1 ? "(" + num + ")" : num) + "/(" +
             to_string(s.partial_power(c.denominator)) + ")";
    }
    std::string w = wedge_to_string(mask);
    std::string piece = w.empty() ? coef : (coef == "1" ? w : coef + " " + w);
    out += out.empty() ? piece : " + " + piece;
  }
  return out;
}

}  // namespace vdp::forms

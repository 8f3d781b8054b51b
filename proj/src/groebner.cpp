#include "vdpkit/groebner.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "term_list.hpp"
#include "vdpkit/errors.hpp"

namespace vdp {

namespace {

using detail::TermList;

struct Element {
  TermList terms;  // ascending, monic
  std::uint32_t sugar = 0;
  bool active = true;

  const Exponent& lead() const { return terms.back().exponent; }
};

struct Pair {
  std::size_t i;
  std::size_t j;
  Exponent lcm;
  std::uint32_t sugar;
};

class Engine {
 public:
  Engine(std::size_t nvars, const MonomialOrder& order, const GroebnerOptions& options)
      : nvars_(nvars), order_(order), options_(options) {}

  // Returns false when a nonzero constant appeared (unit ideal).
  bool run(const std::vector<Polynomial>& generators) {
    std::vector<TermList> inputs;
    inputs.reserve(generators.size());
    for (const auto& g : generators) inputs.push_back(detail::sorted_terms(g, order_));
    // Small leading terms first keeps early reductions cheap.
    std::sort(inputs.begin(), inputs.end(), [&](const TermList& a, const TermList& b) {
      return order_.less(a.back().exponent, b.back().exponent);
    });
    for (auto& in : inputs) {
      std::uint32_t sugar = 0;
      for (const auto& t : in) sugar = std::max(sugar, t.exponent.degree());
      TermList h = reduce(std::move(in));
      if (h.empty()) continue;
      if (h.back().exponent.is_one()) return false;
      detail::make_monic(h);
      insert(std::move(h), sugar);
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        return order_.less(a.lcm, b.lcm);
      });
      Pair p = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      ++pairs_processed_;
      TermList s = s_polynomial(p);
      TermList h = reduce(std::move(s));
      if (h.empty()) continue;
      if (h.back().exponent.is_one()) return false;
      detail::make_monic(h);
      insert(std::move(h), p.sugar);
    }
    return true;
  }

  std::vector<TermList> reduced_basis() {
    std::vector<TermList> minimal;
    std::vector<std::size_t> act;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (basis_[k].active) act.push_back(k);
    }
    for (std::size_t a = 0; a < act.size(); ++a) {
      const Exponent& la = basis_[act[a]].lead();
      bool redundant = false;
      for (std::size_t b = 0; b < act.size() && !redundant; ++b) {
        if (a == b) continue;
        const Exponent& lb = basis_[act[b]].lead();
        if (lb.divides(la) && (lb != la || b < a)) redundant = true;
      }
      if (!redundant) minimal.push_back(basis_[act[a]].terms);
    }
    // Tail-reduce each element against the others.
    for (std::size_t a = 0; a < minimal.size(); ++a) {
      TermList head{minimal[a].back()};
      TermList tail(minimal[a].begin(), minimal[a].end() - 1);
      TermList reduced_tail = reduce_against(std::move(tail), minimal, a);
      reduced_tail.push_back(head.front());
      minimal[a] = std::move(reduced_tail);
      detail::make_monic(minimal[a]);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const TermList& x, const TermList& y) {
      return order_.less(x.back().exponent, y.back().exponent);
    });
    return minimal;
  }

  std::uint64_t reductions() const { return reductions_; }
  std::uint64_t pairs_processed() const { return pairs_processed_; }

 private:
  void count_step() {
    if (++reductions_ > options_.budget) {
      throw BudgetExceeded("Gröbner budget of " + std::to_string(options_.budget) +
                           " reduction steps exceeded");
    }
  }

  TermList s_polynomial(const Pair& p) {
    const TermList& f = basis_[p.i].terms;
    const TermList& g = basis_[p.j].terms;
    Exponent mf = p.lcm / f.back().exponent;
    Exponent mg = p.lcm / g.back().exponent;
    TermList s;
    s.reserve(f.size());
    for (const auto& t : f) s.push_back(Term{t.exponent * mf, t.coefficient});
    detail::sub_scaled(s, 1, mg, g, order_, scratch_);
    return s;
  }

  // Full reduction against the active basis.
  TermList reduce(TermList f) {
    TermList rem;
    while (!f.empty()) {
      const Exponent top = f.back().exponent;
      const Element* divisor = nullptr;
      for (const auto& e : basis_) {
        if (e.active && e.lead().divides(top)) {
          divisor = &e;
          break;
        }
      }
      if (divisor) {
        count_step();
        Rational c = f.back().coefficient;  // divisor is monic
        detail::sub_scaled(f, c, top / divisor->lead(), divisor->terms, order_, scratch_);
      } else {
        rem.push_back(std::move(f.back()));
        f.pop_back();
      }
    }
    std::reverse(rem.begin(), rem.end());
    return rem;
  }

  TermList reduce_against(TermList f, const std::vector<TermList>& set, std::size_t skip) {
    TermList rem;
    while (!f.empty()) {
      const Exponent top = f.back().exponent;
      const TermList* divisor = nullptr;
      for (std::size_t k = 0; k < set.size(); ++k) {
        if (k != skip && set[k].back().exponent.divides(top)) {
          divisor = &set[k];
          break;
        }
      }
      if (divisor) {
        count_step();
        Rational c = f.back().coefficient / divisor->back().coefficient;
        detail::sub_scaled(f, c, top / divisor->back().exponent, *divisor, order_, scratch_);
      } else {
        rem.push_back(std::move(f.back()));
        f.pop_back();
      }
    }
    std::reverse(rem.begin(), rem.end());
    return rem;
  }

  std::uint32_t pair_sugar(std::size_t i, std::size_t j, const Exponent& l) const {
    const auto& a = basis_[i];
    const auto& b = basis_[j];
    std::uint32_t sa = a.sugar + l.degree() - a.lead().degree();
    std::uint32_t sb = b.sugar + l.degree() - b.lead().degree();
    return std::max(sa, sb);
  }

  // Gebauer-Möller installation of a new basis element.
  void insert(TermList h, std::uint32_t sugar) {
    const std::size_t hi = basis_.size();
    basis_.push_back(Element{std::move(h), sugar, true});
    const Exponent lh = basis_[hi].lead();

    struct Candidate {
      std::size_t g;
      Exponent lcm;
      bool coprime;
    };
    std::vector<Candidate> c;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!basis_[g].active) continue;
      c.push_back(Candidate{g, lcm(basis_[g].lead(), lh), basis_[g].lead().coprime(lh)});
    }
    // Chain criterion among the new pairs.
    std::vector<Candidate> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      bool keep = c[k].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t m = k + 1; m < c.size() && keep; ++m) {
          if (c[m].lcm.divides(c[k].lcm)) keep = false;
        }
        for (std::size_t m = 0; m < d.size() && keep; ++m) {
          if (d[m].lcm.divides(c[k].lcm)) keep = false;
        }
      }
      if (keep) d.push_back(c[k]);
    }
    // Old pairs made redundant by h.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && lcm(basis_[p.i].lead(), lh) != p.lcm &&
                  lcm(basis_[p.j].lead(), lh) != p.lcm;
      if (!drop) kept.push_back(p);
    }
    pairs_.swap(kept);
    // Product criterion.
    for (const auto& cand : d) {
      if (cand.coprime) continue;
      pairs_.push_back(Pair{cand.g, hi, cand.lcm, pair_sugar(cand.g, hi, cand.lcm)});
    }
    for (std::size_t g = 0; g < hi; ++g) {
      if (basis_[g].active && lh.divides(basis_[g].lead())) basis_[g].active = false;
    }
  }

  std::size_t nvars_;
  const MonomialOrder& order_;
  GroebnerOptions options_;
  std::vector<Element> basis_;
  std::vector<Pair> pairs_;
  TermList scratch_;
  std::uint64_t reductions_ = 0;
  std::uint64_t pairs_processed_ = 0;
};

TermList reduce_by_basis(TermList f, const std::vector<TermList>& basis, const MonomialOrder& order) {
  TermList rem;
  TermList scratch;
  while (!f.empty()) {
    const Exponent top = f.back().exponent;
    const TermList* divisor = nullptr;
    for (const auto& g : basis) {
      if (g.back().exponent.divides(top)) {
        divisor = &g;
        break;
      }
    }
    if (divisor) {
      Rational c = f.back().coefficient / divisor->back().coefficient;
      detail::sub_scaled(f, c, top / divisor->back().exponent, *divisor, order, scratch);
    } else {
      rem.push_back(std::move(f.back()));
      f.pop_back();
    }
  }
  return rem;
}

}  // namespace

Ideal::Ideal(std::size_t nvars, std::vector<Polynomial> generators) : nvars_(nvars) {
  for (auto& g : generators) {
    if (g.nvars() != nvars) throw std::invalid_argument("ideal generator in the wrong ring");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

bool GroebnerBasis::is_unit() const {
  return basis.size() == 1 && basis.front().is_constant() && !basis.front().is_zero();
}

std::size_t GroebnerBasis::nvars() const { return order.significance().size(); }

GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order,
                         const GroebnerOptions& options) {
  if (order.significance().size() != ideal.nvars()) {
    throw std::invalid_argument("monomial order and ideal have different variable counts");
  }
  Engine engine(ideal.nvars(), order, options);
  GroebnerBasis out{order, {}, 0, 0};
  const bool proper = engine.run(ideal.generators());
  out.reductions = engine.reductions();
  out.pairs_processed = engine.pairs_processed();
  if (!proper) {
    out.basis.push_back(Polynomial::constant(ideal.nvars(), 1));
    return out;
  }
  for (auto& t : engine.reduced_basis()) {
    out.basis.push_back(detail::to_polynomial(ideal.nvars(), std::move(t)));
  }
  out.reductions = engine.reductions();
  return out;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis) {
  if (f.nvars() != basis.nvars()) throw std::invalid_argument("normal_form: ring mismatch");
  std::vector<TermList> lists;
  lists.reserve(basis.basis.size());
  for (const auto& g : basis.basis) lists.push_back(detail::sorted_terms(g, basis.order));
  return detail::to_polynomial(
      f.nvars(), reduce_by_basis(detail::sorted_terms(f, basis.order), lists, basis.order));
}

bool all_s_polynomials_reduce(const GroebnerBasis& basis) {
  const auto& order = basis.order;
  std::vector<TermList> lists;
  for (const auto& g : basis.basis) lists.push_back(detail::sorted_terms(g, order));
  TermList scratch;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (std::size_t j = i + 1; j < lists.size(); ++j) {
      const Term& a = lists[i].back();
      const Term& b = lists[j].back();
      Exponent l = lcm(a.exponent, b.exponent);
      TermList s;
      Exponent ma = l / a.exponent;
      for (const auto& t : lists[i]) s.push_back(Term{t.exponent * ma, t.coefficient / a.coefficient});
      detail::sub_scaled(s, Rational(1 / b.coefficient), l / b.exponent, lists[j], order, scratch);
      if (!reduce_by_basis(std::move(s), lists, order).empty()) return false;
    }
  }
  return true;
}

UnitCertificate contains_one(const Ideal& ideal, const GroebnerOptions& options) {
  return contains_one(ideal, MonomialOrder::natural(options.order, ideal.nvars()), options);
}

UnitCertificate contains_one(const Ideal& ideal, const MonomialOrder& order,
                             const GroebnerOptions& options) {
  UnitCertificate cert{false, buchberger(ideal, order, options)};
  cert.contains_one = normal_form(Polynomial::constant(ideal.nvars(), 1), cert.basis).is_zero();
  return cert;
}

bool ideal_equal(const Ideal& a, const Ideal& b, const GroebnerOptions& options) {
  return ideal_equal(a, b, MonomialOrder::natural(options.order, a.nvars()), options);
}

bool ideal_equal(const Ideal& a, const Ideal& b, const MonomialOrder& order,
                 const GroebnerOptions& options) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("ideal_equal: ring mismatch");
  return buchberger(a, order, options).basis == buchberger(b, order, options).basis;
}

std::size_t dimension(const GroebnerBasis& basis) {
  if (basis.is_unit()) throw std::domain_error("dimension of the unit ideal is undefined");
  const std::size_t n = basis.nvars();
  std::vector<std::uint32_t> supports;
  for (const auto& g : basis.basis) {
    const Exponent& lead = g.leading_term(basis.order).exponent;
    std::uint32_t s = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (lead[v] != 0) s |= std::uint32_t{1} << v;
    }
    supports.push_back(s);
  }
  std::size_t best = 0;
  for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << n); ++subset) {
    auto size = static_cast<std::size_t>(std::popcount(subset));
    if (size <= best) continue;
    bool independent = true;
    for (std::uint32_t s : supports) {
      if ((s & ~subset) == 0) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

std::size_t dimension(const Ideal& ideal, const MonomialOrder& order, const GroebnerOptions& options) {
  return dimension(buchberger(ideal, order, options));
}

}  // namespace vdp

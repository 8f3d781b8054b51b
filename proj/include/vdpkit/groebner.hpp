#pragma once

// Buchberger's algorithm (sugar strategy, Gebauer-Möller criteria) and the
// ideal-theoretic certificates built on it.

#include <cstdint>
#include <vector>

#include "vdpkit/polynomial.hpp"

namespace vdp {

struct GroebnerOptions {
  // Maximum number of elementary reduction steps before BudgetExceeded.
  std::uint64_t budget = 1'000'000;
  // Used by the overloads that take no explicit order.
  OrderKind order = OrderKind::Degrevlex;
};

class Ideal {
 public:
  // Zero generators are dropped; every generator must live in nvars variables.
  Ideal(std::size_t nvars, std::vector<Polynomial> generators);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Polynomial>& generators() const { return generators_; }

 private:
  std::size_t nvars_;
  std::vector<Polynomial> generators_;
};

struct GroebnerBasis {
  MonomialOrder order;
  // Reduced and monic, sorted by ascending leading monomial.
  std::vector<Polynomial> basis;
  std::uint64_t reductions = 0;
  std::uint64_t pairs_processed = 0;

  bool is_unit() const;
  std::size_t nvars() const;
};

GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order,
                         const GroebnerOptions& options = {});

// Remainder of f modulo a Gröbner basis; zero iff f is in the ideal.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis);

// Recomputes every S-polynomial of the basis and checks it reduces to zero.
bool all_s_polynomials_reduce(const GroebnerBasis& basis);

struct UnitCertificate {
  bool contains_one = false;
  GroebnerBasis basis;
};

UnitCertificate contains_one(const Ideal& ideal, const GroebnerOptions& options = {});
UnitCertificate contains_one(const Ideal& ideal, const MonomialOrder& order,
                             const GroebnerOptions& options = {});

bool ideal_equal(const Ideal& a, const Ideal& b, const GroebnerOptions& options = {});
bool ideal_equal(const Ideal& a, const Ideal& b, const MonomialOrder& order,
                 const GroebnerOptions& options = {});

// Krull dimension of the quotient ring, from a maximal set of variables
// independent modulo the leading monomials. Throws std::domain_error on the
// unit ideal.
std::size_t dimension(const Ideal& ideal, const MonomialOrder& order,
                      const GroebnerOptions& options = {});
std::size_t dimension(const GroebnerBasis& basis);

}  // namespace vdp

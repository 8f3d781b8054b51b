#pragma once

// Realizing exact forms d(alpha) as theta-images of Lie-bracket expressions
// in the fields delta_ij and their kernel multiples h * delta_ij. Unknown
// scalars are solved exactly over Q on numerators reduced modulo p.

#include <map>
#include <string>
#include <vector>

#include "vdpkit/expression.hpp"
#include "vdpkit/forms.hpp"
#include "vdpkit/parallel.hpp"

namespace vdp::generation {

struct BracketExpr {
  enum class Kind { Leaf, Bracket, Sum, Scale };

  Kind kind = Kind::Sum;
  // Leaf: h * delta_ij with delta_ij(h) = 0.
  Polynomial h;
  std::size_t i = 0;
  std::size_t j = 0;
  Rational scalar;
  std::vector<BracketExpr> children;

  static BracketExpr leaf(const Polynomial& h, std::size_t i, std::size_t j);
  static BracketExpr bracket(BracketExpr a, BracketExpr b);
  static BracketExpr sum(std::vector<BracketExpr> terms = {});
  static BracketExpr scale(const Rational& c, BracketExpr e);

  bool is_empty_sum() const { return kind == Kind::Sum && children.empty(); }
  std::size_t leaf_count() const;
};

// Prefix notation, e.g. sum(scale(3/2, bracket(leaf(h=z4, d=δ[1,2]), leaf(d=δ[3,4])))).
std::string to_string(const BracketExpr& e);

// Throws std::invalid_argument when a leaf violates its kernel condition.
forms::VectorField evaluate(const forms::Surface& s, const BracketExpr& e);

struct GenerationOptions {
  unsigned degree_bound = 3;
  // Allow the depth-2 pool with kernel multiples on both sides.
  bool allow_widening = true;
  // Candidate pool budget per target; BudgetExceeded beyond it.
  std::size_t max_pool = 4000;
  Execution execution = Execution::Parallel;
};

enum class Tier { Empty, Leaves, Brackets, Widened };
std::string tier_name(Tier t);

struct MonomialRealization {
  BracketExpr expr;
  Tier tier = Tier::Empty;
  std::size_t pool_size = 0;
};

// Realizes d(z^m dz_J) for a wedge J of n-3 distinct differentials. Throws
// CertificateFailure when no pool spans the target and BudgetExceeded when
// the pool outgrows options.max_pool.
MonomialRealization realize_monomial(const forms::Surface& s, const Exponent& m, DzMask wedge,
                                     const GenerationOptions& options = {});

struct RealizationCertificate {
  std::size_t n = 0;
  PolyForm alpha;
  PolyForm d_alpha;
  BracketExpr expr;
  // Cleared numerators of theta(evaluate(expr)) - d(alpha) in the default
  // chart, reduced modulo p. Valid iff empty.
  std::map<DzMask, Polynomial> residual;
  std::vector<Rational> weights;
  Tier tier = Tier::Empty;
  bool divergence_free = false;
  bool valid = false;
  std::string failure;
};

std::string residual_string(const RealizationCertificate& c);

// alpha must be an (n-3)-form with polynomial coefficients of degree at
// most options.degree_bound.
RealizationCertificate realize_exact(const forms::Surface& s, const PolyForm& alpha,
                                     const GenerationOptions& options = {});

struct GenerationBatch {
  std::size_t n = 0;
  unsigned degree_bound = 0;
  std::vector<std::string> header;
  std::vector<RealizationCertificate> certificates;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t widened = 0;
};

// Every monomial (n-3)-form z^m dz_J with deg m <= degree_bound.
std::vector<PolyForm> monomial_generators(std::size_t n, unsigned degree_bound);

GenerationBatch verify_generation(std::size_t n, unsigned degree_bound,
                                  const GenerationOptions& options = {});

}  // namespace vdp::generation

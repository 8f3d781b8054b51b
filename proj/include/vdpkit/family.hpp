#pragma once

// The inductive family of hypersurfaces X_n = {p_n = 0} in C^n built from
// alternating products of unipotent 2x2 matrices, and the certificates for
// its structural properties: recursion, fibre equation, smoothness,
// affine-modification decomposition, divisor complements and centres.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vdpkit/groebner.hpp"
#include "vdpkit/polynomial.hpp"

namespace vdp::family {

struct MatrixWord {
  std::size_t n = 0;
  // Row-major (1,1), (1,2), (2,1), (2,2).
  std::array<Polynomial, 4> entries;

  // 1-based row and column.
  const Polynomial& at(int row, int col) const { return entries[(row - 1) * 2 + (col - 1)]; }
  Polynomial determinant() const;
};

// M_n = L(z1) U(z2) L(z3) ... with L lower and U upper unipotent; n >= 3.
MatrixWord build_matrix(std::size_t n);

// p_n in n variables: (M_n)_{2,1} - 1 for odd n, (M_n)_{2,2} - 2 for even n.
Polynomial build_pn(std::size_t n);

// Same rule for any k >= 1; p_1 = z1 - 1 and p_2 = z1*z2 - 1 close the
// recursion at the bottom.
Polynomial level_polynomial(std::size_t k);

// c in p_n = p_{n-2} + z_n (p_{n-1} + c): 2 for odd n, 1 for even n.
int recursion_constant(std::size_t n);

// c' in the divisor X_m^0 = {p_m + c' = 0}: 2 for even m, 1 for odd m.
int divisor_constant(std::size_t m);

struct FamilyRecord {
  std::size_t n = 0;
  bool odd = false;
  Polynomial p;
  // p_n = f * y - g with y the modification coordinate.
  Polynomial f;
  Polynomial g;
  std::size_t y_variable = 0;
  std::vector<std::size_t> base_variables;
  std::vector<Polynomial> center;
  int constant = 0;
};

struct RecursionCertificate {
  std::size_t n = 0;
  int constant = 0;
  Polynomial from_matrix;
  Polynomial from_recursion;
  bool passed = false;
};

struct FiberCertificate {
  std::size_t n = 0;
  // "2,1" (odd) or "2,2" (even): the constrained entry of the second row.
  std::string constrained_entry;
  std::string free_entry;
  int target_value = 0;
  Polynomial equation;
  bool matches_pn = false;
  bool determinant_one = false;
  bool passed = false;
};

struct SmoothnessCertificate {
  std::size_t n = 0;
  bool passed = false;
  std::size_t generators = 0;
  std::uint64_t reductions = 0;
  std::uint64_t pairs = 0;
  std::vector<Polynomial> basis;
};

struct DecompositionCertificate {
  FamilyRecord record;
  bool identity_holds = false;
  bool f_nonconstant = false;
  bool g_nonconstant = false;
  // Dimension of V(f, g) inside the base space C^{n-1}.
  std::size_t center_dimension = 0;
  std::size_t expected_dimension = 0;
  bool passed = false;
};

struct DivisorComplementCertificate {
  std::size_t n = 0;
  // Generators of S; S empty certifies X_n^0 = C^{n-1} \ X_{n-1}^0 as a graph.
  std::vector<Polynomial> generators;
  bool split_identity = false;
  bool empty = false;
  std::uint64_t reductions = 0;
  bool passed = false;
};

struct CenterCertificate {
  std::size_t n = 0;
  // C_n = V(p_{n-2}, p_{n-1} + c) inside C^{n-1}.
  std::vector<Polynomial> center;
  // z_{n-1} = -h on C_n: C_n is a graph over X_{n-2}.
  Polynomial graph_generator;
  bool linear_coefficient_constant = false;
  bool ideals_equal = false;
  std::size_t dimension = 0;
  std::size_t expected_dimension = 0;
  bool passed = false;
};

RecursionCertificate check_recursion(std::size_t n);
FiberCertificate check_fiber_equation(std::size_t n);
SmoothnessCertificate check_smooth(std::size_t n, const GroebnerOptions& options = {});
FamilyRecord family_record(std::size_t n);
DecompositionCertificate modification_decomposition(std::size_t n,
                                                    const GroebnerOptions& options = {});
DivisorComplementCertificate check_divisor_complement(std::size_t n,
                                                      const GroebnerOptions& options = {});
CenterCertificate check_center_iso(std::size_t n, const GroebnerOptions& options = {});

// Exact rational points of X_n, deterministic in the seed.
std::vector<std::vector<Rational>> sample_points(std::size_t n, std::size_t count,
                                                 std::uint64_t seed);

}  // namespace vdp::family

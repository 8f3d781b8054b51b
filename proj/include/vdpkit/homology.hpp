#pragma once

// Integral homology of the hypersurfaces X_n, their divisor complements
// X_n^0 and the surfaces X_{p,q}. Two independent engines: the inductive
// long-exact-sequence block rules, which build H_*(X_n) from H_*(X_{n-2}),
// and the closed alternation pattern. Every group is free, so a table is a
// list of ranks.

#include <string>
#include <vector>

namespace vdp::homology {

enum class Variety { X, Complement, Xpq };

class HomologyTable {
 public:
  Variety variety = Variety::X;
  // Level n for X_n and X_n^0; zero for X_{p,q}.
  std::size_t n = 0;
  // Root counts of 1-p and 1-q for X_{p,q}.
  std::size_t k = 0;
  std::size_t l = 0;
  // ranks[j] = rank H_j; groups above the last entry vanish.
  std::vector<int> ranks;
  // Recorded fundamental-group statement, empty when none is asserted.
  std::string pi1;
  std::vector<std::string> assumptions;
  // One line per group resolved by the recursive engine.
  std::vector<std::string> trace;

  std::string label() const;
  int rank(std::size_t j) const { return j < ranks.size() ? ranks[j] : 0; }
  const std::vector<int>& torsion() const { return torsion_; }
  // Torsion is always zero here; any nonzero entry throws std::logic_error.
  void set_torsion(std::size_t j, int order);
  int euler_characteristic() const;

  friend bool operator==(const HomologyTable& a, const HomologyTable& b) {
    return a.variety == b.variety && a.n == b.n && a.k == b.k && a.l == b.l && a.ranks == b.ranks;
  }

 private:
  std::vector<int> torsion_;
};

// "Z", "0" or "Z^r".
std::string group_name(int rank);

// X_3, X_3^0, X_4, X_5, X_6.
std::vector<HomologyTable> base_tables();

// X_m^0 for m >= 3: H_j = Z for 0 <= j <= m-1.
HomologyTable complement_table(std::size_t m);

// n >= 5, by the block rules applied to table_recursive(n - 2) (or a base).
HomologyTable table_recursive(std::size_t n);

// n >= 3.
HomologyTable closed_form(std::size_t n);

struct EulerLedger {
  std::size_t n = 0;
  long long e = 0;
  // e(X_n^0)
  long long e0 = 0;
  // (n+1)/2 for odd n, 0 for even n
  long long closed = 0;
  bool consistent = false;
  std::vector<std::string> trace;
};

EulerLedger euler(std::size_t n);

// k, l >= 1: (Z, 0, Z^{k+l-1}).
HomologyTable xpq_table(std::size_t k, std::size_t l);

struct CrossCheckRow {
  std::size_t n = 0;
  HomologyTable recursive;
  HomologyTable closed;
  long long euler = 0;
  bool tables_agree = false;
  bool euler_agrees = false;
  bool codim_two_vanishes = false;
  bool passed = false;
};

struct CrossCheck {
  std::size_t n_max = 0;
  std::vector<CrossCheckRow> rows;
  bool passed = false;
};

CrossCheck cross_check(std::size_t n_max);

// Aligned two-line layout: header of H_j, then the groups.
std::string to_text(const HomologyTable& t);
// tabular block with one row per table.
std::string to_tex(const std::vector<HomologyTable>& tables);

}  // namespace vdp::homology

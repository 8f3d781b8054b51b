#include "vdpkit/homology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vdp::homology {

namespace {

const char* kLattice =
    "X_3: the lattice condition for the reducible divisor {z1*z3 = 0} is assumed, not verified";
const char* kPi1 = "pi_1(X_n) = pi_1(C^{n-1}) = 0 via the modification projection";

std::string h(std::size_t j, const std::string& space) {
  return "H_" + std::to_string(j) + "(" + space + ")";
}

std::string x(std::size_t n) { return "X_" + std::to_string(n); }

HomologyTable x_table(std::size_t n, std::vector<int> ranks) {
  HomologyTable t;
  t.variety = Variety::X;
  t.n = n;
  t.ranks = std::move(ranks);
  if (n >= 5) t.pi1 = kPi1;
  if (n == 3) t.assumptions.push_back(kLattice);
  return t;
}

struct Block {
  int rank = 0;
  std::string rule;
};

// The long exact sequence of (X_n, X_n \ A_n) with H_k(X_n \ A_n) = Z for
// k <= n-1 and H_k(X_n, X_n \ A_n) = H_{k-2}(X_{n-2}) by the Thom isomorphism.
// Returns false when neither of the two short blocks applies.
bool solve_block(const HomologyTable& prev, std::size_t k, Block& out) {
  const std::string below = x(prev.n);
  if (prev.rank(k - 1) == 0) {
    out.rank = 1;
    out.rule = h(k - 1, below) + " = 0, so 0 -> Z -> H_k -> Z with tau = 0: Z";
    return true;
  }
  if (prev.rank(k - 2) == 0) {
    out.rank = 0;
    out.rule = h(k - 1, below) + " = Z maps onto Z and " + h(k - 2, below) + " = 0: 0";
    return true;
  }
  return false;
}

std::string line(std::size_t k, const std::string& tag, const std::string& rule) {
  return "H_" + std::to_string(k) + ": " + tag + ", " + rule;
}

HomologyTable previous(std::size_t n) {
  if (n == 3 || n == 4) return closed_form(n);
  return table_recursive(n);
}

}  // namespace

std::string HomologyTable::label() const {
  switch (variety) {
    case Variety::X: return x(n);
    case Variety::Complement: return x(n) + "^0";
    case Variety::Xpq:
      return "X_{p,q} (k=" + std::to_string(k) + ", l=" + std::to_string(l) + ")";
  }
  return "?";
}

void HomologyTable::set_torsion(std::size_t j, int order) {
  if (order != 0) {
    throw std::logic_error("nonzero torsion written into " + label() + " at H_" + std::to_string(j));
  }
  if (torsion_.size() <= j) torsion_.resize(j + 1, 0);
}

int HomologyTable::euler_characteristic() const {
  int e = 0;
  for (std::size_t j = 0; j < ranks.size(); ++j) e += (j % 2 == 0 ? 1 : -1) * ranks[j];
  return e;
}

std::string group_name(int rank) {
  if (rank == 0) return "0";
  if (rank == 1) return "Z";
  return "Z^" + std::to_string(rank);
}

HomologyTable complement_table(std::size_t m) {
  if (m < 3) throw std::invalid_argument("complement_table requires m >= 3");
  HomologyTable t;
  t.variety = Variety::Complement;
  t.n = m;
  t.ranks.assign(m, 1);
  return t;
}

std::vector<HomologyTable> base_tables() {
  return {x_table(3, {1, 0, 1}), complement_table(3), x_table(4, {1, 0, 0, 1}),
          x_table(5, {1, 0, 1, 0, 1}), x_table(6, {1, 0, 1, 1, 0, 1})};
}

HomologyTable table_recursive(std::size_t n) {
  if (n < 5) throw std::invalid_argument("table_recursive requires n >= 5, got " + std::to_string(n));
  const HomologyTable prev = previous(n - 2);
  std::vector<int> r(n, 0);
  std::vector<std::string> trace(n);
  r[0] = 1;
  trace[0] = line(0, "connected", "Z");
  r[1] = 0;
  trace[1] = line(1, "sigma_* onto H_1(C^" + std::to_string(n - 1) + ")", "0");

  auto block = [&](std::size_t k, const std::string& tag) {
    Block b;
    if (!solve_block(prev, k, b)) {
      throw std::logic_error(x(n) + ": no block rule resolves H_" + std::to_string(k));
    }
    r[k] = b.rank;
    trace[k] = line(k, tag, b.rule);
  };

  if (n % 2 == 1) {
    for (std::size_t k = 2; k < n; ++k) {
      // Window centred at k: Case 1 when H_{k-3}(X_{n-2}) = 0.
      const bool case1 = k < 3 || prev.rank(k - 3) == 0;
      block(k, case1 ? "Case 1" : "Case 2");
    }
  } else {
    const std::size_t half = n / 2;
    for (std::size_t k = n - 1; k > half; --k) block(k, "(1)");
    for (std::size_t k = 2; k + 2 <= half; ++k) block(k, "(3)");

    const int a = prev.rank(half - 2);
    const int b = prev.rank(half - 1);
    const int c = half >= 3 ? prev.rank(half - 3) : 0;
    const std::string below = x(n - 2);
    if (a == 0 && b == 0) {
      if (c != 1) throw std::logic_error(x(n) + ": case 1 of (2) needs " + h(half - 3, below) + " = Z");
      r[half] = 1;
      trace[half] = line(half, "(2) Case 1", h(half - 1, below) + " = 0, Z -> H_k iso: Z");
      r[half - 1] = 1;
      trace[half - 1] = line(half - 1, "(2) Case 1", h(half - 3, below) + " = Z, first block of (1): Z");
    } else if (a == 1 && b == 1) {
      if (c != 0) throw std::logic_error(x(n) + ": case 2 of (2) needs " + h(half - 3, below) + " = 0");
      r[half] = 0;
      trace[half] = line(half, "(2) Case 2", "five lemma: 0");
      r[half - 1] = 0;
      trace[half - 1] = line(half - 1, "(2) Case 2", h(half - 3, below) + " = 0, second block of (1): 0");
    } else {
      throw std::logic_error(x(n) + ": middle groups of " + below + " differ, (2) has no case");
    }
  }
  HomologyTable t = x_table(n, std::move(r));
  t.trace = std::move(trace);
  return t;
}

HomologyTable closed_form(std::size_t n) {
  if (n < 3) throw std::invalid_argument("closed_form requires n >= 3, got " + std::to_string(n));
  std::vector<int> r(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (n % 2 == 1 || 2 * j <= n - 2) {
      r[j] = j % 2 == 0 ? 1 : 0;
    } else {
      r[j] = (n - 1 - j) % 2 == 0 ? 1 : 0;
    }
  }
  return x_table(n, std::move(r));
}

EulerLedger euler(std::size_t n) {
  if (n < 3) throw std::invalid_argument("euler requires n >= 3, got " + std::to_string(n));
  EulerLedger led;
  led.n = n;
  // e[m] = e(X_m), e0[m] = e(X_m^0)
  std::vector<long long> e(n + 1, 0), e0(n + 1, 0);
  e[3] = 1 + 2 - 1;
  e0[3] = 1;
  led.trace.push_back("e(X_3) = 1 + e(C_3) - e(Delta) = 1 + 2 - 1 = 2");
  led.trace.push_back("e(X_3^0) = 1 + e(C_3^0) - e(Delta) = 1 + 1 - 1 = 1");
  for (std::size_t m = 4; m <= n; ++m) {
    e0[m] = 1 - e0[m - 1];
    const long long center = m == 4 ? 0 : e[m - 2];
    e[m] = 1 + center - e0[m - 1];
    const std::string c = m == 4 ? "e(C_4)" : "e(" + x(m - 2) + ")";
    led.trace.push_back("e(" + x(m) + ") = 1 + " + c + " - e(" + x(m - 1) + "^0) = 1 + " +
                        std::to_string(center) + " - " + std::to_string(e0[m - 1]) + " = " +
                        std::to_string(e[m]));
    led.trace.push_back("e(" + x(m) + "^0) = 1 - e(" + x(m - 1) + "^0) = " + std::to_string(e0[m]));
  }
  led.e = e[n];
  led.e0 = e0[n];
  led.closed = n % 2 == 1 ? static_cast<long long>((n + 1) / 2) : 0;
  led.consistent = led.e == led.closed && led.e0 == complement_table(n).euler_characteristic();
  return led;
}

HomologyTable xpq_table(std::size_t k, std::size_t l) {
  if (k < 1 || l < 1) throw std::invalid_argument("xpq_table requires k, l >= 1");
  HomologyTable t;
  t.variety = Variety::Xpq;
  t.k = k;
  t.l = l;
  t.ranks = {1, 0, static_cast<int>(k + l - 1)};
  return t;
}

CrossCheck cross_check(std::size_t n_max) {
  if (n_max < 6) throw std::invalid_argument("cross_check requires n_max >= 6");
  CrossCheck cc;
  cc.n_max = n_max;
  cc.passed = true;
  for (std::size_t n = 5; n <= n_max; ++n) {
    CrossCheckRow row;
    row.n = n;
    row.recursive = table_recursive(n);
    row.closed = closed_form(n);
    row.euler = euler(n).e;
    row.tables_agree = row.recursive == row.closed;
    row.euler_agrees = row.recursive.euler_characteristic() == row.euler;
    row.codim_two_vanishes = row.recursive.rank(n - 2) == 0;
    row.passed = row.tables_agree && row.euler_agrees && row.codim_two_vanishes;
    cc.passed = cc.passed && row.passed;
    cc.rows.push_back(std::move(row));
  }
  return cc;
}

std::string to_text(const HomologyTable& t) {
  std::vector<std::string> head, body;
  for (std::size_t j = 0; j < t.ranks.size(); ++j) {
    head.push_back("H_" + std::to_string(j));
    body.push_back(group_name(t.ranks[j]));
  }
  const std::string name = t.label();
  std::ostringstream a, b;
  a << name;
  b << std::string(name.size(), ' ');
  for (std::size_t j = 0; j < head.size(); ++j) {
    const std::size_t w = std::max(head[j].size(), body[j].size()) + 2;
    a << std::string(w - head[j].size(), ' ') << head[j];
    b << std::string(w - body[j].size(), ' ') << body[j];
  }
  b << "   e = " << t.euler_characteristic();
  return a.str() + "\n" + b.str() + "\n";
}

std::string to_tex(const std::vector<HomologyTable>& tables) {
  std::size_t cols = 0;
  for (const auto& t : tables) cols = std::max(cols, t.ranks.size());
  std::ostringstream o;
  o << "\\begin{tabular}{l|" << std::string(cols, 'c') << "|r}\n";
  for (std::size_t j = 0; j < cols; ++j) o << " & $H_{" << j << "}$";
  o << " & $e$ \\\\\n\\hline\n";
  for (const auto& t : tables) {
    std::string name = t.label();
    if (t.variety == Variety::X) name = "X_{" + std::to_string(t.n) + "}";
    if (t.variety == Variety::Complement) name = "X_{" + std::to_string(t.n) + "}^0";
    if (t.variety == Variety::Xpq) name = "X_{p,q}^{(" + std::to_string(t.k) + "," + std::to_string(t.l) + ")}";
    o << "$" << name << "$";
    for (std::size_t j = 0; j < cols; ++j) {
      const int r = t.rank(j);
      o << " & $" << (r == 0 ? "0" : r == 1 ? "\\mathbb{Z}" : "\\mathbb{Z}^{" + std::to_string(r) + "}") << "$";
    }
    o << " & " << t.euler_characteristic() << " \\\\\n";
  }
  o << "\\end{tabular}\n";
  return o.str();
}

}  // namespace vdp::homology

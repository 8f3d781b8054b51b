#include <doctest.h>

#include <stdexcept>

#include "vdpkit/homology.hpp"

using namespace vdp::homology;

namespace {

std::vector<int> ranks(const HomologyTable& t) { return t.ranks; }

}  // namespace

TEST_CASE("base tables") {
  auto b = base_tables();
  REQUIRE(b.size() == 5);
  CHECK(b[0].label() == "X_3");
  CHECK(ranks(b[0]) == std::vector<int>{1, 0, 1});
  CHECK(b[1].label() == "X_3^0");
  CHECK(ranks(b[1]) == std::vector<int>{1, 1, 1});
  CHECK(ranks(b[2]) == std::vector<int>{1, 0, 0, 1});
  CHECK(ranks(b[3]) == std::vector<int>{1, 0, 1, 0, 1});
  CHECK(ranks(b[4]) == std::vector<int>{1, 0, 1, 1, 0, 1});
  CHECK(b[4].rank(4) == 0);
  CHECK(b[4].rank(9) == 0);

  CHECK(b[0].euler_characteristic() == 2);
  CHECK(b[1].euler_characteristic() == 1);
  CHECK(b[2].euler_characteristic() == 0);
  CHECK(b[3].euler_characteristic() == 3);
  CHECK(b[4].euler_characteristic() == 0);

  CHECK_FALSE(b[0].assumptions.empty());
  CHECK(b[0].pi1.empty());
  CHECK_FALSE(b[3].pi1.empty());
}

TEST_CASE("torsion stays zero") {
  HomologyTable t = base_tables()[0];
  CHECK_NOTHROW(t.set_torsion(2, 0));
  CHECK_THROWS_AS(t.set_torsion(2, 3), std::logic_error);
  for (int v : t.torsion()) CHECK(v == 0);
}

TEST_CASE("recursive engine reproduces the base tables") {
  CHECK(table_recursive(5) == base_tables()[3]);
  CHECK(table_recursive(6) == base_tables()[4]);

  auto t6 = table_recursive(6);
  REQUIRE(t6.trace.size() == 6);
  CHECK(t6.trace[3].find("(2) Case 1") != std::string::npos);
  CHECK(t6.trace[5].find("(1)") != std::string::npos);
  auto t5 = table_recursive(5);
  CHECK(t5.trace[2].find("Case 1") != std::string::npos);
  CHECK(t5.trace[3].find("Case 2") != std::string::npos);

  // Hand-propagated through the block rules from X_6.
  CHECK(ranks(table_recursive(8)) == std::vector<int>{1, 0, 1, 0, 0, 1, 0, 1});
  CHECK(table_recursive(8).trace[4].find("(2) Case 2") != std::string::npos);

  CHECK_THROWS_AS(table_recursive(4), std::invalid_argument);
}

TEST_CASE("closed form") {
  CHECK(ranks(closed_form(3)) == std::vector<int>{1, 0, 1});
  CHECK(ranks(closed_form(4)) == std::vector<int>{1, 0, 0, 1});
  CHECK(ranks(closed_form(7)) == std::vector<int>{1, 0, 1, 0, 1, 0, 1});
  CHECK(closed_form(6).rank(4) == 0);
  CHECK_THROWS_AS(closed_form(2), std::invalid_argument);
  for (std::size_t n = 3; n <= 40; ++n) {
    auto t = closed_form(n);
    CHECK(t.rank(0) == 1);
    CHECK(t.rank(1) == 0);
    CHECK(t.rank(n - 2) == 0);
    CHECK(t.rank(n - 1) == 1);
    CHECK(t.rank(n) == 0);
  }
}

TEST_CASE("euler ledger") {
  CHECK(euler(3).e == 2);
  CHECK(euler(3).e0 == 1);
  CHECK(euler(4).e == 0);
  CHECK(euler(5).e == 3);
  CHECK(euler(6).e == 0);
  CHECK(euler(21).e == 11);
  for (std::size_t n = 3; n <= 30; ++n) {
    auto led = euler(n);
    CHECK(led.consistent);
    CHECK(led.e0 == (n % 2 == 1 ? 1 : 0));
    if (n >= 5) CHECK(led.e == 1 + euler(n - 2).e - euler(n - 1).e0);
    CHECK(led.e == closed_form(n).euler_characteristic());
  }
  auto led = euler(5);
  CHECK(led.trace.back().find("e(X_5^0)") != std::string::npos);
  CHECK_THROWS_AS(euler(1), std::invalid_argument);
}

TEST_CASE("X_{p,q} tables") {
  CHECK(ranks(xpq_table(1, 1)) == std::vector<int>{1, 0, 1});
  CHECK(ranks(xpq_table(2, 1)) == std::vector<int>{1, 0, 2});
  CHECK(ranks(xpq_table(3, 2)) == std::vector<int>{1, 0, 4});
  CHECK(xpq_table(2, 1).euler_characteristic() == 3);
  CHECK(ranks(xpq_table(1, 1)) == ranks(base_tables()[0]));
  for (std::size_t k = 1; k <= 6; ++k) {
    for (std::size_t l = 1; l <= 6; ++l) CHECK(xpq_table(k, l).euler_characteristic() == int(k + l));
  }
  CHECK_THROWS_AS(xpq_table(0, 2), std::invalid_argument);
}

TEST_CASE("cross check") {
  auto cc = cross_check(20);
  CHECK(cc.passed);
  REQUIRE(cc.rows.size() == 16);
  CHECK(cc.rows[1].recursive.rank(3) == 1);
  CHECK(cc.rows[1].closed.rank(3) == 1);
  CHECK(cc.rows[0].euler == 3);
  for (const auto& r : cc.rows) {
    CHECK(r.tables_agree);
    CHECK(r.codim_two_vanishes);
  }
  CHECK_THROWS_AS(cross_check(5), std::invalid_argument);
  CHECK(cross_check(60).passed);
}

TEST_CASE("rendering") {
  auto t = base_tables()[4];
  CHECK(to_text(t) ==
        "X_6  H_0  H_1  H_2  H_3  H_4  H_5\n"
        "       Z    0    Z    Z    0    Z   e = 0\n");
  CHECK(to_text(xpq_table(2, 1)).find("Z^2") != std::string::npos);
  std::string tex = to_tex({base_tables()[0], xpq_table(2, 1)});
  CHECK(tex.find("\\begin{tabular}{l|ccc|r}") == 0);
  CHECK(tex.find("$X_{3}$ & $\\mathbb{Z}$ & $0$ & $\\mathbb{Z}$ & 2") != std::string::npos);
  CHECK(tex.find("\\mathbb{Z}^{2}") != std::string::npos);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ordoclass/oracle.hpp"

using namespace ordoclass;
using classify::Mode;

namespace {

std::uint64_t holder(std::uint64_t n) { return oracle::holder_count(arith::factor(n)); }

std::set<std::uint64_t> to_set(const std::vector<std::uint64_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("holder_count fixtures") {
  CHECK(holder(1) == 1);
  CHECK(holder(6) == 2);
  CHECK(holder(15) == 1);
  CHECK(holder(30) == 4);
  CHECK(holder(105) == 2);
  CHECK_THROWS_AS(holder(12), std::invalid_argument);
}

TEST_CASE("holder_count == 1 exactly for cyclic numbers (squarefree n <= 10^5)") {
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    const auto f = arith::factor(n);
    if (!f.squarefree()) continue;
    REQUIRE((oracle::holder_count(f) == 1) == classify::is_cyclic_number(f));
  }
}

TEST_CASE("squarefree enumeration fixtures") {
  const auto e6 = oracle::enumerate_squarefree_groups(6);
  CHECK(e6.total == 2);
  CHECK(e6.nonabelian_count == 1);
  CHECK(e6.nonnilpotent_count == 1);

  const auto e105 = oracle::enumerate_squarefree_groups(105);
  CHECK(e105.total == 2);
  CHECK(e105.nonabelian_count == 1);

  const auto e30 = oracle::enumerate_squarefree_groups(30);
  CHECK(e30.total == 4);
  CHECK(e30.nonabelian_count == 3);

  CHECK_THROWS_AS(oracle::enumerate_squarefree_groups(12), std::invalid_argument);
  CHECK_THROWS_AS(oracle::enumerate_squarefree_groups(3003), std::length_error);
}

TEST_CASE("enumerations produce pairwise non-isomorphic groups of the right order") {
  for (std::uint64_t n : {6, 30, 105, 210}) {
    const auto e = oracle::enumerate_squarefree_groups(n);
    REQUIRE(e.total == e.groups.size());
    for (std::size_t i = 0; i < e.groups.size(); ++i) {
      REQUIRE(e.groups[i].order() == n);
      for (std::size_t j = i + 1; j < e.groups.size(); ++j)
        REQUIRE_FALSE(groups::are_isomorphic(e.groups[i], e.groups[j]));
    }
    // squarefree: nilpotent == cyclic, so the non-nilpotent and nonabelian
    // groups coincide
    REQUIRE(e.nonnilpotent_count == e.nonabelian_count);
  }
}

TEST_CASE("holder and enumeration agree for squarefree n <= 300") {
  for (std::uint64_t n = 1; n <= 300; ++n) {
    const auto f = arith::factor(n);
    if (!f.squarefree()) continue;
    REQUIRE(oracle::enumerate_squarefree_groups(n).total == oracle::holder_count(f));
  }
}

TEST_CASE("holder_count == 2 exactly on sit1 orders (squarefree n <= 300)") {
  for (std::uint64_t n = 1; n <= 300; ++n) {
    const auto f = arith::factor(n);
    if (!f.squarefree()) continue;
    REQUIRE((oracle::holder_count(f) == 2) ==
            (classify::check_sit1(f).tag == classify::ScenarioTag::Sit1));
  }
}

TEST_CASE("p^2 q enumeration fixtures") {
  const auto e75 = oracle::enumerate_p2q_groups(5, 3);
  CHECK(e75.total == 3);
  CHECK(e75.nonabelian_count == 1);
  CHECK(e75.nonnilpotent_count == 1);

  const auto e18 = oracle::enumerate_p2q_groups(3, 2);
  CHECK(e18.total == 5);
  CHECK(e18.nonabelian_count == 3);

  const auto e147 = oracle::enumerate_p2q_groups(7, 3);
  CHECK(e147.total == 6);
  CHECK(e147.nonabelian_count == 4);

  const auto e12 = oracle::enumerate_p2q_groups(2, 3);
  CHECK(e12.total == 5);
  CHECK(e12.nonabelian_count == 3);
  // A_4 is in the list: the order-12 group with element orders {1, 2^3, 3^8}
  bool found_a4 = false;
  for (const auto& g : e12.groups) {
    const auto& prof = g.order_profile();
    if (prof == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 1}, {2, 3}, {3, 8}})
      found_a4 = true;
  }
  CHECK(found_a4);

  CHECK_THROWS_AS(oracle::enumerate_p2q_groups(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(oracle::enumerate_p2q_groups(11, 17), std::length_error);
}

TEST_CASE("p^2 q abelian members always number exactly 2") {
  for (auto [p, q] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {2, 3}, {3, 2}, {5, 3}, {3, 5}, {7, 2}, {2, 7}, {13, 11}}) {
    const auto e = oracle::enumerate_p2q_groups(p, q);
    std::uint64_t abelian = 0;
    for (const auto& g : e.groups) abelian += g.abelian();
    REQUIRE(abelian == 2);
    REQUIRE(abelian == oracle::abelian_count(arith::factor(p * p * q)));
    REQUIRE(e.nonabelian_count == e.total - 2);
  }
}

TEST_CASE("abelian_count fixtures") {
  CHECK(oracle::abelian_count(arith::factor(75)) == 2);
  CHECK(oracle::abelian_count(arith::factor(36)) == 4);
  CHECK(oracle::abelian_count(arith::factor(30)) == 1);
  CHECK(oracle::abelian_count(arith::factor(1)) == 1);
}

TEST_CASE("verify_range: corrected mode agrees everywhere at 200") {
  const auto rep = oracle::verify_range(200, Mode::Corrected);
  CHECK(rep.all_supported_agree());
  CHECK(rep.almost_abelian_disagreements().empty());
}

TEST_CASE("verify_range: literal-mode falsification set at 200") {
  const auto rep = oracle::verify_range(200, Mode::Literal);
  CHECK_FALSE(rep.all_supported_agree());
  CHECK(to_set(rep.almost_abelian_disagreements()) == std::set<std::uint64_t>{18, 50, 98});

  // The sufficient condition for almost-cyclic misses the p^2 orders and all
  // abelian-number p^2 q orders, and wrongly accepts 147.
  const auto ac = to_set(rep.almost_cyclic_disagreements());
  for (std::uint64_t n : {4, 9, 25, 49, 121, 169, 147}) CHECK(ac.count(n) == 1);
  CHECK(ac == std::set<std::uint64_t>{4, 9, 25, 45, 49, 99, 121, 147, 153, 169, 175});
}

TEST_CASE("verify_range marks unsupported shapes as skipped") {
  const auto rep = oracle::verify_range(200, Mode::Corrected);
  for (std::uint64_t n : {8, 16, 24, 27, 36, 100, 128, 196, 200}) {
    const auto& rec = rep.records[n - 1];
    REQUIRE(rec.shape == "skipped");
    REQUIRE_FALSE(rec.oracle.has_value());
    REQUIRE_FALSE(rec.agree.has_value());
  }
  CHECK(rep.records[74].shape == "p2q");        // 75
  CHECK(rep.records[48].shape == "p2");         // 49
  CHECK(rep.records[29].shape == "squarefree"); // 30
  CHECK(rep.records[0].shape == "squarefree");  // 1
}

TEST_CASE("oracle selection restricts the report scope") {
  oracle::OracleSelection holder_only{true, false, false};
  const auto rep = oracle::verify_range(150, Mode::Corrected, holder_only);
  for (const auto& rec : rep.records) {
    if (rec.oracle) REQUIRE(rec.shape == "squarefree");
    if (rec.shape != "skipped") REQUIRE(rec.shape == "squarefree");
  }
  // p^2 and p^2 q orders are skipped under this selection
  CHECK(rep.records[48].shape == "skipped");  // 49
  CHECK(rep.records[74].shape == "skipped");  // 75

  oracle::OracleSelection p2q_only{false, false, true};
  const auto rep2 = oracle::verify_range(150, Mode::Corrected, p2q_only);
  CHECK(rep2.records[74].shape == "p2q");
  CHECK(rep2.records[29].shape == "skipped");  // 30 squarefree, deselected
}

TEST_CASE("verify_range is deterministic across thread counts") {
  const auto seq = oracle::verify_range(120, Mode::Literal, {}, 1);
  const auto par = oracle::verify_range(120, Mode::Literal, {}, 4);
  REQUIRE(seq.records.size() == par.records.size());
  for (std::size_t i = 0; i < seq.records.size(); ++i) {
    REQUIRE(seq.records[i].n == par.records[i].n);
    REQUIRE(seq.records[i].shape == par.records[i].shape);
    REQUIRE(seq.records[i].agree == par.records[i].agree);
    REQUIRE(seq.records[i].oracle.has_value() == par.records[i].oracle.has_value());
    if (seq.records[i].oracle)
      REQUIRE(seq.records[i].oracle->total == par.records[i].oracle->total);
  }
}

TEST_CASE("verify_range validates its limit") {
  CHECK_THROWS_AS(oracle::verify_range(0, Mode::Corrected), std::invalid_argument);
  CHECK_THROWS_AS(oracle::verify_range(2001, Mode::Corrected), std::invalid_argument);
}

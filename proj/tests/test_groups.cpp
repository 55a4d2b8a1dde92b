#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "ordoclass/arith.hpp"
#include "ordoclass/groups.hpp"

using namespace ordoclass;
using groups::GroupExpr;
using groups::GroupTable;

namespace {

GroupTable make_s3() {
  return groups::realize(
      GroupExpr::semidirect(GroupExpr::cyclic(3), 2, groups::find_unit_of_order(2, 3, 1)));
}

GroupTable make_d5() {
  return groups::realize(
      GroupExpr::semidirect(GroupExpr::cyclic(5), 2, groups::find_unit_of_order(2, 5, 1)));
}

GroupExpr elementary(std::uint64_t p) {
  return GroupExpr::direct_product({GroupExpr::cyclic(p), GroupExpr::cyclic(p)});
}

GroupTable make_75() {
  return groups::realize(
      GroupExpr::semidirect(elementary(5), 3, groups::find_matrix_of_order(3, 5)));
}

// random relabeling that keeps the identity at index 0
GroupTable relabel(const GroupTable& g, std::mt19937& rng) {
  const std::uint32_t m = g.order();
  std::vector<std::uint16_t> perm(m);
  for (std::uint32_t i = 0; i < m; ++i) perm[i] = static_cast<std::uint16_t>(i);
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  std::vector<std::uint16_t> t(static_cast<std::size_t>(m) * m);
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      t[static_cast<std::size_t>(perm[a]) * m + perm[b]] = perm[g.mul(a, b)];
  return GroupTable(m, std::move(t));
}

std::map<std::uint32_t, std::uint32_t> profile_map(const GroupTable& g) {
  std::map<std::uint32_t, std::uint32_t> out;
  for (const auto& [ord, count] : g.order_profile()) out[ord] = count;
  return out;
}

}  // namespace

TEST_CASE("find_unit_of_order fixtures") {
  CHECK(groups::find_unit_of_order(2, 3, 1).unit() == 2);
  CHECK(groups::find_unit_of_order(2, 5, 2).unit() == 24);
  CHECK_THROWS_AS(groups::find_unit_of_order(3, 5, 2), std::domain_error);
}

TEST_CASE("find_unit_of_order returns the smallest unit of exact order") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    for (std::uint32_t a : {1u, 2u}) {
      const std::uint64_t modulus = a == 1 ? p : p * p;
      const std::uint64_t phi = (a == 1 ? 1 : p) * (p - 1);
      for (std::uint64_t q : {2, 3, 5, 7, 11}) {
        if (q == p || phi % q != 0) continue;
        // independent ascending scan
        std::uint64_t expected = 0;
        for (std::uint64_t u = 2; u < modulus && expected == 0; ++u) {
          if (u % p == 0) continue;
          if (arith::pow_mod(u, q, modulus) == 1 && u != 1) expected = u;
        }
        REQUIRE(groups::find_unit_of_order(q, p, a).unit() == expected);
      }
    }
  }
}

TEST_CASE("find_matrix_of_order") {
  const auto m35 = groups::find_matrix_of_order(3, 5);
  CHECK(m35.order() == 3);  // exactness verified by the constructor
  const auto m23 = groups::find_matrix_of_order(2, 3);
  CHECK(m23.entries() == std::array<std::uint64_t, 4>{2, 0, 0, 1});  // diagonal branch
  CHECK_THROWS_AS(groups::find_matrix_of_order(5, 7), std::invalid_argument);
  // irreducible branch for a larger prime
  const auto m7 = groups::find_matrix_of_order(2, 7);  // 2 | 7-1: diagonal
  CHECK(m7.entries()[1] == 0);
  CHECK_NOTHROW(groups::find_matrix_of_order(5, 19));  // 5 | 19+1
}

TEST_CASE("action specs verify their stated order") {
  CHECK_THROWS_AS(groups::UnitMultiplier(2, 5, 3), std::invalid_argument);   // 2^3 != 1 mod 5
  CHECK_THROWS_AS(groups::UnitMultiplier(1, 5, 2), std::invalid_argument);   // order 1, not 2
  CHECK_THROWS_AS(groups::UnitMultiplier(5, 10, 2), std::invalid_argument);  // not a unit
  CHECK_THROWS_AS(groups::Matrix2({1, 0, 0, 1}, 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(groups::Matrix2({1, 0, 0, 0}, 5, 2), std::invalid_argument);  // singular
}

TEST_CASE("realize S_3") {
  const auto s3 = make_s3();
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.abelian());
  CHECK(s3.verify_associativity());
  const auto prof = profile_map(s3);
  CHECK(prof == std::map<std::uint32_t, std::uint32_t>{{1, 1}, {2, 3}, {3, 2}});
  CHECK(s3.derived_size() == 3);  // gamma_2 = C_3
  CHECK_FALSE(groups::is_nilpotent(s3));
}

TEST_CASE("trivial action realizes the direct product") {
  const auto a =
      groups::realize(GroupExpr::semidirect(GroupExpr::cyclic(5), 2, groups::TrivialAction{}));
  CHECK(a.abelian());
  CHECK(groups::are_isomorphic(a, groups::realize(GroupExpr::cyclic(10))));

  // property over a small corpus: Semidirect(K, q, Trivial) ~ K x C_q
  std::vector<GroupExpr> kernels;
  kernels.push_back(GroupExpr::cyclic(4));
  kernels.push_back(GroupExpr::cyclic(9));
  kernels.push_back(GroupExpr::cyclic(25));
  kernels.push_back(elementary(3));
  kernels.push_back(elementary(5));
  for (const auto& kernel : kernels)
    for (std::uint64_t q : {2, 3, 5, 7}) {
      if (kernel.order() % q == 0 || kernel.order() * q > 200) continue;
      const auto sd = groups::realize(GroupExpr::semidirect(kernel, q, groups::TrivialAction{}));
      const auto dp = groups::realize(GroupExpr::direct_product({kernel, GroupExpr::cyclic(q)}));
      REQUIRE(groups::are_isomorphic(sd, dp));
    }
}

TEST_CASE("nontrivial actions give nonabelian groups") {
  for (auto [q, p] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {2, 3}, {2, 5}, {2, 7}, {3, 7}, {5, 11}, {2, 13}}) {
    const auto g = groups::realize(
        GroupExpr::semidirect(GroupExpr::cyclic(p), q, groups::find_unit_of_order(q, p, 1)));
    REQUIRE_FALSE(g.abelian());
    REQUIRE_FALSE(groups::is_nilpotent(g));
  }
  for (auto [q, p] :
       std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 5}, {2, 3}, {3, 11}}) {
    const auto g =
        groups::realize(GroupExpr::semidirect(elementary(p), q, groups::find_matrix_of_order(q, p)));
    REQUIRE_FALSE(g.abelian());
    REQUIRE_FALSE(groups::is_nilpotent(g));
  }
}

TEST_CASE("(C_5)^2 x| C_3") {
  const auto g = make_75();
  CHECK(g.order() == 75);
  CHECK_FALSE(g.abelian());
  CHECK_FALSE(groups::is_nilpotent(g));
  CHECK(g.verify_associativity());
}

TEST_CASE("nilpotency of prime-power groups") {
  CHECK(groups::is_nilpotent(groups::realize(GroupExpr::cyclic(8))));
  CHECK(groups::is_nilpotent(groups::realize(GroupExpr::cyclic(9))));
  CHECK(groups::is_nilpotent(groups::realize(elementary(3))));
  CHECK(groups::is_nilpotent(groups::realize(
      GroupExpr::direct_product({GroupExpr::cyclic(2), GroupExpr::cyclic(4)}))));
  CHECK(groups::is_nilpotent(groups::realize(GroupExpr::cyclic(12))));  // abelian
}

TEST_CASE("are_isomorphic basics") {
  const auto c6 = groups::realize(GroupExpr::cyclic(6));
  const auto c2x3 =
      groups::realize(GroupExpr::direct_product({GroupExpr::cyclic(2), GroupExpr::cyclic(3)}));
  CHECK(groups::are_isomorphic(c6, c2x3));
  CHECK_FALSE(groups::are_isomorphic(make_s3(), c6));
}

TEST_CASE("order-18 pair: (C_3)^2 x| C_2 via -I vs C_3 x S_3") {
  const auto minus_i = groups::Matrix2({2, 0, 0, 2}, 3, 2);
  const auto a = groups::realize(GroupExpr::semidirect(elementary(3), 2, minus_i));
  const auto b = groups::realize(GroupExpr::direct_product(
      {GroupExpr::cyclic(3),
       GroupExpr::semidirect(GroupExpr::cyclic(3), 2, groups::find_unit_of_order(2, 3, 1))}));
  REQUIRE(a.order() == 18);
  REQUIRE(b.order() == 18);
  CHECK(a.center_size() == 1);
  CHECK(b.center_size() == 3);
  CHECK_FALSE(groups::are_isomorphic(a, b));
}

TEST_CASE("are_isomorphic is reflexive, symmetric, and relabel-invariant") {
  std::mt19937 rng(20240811);
  std::vector<GroupTable> corpus;
  corpus.push_back(make_s3());
  corpus.push_back(make_d5());
  corpus.push_back(groups::realize(GroupExpr::cyclic(16)));
  corpus.push_back(groups::realize(elementary(3)));
  corpus.push_back(make_75());
  corpus.push_back(groups::realize(GroupExpr::direct_product(
      {GroupExpr::cyclic(4), GroupExpr::cyclic(6)})));
  for (const auto& g : corpus) {
    REQUIRE(groups::are_isomorphic(g, g));
    for (int trial = 0; trial < 3; ++trial) {
      const auto shuffled = relabel(g, rng);
      REQUIRE(groups::are_isomorphic(g, shuffled));
      REQUIRE(groups::are_isomorphic(shuffled, g));
    }
  }
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i + 1; j < corpus.size(); ++j)
      REQUIRE(groups::are_isomorphic(corpus[i], corpus[j]) ==
              groups::are_isomorphic(corpus[j], corpus[i]));
}

TEST_CASE("automorphism counts") {
  CHECK(groups::automorphism_count(make_s3()) == 6);
  CHECK(groups::automorphism_count(make_d5()) == 20);
  for (std::uint64_t n = 1; n <= 60; ++n)
    REQUIRE(groups::automorphism_count(groups::realize(GroupExpr::cyclic(n))) ==
            arith::euler_phi(arith::factor(n)));
}

TEST_CASE("automorphism cap is enforced and configurable") {
  const auto c101 = groups::realize(GroupExpr::cyclic(101));
  CHECK_THROWS_AS(groups::automorphism_count(c101), std::length_error);
  CHECK(groups::automorphism_count(c101, 101) == 100);
}

TEST_CASE("generating sets beyond 3 elements are rejected") {
  const auto v16 = groups::realize(GroupExpr::direct_product(
      {GroupExpr::cyclic(2), GroupExpr::cyclic(2), GroupExpr::cyclic(2), GroupExpr::cyclic(2)}));
  CHECK_THROWS_AS(groups::automorphism_count(v16, 100), std::runtime_error);
}

TEST_CASE("GroupExpr validation") {
  CHECK_THROWS_AS(GroupExpr::semidirect(GroupExpr::cyclic(6), 2, groups::TrivialAction{}),
                  std::invalid_argument);  // kernel not a prime power
  CHECK_THROWS_AS(GroupExpr::semidirect(GroupExpr::cyclic(4), 2, groups::TrivialAction{}),
                  std::invalid_argument);  // q divides kernel order
  CHECK_THROWS_AS(
      GroupExpr::semidirect(GroupExpr::cyclic(7), 2, groups::find_unit_of_order(2, 5, 1)),
      std::invalid_argument);  // modulus mismatch
  CHECK_THROWS_AS(
      GroupExpr::semidirect(elementary(5), 2, groups::find_matrix_of_order(2, 3)),
      std::invalid_argument);  // field mismatch
  CHECK_THROWS_AS(groups::realize(GroupExpr::cyclic(5001)), std::length_error);
  CHECK_THROWS_AS(GroupExpr::direct_product({}), std::invalid_argument);
}

TEST_CASE("expression rendering") {
  const auto s3 = GroupExpr::semidirect(GroupExpr::cyclic(3), 2, groups::find_unit_of_order(2, 3, 1));
  CHECK(groups::to_string(s3) == "C_3 ⋊ C_2");
  const auto w75 = GroupExpr::semidirect(elementary(5), 3, groups::find_matrix_of_order(3, 5));
  CHECK(groups::to_string(w75) == "(C_5)^2 ⋊ C_3");
  const auto w105 = GroupExpr::direct_product(
      {GroupExpr::semidirect(GroupExpr::cyclic(7), 3, groups::find_unit_of_order(3, 7, 1)),
       GroupExpr::cyclic(5)});
  CHECK(groups::to_string(w105) == "(C_7 ⋊ C_3) × C_5");
  CHECK(groups::to_string(GroupExpr::cyclic(12)) == "C_12");
  CHECK(groups::to_string(elementary(3)) == "(C_3)^2");
}

TEST_CASE("table dump format") {
  std::ostringstream os;
  groups::dump_table(groups::realize(GroupExpr::cyclic(3)), os);
  CHECK(os.str() == "3\n0 1 2\n1 2 0\n2 0 1\n");
}

TEST_CASE("GroupTable validation rejects malformed tables") {
  CHECK_THROWS_AS(GroupTable(2, {0, 1, 1, 1}), std::invalid_argument);  // row not a permutation
  CHECK_THROWS_AS(GroupTable(2, {1, 0, 0, 1}), std::invalid_argument);  // 0 not the identity
  CHECK_THROWS_AS(GroupTable(2, {0, 1}), std::invalid_argument);        // size mismatch
}

TEST_CASE("associativity is verified exhaustively for small realizations") {
  std::vector<GroupExpr> exprs;
  exprs.push_back(GroupExpr::cyclic(512));
  exprs.push_back(GroupExpr::semidirect(GroupExpr::cyclic(49), 3,
                                        groups::find_unit_of_order(3, 7, 2)));
  exprs.push_back(GroupExpr::direct_product({GroupExpr::cyclic(8), GroupExpr::cyclic(9)}));
  exprs.push_back(GroupExpr::semidirect(elementary(7), 2, groups::find_matrix_of_order(2, 7)));
  for (const auto& e : exprs) REQUIRE(groups::realize(e).verify_associativity());
}

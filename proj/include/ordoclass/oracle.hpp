#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordoclass/classify.hpp"
#include "ordoclass/groups.hpp"

namespace ordoclass::oracle {

inline constexpr std::uint64_t kMaxSquarefreeEnum = 3000;
inline constexpr std::uint64_t kMaxP2qOrder = 2000;
inline constexpr std::uint64_t kMaxVerifyLimit = 2000;

/// All isomorphism types of some order, realized as explicit tables.
struct EnumerationResult {
  std::uint64_t n = 0;
  std::vector<groups::GroupTable> groups;  // pairwise non-isomorphic
  std::uint64_t total = 0;
  std::uint64_t nonabelian_count = 0;
  std::uint64_t nonnilpotent_count = 0;
};

/// Hölder's closed-form count of isomorphism types for squarefree n:
///   g(n) = sum over d | n of prod over p | (n/d) of (p^{c(p,d)} - 1)/(p - 1),
/// where c(p,d) = #{ primes q | d : q == 1 (mod p) }.
/// Rejects non-squarefree input.
std::uint64_t holder_count(const arith::Factorization& f);

/// Exhaustive enumeration for squarefree n <= 3000: every metacyclic
/// presentation <a, b | a^m = b^k = 1, b a b^-1 = a^r> with mk = n and
/// r^k == 1 (mod m), realized and deduplicated by isomorphism. Completeness
/// rests on the classical fact that groups of squarefree order are
/// metacyclic; cross-validated against holder_count.
EnumerationResult enumerate_squarefree_groups(std::uint64_t n);

/// Exhaustive enumeration for orders p^2*q <= 2000 (p != q): all semidirect
/// products around a normal Sylow subgroup (a classical fact for this order
/// shape): C_q -> Aut(C_{p^2}), C_q -> GL(2,p) (full matrix scan of M^q = I,
/// one representative per GL-conjugacy orbit), C_{p^2} -> Aut(C_q) and
/// (C_p)^2 -> Aut(C_q), plus the two abelian types; deduplicated by
/// isomorphism.
EnumerationResult enumerate_p2q_groups(std::uint64_t p, std::uint64_t q);

/// Number of abelian isomorphism types: prod over i of p(n_i).
std::uint64_t abelian_count(const arith::Factorization& f);

struct OracleCounts {
  std::uint64_t total = 0;
  std::uint64_t nonabelian = 0;
  std::uint64_t noncyclic = 0;
};

struct DiscrepancyRecord {
  std::uint64_t n = 0;
  std::string shape;  // "squarefree" | "p2" | "p2q" | "skipped"
  bool almost_abelian_literal = false;
  bool almost_abelian_corrected = false;
  bool almost_cyclic_paper = false;
  std::optional<OracleCounts> oracle;          // absent for skipped shapes
  std::optional<bool> agree;                   // almost-abelian, requested mode
  std::optional<bool> agree_almost_cyclic;     // sufficient-condition comparison
};

/// Which counting machinery to run. Squarefree orders are covered when either
/// `holder` or `squarefree` is on (both on: cross-checked); p^2 and p^2*q
/// shapes are covered by `p2q`.
struct OracleSelection {
  bool holder = true;
  bool squarefree = true;
  bool p2q = true;
};

struct DiscrepancyReport {
  std::uint64_t limit = 0;
  classify::Mode mode = classify::Mode::Corrected;
  std::vector<DiscrepancyRecord> records;  // one per n, ascending

  std::vector<std::uint64_t> almost_abelian_disagreements() const;
  std::vector<std::uint64_t> almost_cyclic_disagreements() const;
  bool all_supported_agree() const;  // almost-abelian aspect only
};

/// Compares predicate verdicts against exact counts for every n <= limit of
/// supported shape; unsupported shapes are marked "skipped", never guessed.
/// Orders are independent verification tasks; `threads` > 1 runs them in a
/// small worker pool with results merged by n.
DiscrepancyReport verify_range(std::uint64_t limit, classify::Mode mode,
                               OracleSelection oracles = {}, unsigned threads = 1);

}  // namespace ordoclass::oracle

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "ordoclass/arith.hpp"
#include "ordoclass/groups.hpp"

namespace ordoclass::classify {

/// The order-p^2*q scenario condition exists in two published variants:
/// Literal requires only p_i | p_j + 1; Corrected additionally requires
/// p_i does not divide p_j - 1. Corrected is the default everywhere; Literal
/// is kept for replication and discrepancy reporting.
enum class Mode { Literal, Corrected };

enum class ScenarioTag { None, Sit1, Sit2, Sit2Prime };

/// Detected scenario with the distinguished pair of prime indices (i, j)
/// into the factorization; the pair is present exactly when tag != None.
struct Scenario {
  ScenarioTag tag = ScenarioTag::None;
  std::optional<std::pair<std::size_t, std::size_t>> pair;

  explicit operator bool() const { return tag != ScenarioTag::None; }
};

struct ClassificationReport {
  arith::Factorization factorization;
  bool cyclic_number = false;
  bool abelian_number = false;
  bool nilpotent_number = false;
  bool almost_cyclic_paper = false;
  bool almost_abelian = false;
  bool almost_nilpotent = false;
  Scenario scenario;
  Mode mode = Mode::Corrected;
  std::optional<groups::GroupExpr> witness;  // present iff almost_abelian

  std::uint64_t n() const { return factorization.n(); }
};

/// True iff p_i^l != 1 (mod p_j) for all i != j and 1 <= l <= n_i.
/// Vacuously true for k <= 1.
bool has_nilpotent_factorization(const arith::Factorization& f);

bool is_nilpotent_number(const arith::Factorization& f);
bool is_abelian_number(const arith::Factorization& f);   // cubefree + NF
bool is_cyclic_number(const arith::Factorization& f);    // squarefree + NF

/// Independent characterization: gcd(n, phi(n)) == 1.
bool is_cyclic_number_gcd(std::uint64_t n);

/// Squarefree with exactly one ordered pair (i, j), i != j, p_i | p_j - 1.
Scenario check_sit1(const arith::Factorization& f);

/// Exactly one exponent-2 prime p_j (others 1); exactly one i with
/// p_i | p_j - 1 and p_i does not divide p_j + 1; no other ordered pair
/// (a, b) has p_a | p_b - 1. Implemented literally as printed.
Scenario check_sit2(const arith::Factorization& f);

/// Same shape with the i-clause p_i | p_j + 1 (Literal) or additionally
/// p_i not dividing p_j - 1 (Corrected).
Scenario check_sit2_prime(const arith::Factorization& f, Mode mode);

bool is_almost_abelian(const arith::Factorization& f, Mode mode);
bool is_almost_nilpotent(const arith::Factorization& f, Mode mode);

/// Sufficient condition only (sit1 or sit2); exact only where the oracle says so.
bool is_almost_cyclic_paper(const arith::Factorization& f);

/// The unique nonabelian group of an almost-abelian order:
/// sit1  -> (C_{p_j} ⋊ C_{p_i}) × C_{n/(p_i p_j)}
/// sit2' -> ((C_{p_j})^2 ⋊ C_{p_i}) × C_{n/(p_i p_j^2)}
/// with the cyclic cofactor omitted when trivial. Rejects None/Sit2 scenarios.
groups::GroupExpr witness_description(const arith::Factorization& f, const Scenario& scenario);

ClassificationReport classify_number(const arith::Factorization& f, Mode mode);

std::string_view to_string(Mode mode);
std::string_view to_string(ScenarioTag tag);
std::optional<Mode> mode_from_name(std::string_view name);

}  // namespace ordoclass::classify

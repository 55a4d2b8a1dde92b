#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ordoclass::groups {

// Hard caps; everything past these is out of scope for table algorithms.
inline constexpr std::uint32_t kMaxTableOrder = 5000;
inline constexpr std::uint32_t kMaxIsomorphismOrder = 2000;
inline constexpr std::uint32_t kDefaultAutomorphismCap = 100;

// ---------------------------------------------------------------------------
// Actions

struct TrivialAction {
  friend bool operator==(const TrivialAction&, const TrivialAction&) = default;
};

/// Automorphism of C_{p^a} given by multiplication with a unit of exact
/// multiplicative order `order` modulo `modulus` = p^a. Verified on construction.
class UnitMultiplier {
 public:
  UnitMultiplier(std::uint64_t unit, std::uint64_t modulus, std::uint64_t order);

  std::uint64_t unit() const { return unit_; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t order() const { return order_; }

  friend bool operator==(const UnitMultiplier&, const UnitMultiplier&) = default;

 private:
  std::uint64_t unit_;
  std::uint64_t modulus_;
  std::uint64_t order_;
};

/// Automorphism of (C_p)^2 given by an invertible 2x2 matrix over F_p with
/// exact multiplicative order `order`. Entries row-major. Verified on construction.
class Matrix2 {
 public:
  Matrix2(std::array<std::uint64_t, 4> entries, std::uint64_t p, std::uint64_t order);

  const std::array<std::uint64_t, 4>& entries() const { return entries_; }
  std::uint64_t p() const { return p_; }
  std::uint64_t order() const { return order_; }

  friend bool operator==(const Matrix2&, const Matrix2&) = default;

 private:
  std::array<std::uint64_t, 4> entries_;
  std::uint64_t p_;
  std::uint64_t order_;
};

using ActionSpec = std::variant<TrivialAction, UnitMultiplier, Matrix2>;

// ---------------------------------------------------------------------------
// Symbolic group expressions: Cyclic(m) | DirectProduct(...) | Semidirect(...)

class GroupExpr {
 public:
  enum class Kind { Cyclic, DirectProduct, Semidirect };

  static GroupExpr cyclic(std::uint64_t order);
  static GroupExpr direct_product(std::vector<GroupExpr> factors);
  // Kernel must be Cyclic(p^a) or (C_p)^e; q must be a prime not dividing the
  // kernel order; the action must fit the kernel shape.
  static GroupExpr semidirect(GroupExpr kernel, std::uint64_t acting_prime, ActionSpec action);

  Kind kind() const { return kind_; }
  std::uint64_t order() const;

  // Cyclic
  std::uint64_t cyclic_order() const;
  // DirectProduct
  std::span<const GroupExpr> factors() const;
  // Semidirect
  const GroupExpr& kernel() const;
  std::uint64_t acting_prime() const;
  const ActionSpec& action() const;

  /// True for (C_p)^e, e >= 1, i.e. a direct product of equal prime cyclics
  /// (a single Cyclic(p) counts). Fills p/e when requested.
  bool is_elementary(std::uint64_t* p = nullptr, std::uint32_t* e = nullptr) const;
  /// True for Cyclic(p^a); fills p/a when requested.
  bool is_cyclic_prime_power(std::uint64_t* p = nullptr, std::uint32_t* a = nullptr) const;

 private:
  GroupExpr() = default;

  Kind kind_ = Kind::Cyclic;
  std::uint64_t cyclic_order_ = 1;
  std::vector<GroupExpr> factors_;
  std::shared_ptr<const GroupExpr> kernel_;
  std::uint64_t acting_prime_ = 0;
  std::optional<ActionSpec> action_;
};

/// Rendering used everywhere groups are printed, e.g. "(C_5)^2 ⋊ C_3"
/// or "(C_7 ⋊ C_3) × C_5".
std::string to_string(const GroupExpr& expr);

// ---------------------------------------------------------------------------
// Concrete groups as multiplication tables

/// Finite group on element indices 0..m-1 with identity at 0, stored as a
/// full multiplication table. Construction validates the identity, Latin
/// square and inverse laws and that element orders divide m; associativity is
/// the builder's responsibility (realize() guarantees it structurally,
/// verify_associativity() checks it exhaustively).
class GroupTable {
 public:
  GroupTable(std::uint32_t order, std::vector<std::uint16_t> table);

  std::uint32_t order() const { return order_; }
  std::uint16_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a * order_ + b]; }
  std::uint16_t inverse(std::uint32_t a) const { return inverse_[a]; }
  std::uint32_t element_order(std::uint32_t a) const { return element_order_[a]; }
  std::span<const std::uint16_t> table() const { return table_; }

  bool verify_associativity() const;  // O(m^3)

  // Cached structural invariants. Lazily computed; a fully constructed table
  // is immutable, but first access to these is not thread-safe.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& order_profile() const;
  bool abelian() const;
  std::uint32_t center_size() const;
  std::uint32_t derived_size() const;
  std::span<const std::uint32_t> class_sizes() const;

 private:
  std::uint32_t order_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> inverse_;
  std::vector<std::uint32_t> element_order_;

  mutable std::optional<std::vector<std::pair<std::uint32_t, std::uint32_t>>> profile_;
  mutable std::optional<bool> abelian_;
  mutable std::optional<std::uint32_t> center_size_;
  mutable std::optional<std::uint32_t> derived_size_;
  mutable std::optional<std::vector<std::uint32_t>> class_sizes_;
};

/// Explicit table for a symbolic expression. Kernel-major mixed-radix element
/// indexing with the identity first, so realizations are reproducible
/// byte-for-byte. Rejects realized orders above kMaxTableOrder.
GroupTable realize(const GroupExpr& expr);

/// Smallest unit of exact multiplicative order q modulo p^a (a <= 2).
/// Throws std::domain_error when q does not divide phi(p^a) = p^(a-1)(p-1);
/// that failure is meaningful to callers, not just an input mistake.
UnitMultiplier find_unit_of_order(std::uint64_t q, std::uint64_t p, std::uint32_t a);

/// Deterministic unit of exact order q mod p^a without the smallest-element
/// walk; used where q may be huge and any verified representative will do.
UnitMultiplier any_unit_of_order(std::uint64_t q, std::uint64_t p, std::uint32_t a);

/// 2x2 matrix over F_p of exact order q (requires q | p^2-1, q != p).
/// If q | p-1 the result is diag(u, 1) with u the smallest unit of order q;
/// otherwise companion matrices of monic quadratics are scanned in a fixed
/// lexicographic order, the first with order divisible by q is taken, and
/// powered down to order exactly q.
Matrix2 find_matrix_of_order(std::uint64_t q, std::uint64_t p);

bool is_abelian(const GroupTable& g);

/// Nilpotency via the lower central series gamma_1 = G,
/// gamma_{t+1} = [G, gamma_t]; nilpotent iff it reaches the trivial subgroup.
bool is_nilpotent(const GroupTable& g);

/// Subgroup generated by `gens`: sorted element list, identity included.
std::vector<std::uint16_t> generated_subgroup(const GroupTable& g,
                                              std::span<const std::uint16_t> gens);

/// Exact isomorphism test for |G| = |H| <= kMaxIsomorphismOrder: invariant
/// prefilter (order profile, abelian invariants, center, derived subgroup,
/// conjugacy class sizes), then backtracking over images of a greedy
/// generating set of at most 3 elements (runtime-enforced).
bool are_isomorphic(const GroupTable& g, const GroupTable& h);

/// Exact |Aut(G)| by enumerating all valid generator images.
std::uint64_t automorphism_count(const GroupTable& g,
                                 std::uint32_t cap = kDefaultAutomorphismCap);

/// Plain-text debug dump: first line "m", then the m x m table row-major,
/// space-separated.
void dump_table(const GroupTable& g, std::ostream& os);

}  // namespace ordoclass::groups

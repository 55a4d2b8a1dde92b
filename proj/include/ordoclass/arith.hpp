#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ordoclass::arith {

// All arithmetic is 64-bit; inputs are capped at 2^63-1 and intermediate
// products go through __int128, so nothing here can overflow silently.
inline constexpr std::uint64_t kMaxInput = (std::uint64_t{1} << 63) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Sorted prime-power decomposition of a positive integer.
/// k = 0 exactly for n = 1.
class Factorization {
 public:
  Factorization() : n_(1) {}
  // Validates: primes strictly increasing and certified prime, exponents >= 1,
  // and the product recomposes to n.
  Factorization(std::uint64_t n, std::vector<PrimePower> factors);

  std::uint64_t n() const { return n_; }
  std::size_t size() const { return factors_.size(); }
  const PrimePower& operator[](std::size_t i) const { return factors_[i]; }
  std::uint64_t prime(std::size_t i) const { return factors_[i].prime; }
  std::uint32_t exponent(std::size_t i) const { return factors_[i].exponent; }
  std::span<const PrimePower> factors() const { return factors_; }

  bool squarefree() const;
  bool cubefree() const;

  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.end(); }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::uint64_t n_;
  std::vector<PrimePower> factors_;
};

/// Unique factorization of n. Trial division by sieve primes up to 10^6,
/// then Pollard rho with Miller-Rabin certification for larger cofactors.
/// Rejects n = 0 and n > 2^63-1.
Factorization factor(std::uint64_t n);

/// Euler totient from a factorization: prod p^(e-1)(p-1); phi(1) = 1.
std::uint64_t euler_phi(const Factorization& f);

/// Greatest common divisor; rejects (0, 0).
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// True iff p^l == 1 (mod q) for some 1 <= l <= l_max. Rejects p == q.
bool has_unit_congruence(std::uint64_t p, std::uint32_t l_max, std::uint64_t q);

/// Number of integer partitions p(e); p(0) = 1.
std::uint64_t partition_count(std::uint32_t e);

/// Primes up to 10^6, shared by factor() and the sieve tests.
std::span<const std::uint32_t> small_primes();

}  // namespace ordoclass::arith

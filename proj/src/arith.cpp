#include "ordoclass/arith.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace ordoclass::arith {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;

  const int r = std::countr_zero(n - 1);
  const std::uint64_t d = (n - 1) >> r;
  // Exact for n < 2^64 with this witness set.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL,
                          9780504ULL, 1795265022ULL}) {
    std::uint64_t x = pow_mod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::span<const std::uint32_t> small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t kBound = 1'000'000;
    std::vector<bool> composite(kBound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kBound; j += i)
        composite[j] = true;
    }
    return out;
  }();
  return primes;
}

Factorization::Factorization(std::uint64_t n, std::vector<PrimePower> factors)
    : n_(n), factors_(std::move(factors)) {
  if (n == 0) throw std::invalid_argument("Factorization: n must be positive");
  unsigned __int128 product = 1;
  std::uint64_t prev = 0;
  for (const auto& [p, e] : factors_) {
    if (p <= prev) throw std::invalid_argument("Factorization: primes must be strictly increasing");
    if (e == 0) throw std::invalid_argument("Factorization: exponents must be >= 1");
    if (!is_prime(p)) throw std::invalid_argument("Factorization: factor is not prime");
    prev = p;
    for (std::uint32_t i = 0; i < e; ++i) {
      product *= p;
      if (product > kMaxInput) throw std::overflow_error("Factorization: product overflows");
    }
  }
  if (product != n_) throw std::invalid_argument("Factorization: factors do not recompose n");
}

bool Factorization::squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

bool Factorization::cubefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent <= 2; });
}

namespace {

// Deterministic Pollard rho, Brent cycle finding with batched gcds.
// n must be composite, odd, and free of factors <= 10^6.
std::uint64_t pollard_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto step = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    std::uint64_t x = 2, y = 2, ys = 2, d = 1, q = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    while (d == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      for (std::uint64_t k = 0; k < r && d == 1; k += kBatch) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
      r *= 2;
    }
    if (d == n) {
      // All factors collapsed inside a batch; redo it one gcd at a time.
      do {
        ys = step(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_large(std::uint64_t n, std::vector<std::uint64_t>& primes_out) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes_out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_large(d, primes_out);
  factor_large(n / d, primes_out);
}

}  // namespace

Factorization factor(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factor: n must be positive");
  if (n > kMaxInput) throw std::out_of_range("factor: n exceeds 2^63-1");

  const std::uint64_t original = n;
  std::vector<PrimePower> factors;
  for (std::uint32_t p : small_primes()) {
    if (std::uint64_t{p} * p > n) break;
    if (n % p != 0) continue;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors.push_back({p, e});
  }
  if (n > 1) {
    std::vector<std::uint64_t> rest;
    factor_large(n, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      factors.push_back({rest[i], static_cast<std::uint32_t>(j - i)});
      i = j;
    }
  }
  return Factorization(original, std::move(factors));
}

std::uint64_t euler_phi(const Factorization& f) {
  std::uint64_t result = 1;
  for (const auto& [p, e] : f.factors()) {
    result *= p - 1;
    for (std::uint32_t i = 1; i < e; ++i) result *= p;
  }
  return result;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  if (a == 0 && b == 0) throw std::invalid_argument("gcd: gcd(0, 0) is undefined");
  return std::gcd(a, b);
}

bool has_unit_congruence(std::uint64_t p, std::uint32_t l_max, std::uint64_t q) {
  if (p == q) throw std::invalid_argument("has_unit_congruence: p and q must differ");
  std::uint64_t cur = 1;
  for (std::uint32_t l = 1; l <= l_max; ++l) {
    cur = mul_mod(cur, p % q, q);
    if (cur == 1) return true;
  }
  return false;
}

std::uint64_t partition_count(std::uint32_t e) {
  static const std::vector<std::uint64_t> table = [] {
    // p(416) overflows 64 bits; exponents of 64-bit integers stay below 64.
    constexpr std::uint32_t kMax = 255;
    std::vector<std::uint64_t> dp(kMax + 1, 0);
    dp[0] = 1;
    for (std::uint32_t part = 1; part <= kMax; ++part)
      for (std::uint32_t total = part; total <= kMax; ++total) dp[total] += dp[total - part];
    return dp;
  }();
  if (e >= table.size()) throw std::out_of_range("partition_count: argument too large");
  return table[e];
}

}  // namespace ordoclass::arith

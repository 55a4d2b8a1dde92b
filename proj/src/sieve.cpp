#include "ordoclass/sieve.hpp"

#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace ordoclass::sieve {

SpfSieve::SpfSieve(std::uint32_t limit) : limit_(limit) {
  if (limit < 2 || limit > kMaxSieveLimit)
    throw sieve_limit_error("sieve limit must be between 2 and 10^8");
  spf_.assign(static_cast<std::size_t>(limit_) + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes.push_back(i);
    }
    for (std::uint32_t p : primes) {
      if (p > spf_[i]) break;
      const std::uint64_t next = static_cast<std::uint64_t>(p) * i;
      if (next > limit_) break;
      spf_[next] = p;
    }
  }
}

std::uint32_t SpfSieve::smallest_prime_factor(std::uint32_t m) const {
  if (m < 2 || m > limit_) throw std::out_of_range("smallest_prime_factor: out of range");
  return spf_[m];
}

arith::Factorization SpfSieve::factor(std::uint32_t m) const {
  if (m < 1 || m > limit_) throw std::out_of_range("sieve factor: out of range");
  std::vector<arith::PrimePower> factors;
  while (m > 1) {
    const std::uint32_t p = spf_[m];
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    factors.push_back({p, e});
  }
  std::uint64_t n = 1;
  for (const auto& [p, e] : factors)
    for (std::uint32_t i = 0; i < e; ++i) n *= p;
  return arith::Factorization(n, std::move(factors));
}

std::optional<ClassFlag> flag_from_name(std::string_view name) {
  if (name == "cyclic") return ClassFlag::Cyclic;
  if (name == "abelian") return ClassFlag::Abelian;
  if (name == "nilpotent") return ClassFlag::Nilpotent;
  if (name == "almost-cyclic") return ClassFlag::AlmostCyclicPaper;
  if (name == "almost-abelian") return ClassFlag::AlmostAbelian;
  if (name == "almost-nilpotent") return ClassFlag::AlmostNilpotent;
  return std::nullopt;
}

std::string_view flag_name(ClassFlag flag) {
  switch (flag) {
    case ClassFlag::Cyclic: return "cyclic";
    case ClassFlag::Abelian: return "abelian";
    case ClassFlag::Nilpotent: return "nilpotent";
    case ClassFlag::AlmostCyclicPaper: return "almost-cyclic";
    case ClassFlag::AlmostAbelian: return "almost-abelian";
    case ClassFlag::AlmostNilpotent: return "almost-nilpotent";
  }
  return "";
}

bool flag_value(const classify::ClassificationReport& r, ClassFlag flag) {
  switch (flag) {
    case ClassFlag::Cyclic: return r.cyclic_number;
    case ClassFlag::Abelian: return r.abelian_number;
    case ClassFlag::Nilpotent: return r.nilpotent_number;
    case ClassFlag::AlmostCyclicPaper: return r.almost_cyclic_paper;
    case ClassFlag::AlmostAbelian: return r.almost_abelian;
    case ClassFlag::AlmostNilpotent: return r.almost_nilpotent;
  }
  return false;
}

RangeStats RangeStats::merge(const RangeStats& a, const RangeStats& b) {
  if (a.size() == 0) return b;
  if (b.size() == 0) return a;
  if (a.hi + 1 != b.lo) throw std::invalid_argument("RangeStats::merge: ranges not adjacent");
  RangeStats out = a;
  out.hi = b.hi;
  out.cyclic += b.cyclic;
  out.abelian += b.abelian;
  out.nilpotent += b.nilpotent;
  out.almost_cyclic_paper += b.almost_cyclic_paper;
  out.almost_abelian_literal += b.almost_abelian_literal;
  out.almost_abelian_corrected += b.almost_abelian_corrected;
  return out;
}

std::string density_string(std::uint64_t count, std::uint64_t size) {
  if (size == 0) throw std::invalid_argument("density_string: empty range");
  const std::uint64_t g = std::gcd(count, size);  // size > 0, so g > 0
  const std::uint64_t num = count / g;
  const std::uint64_t den = size / g;
  // rounded half-up to 6 places, integer arithmetic only
  const unsigned __int128 scaled =
      (static_cast<unsigned __int128>(count) * 1'000'000 + size / 2) / size;
  const std::uint64_t whole = static_cast<std::uint64_t>(scaled / 1'000'000);
  const std::uint64_t frac = static_cast<std::uint64_t>(scaled % 1'000'000);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%llu.%06llu", static_cast<unsigned long long>(whole),
                static_cast<unsigned long long>(frac));
  return std::to_string(num) + "/" + std::to_string(den) + " = " + buf;
}

RangeStats classify_range(const SpfSieve& sieve, std::uint64_t a, std::uint64_t b,
                          classify::Mode mode, const ReportSink& sink) {
  if (a < 1 || a > b) throw std::invalid_argument("classify_range: need 1 <= a <= b");
  if (b > sieve.limit()) throw sieve_limit_error("classify_range: range exceeds sieve limit");
  RangeStats st;
  st.lo = a;
  st.hi = b;
  const classify::Mode other =
      mode == classify::Mode::Literal ? classify::Mode::Corrected : classify::Mode::Literal;
  for (std::uint64_t n = a; n <= b; ++n) {
    const auto f = sieve.factor(static_cast<std::uint32_t>(n));
    const auto report = classify::classify_number(f, mode);
    st.cyclic += report.cyclic_number;
    st.abelian += report.abelian_number;
    st.nilpotent += report.nilpotent_number;
    st.almost_cyclic_paper += report.almost_cyclic_paper;
    bool lit, cor;
    if (report.scenario.tag == classify::ScenarioTag::Sit1) {
      lit = cor = true;  // sit1 is mode-independent
    } else {
      const bool this_mode = report.almost_abelian;
      const bool other_mode = static_cast<bool>(classify::check_sit2_prime(f, other));
      lit = mode == classify::Mode::Literal ? this_mode : other_mode;
      cor = mode == classify::Mode::Corrected ? this_mode : other_mode;
    }
    st.almost_abelian_literal += lit;
    st.almost_abelian_corrected += cor;
    if (sink) sink(report);
  }
  return st;
}

std::vector<std::uint64_t> sequence(const SpfSieve& sieve, ClassFlag flag, std::size_t count,
                                    classify::Mode mode) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint32_t n = 1; n <= sieve.limit() && out.size() < count; ++n) {
    const auto report = classify::classify_number(sieve.factor(n), mode);
    if (flag_value(report, flag)) out.push_back(n);
  }
  if (out.size() < count)
    throw sieve_limit_error("sequence: sieve exhausted before enough members were found");
  return out;
}

}  // namespace ordoclass::sieve

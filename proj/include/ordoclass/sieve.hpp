#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ordoclass/classify.hpp"

namespace ordoclass::sieve {

/// Raised when a requested range or sequence cannot be served within the
/// sieve's memory-guarded limit.
class sieve_limit_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::uint32_t kMaxSieveLimit = 100'000'000;

/// Smallest-prime-factor sieve (linear construction, 32-bit entries).
class SpfSieve {
 public:
  explicit SpfSieve(std::uint32_t limit);  // 2 <= limit <= 10^8

  std::uint32_t limit() const { return limit_; }
  std::uint32_t smallest_prime_factor(std::uint32_t m) const;  // 2 <= m <= limit
  arith::Factorization factor(std::uint32_t m) const;          // 1 <= m <= limit

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
};

enum class ClassFlag {
  Cyclic,
  Abelian,
  Nilpotent,
  AlmostCyclicPaper,
  AlmostAbelian,
  AlmostNilpotent,
};

std::optional<ClassFlag> flag_from_name(std::string_view name);
std::string_view flag_name(ClassFlag flag);
bool flag_value(const classify::ClassificationReport& r, ClassFlag flag);

/// Exact per-flag counts over an inclusive range. Almost-abelian is counted
/// in both modes regardless of the mode the reports were built with.
struct RangeStats {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;
  std::uint64_t cyclic = 0;
  std::uint64_t abelian = 0;
  std::uint64_t nilpotent = 0;
  std::uint64_t almost_cyclic_paper = 0;
  std::uint64_t almost_abelian_literal = 0;
  std::uint64_t almost_abelian_corrected = 0;

  std::uint64_t size() const { return hi < lo ? 0 : hi - lo + 1; }

  /// Associative merge of stats over adjacent ranges ([a,b] + [b+1,c]).
  static RangeStats merge(const RangeStats& a, const RangeStats& b);
};

/// Exact rational density with a 6-place decimal rendering,
/// e.g. "5/10 = 0.500000".
std::string density_string(std::uint64_t count, std::uint64_t size);

using ReportSink = std::function<void(const classify::ClassificationReport&)>;

/// One report per n in [a, b] (ascending, streamed through `sink` when
/// provided) plus exactly aggregated stats.
RangeStats classify_range(const SpfSieve& sieve, std::uint64_t a, std::uint64_t b,
                          classify::Mode mode, const ReportSink& sink = {});

/// First `count` integers whose report sets `flag`; throws sieve_limit_error
/// when the sieve is exhausted before `count` members are found.
std::vector<std::uint64_t> sequence(const SpfSieve& sieve, ClassFlag flag, std::size_t count,
                                    classify::Mode mode);

}  // namespace ordoclass::sieve

#include "ordoclass/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ordoclass::oracle {

using arith::Factorization;
using classify::Mode;
using groups::GroupExpr;
using groups::GroupTable;

std::uint64_t holder_count(const Factorization& f) {
  if (!f.squarefree()) throw std::invalid_argument("holder_count: squarefree input required");
  const std::size_t k = f.size();
  std::vector<std::uint32_t> divmask(k, 0);  // bit j of divmask[i]: p_i | p_j - 1
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && (f.prime(j) - 1) % f.prime(i) == 0) divmask[i] |= 1u << j;

  unsigned __int128 total = 0;
  for (std::uint32_t d = 0; d < (1u << k); ++d) {  // d: the prime subset forming the divisor
    unsigned __int128 term = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (d >> i & 1) continue;  // i runs over primes of n/d
      const int c = std::popcount(divmask[i] & d);
      if (c == 0) {
        term = 0;
        break;
      }
      unsigned __int128 geom = 0, pw = 1;  // (p^c - 1)/(p - 1)
      for (int t = 0; t < c; ++t) {
        geom += pw;
        pw *= f.prime(i);
      }
      term *= geom;
    }
    total += term;
  }
  if (total > static_cast<unsigned __int128>(UINT64_MAX))
    throw std::overflow_error("holder_count: overflow");
  return static_cast<std::uint64_t>(total);
}

std::uint64_t abelian_count(const Factorization& f) {
  std::uint64_t count = 1;
  for (const auto& [p, e] : f.factors()) {
    (void)p;
    count *= arith::partition_count(e);
  }
  return count;
}

namespace {

// <a, b | a^m = b^k = 1, b a b^-1 = a^r> on pairs (a, b), index a*k + b.
GroupTable metacyclic_table(std::uint32_t m, std::uint32_t k, std::uint32_t r) {
  const std::uint32_t n = m * k;
  std::vector<std::uint32_t> rpow(k);
  rpow[0] = 1 % m;
  for (std::uint32_t b = 1; b < k; ++b)
    rpow[b] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(rpow[b - 1]) * r % m);
  std::vector<std::uint16_t> t(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a1 = 0; a1 < m; ++a1)
    for (std::uint32_t b1 = 0; b1 < k; ++b1) {
      const std::size_t row = static_cast<std::size_t>(a1 * k + b1) * n;
      for (std::uint32_t a2 = 0; a2 < m; ++a2) {
        const std::uint32_t ta =
            static_cast<std::uint32_t>((a1 + static_cast<std::uint64_t>(a2) * rpow[b1]) % m);
        for (std::uint32_t b2 = 0; b2 < k; ++b2) {
          std::uint32_t bb = b1 + b2;
          if (bb >= k) bb -= k;
          t[row + a2 * k + b2] = static_cast<std::uint16_t>(ta * k + bb);
        }
      }
    }
  return GroupTable(n, std::move(t));
}

struct Collector {
  EnumerationResult result;

  void try_add(GroupTable candidate) {
    for (const auto& g : result.groups)
      if (groups::are_isomorphic(g, candidate)) return;
    result.groups.push_back(std::move(candidate));
  }

  EnumerationResult finish(std::uint64_t n) {
    result.n = n;
    result.total = result.groups.size();
    result.nonabelian_count = 0;
    result.nonnilpotent_count = 0;
    for (const auto& g : result.groups) {
      if (!g.abelian()) ++result.nonabelian_count;
      if (!groups::is_nilpotent(g)) ++result.nonnilpotent_count;
    }
    return std::move(result);
  }
};

}  // namespace

EnumerationResult enumerate_squarefree_groups(std::uint64_t n) {
  const auto f = arith::factor(n);
  if (!f.squarefree())
    throw std::invalid_argument("enumerate_squarefree_groups: squarefree input required");
  if (n > kMaxSquarefreeEnum)
    throw std::length_error("enumerate_squarefree_groups: order exceeds cap");

  Collector col;
  const std::size_t k = f.size();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::uint32_t m = 1;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) m = static_cast<std::uint32_t>(m * f.prime(i));
    const std::uint32_t kk = static_cast<std::uint32_t>(n / m);
    if (m == 1) {
      col.try_add(metacyclic_table(1, kk, 0));
      continue;
    }
    for (std::uint32_t r = 1; r < m; ++r)
      if (arith::pow_mod(r, kk, m) == 1) col.try_add(metacyclic_table(m, kk, r));
  }
  return col.finish(n);
}

namespace {

using Mat = std::array<std::uint64_t, 4>;

bool mat_is_id(const Mat& m) { return m[0] == 1 && m[1] == 0 && m[2] == 0 && m[3] == 1; }

Mat mat_mul_p(const Mat& a, const Mat& b, std::uint64_t p) {
  return {(a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
          (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p};
}

Mat mat_pow_p(Mat m, std::uint64_t e, std::uint64_t p) {
  Mat r = {1, 0, 0, 1};
  while (e > 0) {
    if (e & 1) r = mat_mul_p(r, m, p);
    m = mat_mul_p(m, m, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

EnumerationResult enumerate_p2q_groups(std::uint64_t p, std::uint64_t q) {
  if (!arith::is_prime(p) || !arith::is_prime(q) || p == q)
    throw std::invalid_argument("enumerate_p2q_groups: need distinct primes");
  const std::uint64_t n64 = p * p * q;
  if (n64 > kMaxP2qOrder) throw std::length_error("enumerate_p2q_groups: order exceeds cap");
  const std::uint32_t n = static_cast<std::uint32_t>(n64);
  const std::uint32_t up = static_cast<std::uint32_t>(p);
  const std::uint32_t uq = static_cast<std::uint32_t>(q);

  Collector col;

  // The two abelian types.
  col.try_add(groups::realize(GroupExpr::cyclic(n)));
  col.try_add(groups::realize(GroupExpr::direct_product(
      {GroupExpr::cyclic(p), GroupExpr::cyclic(p), GroupExpr::cyclic(q)})));

  // C_q -> Aut(C_{p^2}): all units of exact order q mod p^2 (they are the
  // nontrivial powers of any one of them).
  if ((p * (p - 1)) % q == 0) {
    const std::uint64_t p2 = p * p;
    const std::uint64_t h = groups::any_unit_of_order(q, p, 2).unit();
    std::uint64_t u = h;
    for (std::uint64_t t = 1; t < q; ++t) {
      col.try_add(groups::realize(GroupExpr::semidirect(
          GroupExpr::cyclic(p2), q, groups::UnitMultiplier(u, p2, q))));
      u = arith::mul_mod(u, h, p2);
    }
  }

  // C_q -> GL(2,p): full scan of M^q = I, reduced to one representative per
  // GL-conjugacy orbit (conjugate actions give isomorphic products), then
  // isomorphism-deduplicated like everything else.
  {
    const std::uint32_t total_mats = up * up * up * up;
    auto encode = [up](const Mat& m) {
      return ((static_cast<std::uint32_t>(m[0]) * up + static_cast<std::uint32_t>(m[1])) * up +
              static_cast<std::uint32_t>(m[2])) *
                 up +
             static_cast<std::uint32_t>(m[3]);
    };
    auto decode = [up](std::uint32_t x) {
      Mat m;
      m[3] = x % up;
      x /= up;
      m[2] = x % up;
      x /= up;
      m[1] = x % up;
      x /= up;
      m[0] = x % up;
      return m;
    };
    auto det = [p](const Mat& m) { return (m[0] * m[3] % p + p - m[1] * m[2] % p) % p; };

    std::vector<char> solution(total_mats, 0);
    for (std::uint32_t code = 0; code < total_mats; ++code) {
      const Mat m = decode(code);
      if (det(m) == 0) continue;
      if (mat_is_id(m)) continue;
      if (mat_is_id(mat_pow_p(m, q, p))) solution[code] = 1;
    }
    std::vector<std::uint32_t> inv_mod(up, 0);
    for (std::uint32_t x = 1; x < up; ++x)
      inv_mod[x] = static_cast<std::uint32_t>(arith::pow_mod(x, p - 2, p));

    std::vector<char> claimed(total_mats, 0);
    for (std::uint32_t code = 0; code < total_mats; ++code) {
      if (!solution[code] || claimed[code]) continue;
      const Mat rep = decode(code);
      for (std::uint32_t acode = 0; acode < total_mats; ++acode) {
        const Mat a = decode(acode);
        const std::uint64_t d = det(a);
        if (d == 0) continue;
        const std::uint64_t di = inv_mod[d];
        const Mat ainv = {a[3] * di % p, (p - a[1] % p) % p * di % p,
                          (p - a[2] % p) % p * di % p, a[0] * di % p};
        claimed[encode(mat_mul_p(mat_mul_p(a, rep, p), ainv, p))] = 1;
      }
      col.try_add(groups::realize(GroupExpr::semidirect(
          GroupExpr::direct_product({GroupExpr::cyclic(p), GroupExpr::cyclic(p)}), q,
          groups::Matrix2(rep, p, q))));
    }
  }

  // C_{p^2} -> Aut(C_q): metacyclic C_q x| C_{p^2} with r of exact order p or p^2.
  if ((q - 1) % p == 0) {
    for (std::uint32_t r = 2; r < uq; ++r) {
      const bool order_p = arith::pow_mod(r, p, q) == 1;
      const bool order_p2 = !order_p && arith::pow_mod(r, p * p, q) == 1;
      if (order_p || order_p2) col.try_add(metacyclic_table(uq, up * up, r));
    }
  }

  // (C_p)^2 -> Aut(C_q) with image of order p: psi(s,t) = u0^(a*s + b*t).
  if ((q - 1) % p == 0) {
    const std::uint64_t u0 = groups::find_unit_of_order(p, q, 1).unit();
    std::vector<std::uint32_t> upow(up);
    upow[0] = 1;
    for (std::uint32_t e = 1; e < up; ++e)
      upow[e] = static_cast<std::uint32_t>(arith::mul_mod(upow[e - 1], u0, q));
    const std::uint32_t p2 = up * up;
    for (std::uint32_t a = 0; a < up; ++a)
      for (std::uint32_t b = 0; b < up; ++b) {
        if (a == 0 && b == 0) continue;
        std::vector<std::uint16_t> t(static_cast<std::size_t>(n) * n);
        for (std::uint32_t x1 = 0; x1 < uq; ++x1)
          for (std::uint32_t s1 = 0; s1 < up; ++s1)
            for (std::uint32_t t1 = 0; t1 < up; ++t1) {
              const std::size_t row = static_cast<std::size_t>(x1 * p2 + s1 * up + t1) * n;
              const std::uint32_t twist = upow[(a * s1 + b * t1) % up];
              for (std::uint32_t x2 = 0; x2 < uq; ++x2) {
                const std::uint32_t xx =
                    static_cast<std::uint32_t>((x1 + static_cast<std::uint64_t>(x2) * twist) % uq);
                for (std::uint32_t s2 = 0; s2 < up; ++s2) {
                  std::uint32_t ss = s1 + s2;
                  if (ss >= up) ss -= up;
                  for (std::uint32_t t2 = 0; t2 < up; ++t2) {
                    std::uint32_t tt = t1 + t2;
                    if (tt >= up) tt -= up;
                    t[row + x2 * p2 + s2 * up + t2] =
                        static_cast<std::uint16_t>(xx * p2 + ss * up + tt);
                  }
                }
              }
            }
        col.try_add(GroupTable(n, std::move(t)));
      }
  }

  return col.finish(n64);
}

// ---------------------------------------------------------------------------
// verify_range

std::vector<std::uint64_t> DiscrepancyReport::almost_abelian_disagreements() const {
  std::vector<std::uint64_t> out;
  for (const auto& rec : records)
    if (rec.agree && !*rec.agree) out.push_back(rec.n);
  return out;
}

std::vector<std::uint64_t> DiscrepancyReport::almost_cyclic_disagreements() const {
  std::vector<std::uint64_t> out;
  for (const auto& rec : records)
    if (rec.agree_almost_cyclic && !*rec.agree_almost_cyclic) out.push_back(rec.n);
  return out;
}

bool DiscrepancyReport::all_supported_agree() const {
  return std::all_of(records.begin(), records.end(),
                     [](const DiscrepancyRecord& rec) { return !rec.agree || *rec.agree; });
}

namespace {

DiscrepancyRecord verify_one(std::uint64_t n, Mode mode, const OracleSelection& sel) {
  DiscrepancyRecord rec;
  rec.n = n;
  const auto f = arith::factor(n);
  rec.almost_abelian_literal = classify::is_almost_abelian(f, Mode::Literal);
  rec.almost_abelian_corrected = classify::is_almost_abelian(f, Mode::Corrected);
  rec.almost_cyclic_paper = classify::is_almost_cyclic_paper(f);

  const bool squarefree = f.squarefree();
  const bool p2 = f.size() == 1 && f.exponent(0) == 2;
  const bool p2q = f.size() == 2 && ((f.exponent(0) == 2 && f.exponent(1) == 1) ||
                                     (f.exponent(0) == 1 && f.exponent(1) == 2));

  rec.shape = "skipped";
  if (squarefree && (sel.holder || sel.squarefree)) {
    std::optional<std::uint64_t> formula, enumerated;
    if (sel.holder) formula = holder_count(f);
    if (sel.squarefree) enumerated = enumerate_squarefree_groups(n).total;
    if (formula && enumerated && *formula != *enumerated)
      throw std::logic_error("verify_range: holder/enumeration mismatch at n=" +
                             std::to_string(n));
    const std::uint64_t total = formula ? *formula : *enumerated;
    rec.shape = "squarefree";
    // For squarefree orders the only abelian type is C_n.
    rec.oracle = OracleCounts{total, total - 1, total - 1};
  } else if (p2 && sel.p2q) {
    rec.shape = "p2";
    rec.oracle = OracleCounts{2, 0, 1};  // C_{p^2} and (C_p)^2, both abelian
  } else if (p2q && sel.p2q) {
    const std::size_t jj = f.exponent(0) == 2 ? 0 : 1;
    const auto e = enumerate_p2q_groups(f.prime(jj), f.prime(1 - jj));
    rec.shape = "p2q";
    rec.oracle = OracleCounts{e.total, e.nonabelian_count, e.total - 1};
  }

  if (rec.oracle) {
    const bool aa =
        mode == Mode::Literal ? rec.almost_abelian_literal : rec.almost_abelian_corrected;
    rec.agree = aa == (rec.oracle->nonabelian == 1);
    rec.agree_almost_cyclic = rec.almost_cyclic_paper == (rec.oracle->noncyclic == 1);
  }
  return rec;
}

}  // namespace

DiscrepancyReport verify_range(std::uint64_t limit, Mode mode, OracleSelection oracles,
                               unsigned threads) {
  if (limit < 1 || limit > kMaxVerifyLimit)
    throw std::invalid_argument("verify_range: limit must be between 1 and 2000");
  DiscrepancyReport rep;
  rep.limit = limit;
  rep.mode = mode;
  rep.records.resize(limit);

  if (threads <= 1) {
    for (std::uint64_t n = 1; n <= limit; ++n) rep.records[n - 1] = verify_one(n, mode, oracles);
    return rep;
  }

  std::atomic<std::uint64_t> next{1};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t n = next.fetch_add(1);
        if (n > limit) return;
        rep.records[n - 1] = verify_one(n, mode, oracles);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(err_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return rep;
}

}  // namespace ordoclass::oracle

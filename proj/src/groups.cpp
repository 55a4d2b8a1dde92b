#include "ordoclass/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ordoclass/arith.hpp"

namespace ordoclass::groups {

using arith::is_prime;
using arith::mul_mod;
using arith::pow_mod;

// ---------------------------------------------------------------------------
// Actions

namespace {

// Exact multiplicative order check: x^order == 1 and x^(order/f) != 1 for
// every prime f | order.
void verify_unit_order(std::uint64_t u, std::uint64_t modulus, std::uint64_t order) {
  if (order == 0 || pow_mod(u, order, modulus) != 1)
    throw std::invalid_argument("UnitMultiplier: stated order is not an exponent");
  for (const auto& [f, e] : arith::factor(order)) {
    (void)e;
    if (pow_mod(u, order / f, modulus) == 1)
      throw std::invalid_argument("UnitMultiplier: order is not exact");
  }
}

using Mat = std::array<std::uint64_t, 4>;

Mat mat_mul(const Mat& a, const Mat& b, std::uint64_t p) {
  auto dot = [p](std::uint64_t x1, std::uint64_t y1, std::uint64_t x2, std::uint64_t y2) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x1) * y1 + static_cast<unsigned __int128>(x2) * y2) % p);
  };
  return {dot(a[0], b[0], a[1], b[2]), dot(a[0], b[1], a[1], b[3]),
          dot(a[2], b[0], a[3], b[2]), dot(a[2], b[1], a[3], b[3])};
}

Mat mat_pow(Mat m, std::uint64_t e, std::uint64_t p) {
  Mat r = {1, 0, 0, 1};
  while (e > 0) {
    if (e & 1) r = mat_mul(r, m, p);
    m = mat_mul(m, m, p);
    e >>= 1;
  }
  return r;
}

bool mat_is_identity(const Mat& m) { return m[0] == 1 && m[1] == 0 && m[2] == 0 && m[3] == 1; }

}  // namespace

UnitMultiplier::UnitMultiplier(std::uint64_t unit, std::uint64_t modulus, std::uint64_t order)
    : unit_(unit), modulus_(modulus), order_(order) {
  if (modulus < 2 || unit == 0 || unit >= modulus)
    throw std::invalid_argument("UnitMultiplier: unit out of range");
  if (std::gcd(unit, modulus) != 1)
    throw std::invalid_argument("UnitMultiplier: not a unit");
  verify_unit_order(unit, modulus, order);
}

Matrix2::Matrix2(std::array<std::uint64_t, 4> entries, std::uint64_t p, std::uint64_t order)
    : entries_(entries), p_(p), order_(order) {
  if (!is_prime(p)) throw std::invalid_argument("Matrix2: p must be prime");
  for (auto v : entries_)
    if (v >= p) throw std::invalid_argument("Matrix2: entry out of range");
  const std::uint64_t det =
      (mul_mod(entries_[0], entries_[3], p) + p - mul_mod(entries_[1], entries_[2], p)) % p;
  if (det == 0) throw std::invalid_argument("Matrix2: singular matrix");
  if (order == 0 || !mat_is_identity(mat_pow(entries_, order, p)))
    throw std::invalid_argument("Matrix2: stated order is not an exponent");
  for (const auto& [f, e] : arith::factor(order)) {
    (void)e;
    if (mat_is_identity(mat_pow(entries_, order / f, p)))
      throw std::invalid_argument("Matrix2: order is not exact");
  }
}

// ---------------------------------------------------------------------------
// GroupExpr

GroupExpr GroupExpr::cyclic(std::uint64_t order) {
  if (order == 0) throw std::invalid_argument("GroupExpr: cyclic order must be positive");
  GroupExpr e;
  e.kind_ = Kind::Cyclic;
  e.cyclic_order_ = order;
  return e;
}

GroupExpr GroupExpr::direct_product(std::vector<GroupExpr> factors) {
  if (factors.size() < 2)
    throw std::invalid_argument("GroupExpr: direct product needs at least two factors");
  GroupExpr e;
  e.kind_ = Kind::DirectProduct;
  e.factors_ = std::move(factors);
  (void)e.order();  // overflow check
  return e;
}

GroupExpr GroupExpr::semidirect(GroupExpr kernel, std::uint64_t acting_prime, ActionSpec action) {
  if (!is_prime(acting_prime))
    throw std::invalid_argument("GroupExpr: acting group order must be prime");
  std::uint64_t kp = 0;
  std::uint32_t ka = 0;
  const bool cyclic_pp = kernel.is_cyclic_prime_power(&kp, &ka);
  std::uint64_t ep = 0;
  std::uint32_t ee = 0;
  const bool elementary = kernel.is_elementary(&ep, &ee);
  if (!cyclic_pp && !elementary)
    throw std::invalid_argument("GroupExpr: semidirect kernel must be C_{p^a} or (C_p)^e");
  if (kernel.order() % acting_prime == 0)
    throw std::invalid_argument("GroupExpr: acting prime divides kernel order");

  if (const auto* u = std::get_if<UnitMultiplier>(&action)) {
    if (!cyclic_pp || u->modulus() != kernel.order())
      throw std::invalid_argument("GroupExpr: unit action needs a matching cyclic kernel");
    if (u->order() != acting_prime)
      throw std::invalid_argument("GroupExpr: action order must equal the acting prime");
  } else if (const auto* mx = std::get_if<Matrix2>(&action)) {
    if (!elementary || ee != 2 || mx->p() != ep)
      throw std::invalid_argument("GroupExpr: matrix action needs a matching (C_p)^2 kernel");
    if (mx->order() != acting_prime)
      throw std::invalid_argument("GroupExpr: action order must equal the acting prime");
  }

  GroupExpr e;
  e.kind_ = Kind::Semidirect;
  e.kernel_ = std::make_shared<const GroupExpr>(std::move(kernel));
  e.acting_prime_ = acting_prime;
  e.action_ = std::move(action);
  (void)e.order();  // overflow check
  return e;
}

std::uint64_t GroupExpr::order() const {
  switch (kind_) {
    case Kind::Cyclic:
      return cyclic_order_;
    case Kind::DirectProduct: {
      unsigned __int128 m = 1;
      for (const auto& f : factors_) {
        m *= f.order();
        if (m > arith::kMaxInput) throw std::overflow_error("GroupExpr: order overflows");
      }
      return static_cast<std::uint64_t>(m);
    }
    case Kind::Semidirect: {
      unsigned __int128 m = static_cast<unsigned __int128>(kernel_->order()) * acting_prime_;
      if (m > arith::kMaxInput) throw std::overflow_error("GroupExpr: order overflows");
      return static_cast<std::uint64_t>(m);
    }
  }
  throw std::logic_error("GroupExpr: bad kind");
}

std::uint64_t GroupExpr::cyclic_order() const {
  if (kind_ != Kind::Cyclic) throw std::logic_error("GroupExpr: not cyclic");
  return cyclic_order_;
}

std::span<const GroupExpr> GroupExpr::factors() const {
  if (kind_ != Kind::DirectProduct) throw std::logic_error("GroupExpr: not a direct product");
  return factors_;
}

const GroupExpr& GroupExpr::kernel() const {
  if (kind_ != Kind::Semidirect) throw std::logic_error("GroupExpr: not a semidirect product");
  return *kernel_;
}

std::uint64_t GroupExpr::acting_prime() const {
  if (kind_ != Kind::Semidirect) throw std::logic_error("GroupExpr: not a semidirect product");
  return acting_prime_;
}

const ActionSpec& GroupExpr::action() const {
  if (kind_ != Kind::Semidirect) throw std::logic_error("GroupExpr: not a semidirect product");
  return *action_;
}

bool GroupExpr::is_elementary(std::uint64_t* p, std::uint32_t* e) const {
  if (kind_ == Kind::Cyclic && is_prime(cyclic_order_)) {
    if (p) *p = cyclic_order_;
    if (e) *e = 1;
    return true;
  }
  if (kind_ != Kind::DirectProduct) return false;
  std::uint64_t common = 0;
  for (const auto& f : factors_) {
    if (f.kind() != Kind::Cyclic) return false;
    if (common == 0) common = f.cyclic_order_;
    if (f.cyclic_order_ != common) return false;
  }
  if (!is_prime(common)) return false;
  if (p) *p = common;
  if (e) *e = static_cast<std::uint32_t>(factors_.size());
  return true;
}

bool GroupExpr::is_cyclic_prime_power(std::uint64_t* p, std::uint32_t* a) const {
  if (kind_ != Kind::Cyclic || cyclic_order_ < 2) return false;
  const auto f = arith::factor(cyclic_order_);
  if (f.size() != 1) return false;
  if (p) *p = f.prime(0);
  if (a) *a = f.exponent(0);
  return true;
}

std::string to_string(const GroupExpr& expr) {
  auto cyc = [](std::uint64_t m) { return "C_" + std::to_string(m); };
  auto render_kernel = [&](const GroupExpr& k) -> std::string {
    std::uint64_t p = 0;
    std::uint32_t e = 0;
    if (k.kind() == GroupExpr::Kind::Cyclic) return cyc(k.cyclic_order());
    if (k.is_elementary(&p, &e))
      return "(" + cyc(p) + ")^" + std::to_string(e);
    return "(" + to_string(k) + ")";
  };
  switch (expr.kind()) {
    case GroupExpr::Kind::Cyclic:
      return cyc(expr.cyclic_order());
    case GroupExpr::Kind::Semidirect:
      return render_kernel(expr.kernel()) + " ⋊ " + cyc(expr.acting_prime());
    case GroupExpr::Kind::DirectProduct: {
      const auto fs = expr.factors();
      std::string out;
      for (std::size_t i = 0; i < fs.size();) {
        if (!out.empty()) out += " × ";
        if (fs[i].kind() == GroupExpr::Kind::Cyclic) {
          std::size_t j = i;
          while (j < fs.size() && fs[j].kind() == GroupExpr::Kind::Cyclic &&
                 fs[j].cyclic_order() == fs[i].cyclic_order())
            ++j;
          if (j - i >= 2)
            out += "(" + cyc(fs[i].cyclic_order()) + ")^" + std::to_string(j - i);
          else
            out += cyc(fs[i].cyclic_order());
          i = j;
        } else {
          out += "(" + to_string(fs[i]) + ")";
          ++i;
        }
      }
      return out;
    }
  }
  throw std::logic_error("GroupExpr: bad kind");
}

// ---------------------------------------------------------------------------
// GroupTable

GroupTable::GroupTable(std::uint32_t order, std::vector<std::uint16_t> table)
    : order_(order), table_(std::move(table)) {
  if (order_ == 0 || order_ > kMaxTableOrder)
    throw std::length_error("GroupTable: order out of range");
  if (table_.size() != static_cast<std::size_t>(order_) * order_)
    throw std::invalid_argument("GroupTable: table size mismatch");

  for (std::uint32_t j = 0; j < order_; ++j)
    if (mul(0, j) != j || mul(j, 0) != j)
      throw std::invalid_argument("GroupTable: element 0 is not an identity");

  inverse_.assign(order_, 0);
  std::vector<char> seen(order_);
  for (std::uint32_t i = 0; i < order_; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t j = 0; j < order_; ++j) {
      const std::uint16_t v = mul(i, j);
      if (v >= order_ || seen[v]) throw std::invalid_argument("GroupTable: row is not a permutation");
      seen[v] = 1;
      if (v == 0) inverse_[i] = static_cast<std::uint16_t>(j);
    }
  }
  for (std::uint32_t j = 0; j < order_; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t i = 0; i < order_; ++i) {
      const std::uint16_t v = mul(i, j);
      if (seen[v]) throw std::invalid_argument("GroupTable: column is not a permutation");
      seen[v] = 1;
    }
  }
  for (std::uint32_t i = 0; i < order_; ++i)
    if (mul(inverse_[i], i) != 0)
      throw std::invalid_argument("GroupTable: inverses are one-sided");

  element_order_.assign(order_, 1);
  for (std::uint32_t e = 1; e < order_; ++e) {
    std::uint32_t ord = 1;
    std::uint16_t x = static_cast<std::uint16_t>(e);
    while (x != 0) {
      x = mul(x, e);
      ++ord;
      if (ord > order_) throw std::invalid_argument("GroupTable: unbounded element order");
    }
    if (order_ % ord != 0)
      throw std::invalid_argument("GroupTable: element order does not divide group order");
    element_order_[e] = ord;
  }
}

bool GroupTable::verify_associativity() const {
  for (std::uint32_t a = 0; a < order_; ++a)
    for (std::uint32_t b = 0; b < order_; ++b) {
      const std::uint16_t ab = mul(a, b);
      for (std::uint32_t c = 0; c < order_; ++c)
        if (mul(ab, c) != mul(a, mul(b, c))) return false;
    }
  return true;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>>& GroupTable::order_profile() const {
  if (!profile_) {
    std::map<std::uint32_t, std::uint32_t> hist;
    for (auto o : element_order_) ++hist[o];
    profile_.emplace(hist.begin(), hist.end());
  }
  return *profile_;
}

bool GroupTable::abelian() const {
  if (!abelian_) {
    bool ab = true;
    for (std::uint32_t i = 1; i < order_ && ab; ++i)
      for (std::uint32_t j = i + 1; j < order_; ++j)
        if (mul(i, j) != mul(j, i)) {
          ab = false;
          break;
        }
    abelian_ = ab;
  }
  return *abelian_;
}

std::uint32_t GroupTable::center_size() const {
  if (!center_size_) {
    std::uint32_t count = 0;
    for (std::uint32_t z = 0; z < order_; ++z) {
      bool central = true;
      for (std::uint32_t g = 1; g < order_; ++g)
        if (mul(z, g) != mul(g, z)) {
          central = false;
          break;
        }
      if (central) ++count;
    }
    center_size_ = count;
  }
  return *center_size_;
}

std::uint32_t GroupTable::derived_size() const {
  if (!derived_size_) {
    std::vector<char> seen(order_, 0);
    std::vector<std::uint16_t> gens;
    for (std::uint32_t x = 0; x < order_; ++x) {
      const std::uint16_t xi = inverse_[x];
      for (std::uint32_t y = 0; y < order_; ++y) {
        const std::uint16_t c = mul(mul(mul(xi, inverse_[y]), x), static_cast<std::uint16_t>(y));
        if (!seen[c]) {
          seen[c] = 1;
          gens.push_back(c);
        }
      }
    }
    derived_size_ = static_cast<std::uint32_t>(generated_subgroup(*this, gens).size());
  }
  return *derived_size_;
}

std::span<const std::uint32_t> GroupTable::class_sizes() const {
  if (!class_sizes_) {
    std::vector<std::uint32_t> cs(order_, 0);
    std::vector<char> done(order_, 0);
    std::vector<std::uint16_t> orbit;
    for (std::uint32_t e = 0; e < order_; ++e) {
      if (done[e]) continue;
      orbit.clear();
      std::vector<char> in_orbit(order_, 0);
      for (std::uint32_t g = 0; g < order_; ++g) {
        const std::uint16_t c = mul(mul(g, e), inverse_[g]);
        if (!in_orbit[c]) {
          in_orbit[c] = 1;
          orbit.push_back(c);
        }
      }
      for (auto x : orbit) {
        cs[x] = static_cast<std::uint32_t>(orbit.size());
        done[x] = 1;
      }
    }
    class_sizes_ = std::move(cs);
  }
  return *class_sizes_;
}

// ---------------------------------------------------------------------------
// realize

namespace {

std::vector<std::uint16_t> build_table(const GroupExpr& e, std::uint32_t m);

std::vector<std::uint16_t> action_permutation(const GroupExpr& kernel, const ActionSpec& action,
                                              std::uint32_t mk) {
  std::vector<std::uint16_t> perm(mk);
  if (std::holds_alternative<TrivialAction>(action)) {
    std::iota(perm.begin(), perm.end(), 0);
  } else if (const auto* u = std::get_if<UnitMultiplier>(&action)) {
    for (std::uint32_t x = 0; x < mk; ++x)
      perm[x] = static_cast<std::uint16_t>(x * u->unit() % u->modulus());
  } else {
    const auto& mx = std::get<Matrix2>(action);
    const std::uint32_t p = static_cast<std::uint32_t>(mx.p());
    const auto& a = mx.entries();
    for (std::uint32_t x = 0; x < p; ++x)
      for (std::uint32_t y = 0; y < p; ++y) {
        const std::uint32_t nx = static_cast<std::uint32_t>((a[0] * x + a[1] * y) % p);
        const std::uint32_t ny = static_cast<std::uint32_t>((a[2] * x + a[3] * y) % p);
        perm[x * p + y] = static_cast<std::uint16_t>(nx * p + ny);
      }
  }
  (void)kernel;
  return perm;
}

std::vector<std::uint16_t> build_table(const GroupExpr& e, std::uint32_t m) {
  std::vector<std::uint16_t> t(static_cast<std::size_t>(m) * m);
  switch (e.kind()) {
    case GroupExpr::Kind::Cyclic: {
      for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = 0; j < m; ++j)
          t[static_cast<std::size_t>(i) * m + j] = static_cast<std::uint16_t>((i + j) % m);
      return t;
    }
    case GroupExpr::Kind::DirectProduct: {
      const auto fs = e.factors();
      const std::size_t s = fs.size();
      std::vector<std::uint32_t> sub_order(s);
      std::vector<std::vector<std::uint16_t>> sub(s);
      for (std::size_t i = 0; i < s; ++i) {
        sub_order[i] = static_cast<std::uint32_t>(fs[i].order());
        sub[i] = build_table(fs[i], sub_order[i]);
      }
      // Left-major mixed radix: the first factor is the most significant digit.
      std::vector<std::uint32_t> stride(s, 1);
      for (std::size_t i = s; i-- > 1;) stride[i - 1] = stride[i] * sub_order[i];
      std::vector<std::uint32_t> dx(s);
      for (std::uint32_t x = 0; x < m; ++x) {
        for (std::size_t i = 0; i < s; ++i) dx[i] = x / stride[i] % sub_order[i];
        for (std::uint32_t y = 0; y < m; ++y) {
          std::uint32_t z = 0;
          for (std::size_t i = 0; i < s; ++i) {
            const std::uint32_t dy = y / stride[i] % sub_order[i];
            z += sub[i][static_cast<std::size_t>(dx[i]) * sub_order[i] + dy] * stride[i];
          }
          t[static_cast<std::size_t>(x) * m + y] = static_cast<std::uint16_t>(z);
        }
      }
      return t;
    }
    case GroupExpr::Kind::Semidirect: {
      const auto& kernel = e.kernel();
      const std::uint32_t mk = static_cast<std::uint32_t>(kernel.order());
      const std::uint32_t q = static_cast<std::uint32_t>(e.acting_prime());
      const auto kt = build_table(kernel, mk);
      // alpha^t for t in [0, q)
      std::vector<std::vector<std::uint16_t>> alpha(q);
      alpha[0].resize(mk);
      std::iota(alpha[0].begin(), alpha[0].end(), 0);
      if (q > 1) {
        alpha[1] = action_permutation(kernel, e.action(), mk);
        for (std::uint32_t i = 2; i < q; ++i) {
          alpha[i].resize(mk);
          for (std::uint32_t x = 0; x < mk; ++x) alpha[i][x] = alpha[1][alpha[i - 1][x]];
        }
      }
      // (k1, t1) * (k2, t2) = (k1 * alpha^{t1}(k2), t1 + t2); index = k * q + t.
      for (std::uint32_t k1 = 0; k1 < mk; ++k1)
        for (std::uint32_t t1 = 0; t1 < q; ++t1) {
          const std::uint32_t row = k1 * q + t1;
          for (std::uint32_t k2 = 0; k2 < mk; ++k2) {
            const std::uint16_t twisted = alpha[t1][k2];
            const std::uint32_t kk = kt[static_cast<std::size_t>(k1) * mk + twisted];
            for (std::uint32_t t2 = 0; t2 < q; ++t2)
              t[static_cast<std::size_t>(row) * m + (k2 * q + t2)] =
                  static_cast<std::uint16_t>(kk * q + (t1 + t2) % q);
          }
        }
      return t;
    }
  }
  throw std::logic_error("GroupExpr: bad kind");
}

}  // namespace

GroupTable realize(const GroupExpr& expr) {
  const std::uint64_t m64 = expr.order();
  if (m64 > kMaxTableOrder) throw std::length_error("realize: order exceeds cap");
  const std::uint32_t m = static_cast<std::uint32_t>(m64);
  return GroupTable(m, build_table(expr, m));
}

// ---------------------------------------------------------------------------
// Action construction

namespace {

// First unit g (ascending) whose (phi/q)-th power is nontrivial; that power
// has exact order q because q is prime.
std::uint64_t order_q_representative(std::uint64_t q, std::uint64_t p, std::uint32_t a,
                                     std::uint64_t* modulus_out) {
  if (!is_prime(q)) throw std::invalid_argument("unit of order q: q must be prime");
  if (!is_prime(p)) throw std::invalid_argument("unit of order q: p must be prime");
  if (a != 1 && a != 2) throw std::invalid_argument("unit of order q: exponent must be 1 or 2");
  if (a == 2 && p > 3037000499ULL) throw std::overflow_error("unit of order q: p^2 overflows");
  const std::uint64_t modulus = a == 1 ? p : p * p;
  const std::uint64_t phi = (a == 1 ? 1 : p) * (p - 1);
  if (phi % q != 0)
    throw std::domain_error("no unit of order " + std::to_string(q) + " modulo " +
                            std::to_string(modulus));
  for (std::uint64_t g = 2;; ++g) {
    if (g % p == 0) continue;
    const std::uint64_t h = pow_mod(g, phi / q, modulus);
    if (h != 1) {
      *modulus_out = modulus;
      return h;
    }
  }
}

}  // namespace

UnitMultiplier find_unit_of_order(std::uint64_t q, std::uint64_t p, std::uint32_t a) {
  std::uint64_t modulus = 0;
  const std::uint64_t h = order_q_representative(q, p, a, &modulus);
  // All elements of order q are the nontrivial powers of h; take the smallest.
  std::uint64_t best = h, cur = h;
  for (std::uint64_t t = 2; t < q; ++t) {
    cur = mul_mod(cur, h, modulus);
    best = std::min(best, cur);
  }
  return UnitMultiplier(best, modulus, q);
}

UnitMultiplier any_unit_of_order(std::uint64_t q, std::uint64_t p, std::uint32_t a) {
  std::uint64_t modulus = 0;
  const std::uint64_t h = order_q_representative(q, p, a, &modulus);
  return UnitMultiplier(h, modulus, q);
}

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& [f, e] : arith::factor(n)) {
    (void)e;
    out.push_back(f);
  }
  return out;
}

// Exact order of M given an exponent bound E (M^E == I) and E's prime divisors.
std::uint64_t mat_order_from_exponent(const Mat& m, std::uint64_t p, std::uint64_t exponent,
                                      std::span<const std::uint64_t> exponent_primes) {
  std::uint64_t ord = exponent;
  for (std::uint64_t f : exponent_primes)
    while (ord % f == 0 && mat_is_identity(mat_pow(m, ord / f, p))) ord /= f;
  return ord;
}

}  // namespace

Matrix2 find_matrix_of_order(std::uint64_t q, std::uint64_t p) {
  if (!is_prime(q) || !is_prime(p) || q == p)
    throw std::invalid_argument("find_matrix_of_order: need distinct primes");
  if (p > 3037000499ULL) throw std::overflow_error("find_matrix_of_order: p^2 overflows");
  const std::uint64_t e1 = p * p - 1;
  if (e1 % q != 0)
    throw std::invalid_argument("find_matrix_of_order: q does not divide p^2-1");

  if ((p - 1) % q == 0) {
    const auto u = find_unit_of_order(q, p, 1);
    return Matrix2({u.unit(), 0, 0, 1}, p, q);
  }

  // Semisimple matrices have order dividing p^2-1; the rest divide p(p-1).
  const auto e1_primes = prime_divisors(e1);
  const std::uint64_t e2 = p * (p - 1);
  const auto e2_primes = prime_divisors(e2);
  for (std::uint64_t c0 = 1; c0 < p; ++c0)
    for (std::uint64_t c1 = 0; c1 < p; ++c1) {
      const Mat m = {0, c0, 1, c1};  // companion of x^2 - c1*x - c0
      std::uint64_t ord;
      if (mat_is_identity(mat_pow(m, e1, p)))
        ord = mat_order_from_exponent(m, p, e1, e1_primes);
      else
        ord = mat_order_from_exponent(m, p, e2, e2_primes);
      if (ord % q == 0) return Matrix2(mat_pow(m, ord / q, p), p, q);
    }
  throw std::logic_error("find_matrix_of_order: scan exhausted");  // unreachable: q | p^2-1
}

// ---------------------------------------------------------------------------
// Structure predicates

bool is_abelian(const GroupTable& g) { return g.abelian(); }

std::vector<std::uint16_t> generated_subgroup(const GroupTable& g,
                                              std::span<const std::uint16_t> gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::uint16_t> members{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::uint16_t gen : gens) {
      const std::uint16_t w = g.mul(members[i], gen);
      if (!seen[w]) {
        seen[w] = 1;
        members.push_back(w);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

bool is_nilpotent(const GroupTable& g) {
  const std::uint32_t m = g.order();
  std::vector<std::uint16_t> gamma(m);
  std::iota(gamma.begin(), gamma.end(), 0);
  while (gamma.size() > 1) {
    std::vector<char> seen(m, 0);
    std::vector<std::uint16_t> gens;
    for (std::uint32_t x = 0; x < m; ++x) {
      const std::uint16_t xi = g.inverse(x);
      for (const std::uint16_t y : gamma) {
        const std::uint16_t c = g.mul(g.mul(g.mul(xi, g.inverse(y)), x), y);
        if (!seen[c]) {
          seen[c] = 1;
          gens.push_back(c);
        }
      }
    }
    auto next = generated_subgroup(g, gens);
    if (next.size() == gamma.size()) return false;  // series stabilized above 1
    gamma = std::move(next);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

std::vector<std::uint16_t> greedy_generators(const GroupTable& g) {
  const std::uint32_t m = g.order();
  std::vector<std::uint16_t> gens;
  std::vector<char> in_span(m, 0);
  in_span[0] = 1;
  std::size_t span_size = 1;
  while (span_size < m) {
    if (gens.size() == 3)
      throw std::runtime_error("isomorphism search: generating set exceeds 3 elements");
    std::uint32_t best = m, best_ord = 0;
    for (std::uint32_t e = 1; e < m; ++e)
      if (!in_span[e] && g.element_order(e) > best_ord) {
        best_ord = g.element_order(e);
        best = e;
      }
    gens.push_back(static_cast<std::uint16_t>(best));
    const auto span = generated_subgroup(g, gens);
    std::fill(in_span.begin(), in_span.end(), 0);
    for (auto e : span) in_span[e] = 1;
    span_size = span.size();
  }
  return gens;
}

// Backtracking over images of a generating set. A candidate tuple defines a
// map on the generated subgroup via BFS tree edges; checking
// phi(x * g_i) == phi(x) * h_i for every closed x and every chosen generator
// proves multiplicativity, and injectivity plus |G| = |H| gives bijectivity.
class IsoEngine {
 public:
  IsoEngine(const GroupTable& g, const GroupTable& h) : g_(g), h_(h) {
    gens_ = greedy_generators(g);
    levels_.resize(gens_.size());
    for (std::size_t t = 0; t < gens_.size(); ++t) close_level(t);
    phi_.assign(g_.order(), 0);
    used_epoch_.assign(h_.order(), 0);
    images_.assign(gens_.size(), 0);
    const auto h_classes = h_.class_sizes();
    for (std::uint32_t e = 0; e < h_.order(); ++e)
      buckets_[{h_.element_order(e), h_classes[e]}].push_back(static_cast<std::uint16_t>(e));
  }

  bool exists() {
    count_ = 0;
    stop_after_first_ = true;
    search(0);
    return count_ > 0;
  }

  std::uint64_t count_all() {
    count_ = 0;
    stop_after_first_ = false;
    search(0);
    return count_;
  }

 private:
  struct Level {
    std::vector<std::uint16_t> elems;   // BFS order, elems[0] == 0
    std::vector<std::uint32_t> parent;  // position in elems
    std::vector<std::uint32_t> via;     // generator index
  };

  void close_level(std::size_t t) {
    Level& lv = levels_[t];
    std::vector<std::int32_t> pos(g_.order(), -1);
    lv.elems = {0};
    lv.parent = {0};
    lv.via = {0};
    pos[0] = 0;
    for (std::size_t i = 0; i < lv.elems.size(); ++i)
      for (std::size_t gi = 0; gi <= t; ++gi) {
        const std::uint16_t w = g_.mul(lv.elems[i], gens_[gi]);
        if (pos[w] < 0) {
          pos[w] = static_cast<std::int32_t>(lv.elems.size());
          lv.elems.push_back(w);
          lv.parent.push_back(static_cast<std::uint32_t>(i));
          lv.via.push_back(static_cast<std::uint32_t>(gi));
        }
      }
  }

  bool try_level(std::size_t t) {
    const Level& lv = levels_[t];
    ++epoch_;
    phi_[0] = 0;
    used_epoch_[0] = epoch_;
    for (std::size_t i = 1; i < lv.elems.size(); ++i) {
      const std::uint16_t y = h_.mul(phi_[lv.elems[lv.parent[i]]], images_[lv.via[i]]);
      if (used_epoch_[y] == epoch_) return false;  // not injective
      used_epoch_[y] = epoch_;
      phi_[lv.elems[i]] = y;
    }
    for (const std::uint16_t x : lv.elems)
      for (std::size_t gi = 0; gi <= t; ++gi)
        if (phi_[g_.mul(x, gens_[gi])] != h_.mul(phi_[x], images_[gi])) return false;
    return true;
  }

  bool search(std::size_t t) {
    const std::uint16_t gen = gens_[t];
    const auto it = buckets_.find({g_.element_order(gen), g_.class_sizes()[gen]});
    if (it == buckets_.end()) return false;
    for (const std::uint16_t cand : it->second) {
      images_[t] = cand;
      if (!try_level(t)) continue;
      if (t + 1 == gens_.size()) {
        ++count_;
        if (stop_after_first_) return true;
      } else if (search(t + 1) && stop_after_first_) {
        return true;
      }
    }
    return false;
  }

  const GroupTable& g_;
  const GroupTable& h_;
  std::vector<std::uint16_t> gens_;
  std::vector<Level> levels_;
  std::vector<std::uint16_t> images_;
  std::vector<std::uint16_t> phi_;
  std::vector<std::uint64_t> used_epoch_;
  std::uint64_t epoch_ = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint16_t>> buckets_;
  std::uint64_t count_ = 0;
  bool stop_after_first_ = true;
};

std::vector<std::pair<std::uint32_t, std::uint32_t>> class_fingerprint(const GroupTable& g) {
  const auto cs = g.class_sizes();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> fp(g.order());
  for (std::uint32_t e = 0; e < g.order(); ++e) fp[e] = {g.element_order(e), cs[e]};
  std::sort(fp.begin(), fp.end());
  return fp;
}

}  // namespace

bool are_isomorphic(const GroupTable& g, const GroupTable& h) {
  if (g.order() > kMaxIsomorphismOrder || h.order() > kMaxIsomorphismOrder)
    throw std::length_error("are_isomorphic: order exceeds cap");
  if (g.order() != h.order()) return false;
  if (g.order() == 1) return true;
  if (g.order_profile() != h.order_profile()) return false;
  if (g.abelian() != h.abelian()) return false;
  if (g.abelian()) return true;  // abelian type is determined by the order profile
  if (g.center_size() != h.center_size()) return false;
  if (g.derived_size() != h.derived_size()) return false;
  if (class_fingerprint(g) != class_fingerprint(h)) return false;
  return IsoEngine(g, h).exists();
}

std::uint64_t automorphism_count(const GroupTable& g, std::uint32_t cap) {
  if (g.order() > cap) throw std::length_error("automorphism_count: order exceeds cap");
  if (g.order() == 1) return 1;
  return IsoEngine(g, g).count_all();
}

void dump_table(const GroupTable& g, std::ostream& os) {
  os << g.order() << '\n';
  for (std::uint32_t i = 0; i < g.order(); ++i) {
    for (std::uint32_t j = 0; j < g.order(); ++j) {
      if (j) os << ' ';
      os << g.mul(i, j);
    }
    os << '\n';
  }
}

}  // namespace ordoclass::groups

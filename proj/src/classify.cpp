#include "ordoclass/classify.hpp"

#include <stdexcept>

namespace ordoclass::classify {

using arith::Factorization;

bool has_nilpotent_factorization(const Factorization& f) {
  const std::size_t k = f.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      if (arith::has_unit_congruence(f.prime(i), f.exponent(i), f.prime(j))) return false;
    }
  return true;
}

bool is_nilpotent_number(const Factorization& f) { return has_nilpotent_factorization(f); }

bool is_abelian_number(const Factorization& f) {
  return f.cubefree() && has_nilpotent_factorization(f);
}

bool is_cyclic_number(const Factorization& f) {
  return f.squarefree() && has_nilpotent_factorization(f);
}

bool is_cyclic_number_gcd(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("is_cyclic_number_gcd: n must be positive");
  const auto f = arith::factor(n);
  return arith::gcd(n, arith::euler_phi(f)) == 1;
}

Scenario check_sit1(const Factorization& f) {
  const std::size_t k = f.size();
  if (k < 2 || !f.squarefree()) return {};
  Scenario found;
  std::size_t count = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      if ((f.prime(j) - 1) % f.prime(i) == 0) {
        ++count;
        found = {ScenarioTag::Sit1, std::pair{i, j}};
      }
    }
  return count == 1 ? found : Scenario{};
}

namespace {

// Index of the single exponent-2 prime when all other exponents are 1 and
// k >= 2; nullopt otherwise.
std::optional<std::size_t> sole_square_index(const Factorization& f) {
  if (f.size() < 2) return std::nullopt;
  std::optional<std::size_t> j;
  for (std::size_t l = 0; l < f.size(); ++l) {
    if (f.exponent(l) == 2) {
      if (j) return std::nullopt;
      j = l;
    } else if (f.exponent(l) != 1) {
      return std::nullopt;
    }
  }
  return j;
}

// The universal clause shared by sit2 and sit2': no ordered pair (a, b)
// other than (i, j) may satisfy p_a | p_b - 1.
bool no_other_divisibility(const Factorization& f, std::size_t i, std::size_t j) {
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b < f.size(); ++b) {
      if (a == b || (a == i && b == j)) continue;
      if ((f.prime(b) - 1) % f.prime(a) == 0) return false;
    }
  return true;
}

template <typename Pred>
Scenario square_scenario(const Factorization& f, ScenarioTag tag, Pred i_clause) {
  const auto j = sole_square_index(f);
  if (!j) return {};
  std::optional<std::size_t> i;
  std::size_t count = 0;
  for (std::size_t l = 0; l < f.size(); ++l) {
    if (l == *j) continue;
    if (i_clause(f.prime(l), f.prime(*j))) {
      ++count;
      i = l;
    }
  }
  if (count != 1) return {};
  if (!no_other_divisibility(f, *i, *j)) return {};
  return {tag, std::pair{*i, *j}};
}

}  // namespace

Scenario check_sit2(const Factorization& f) {
  return square_scenario(f, ScenarioTag::Sit2, [](std::uint64_t pi, std::uint64_t pj) {
    return (pj - 1) % pi == 0 && (pj + 1) % pi != 0;
  });
}

Scenario check_sit2_prime(const Factorization& f, Mode mode) {
  if (mode == Mode::Literal)
    return square_scenario(f, ScenarioTag::Sit2Prime, [](std::uint64_t pi, std::uint64_t pj) {
      return (pj + 1) % pi == 0;
    });
  return square_scenario(f, ScenarioTag::Sit2Prime, [](std::uint64_t pi, std::uint64_t pj) {
    return (pj + 1) % pi == 0 && (pj - 1) % pi != 0;
  });
}

bool is_almost_abelian(const Factorization& f, Mode mode) {
  return check_sit1(f) || check_sit2_prime(f, mode);
}

bool is_almost_nilpotent(const Factorization& f, Mode mode) {
  return is_almost_abelian(f, mode);
}

bool is_almost_cyclic_paper(const Factorization& f) {
  return check_sit1(f) || check_sit2(f);
}

namespace {

// For very large acting primes the smallest-unit walk is O(q); fall back to a
// deterministic representative instead.
constexpr std::uint64_t kSmallestUnitCap = 1 << 20;

groups::UnitMultiplier unit_action(std::uint64_t q, std::uint64_t p) {
  return q <= kSmallestUnitCap ? groups::find_unit_of_order(q, p, 1)
                               : groups::any_unit_of_order(q, p, 1);
}

}  // namespace

groups::GroupExpr witness_description(const Factorization& f, const Scenario& scenario) {
  using groups::GroupExpr;
  if (scenario.tag != ScenarioTag::Sit1 && scenario.tag != ScenarioTag::Sit2Prime)
    throw std::invalid_argument("witness_description: scenario must be sit1 or sit2'");
  const auto [i, j] = *scenario.pair;
  if (i >= f.size() || j >= f.size() || i == j)
    throw std::invalid_argument("witness_description: bad scenario pair");
  const std::uint64_t pi = f.prime(i);
  const std::uint64_t pj = f.prime(j);

  GroupExpr base = GroupExpr::cyclic(1);
  std::uint64_t cofactor = 0;
  if (scenario.tag == ScenarioTag::Sit1) {
    if (f.exponent(j) != 1 || f.n() % (pi * pj) != 0)
      throw std::invalid_argument("witness_description: scenario does not match factorization");
    base = GroupExpr::semidirect(GroupExpr::cyclic(pj), pi, unit_action(pi, pj));
    cofactor = f.n() / pi / pj;
  } else {
    if (f.exponent(j) != 2)
      throw std::invalid_argument("witness_description: scenario does not match factorization");
    base = GroupExpr::semidirect(
        GroupExpr::direct_product({GroupExpr::cyclic(pj), GroupExpr::cyclic(pj)}), pi,
        groups::find_matrix_of_order(pi, pj));
    cofactor = f.n() / pi / pj / pj;
  }
  if (cofactor == 1) return base;
  std::vector<GroupExpr> parts;
  parts.push_back(std::move(base));
  parts.push_back(GroupExpr::cyclic(cofactor));
  return GroupExpr::direct_product(std::move(parts));
}

ClassificationReport classify_number(const Factorization& f, Mode mode) {
  ClassificationReport r;
  r.factorization = f;
  r.mode = mode;
  const bool nf = has_nilpotent_factorization(f);
  r.nilpotent_number = nf;
  r.abelian_number = nf && f.cubefree();
  r.cyclic_number = nf && f.squarefree();

  const Scenario s1 = check_sit1(f);
  const Scenario s2 = check_sit2(f);
  const Scenario s2p = check_sit2_prime(f, mode);
  // The three scenarios are mutually exclusive: sit1 needs a squarefree n,
  // and a sit2 pair would violate the sit2' universal clause (and vice versa).
  r.scenario = s1 ? s1 : (s2 ? s2 : s2p);
  r.almost_cyclic_paper = s1 || s2;
  r.almost_abelian = s1 || s2p;
  r.almost_nilpotent = r.almost_abelian;
  if (r.almost_abelian) r.witness = witness_description(f, s1 ? s1 : s2p);
  return r;
}

std::string_view to_string(Mode mode) {
  return mode == Mode::Literal ? "literal" : "corrected";
}

std::string_view to_string(ScenarioTag tag) {
  switch (tag) {
    case ScenarioTag::None: return "none";
    case ScenarioTag::Sit1: return "sit1";
    case ScenarioTag::Sit2: return "sit2";
    case ScenarioTag::Sit2Prime: return "sit2'";
  }
  return "none";
}

std::optional<Mode> mode_from_name(std::string_view name) {
  if (name == "literal") return Mode::Literal;
  if (name == "corrected") return Mode::Corrected;
  return std::nullopt;
}

}  // namespace ordoclass::classify

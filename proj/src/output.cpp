#include "ordoclass/output.hpp"

#include <sstream>

namespace ordoclass::output {

std::string factorization_string(const arith::Factorization& f) {
  if (f.size() == 0) return "1";
  std::string out;
  for (const auto& [p, e] : f.factors()) {
    if (!out.empty()) out += " · ";
    out += std::to_string(p);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

ordered_json classification_record(const classify::ClassificationReport& r) {
  ordered_json j;
  j["n"] = r.n();
  ordered_json factors = ordered_json::array();
  for (const auto& [p, e] : r.factorization.factors())
    factors.push_back(ordered_json::array({p, e}));
  j["factorization"] = std::move(factors);
  j["cyclic"] = r.cyclic_number;
  j["abelian"] = r.abelian_number;
  j["nilpotent"] = r.nilpotent_number;
  j["almost_cyclic_paper"] = r.almost_cyclic_paper;
  j["almost_abelian"] = r.almost_abelian;
  j["almost_nilpotent"] = r.almost_nilpotent;
  if (r.scenario) {
    ordered_json s;
    s["tag"] = classify::to_string(r.scenario.tag);
    s["pi"] = r.factorization.prime(r.scenario.pair->first);
    s["pj"] = r.factorization.prime(r.scenario.pair->second);
    j["scenario"] = std::move(s);
  } else {
    j["scenario"] = nullptr;
  }
  if (r.witness)
    j["witness"] = groups::to_string(*r.witness);
  else
    j["witness"] = nullptr;
  j["mode"] = classify::to_string(r.mode);
  return j;
}

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string classification_text(const classify::ClassificationReport& r) {
  std::ostringstream os;
  os << "n = " << r.n() << " = " << factorization_string(r.factorization) << "\n";
  os << "cyclic: " << yes_no(r.cyclic_number) << "\n";
  os << "abelian: " << yes_no(r.abelian_number) << "\n";
  os << "nilpotent: " << yes_no(r.nilpotent_number) << "\n";
  os << "almost cyclic (sufficient condition): " << yes_no(r.almost_cyclic_paper) << "\n";
  os << "almost abelian: " << yes_no(r.almost_abelian) << "\n";
  os << "almost nilpotent: " << yes_no(r.almost_nilpotent) << "\n";
  if (r.scenario) {
    os << "scenario: " << classify::to_string(r.scenario.tag) << " with (p_i, p_j) = ("
       << r.factorization.prime(r.scenario.pair->first) << ", "
       << r.factorization.prime(r.scenario.pair->second) << ")\n";
  }
  if (r.witness) os << "witness: " << groups::to_string(*r.witness) << "\n";
  os << "mode: " << classify::to_string(r.mode) << "\n";
  return os.str();
}

ordered_json discrepancy_record(const oracle::DiscrepancyRecord& rec) {
  ordered_json j;
  j["n"] = rec.n;
  j["shape"] = rec.shape;
  ordered_json pred;
  pred["almost_abelian_literal"] = rec.almost_abelian_literal;
  pred["almost_abelian_corrected"] = rec.almost_abelian_corrected;
  pred["almost_cyclic_paper"] = rec.almost_cyclic_paper;
  j["predicate"] = std::move(pred);
  if (rec.oracle) {
    ordered_json oc;
    oc["total"] = rec.oracle->total;
    oc["nonabelian"] = rec.oracle->nonabelian;
    oc["noncyclic"] = rec.oracle->noncyclic;
    j["oracle"] = std::move(oc);
  } else {
    j["oracle"] = nullptr;
  }
  if (rec.agree)
    j["agree"] = *rec.agree;
  else
    j["agree"] = nullptr;
  return j;
}

ordered_json discrepancy_report_json(const oracle::DiscrepancyReport& rep) {
  ordered_json arr = ordered_json::array();
  for (const auto& rec : rep.records) arr.push_back(discrepancy_record(rec));
  return arr;
}

std::string range_stats_text(const sieve::RangeStats& st) {
  std::ostringstream os;
  const std::uint64_t size = st.size();
  os << "range [" << st.lo << ", " << st.hi << "]\n";
  os << "cyclic: " << sieve::density_string(st.cyclic, size) << "\n";
  os << "abelian: " << sieve::density_string(st.abelian, size) << "\n";
  os << "nilpotent: " << sieve::density_string(st.nilpotent, size) << "\n";
  os << "almost cyclic (sufficient): " << sieve::density_string(st.almost_cyclic_paper, size) << "\n";
  os << "almost abelian (literal): " << sieve::density_string(st.almost_abelian_literal, size)
     << "\n";
  os << "almost abelian (corrected): " << sieve::density_string(st.almost_abelian_corrected, size)
     << "\n";
  return os.str();
}

}  // namespace ordoclass::output

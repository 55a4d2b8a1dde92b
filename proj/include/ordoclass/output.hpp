#pragma once

#include <string>

#include <json.hpp>

#include "ordoclass/classify.hpp"
#include "ordoclass/oracle.hpp"
#include "ordoclass/sieve.hpp"

namespace ordoclass::output {

using ordered_json = nlohmann::ordered_json;

/// "3 · 5^2"; "1" for n = 1.
std::string factorization_string(const arith::Factorization& f);

/// Machine record with stable key order:
/// {n, factorization, cyclic, abelian, nilpotent, almost_cyclic_paper,
///  almost_abelian, almost_nilpotent, scenario, witness, mode}
ordered_json classification_record(const classify::ClassificationReport& r);

std::string classification_text(const classify::ClassificationReport& r);

/// {n, shape, predicate, oracle, agree}; oracle and agree are null for
/// skipped shapes. "agree" is the almost-abelian comparison in the report's
/// mode; the almost-cyclic comparison is recomputable from predicate/oracle.
ordered_json discrepancy_record(const oracle::DiscrepancyRecord& rec);

/// The report as a JSON array of records.
ordered_json discrepancy_report_json(const oracle::DiscrepancyReport& rep);

std::string range_stats_text(const sieve::RangeStats& st);

}  // namespace ordoclass::output

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ordoclass/output.hpp"

namespace {

using ordoclass::classify::Mode;
using ordoclass::sieve::ClassFlag;
using ordoclass::sieve::RangeStats;
using ordoclass::sieve::SpfSieve;
namespace arith = ordoclass::arith;
namespace classify = ordoclass::classify;
namespace groups = ordoclass::groups;
namespace oracle = ordoclass::oracle;
namespace output = ordoclass::output;
namespace sieve = ordoclass::sieve;

unsigned worker_count() {
  if (const char* env = std::getenv("ORDOCLASS_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 256) return static_cast<unsigned>(v);
    std::cerr << "warning: ignoring invalid ORDOCLASS_THREADS value\n";
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

Mode parse_mode(const std::string& name) {
  const auto mode = classify::mode_from_name(name);
  if (!mode) throw std::invalid_argument("unknown mode: " + name);
  return *mode;
}

int run_classify(std::uint64_t n, const std::string& mode_name, const std::string& format) {
  const auto report = classify::classify_number(arith::factor(n), parse_mode(mode_name));
  if (format == "json")
    std::cout << output::classification_record(report).dump() << "\n";
  else
    std::cout << output::classification_text(report);
  return 0;
}

struct ChunkResult {
  std::vector<std::string> lines;
  RangeStats stats;
};

ChunkResult process_chunk(const SpfSieve& sv, std::uint64_t lo, std::uint64_t hi,
                          std::optional<ClassFlag> flag, Mode mode, const std::string& format) {
  ChunkResult out;
  out.stats = sieve::classify_range(
      sv, lo, hi, mode, [&](const classify::ClassificationReport& r) {
        if (flag && !sieve::flag_value(r, *flag)) return;
        if (format == "json")
          out.lines.push_back(output::classification_record(r).dump());
        else if (format == "csv")
          out.lines.push_back(std::to_string(r.n()) + "," + std::string(sieve::flag_name(*flag)));
        else
          out.lines.push_back(std::to_string(r.n()));
      });
  return out;
}

int run_range(std::uint64_t a, std::uint64_t b, const std::string& class_name,
              const std::string& mode_name, const std::string& format) {
  if (a < 1 || a > b) throw std::invalid_argument("range: need 1 <= a <= b");
  if (b > sieve::kMaxSieveLimit)
    throw sieve::sieve_limit_error("range: upper bound exceeds the 10^8 sieve limit");
  const Mode mode = parse_mode(mode_name);
  std::optional<ClassFlag> flag;
  if (!class_name.empty()) {
    flag = sieve::flag_from_name(class_name);
    if (!flag) throw std::invalid_argument("unknown class: " + class_name);
  }
  if (format == "csv" && !flag)
    throw std::invalid_argument("csv format requires --class");

  const SpfSieve sv(static_cast<std::uint32_t>(std::max<std::uint64_t>(b, 2)));
  const unsigned threads = worker_count();
  constexpr std::uint64_t kChunk = 1 << 16;
  const std::uint64_t nchunks = (b - a) / kChunk + 1;

  if (format == "csv") std::cout << "n,flag\n";
  bool first = true;
  if (format == "json") std::cout << "[";
  RangeStats total;
  for (std::uint64_t batch = 0; batch < nchunks; batch += threads) {
    const unsigned in_batch = static_cast<unsigned>(std::min<std::uint64_t>(threads, nchunks - batch));
    std::vector<ChunkResult> results(in_batch);
    std::vector<std::exception_ptr> errors(in_batch);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < in_batch; ++t) {
      const std::uint64_t lo = a + (batch + t) * kChunk;
      const std::uint64_t hi = std::min(b, lo + kChunk - 1);
      pool.emplace_back([&, t, lo, hi] {
        try {
          results[t] = process_chunk(sv, lo, hi, flag, mode, format);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (unsigned t = 0; t < in_batch; ++t) {
      if (errors[t]) std::rethrow_exception(errors[t]);
      for (const auto& line : results[t].lines) {
        if (format == "json") {
          std::cout << (first ? "\n" : ",\n") << line;
          first = false;
        } else {
          std::cout << line << "\n";
        }
      }
      total = RangeStats::merge(total, results[t].stats);
    }
  }
  if (format == "json") std::cout << (first ? "]" : "\n]") << "\n";
  std::cerr << output::range_stats_text(total);
  return 0;
}

int run_sequence(const std::string& flag_name, std::uint64_t count, const std::string& mode_name) {
  const auto flag = sieve::flag_from_name(flag_name);
  if (!flag) throw std::invalid_argument("unknown class: " + flag_name);
  if (count == 0 || count > 1'000'000)
    throw std::invalid_argument("sequence: count must be between 1 and 10^6");
  const Mode mode = parse_mode(mode_name);

  std::uint32_t limit = 1 << 20;
  for (;;) {
    try {
      const SpfSieve sv(limit);
      const auto seq = sieve::sequence(sv, *flag, count, mode);
      for (std::size_t i = 0; i < seq.size(); ++i)
        std::cout << (i ? " " : "") << seq[i];
      std::cout << "\n";
      return 0;
    } catch (const sieve::sieve_limit_error&) {
      if (limit == sieve::kMaxSieveLimit) throw;
      limit = static_cast<std::uint32_t>(
          std::min<std::uint64_t>(sieve::kMaxSieveLimit, std::uint64_t{limit} * 8));
    }
  }
}

int run_explain(std::uint64_t n, const std::string& mode_name, const std::string& dump_path) {
  const Mode mode = parse_mode(mode_name);
  const auto report = classify::classify_number(arith::factor(n), mode);
  if (!report.almost_abelian) {
    std::cerr << n << " is not almost abelian (mode " << classify::to_string(mode) << ")\n";
    return 1;
  }
  std::cout << "n = " << n << " = " << output::factorization_string(report.factorization) << "\n";
  std::cout << "scenario: " << classify::to_string(report.scenario.tag) << "\n";
  std::cout << "pair (p_i, p_j) = (" << report.factorization.prime(report.scenario.pair->first)
            << ", " << report.factorization.prime(report.scenario.pair->second) << ")\n";
  std::cout << "witness: " << groups::to_string(*report.witness) << "\n";
  if (n <= groups::kMaxTableOrder) {
    const auto table = groups::realize(*report.witness);
    std::cout << "realized order: " << table.order() << "\n";
    std::cout << "nonabelian: " << (table.abelian() ? "no" : "yes") << "\n";
    std::cout << "non-nilpotent: " << (groups::is_nilpotent(table) ? "no" : "yes") << "\n";
    if (!dump_path.empty()) {
      std::ofstream out(dump_path);
      if (!out) throw std::runtime_error("cannot open " + dump_path);
      groups::dump_table(table, out);
      std::cout << "table written to " << dump_path << "\n";
    }
  } else {
    std::cout << "witness order exceeds the realization cap (" << groups::kMaxTableOrder
              << "); properties not verified\n";
    if (!dump_path.empty()) throw std::invalid_argument("cannot dump: witness order exceeds cap");
  }
  return 0;
}

int run_verify(std::uint64_t max_n, const std::string& mode_name, const std::string& oracle_names,
               const std::string& format) {
  const Mode mode = parse_mode(mode_name);
  oracle::OracleSelection sel;
  if (!oracle_names.empty()) {
    sel = {false, false, false};
    std::size_t start = 0;
    while (start <= oracle_names.size()) {
      const std::size_t comma = oracle_names.find(',', start);
      const std::string name =
          oracle_names.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (name == "holder")
        sel.holder = true;
      else if (name == "squarefree")
        sel.squarefree = true;
      else if (name == "p2q")
        sel.p2q = true;
      else
        throw std::invalid_argument("unknown oracle: " + name);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }

  const auto rep = oracle::verify_range(max_n, mode, sel, worker_count());
  if (format == "json") {
    std::cout << output::discrepancy_report_json(rep).dump() << "\n";
  } else {
    std::uint64_t supported = 0;
    for (const auto& rec : rep.records)
      if (rec.oracle) ++supported;
    std::cout << "checked " << rep.records.size() << " orders (mode "
              << classify::to_string(mode) << "): " << supported << " supported, "
              << rep.records.size() - supported << " skipped\n";
    const auto aa = rep.almost_abelian_disagreements();
    std::cout << "almost-abelian disagreements:";
    for (auto n : aa) std::cout << " " << n;
    std::cout << "\n";
    const auto ac = rep.almost_cyclic_disagreements();
    std::cout << "almost-cyclic (sufficient condition) mismatches:";
    for (auto n : ac) std::cout << " " << n;
    std::cout << "\n";
    std::cout << "result: " << (aa.empty() ? "OK" : "DISAGREEMENTS FOUND") << "\n";
  }
  return rep.all_supported_agree() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordoclass: classify group orders from prime factorizations"};
  app.require_subcommand(1);

  std::uint64_t classify_n = 0;
  std::string classify_mode = "corrected", classify_format = "json";
  auto* cmd_classify = app.add_subcommand("classify", "classify a single integer");
  cmd_classify->add_option("n", classify_n, "integer to classify")->required();
  cmd_classify->add_option("--mode", classify_mode, "sit2' variant")
      ->check(CLI::IsMember({"literal", "corrected"}));
  cmd_classify->add_option("--format", classify_format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  std::uint64_t range_a = 0, range_b = 0;
  std::string range_class, range_mode = "corrected", range_format = "text";
  auto* cmd_range = app.add_subcommand("range", "classify every n in [a, b]");
  cmd_range->add_option("a", range_a, "lower bound")->required();
  cmd_range->add_option("b", range_b, "upper bound")->required();
  cmd_range->add_option("--class", range_class, "only stream members of this class");
  cmd_range->add_option("--mode", range_mode)->check(CLI::IsMember({"literal", "corrected"}));
  cmd_range->add_option("--format", range_format)
      ->check(CLI::IsMember({"text", "csv", "json"}));

  std::string seq_class, seq_mode = "corrected";
  std::uint64_t seq_count = 0;
  auto* cmd_sequence = app.add_subcommand("sequence", "first members of a class, ascending");
  cmd_sequence->add_option("class", seq_class, "class flag name")->required();
  cmd_sequence->add_option("count", seq_count, "how many members")->required();
  cmd_sequence->add_option("--mode", seq_mode)->check(CLI::IsMember({"literal", "corrected"}));

  std::uint64_t explain_n = 0;
  std::string explain_mode = "corrected", explain_dump;
  auto* cmd_explain = app.add_subcommand("explain", "show the witness for an almost-abelian n");
  cmd_explain->add_option("n", explain_n, "integer to explain")->required();
  cmd_explain->add_option("--mode", explain_mode)->check(CLI::IsMember({"literal", "corrected"}));
  cmd_explain->add_option("--dump-table", explain_dump, "write the realized witness table here");

  std::uint64_t verify_max = 0;
  std::string verify_mode = "corrected", verify_oracles, verify_format = "text";
  auto* cmd_verify = app.add_subcommand("verify", "compare predicates against exact counts");
  cmd_verify->add_option("--max", verify_max, "verify all n <= max (max <= 2000)")->required();
  cmd_verify->add_option("--mode", verify_mode)->check(CLI::IsMember({"literal", "corrected"}));
  cmd_verify->add_option("--oracles", verify_oracles,
                         "comma list from {holder,squarefree,p2q}; default all");
  cmd_verify->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_classify->parsed())
      return run_classify(classify_n, classify_mode, classify_format);
    if (cmd_range->parsed())
      return run_range(range_a, range_b, range_class, range_mode, range_format);
    if (cmd_sequence->parsed()) return run_sequence(seq_class, seq_count, seq_mode);
    if (cmd_explain->parsed()) return run_explain(explain_n, explain_mode, explain_dump);
    if (cmd_verify->parsed())
      return run_verify(verify_max, verify_mode, verify_oracles, verify_format);
  } catch (const sieve::sieve_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

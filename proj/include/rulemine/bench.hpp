#pragma once

// Side-by-side comparison of the mining algorithms over identical inputs:
// rule counts per category, metric averages and wall time.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rulemine/apriori.hpp"
#include "rulemine/format.hpp"
#include "rulemine/rules.hpp"

namespace rulemine {

enum class Algorithm { apriori, fpgrowth, oracle };

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm a);

/// Mines `db` with `algorithm` at `cfg`. The oracle ignores execution and
/// length settings other than filtering by max_itemset_len.
std::vector<FrequentItemset> mine(Algorithm algorithm, const TransactionDb& db, const MinerConfig& cfg);

/// Wall seconds of `thunk` on the steady clock, rounded to milliseconds.
double time_run(const std::function<void()>& thunk);

struct ComparisonRow {
  std::string algorithm;
  std::optional<std::string> error;  // set when the run failed
  std::size_t rules = 0;
  std::size_t equity_rules = 0;
  std::size_t minority_rules = 0;
  std::optional<double> avg_support;  // absent when no rules
  std::optional<double> avg_confidence;
  std::optional<double> avg_lift;
  double seconds = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;

  /// Equal-threshold runs of correct miners agree on every column but time.
  static constexpr std::string_view kParityNote =
      "note: all algorithms mine the same frequent itemsets at equal thresholds, so rule counts and "
      "averages must match; only time may differ. Published comparisons reporting very different rule "
      "counts per algorithm imply different effective thresholds.";

  void write(std::ostream& out, OutputFormat format) const;
};

struct CompareOptions {
  std::optional<std::size_t> max_itemset_len;
  std::size_t repeat = 1;  // time column is the minimum over repeats
  Execution execution = Execution::parallel;
};

/// Runs mine -> generate_rules -> categorize for each algorithm in request
/// order. Timing covers mining and rule generation. A failing algorithm
/// yields a row with `error` set and the remaining algorithms still run.
ComparisonReport compare(const TransactionDb& db, const ItemDictionary& dict, const Thresholds& t,
                         const CategoryConfig& cc, const std::vector<Algorithm>& algorithms,
                         const CompareOptions& options = {});

}  // namespace rulemine

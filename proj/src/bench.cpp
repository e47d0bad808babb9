#include "rulemine/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "json.hpp"

#include "rulemine/csv.hpp"
#include "rulemine/fpgrowth.hpp"
#include "rulemine/verify.hpp"

namespace rulemine {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "apriori") {
    return Algorithm::apriori;
  }
  if (name == "fpgrowth") {
    return Algorithm::fpgrowth;
  }
  if (name == "oracle") {
    return Algorithm::oracle;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected apriori, fpgrowth or oracle)");
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::apriori:
      return "apriori";
    case Algorithm::fpgrowth:
      return "fpgrowth";
    case Algorithm::oracle:
      return "oracle";
  }
  return "apriori";
}

std::vector<FrequentItemset> mine(Algorithm algorithm, const TransactionDb& db, const MinerConfig& cfg) {
  switch (algorithm) {
    case Algorithm::apriori:
      return mine_apriori(db, cfg);
    case Algorithm::fpgrowth:
      return mine_fpgrowth(db, cfg);
    case Algorithm::oracle: {
      validate(cfg);
      if (db.empty()) {
        throw DataError("empty transaction database");
      }
      auto out = brute_force_frequent(db, cfg.min_support);
      if (cfg.max_itemset_len) {
        std::erase_if(out, [&](const FrequentItemset& f) { return f.items.size() > *cfg.max_itemset_len; });
      }
      return out;
    }
  }
  return {};
}

double time_run(const std::function<void()>& thunk) {
  const auto start = std::chrono::steady_clock::now();
  thunk();
  const auto stop = std::chrono::steady_clock::now();
  const double seconds = std::chrono::duration<double>(stop - start).count();
  return std::round(seconds * 1000.0) / 1000.0;
}

ComparisonReport compare(const TransactionDb& db, const ItemDictionary& dict, const Thresholds& t,
                         const CategoryConfig& cc, const std::vector<Algorithm>& algorithms,
                         const CompareOptions& options) {
  if (algorithms.empty()) {
    throw ConfigError("at least one algorithm must be requested");
  }
  validate(t);
  validate(cc);
  ComparisonReport report;
  const MinerConfig cfg{t.min_support, options.max_itemset_len, options.execution};
  const std::size_t repeat = std::max<std::size_t>(1, options.repeat);

  for (Algorithm a : algorithms) {
    ComparisonRow row;
    row.algorithm = std::string(algorithm_name(a));
    try {
      std::vector<AssociationRule> rules;
      double best = 0.0;
      for (std::size_t r = 0; r < repeat; ++r) {
        const double s = time_run([&] {
          const auto frequent = mine(a, db, cfg);
          rules = generate_rules(frequent, db.n_transactions(), t);
        });
        best = r == 0 ? s : std::min(best, s);
      }
      rules = categorize(std::move(rules), dict, cc);
      row.seconds = best;
      row.rules = rules.size();
      double sum_s = 0.0;
      double sum_c = 0.0;
      double sum_l = 0.0;
      for (const auto& rule : rules) {
        row.equity_rules += rule.tags.has(Tag::equity);
        row.minority_rules += rule.tags.has(Tag::minority);
        sum_s += rule.support;
        sum_c += rule.confidence;
        sum_l += rule.lift;
      }
      if (!rules.empty()) {
        const auto n = static_cast<double>(rules.size());
        row.avg_support = sum_s / n;
        row.avg_confidence = sum_c / n;
        row.avg_lift = sum_l / n;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::string fixed_or_dash(const std::optional<double>& v, int decimals) {
  return v ? round_fixed(*v, decimals) : "-";
}

}  // namespace

void ComparisonReport::write(std::ostream& out, OutputFormat format) const {
  switch (format) {
    case OutputFormat::table: {
      std::vector<std::vector<std::string>> table{{"algorithm", "rules", "equity_rules", "minority_rules",
                                                   "avg_support", "avg_confidence", "avg_lift", "time_s"}};
      for (const auto& r : rows) {
        if (r.error) {
          table.push_back({r.algorithm, "error: " + *r.error});
          continue;
        }
        table.push_back({r.algorithm, std::to_string(r.rules), std::to_string(r.equity_rules),
                         std::to_string(r.minority_rules), fixed_or_dash(r.avg_support, 4),
                         fixed_or_dash(r.avg_confidence, 4), fixed_or_dash(r.avg_lift, 4), round_fixed(r.seconds, 3)});
      }
      write_aligned(out, table);
      out << '\n' << kParityNote << '\n';
      break;
    }
    case OutputFormat::csv: {
      out << "algorithm,rules,equity_rules,minority_rules,avg_support,avg_confidence,avg_lift,time_s,error\n";
      const auto num = [](const std::optional<double>& v) { return v ? nlohmann::json(*v).dump() : std::string(); };
      for (const auto& r : rows) {
        out << csv::join_row({r.algorithm, std::to_string(r.rules), std::to_string(r.equity_rules),
                              std::to_string(r.minority_rules), num(r.avg_support), num(r.avg_confidence),
                              num(r.avg_lift), round_fixed(r.seconds, 3), r.error.value_or("")})
            << '\n';
      }
      break;
    }
    case OutputFormat::json: {
      for (const auto& r : rows) {
        nlohmann::json j;
        j["algorithm"] = r.algorithm;
        if (r.error) {
          j["error"] = *r.error;
        }
        j["rules"] = r.rules;
        j["equity_rules"] = r.equity_rules;
        j["minority_rules"] = r.minority_rules;
        j["avg_support"] = r.avg_support ? nlohmann::json(*r.avg_support) : nlohmann::json(nullptr);
        j["avg_confidence"] = r.avg_confidence ? nlohmann::json(*r.avg_confidence) : nlohmann::json(nullptr);
        j["avg_lift"] = r.avg_lift ? nlohmann::json(*r.avg_lift) : nlohmann::json(nullptr);
        j["time_s"] = r.seconds;
        out << j.dump() << '\n';
      }
      break;
    }
  }
}

}  // namespace rulemine

#pragma once

// Association rules: metrics, threshold filtering, generation from a
// frequent-itemset lattice, and equity/minority categorization.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "rulemine/core.hpp"

namespace rulemine {

/// Rule filter. Defaults are the published parameterization.
struct Thresholds {
  double min_support = 0.03;
  double min_confidence = 0.60;
  double min_lift = 1.50;
  bool strict_lift = false;  // lift > min_lift instead of >=

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// Thresholds for the minority-focused pass (support lowered to 2%).
Thresholds minority_preset();

/// Throws ConfigError unless 0 < min_support <= 1, 0 < min_confidence <= 1
/// and min_lift >= 0. A zero lift bound is accepted to disable the filter.
void validate(const Thresholds& t);

enum class Tag : std::uint8_t { equity = 1, minority = 2 };

class TagSet {
public:
  constexpr TagSet() = default;
  constexpr void add(Tag t) noexcept { bits_ |= static_cast<std::uint8_t>(t); }
  [[nodiscard]] constexpr bool has(Tag t) const noexcept { return bits_ & static_cast<std::uint8_t>(t); }
  [[nodiscard]] constexpr bool contains(TagSet other) const noexcept { return (bits_ & other.bits_) == other.bits_; }
  [[nodiscard]] constexpr bool empty() const noexcept { return bits_ == 0; }
  [[nodiscard]] std::vector<std::string> names() const;
  friend constexpr bool operator==(TagSet, TagSet) = default;

private:
  std::uint8_t bits_ = 0;
};

/// Parses "equity" / "minority". Throws ConfigError otherwise.
Tag parse_tag(std::string_view name);

struct AssociationRule {
  Itemset antecedent;
  Itemset consequent;
  Count count = 0;             // transactions holding antecedent and consequent
  Count antecedent_count = 0;
  Count consequent_count = 0;
  double support = 0.0;
  double confidence = 0.0;
  double lift = 0.0;
  TagSet tags;

  friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

struct RuleMetrics {
  double support;
  double confidence;
  double lift;
};

/// Metrics from raw counts. lift is computed as (count * N) / (ante * cons)
/// so that lift(X->Y) and lift(Y->X) are bit-identical.
RuleMetrics metrics_from_counts(Count union_count, Count antecedent_count, Count consequent_count,
                                std::size_t n_transactions);

/// Metrics of X -> Y by scanning `db`. X and Y must be nonempty and
/// disjoint (ConfigError). Throws DataError("unsupported rule body") when
/// either side never occurs.
RuleMetrics rule_metrics(const Itemset& antecedent, const Itemset& consequent, const TransactionDb& db);

/// Whether a rule with these counts passes every threshold. Comparisons are
/// made on cross-multiplied counts.
bool passes(const Thresholds& t, Count union_count, Count antecedent_count, Count consequent_count,
            std::size_t n_transactions);

/// Builds a rule record (metrics filled, no tags).
AssociationRule make_rule(Itemset antecedent, Itemset consequent, Count union_count, Count antecedent_count,
                          Count consequent_count, std::size_t n_transactions);

/// Lift descending, confidence descending, antecedent then consequent
/// lexicographic.
void sort_rules(std::vector<AssociationRule>& rules);

/// Emits every split X => Z \ X of each frequent Z (|Z| >= 2) that passes
/// `t`. Counts come from `frequent`; throws DataError("incomplete itemset
/// lattice") when a needed subset is missing.
std::vector<AssociationRule> generate_rules(const std::vector<FrequentItemset>& frequent,
                                            std::size_t n_transactions, const Thresholds& t);

inline std::vector<AssociationRule> generate_rules(const std::vector<FrequentItemset>& frequent,
                                                   const TransactionDb& db, const Thresholds& t) {
  return generate_rules(frequent, db.n_transactions(), t);
}

struct CategoryConfig {
  std::set<std::string> equity_attributes{"q4", "q5", "q9", "q12", "q39", "q40", "q41"};
  std::string minority_attribute = "race";
  std::set<std::string> minority_excluded_values{"White"};
};

/// Throws ConfigError on an empty equity set or minority attribute.
void validate(const CategoryConfig& cc);

/// Tags one rule: equity when every item's attribute is an equity
/// attribute; minority when some item is the minority attribute with a
/// value outside the excluded set.
TagSet classify(const AssociationRule& rule, const ItemDictionary& dict, const CategoryConfig& cc);

/// Returns `rules` with tags added.
std::vector<AssociationRule> categorize(std::vector<AssociationRule> rules, const ItemDictionary& dict,
                                        const CategoryConfig& cc);

}  // namespace rulemine

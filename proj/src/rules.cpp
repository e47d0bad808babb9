#include "rulemine/rules.hpp"

#include <algorithm>
#include <cstdint>

namespace rulemine {

Thresholds minority_preset() {
  Thresholds t;
  t.min_support = 0.02;
  return t;
}

void validate(const Thresholds& t) {
  validate_min_support(t.min_support);
  if (!(t.min_confidence > 0.0 && t.min_confidence <= 1.0)) {
    throw ConfigError("min-confidence must be in (0,1]");
  }
  if (!(t.min_lift >= 0.0)) {
    throw ConfigError("min-lift must be >= 0");
  }
}

std::vector<std::string> TagSet::names() const {
  std::vector<std::string> out;
  if (has(Tag::equity)) {
    out.emplace_back("equity");
  }
  if (has(Tag::minority)) {
    out.emplace_back("minority");
  }
  return out;
}

Tag parse_tag(std::string_view name) {
  if (name == "equity") {
    return Tag::equity;
  }
  if (name == "minority") {
    return Tag::minority;
  }
  throw ConfigError("unknown tag '" + std::string(name) + "' (expected equity or minority)");
}

RuleMetrics metrics_from_counts(Count union_count, Count antecedent_count, Count consequent_count,
                                std::size_t n_transactions) {
  const auto n = static_cast<double>(n_transactions);
  const auto u = static_cast<double>(union_count);
  const auto a = static_cast<double>(antecedent_count);
  const auto c = static_cast<double>(consequent_count);
  return {u / n, u / a, (u * n) / (a * c)};
}

RuleMetrics rule_metrics(const Itemset& antecedent, const Itemset& consequent, const TransactionDb& db) {
  if (antecedent.empty() || consequent.empty()) {
    throw ConfigError("rule sides must be nonempty");
  }
  Itemset ante = antecedent;
  Itemset cons = consequent;
  std::sort(ante.begin(), ante.end());
  std::sort(cons.begin(), cons.end());
  Itemset both;
  std::set_union(ante.begin(), ante.end(), cons.begin(), cons.end(), std::back_inserter(both));
  if (both.size() != ante.size() + cons.size()) {
    throw ConfigError("rule sides must be disjoint");
  }
  Count ca = 0;
  Count cc = 0;
  Count cu = 0;
  for (const Itemset& t : db.transactions()) {
    const bool has_a = is_subset(ante, t);
    const bool has_c = is_subset(cons, t);
    ca += has_a;
    cc += has_c;
    cu += has_a && has_c;
  }
  if (ca == 0 || cc == 0) {
    throw DataError("unsupported rule body");
  }
  return metrics_from_counts(cu, ca, cc, db.n_transactions());
}

bool passes(const Thresholds& t, Count union_count, Count antecedent_count, Count consequent_count,
            std::size_t n_transactions) {
  if (antecedent_count == 0 || consequent_count == 0) {
    return false;
  }
  if (!meets_fraction(union_count, t.min_support, n_transactions) ||
      !meets_fraction(union_count, t.min_confidence, antecedent_count)) {
    return false;
  }
  // lift >= L  <=>  union * N >= L * ante * cons
  const long double lhs = static_cast<long double>(union_count) * static_cast<long double>(n_transactions);
  const long double rhs = static_cast<long double>(t.min_lift) * static_cast<long double>(antecedent_count) *
                          static_cast<long double>(consequent_count);
  constexpr long double tol = 1e-12L;
  return t.strict_lift ? lhs > rhs * (1.0L + tol) : lhs >= rhs * (1.0L - tol);
}

AssociationRule make_rule(Itemset antecedent, Itemset consequent, Count union_count, Count antecedent_count,
                          Count consequent_count, std::size_t n_transactions) {
  const auto m = metrics_from_counts(union_count, antecedent_count, consequent_count, n_transactions);
  AssociationRule r;
  r.antecedent = std::move(antecedent);
  r.consequent = std::move(consequent);
  r.count = union_count;
  r.antecedent_count = antecedent_count;
  r.consequent_count = consequent_count;
  r.support = m.support;
  r.confidence = m.confidence;
  r.lift = m.lift;
  return r;
}

void sort_rules(std::vector<AssociationRule>& rules) {
  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    if (a.lift != b.lift) {
      return a.lift > b.lift;
    }
    if (a.confidence != b.confidence) {
      return a.confidence > b.confidence;
    }
    if (a.antecedent != b.antecedent) {
      return a.antecedent < b.antecedent;
    }
    return a.consequent < b.consequent;
  });
}

namespace {

std::uint64_t item_key(ItemId id) {
  // splitmix64 finalizer: a fixed pseudo-random 64-bit key per item.
  std::uint64_t z = static_cast<std::uint64_t>(id) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Open-addressing itemset table keyed by the XOR of item keys. Hits are
// verified against the stored items, so a key collision can never return
// a wrong count.
class Lattice {
public:
  explicit Lattice(const std::vector<FrequentItemset>& frequent) : frequent_(frequent) {
    std::size_t cap = 16;
    while (cap < 2 * frequent.size()) {
      cap <<= 1;
    }
    mask_ = cap - 1;
    slots_.assign(cap, Slot{0, kEmpty});
    for (std::size_t i = 0; i < frequent.size(); ++i) {
      std::uint64_t key = 0;
      for (ItemId id : frequent[i].items) {
        key ^= item_key(id);
      }
      std::size_t at = slot_of(key);
      while (slots_[at].index != kEmpty) {
        at = (at + 1) & mask_;
      }
      slots_[at] = Slot{key, static_cast<std::uint32_t>(i)};
    }
  }

  // Count of the subset of `z` selected by `mask`, whose key is `key`.
  [[nodiscard]] Count count(std::uint64_t key, const Itemset& z, std::uint64_t mask) const {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    for (std::size_t at = slot_of(key); slots_[at].index != kEmpty; at = (at + 1) & mask_) {
      if (slots_[at].key != key) {
        continue;
      }
      const FrequentItemset& f = frequent_[slots_[at].index];
      if (f.items.size() != size) {
        continue;
      }
      std::size_t w = 0;
      bool same = true;
      for (std::size_t p = 0; p < z.size() && same; ++p) {
        if (mask >> p & 1U) {
          same = f.items[w++] == z[p];
        }
      }
      if (same) {
        return f.count;
      }
    }
    throw DataError("incomplete itemset lattice");
  }

private:
  static constexpr std::uint32_t kEmpty = UINT32_MAX;
  struct Slot {
    std::uint64_t key;
    std::uint32_t index;
  };

  [[nodiscard]] std::size_t slot_of(std::uint64_t key) const { return static_cast<std::size_t>(key) & mask_; }

  const std::vector<FrequentItemset>& frequent_;
  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
};

Itemset pick(const Itemset& z, std::uint64_t mask) {
  Itemset out;
  for (std::size_t p = 0; p < z.size(); ++p) {
    if (mask >> p & 1U) {
      out.push_back(z[p]);
    }
  }
  return out;
}

}  // namespace

std::vector<AssociationRule> generate_rules(const std::vector<FrequentItemset>& frequent,
                                            std::size_t n_transactions, const Thresholds& t) {
  validate(t);
  std::vector<AssociationRule> rules;
  if (n_transactions == 0) {
    return rules;
  }
  const Lattice lattice(frequent);
  const Count support_cutoff = min_count(t.min_support, n_transactions);

  std::vector<const FrequentItemset*> bodies;
  for (const auto& f : frequent) {
    if (f.items.size() >= 2 && f.count >= support_cutoff) {
      if (f.items.size() > 30) {
        throw DataError("itemset too long for rule enumeration");
      }
      bodies.push_back(&f);
    }
  }

  const auto n_bodies = static_cast<std::int64_t>(bodies.size());
  std::vector<std::vector<AssociationRule>> parts(bodies.size());
  bool incomplete = false;
#pragma omp parallel
  {
    std::vector<std::uint64_t> keys;
    std::vector<Count> counts;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t b = 0; b < n_bodies; ++b) {
      const FrequentItemset& z = *bodies[static_cast<std::size_t>(b)];
      auto& out = parts[static_cast<std::size_t>(b)];
      const std::size_t k = z.items.size();
      const std::uint64_t full = (std::uint64_t{1} << k) - 1;
      try {
        // Key and count of every proper nonempty subset of z.
        keys.assign(full + 1, 0);
        counts.assign(full + 1, 0);
        for (std::uint64_t mask = 1; mask < full; ++mask) {
          const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
          keys[mask] = keys[mask & (mask - 1)] ^ item_key(z.items[low]);
          counts[mask] = lattice.count(keys[mask], z.items, mask);
        }
        for (std::uint64_t mask = 1; mask < full; ++mask) {
          const std::uint64_t rest = full ^ mask;
          if (passes(t, z.count, counts[mask], counts[rest], n_transactions)) {
            out.push_back(make_rule(pick(z.items, mask), pick(z.items, rest), z.count, counts[mask], counts[rest],
                                    n_transactions));
          }
        }
      } catch (const DataError&) {
#pragma omp atomic write
        incomplete = true;
      }
    }
  }
  if (incomplete) {
    throw DataError("incomplete itemset lattice");
  }
  for (auto& part : parts) {
    rules.insert(rules.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  sort_rules(rules);
  return rules;
}

void validate(const CategoryConfig& cc) {
  if (cc.equity_attributes.empty()) {
    throw ConfigError("equity attribute set must be nonempty");
  }
  if (cc.minority_attribute.empty()) {
    throw ConfigError("minority attribute must be nonempty");
  }
}

TagSet classify(const AssociationRule& rule, const ItemDictionary& dict, const CategoryConfig& cc) {
  bool all_equity = true;
  bool minority = false;
  const auto visit = [&](ItemId id) {
    const std::string attr(dict.attribute(id));
    if (!cc.equity_attributes.contains(attr)) {
      all_equity = false;
    }
    if (attr == cc.minority_attribute && !cc.minority_excluded_values.contains(std::string(dict.value(id)))) {
      minority = true;
    }
  };
  for (ItemId id : rule.antecedent) {
    visit(id);
  }
  for (ItemId id : rule.consequent) {
    visit(id);
  }
  TagSet tags = rule.tags;
  if (all_equity && !(rule.antecedent.empty() && rule.consequent.empty())) {
    tags.add(Tag::equity);
  }
  if (minority) {
    tags.add(Tag::minority);
  }
  return tags;
}

std::vector<AssociationRule> categorize(std::vector<AssociationRule> rules, const ItemDictionary& dict,
                                        const CategoryConfig& cc) {
  validate(cc);
  for (auto& r : rules) {
    r.tags = classify(r, dict, cc);
  }
  return rules;
}

}  // namespace rulemine

#include "rulemine/random_db.hpp"

#include <random>

namespace rulemine {

TransactionDb random_db(const RandomDbSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution include(spec.density);
  std::vector<Itemset> txs(spec.n_transactions);
  for (auto& t : txs) {
    for (std::size_t i = 0; i < spec.n_items; ++i) {
      const bool in = include(rng);
      if (!in) {
        continue;
      }
      if (spec.group_size > 0 && !t.empty() && t.back() / spec.group_size == i / spec.group_size) {
        continue;
      }
      t.push_back(static_cast<ItemId>(i));
    }
  }
  return TransactionDb(std::move(txs), spec.n_items);
}

TransactionDb survey_db(const SurveyDbSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const std::size_t values = spec.values_per_attribute;
  std::uniform_int_distribution<std::size_t> pick_value(0, values - 1);
  std::uniform_int_distribution<std::size_t> pick_profile(0, spec.n_profiles - 1);
  std::bernoulli_distribution agree(spec.agreement);

  std::vector<std::vector<std::size_t>> preferred(spec.n_profiles, std::vector<std::size_t>(spec.n_attributes));
  for (auto& profile : preferred) {
    for (auto& v : profile) {
      v = pick_value(rng);
    }
  }

  std::vector<Itemset> txs(spec.n_transactions);
  for (auto& t : txs) {
    const auto& profile = preferred[pick_profile(rng)];
    t.reserve(spec.n_attributes);
    for (std::size_t a = 0; a < spec.n_attributes; ++a) {
      const std::size_t v = agree(rng) ? profile[a] : pick_value(rng);
      t.push_back(static_cast<ItemId>(a * values + v));
    }
  }
  return TransactionDb(std::move(txs), spec.n_attributes * values);
}

}  // namespace rulemine

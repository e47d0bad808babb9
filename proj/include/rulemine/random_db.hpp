#pragma once

// Seeded synthetic transaction databases for property tests and benchmarks.

#include <cstdint>

#include "rulemine/core.hpp"

namespace rulemine {

/// Each item is included independently with probability `density`, drawn
/// in item-id order from std::mt19937_64(seed) via
/// std::bernoulli_distribution. When `group_size` > 0, items are grouped
/// into consecutive attributes of that size and only the first included
/// item of each group is kept (one answer per attribute).
struct RandomDbSpec {
  std::size_t n_transactions = 100;
  std::size_t n_items = 10;
  double density = 0.3;
  std::uint64_t seed = 1;
  std::size_t group_size = 0;
};

TransactionDb random_db(const RandomDbSpec& spec);

/// Survey-shaped data: every respondent answers every attribute. A latent
/// profile (uniform over `n_profiles`) fixes a preferred value per
/// attribute; each answer is the preferred value with probability
/// `agreement`, otherwise uniform over the attribute's values.
/// Item id = attribute * values_per_attribute + value.
struct SurveyDbSpec {
  std::size_t n_transactions = 10000;
  std::size_t n_attributes = 10;
  std::size_t values_per_attribute = 5;
  std::size_t n_profiles = 4;
  double agreement = 0.6;
  std::uint64_t seed = 1;
};

TransactionDb survey_db(const SurveyDbSpec& spec);

}  // namespace rulemine

#pragma once

// Shared fixtures. Counts here are computed with std::includes over the raw
// transactions so expectations never come from the code under test.

#include <algorithm>
#include <string>
#include <vector>

#include "rulemine/core.hpp"

namespace fixtures {

using rulemine::Count;
using rulemine::Itemset;
using rulemine::TransactionDb;

// a=0, b=1, c=2.
inline TransactionDb d5() {
  return TransactionDb({{0, 1, 2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}, 3);
}

inline Count naive_count(const TransactionDb& db, const Itemset& items) {
  return static_cast<Count>(std::count_if(db.transactions().begin(), db.transactions().end(), [&](const Itemset& t) {
    return std::includes(t.begin(), t.end(), items.begin(), items.end());
  }));
}

inline std::string source_path(const std::string& rel) { return std::string(RULEMINE_SOURCE_DIR) + "/" + rel; }

}  // namespace fixtures

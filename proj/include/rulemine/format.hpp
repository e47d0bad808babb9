#pragma once

// Rendering of itemsets and rules as aligned tables, CSV and JSON lines.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rulemine/core.hpp"
#include "rulemine/rules.hpp"

namespace rulemine {

enum class OutputFormat { table, csv, json };

OutputFormat parse_format(std::string_view name);

/// Fixed-point text rounded half away from zero.
std::string round_fixed(double value, int decimals);

// Display precision for the percent columns.
inline std::string support_pct(double support) { return round_fixed(support * 100.0, 2); }
inline std::string confidence_pct(double confidence) { return round_fixed(confidence * 100.0, 1); }
inline std::string lift_display(double lift) { return round_fixed(lift, 2); }

/// Writes at most `top` rows (0 = all).
void write_itemsets(std::ostream& out, const std::vector<FrequentItemset>& itemsets, const ItemDictionary& dict,
                    OutputFormat format, std::size_t top = 0);

void write_rules(std::ostream& out, const std::vector<AssociationRule>& rules, const ItemDictionary& dict,
                 OutputFormat format, std::size_t top = 0);

/// Renders rows as a left-aligned, two-space separated text table.
void write_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows);

}  // namespace rulemine

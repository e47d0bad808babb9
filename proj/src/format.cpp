#include "rulemine/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"

#include "rulemine/csv.hpp"

namespace rulemine {

OutputFormat parse_format(std::string_view name) {
  if (name == "table") {
    return OutputFormat::table;
  }
  if (name == "csv") {
    return OutputFormat::csv;
  }
  if (name == "json") {
    return OutputFormat::json;
  }
  throw ConfigError("unknown format '" + std::string(name) + "' (expected table, csv or json)");
}

std::string round_fixed(double value, int decimals) {
  if (!std::isfinite(value)) {
    return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  }
  // The relative nudge keeps values like 0.0344 * 100 (3.4399999...) on
  // the decimal side they were written on before rounding half away.
  const long double scale = std::pow(10.0L, decimals);
  const long double scaled = static_cast<long double>(value) * scale * (1.0L + 1e-12L);
  const long double rounded = std::roundl(scaled);
  std::string digits = std::to_string(static_cast<unsigned long long>(std::fabs(rounded)));
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  return rounded < 0 ? "-" + digits : digits;
}

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      out += sep;
    }
    out += parts[i];
  }
  return out;
}

std::size_t limit(std::size_t size, std::size_t top) { return top == 0 ? size : std::min(size, top); }

}  // namespace

void write_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) {
        line.append(width[c] - row[c].size() + 2, ' ');
      }
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  }
}

void write_itemsets(std::ostream& out, const std::vector<FrequentItemset>& itemsets, const ItemDictionary& dict,
                    OutputFormat format, std::size_t top) {
  const std::size_t n = limit(itemsets.size(), top);
  switch (format) {
    case OutputFormat::table: {
      std::vector<std::vector<std::string>> rows{{"items", "count", "support_pct"}};
      for (std::size_t i = 0; i < n; ++i) {
        const auto& f = itemsets[i];
        rows.push_back({join(decode_itemset(dict, f.items), ", "), std::to_string(f.count), support_pct(f.support)});
      }
      write_aligned(out, rows);
      break;
    }
    case OutputFormat::csv:
      out << "items,count,support\n";
      for (std::size_t i = 0; i < n; ++i) {
        const auto& f = itemsets[i];
        nlohmann::json support = f.support;
        out << csv::join_row({join(decode_itemset(dict, f.items), ";"), std::to_string(f.count), support.dump()})
            << '\n';
      }
      break;
    case OutputFormat::json:
      for (std::size_t i = 0; i < n; ++i) {
        const auto& f = itemsets[i];
        nlohmann::json j;
        j["items"] = decode_itemset(dict, f.items);
        j["count"] = f.count;
        j["support"] = f.support;
        out << j.dump() << '\n';
      }
      break;
  }
}

void write_rules(std::ostream& out, const std::vector<AssociationRule>& rules, const ItemDictionary& dict,
                 OutputFormat format, std::size_t top) {
  const std::size_t n = limit(rules.size(), top);
  switch (format) {
    case OutputFormat::table: {
      std::vector<std::vector<std::string>> rows{
          {"antecedent", "consequent", "support_pct", "confidence_pct", "lift", "tags"}};
      for (std::size_t i = 0; i < n; ++i) {
        const auto& r = rules[i];
        rows.push_back({join(decode_itemset(dict, r.antecedent), ", "), join(decode_itemset(dict, r.consequent), ", "),
                        support_pct(r.support), confidence_pct(r.confidence), lift_display(r.lift),
                        join(r.tags.names(), ",")});
      }
      write_aligned(out, rows);
      break;
    }
    case OutputFormat::csv:
      out << "antecedent,consequent,support,confidence,lift,support_pct,confidence_pct,lift_display,tags\n";
      for (std::size_t i = 0; i < n; ++i) {
        const auto& r = rules[i];
        out << csv::join_row({join(decode_itemset(dict, r.antecedent), ";"),
                              join(decode_itemset(dict, r.consequent), ";"), nlohmann::json(r.support).dump(),
                              nlohmann::json(r.confidence).dump(), nlohmann::json(r.lift).dump(),
                              support_pct(r.support), confidence_pct(r.confidence), lift_display(r.lift),
                              join(r.tags.names(), ";")})
            << '\n';
      }
      break;
    case OutputFormat::json:
      for (std::size_t i = 0; i < n; ++i) {
        const auto& r = rules[i];
        nlohmann::json j;
        j["antecedent"] = decode_itemset(dict, r.antecedent);
        j["consequent"] = decode_itemset(dict, r.consequent);
        j["support"] = r.support;
        j["confidence"] = r.confidence;
        j["lift"] = r.lift;
        j["support_pct"] = support_pct(r.support);
        j["confidence_pct"] = confidence_pct(r.confidence);
        j["lift_display"] = lift_display(r.lift);
        j["tags"] = r.tags.names();
        out << j.dump() << '\n';
      }
      break;
  }
}

}  // namespace rulemine

#include "rulemine/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "rulemine/csv.hpp"

namespace rulemine {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view kind_name(ColumnKind k) {
  switch (k) {
    case ColumnKind::categorical:
      return "categorical";
    case ColumnKind::numeric_binned:
      return "numeric_binned";
    case ColumnKind::drop:
      return "drop";
  }
  return "categorical";
}

ColumnKind parse_kind(const std::string& s) {
  if (s == "categorical") {
    return ColumnKind::categorical;
  }
  if (s == "numeric_binned") {
    return ColumnKind::numeric_binned;
  }
  if (s == "drop") {
    return ColumnKind::drop;
  }
  throw ConfigError("unknown column kind '" + s + "'");
}

std::optional<double> parse_number(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) {
    return std::nullopt;
  }
  const char* begin = s.c_str() + first;
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) {
    return std::nullopt;
  }
  while (*end == ' ' || *end == '\t') {
    ++end;
  }
  if (*end != '\0' || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

}  // namespace

const ColumnSpec* SchemaSpec::find(std::string_view name) const {
  for (const auto& c : columns) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

std::vector<std::string> SchemaSpec::attribute_order() const {
  if (!keep.empty()) {
    return keep;
  }
  std::vector<std::string> out;
  for (const auto& c : columns) {
    if (c.kind != ColumnKind::drop) {
      out.push_back(c.name);
    }
  }
  return out;
}

std::set<std::string> default_missing_tokens() { return {"", "na", "nan"}; }

std::vector<Bin> default_age_bins() {
  return {{18, 29, "18-29"},
          {30, 44, "30-44"},
          {45, 64, "45-64"},
          {65, std::numeric_limits<double>::infinity(), "65+"}};
}

std::vector<std::string> default_feature_list(const std::string& location_column) {
  return {"race", "income", "age", "gender", "q55", location_column, "q12",
          "q5",   "q9",     "q39", "q40",    "q41", "newsint",       "q4"};
}

void validate(const SchemaSpec& schema) {
  std::set<std::string> names;
  for (const auto& c : schema.columns) {
    if (c.name.empty()) {
      throw ConfigError("column name must be nonempty");
    }
    if (c.name.find(kLabelSeparator) != std::string::npos) {
      throw ConfigError("column name '" + c.name + "' must not contain an underscore");
    }
    if (!names.insert(c.name).second) {
      throw ConfigError("duplicate column '" + c.name + "'");
    }
    if (c.kind == ColumnKind::numeric_binned) {
      if (c.bins.empty()) {
        throw ConfigError("column '" + c.name + "' is numeric_binned but has no bins");
      }
      std::set<std::string> labels;
      for (std::size_t i = 0; i < c.bins.size(); ++i) {
        const Bin& b = c.bins[i];
        if (!(b.lower <= b.upper)) {
          throw ConfigError("column '" + c.name + "': bin '" + b.label + "' has lower > upper");
        }
        if (i > 0 && !(c.bins[i - 1].upper < b.lower)) {
          throw ConfigError("column '" + c.name + "': bins must be ascending and non-overlapping");
        }
        if (b.label.empty() || !labels.insert(b.label).second) {
          throw ConfigError("column '" + c.name + "': bin labels must be unique and nonempty");
        }
      }
    }
  }
  for (const auto& k : schema.keep) {
    const ColumnSpec* c = schema.find(k);
    if (c == nullptr || c->kind == ColumnKind::drop) {
      throw ConfigError("keep column '" + k + "' is not a retained schema column");
    }
  }
  for (const auto& r : schema.consistency_rules) {
    if (r.conjuncts.size() < 2) {
      throw ConfigError("consistency rule '" + r.description + "' needs at least two conjuncts");
    }
  }
}

SchemaSpec parse_schema(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("schema is not valid JSON: ") + e.what());
  }
  SchemaSpec schema;
  try {
    std::set<std::string> defaults = default_missing_tokens();
    if (doc.contains("missing_tokens")) {
      defaults.clear();
      for (const auto& t : doc.at("missing_tokens")) {
        defaults.insert(lower(t.get<std::string>()));
      }
    }
    for (const auto& jc : doc.at("columns")) {
      ColumnSpec c;
      c.name = jc.at("name").get<std::string>();
      c.kind = parse_kind(jc.value("kind", std::string("categorical")));
      c.missing_tokens = defaults;
      if (jc.contains("missing_tokens")) {
        c.missing_tokens.clear();
        for (const auto& t : jc.at("missing_tokens")) {
          c.missing_tokens.insert(lower(t.get<std::string>()));
        }
      }
      if (jc.contains("bins")) {
        for (const auto& jb : jc.at("bins")) {
          Bin b;
          b.lower = jb.at("lower").get<double>();
          b.upper = jb.contains("upper") && !jb.at("upper").is_null() ? jb.at("upper").get<double>()
                                                                       : std::numeric_limits<double>::infinity();
          b.label = jb.at("label").get<std::string>();
          c.bins.push_back(std::move(b));
        }
      }
      schema.columns.push_back(std::move(c));
    }
    if (doc.contains("keep")) {
      schema.keep = doc.at("keep").get<std::vector<std::string>>();
    }
    if (doc.contains("consistency_rules")) {
      for (const auto& jr : doc.at("consistency_rules")) {
        ConsistencyRule r;
        r.description = jr.value("description", std::string());
        for (const auto& jc : jr.at("conjuncts")) {
          r.conjuncts.push_back({jc.at("column").get<std::string>(), jc.at("value").get<std::string>()});
        }
        schema.consistency_rules.push_back(std::move(r));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid schema: ") + e.what());
  }
  validate(schema);
  return schema;
}

SchemaSpec load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open schema file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_schema(text.str());
}

std::string to_json(const SchemaSpec& schema) {
  nlohmann::json doc;
  doc["columns"] = nlohmann::json::array();
  for (const auto& c : schema.columns) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["kind"] = kind_name(c.kind);
    jc["missing_tokens"] = c.missing_tokens;
    if (!c.bins.empty()) {
      jc["bins"] = nlohmann::json::array();
      for (const auto& b : c.bins) {
        nlohmann::json jb{{"lower", b.lower}, {"label", b.label}};
        if (std::isfinite(b.upper)) {
          jb["upper"] = b.upper;
        }
        jc["bins"].push_back(std::move(jb));
      }
    }
    doc["columns"].push_back(std::move(jc));
  }
  if (!schema.keep.empty()) {
    doc["keep"] = schema.keep;
  }
  if (!schema.consistency_rules.empty()) {
    doc["consistency_rules"] = nlohmann::json::array();
    for (const auto& r : schema.consistency_rules) {
      nlohmann::json jr{{"description", r.description}, {"conjuncts", nlohmann::json::array()}};
      for (const auto& k : r.conjuncts) {
        jr["conjuncts"].push_back({{"column", k.column}, {"value", k.value}});
      }
      doc["consistency_rules"].push_back(std::move(jr));
    }
  }
  return doc.dump(2);
}

LoadResult load_csv(std::istream& in, const SchemaSpec& schema) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) {
    throw DataError("CSV input has no header line");
  }
  if (!header->empty() && header->front().starts_with("\xEF\xBB\xBF")) {
    header->front().erase(0, 3);
  }

  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < header->size(); ++i) {
    position.emplace((*header)[i], i);
  }

  LoadResult result;
  for (const auto& h : *header) {
    if (schema.find(h) == nullptr) {
      ++result.ignored_columns;
    }
  }
  // Retained columns in header order.
  std::vector<std::pair<std::size_t, const ColumnSpec*>> wanted;
  for (const auto& c : schema.columns) {
    if (c.kind == ColumnKind::drop) {
      continue;
    }
    auto it = position.find(c.name);
    if (it == position.end()) {
      throw DataError("schema column '" + c.name + "' missing from CSV header");
    }
    wanted.emplace_back(it->second, &c);
  }
  std::sort(wanted.begin(), wanted.end());

  while (auto fields = reader.next()) {
    if (fields->size() == 1 && fields->front().empty() && header->size() > 1) {
      continue;  // blank line
    }
    if (fields->size() != header->size()) {
      throw DataError("malformed CSV at line " + std::to_string(reader.record_line()) + ": expected " +
                      std::to_string(header->size()) + " fields, found " + std::to_string(fields->size()));
    }
    RawRow row;
    row.reserve(wanted.size());
    for (const auto& [idx, col] : wanted) {
      row.push_back({col->name, std::move((*fields)[idx])});
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

LoadResult load_csv(const std::string& path, const SchemaSpec& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open input file '" + path + "'");
  }
  return load_csv(in, schema);
}

const std::string& bin_numeric(double value, const std::vector<Bin>& bins) {
  for (const Bin& b : bins) {
    if (value >= b.lower && value <= b.upper) {
      return b.label;
    }
  }
  throw OutOfRange();
}

std::string CleanReport::to_json() const {
  nlohmann::json j;
  j["rows_in"] = rows_in;
  j["rows_out"] = rows_out;
  j["blanked"] = blanked;
  j["out_of_range"] = out_of_range;
  j["dropped_per_rule"] = dropped_per_rule;
  return j.dump(2);
}

namespace {

bool is_missing(const Field& f, const SchemaSpec& schema) {
  const ColumnSpec* col = schema.find(f.attribute);
  return f.value.empty() || (col != nullptr && col->missing_tokens.contains(lower(f.value)));
}

bool matches(const ConsistencyRule& rule, const RawRow& row, const SchemaSpec& schema) {
  return std::all_of(rule.conjuncts.begin(), rule.conjuncts.end(), [&](const Conjunct& k) {
    return std::any_of(row.begin(), row.end(), [&](const Field& f) {
      if (f.attribute != k.column) {
        return false;
      }
      return k.value == kAnyAnswer ? !is_missing(f, schema) : f.value == k.value;
    });
  });
}

}  // namespace

CleanResult clean(const std::vector<RawRow>& rows, const SchemaSpec& schema,
                  const std::vector<ConsistencyRule>& consistency) {
  CleanResult result;
  CleanReport& report = result.report;
  report.rows_in = rows.size();
  report.dropped_per_rule.assign(consistency.size(), 0);

  for (const RawRow& row : rows) {
    bool dropped = false;
    for (std::size_t r = 0; r < consistency.size() && !dropped; ++r) {
      if (matches(consistency[r], row, schema)) {
        ++report.dropped_per_rule[r];
        dropped = true;
      }
    }
    if (dropped) {
      continue;
    }
    RawRow out;
    out.reserve(row.size());
    for (const Field& f : row) {
      const ColumnSpec* col = schema.find(f.attribute);
      if (is_missing(f, schema)) {
        ++report.blanked[f.attribute];
        continue;
      }
      if (col != nullptr && col->kind == ColumnKind::numeric_binned) {
        const bool already_binned = std::any_of(col->bins.begin(), col->bins.end(),
                                                [&](const Bin& b) { return b.label == f.value; });
        if (already_binned) {
          out.push_back(f);
          continue;
        }
        const auto number = parse_number(f.value);
        try {
          if (!number) {
            throw OutOfRange();
          }
          out.push_back({f.attribute, bin_numeric(*number, col->bins)});
        } catch (const OutOfRange&) {
          ++report.out_of_range[f.attribute];
        }
        continue;
      }
      out.push_back(f);
    }
    result.rows.push_back(std::move(out));
  }
  report.rows_out = result.rows.size();
  return result;
}

std::vector<RawRow> select_features(const std::vector<RawRow>& rows, const std::vector<std::string>& keep,
                                    const SchemaSpec& schema) {
  for (const auto& k : keep) {
    if (schema.find(k) == nullptr) {
      throw ConfigError("requested column '" + k + "' is not in the schema");
    }
  }
  const std::set<std::string_view> wanted(keep.begin(), keep.end());
  std::vector<RawRow> out;
  out.reserve(rows.size());
  for (const RawRow& row : rows) {
    RawRow r;
    for (const Field& f : row) {
      if (wanted.contains(f.attribute)) {
        r.push_back(f);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rulemine

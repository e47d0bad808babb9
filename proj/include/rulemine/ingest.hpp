#pragma once

// Survey CSV ingestion: schema-driven column selection, missing-value
// blanking, contradiction removal, numeric binning and feature selection.
//
// Schema documents are JSON:
//
//   {
//     "missing_tokens": ["", "NA", "NaN"],          // optional, case-insensitive
//     "columns": [
//       {"name": "q9", "kind": "categorical"},
//       {"name": "age", "kind": "numeric_binned",
//        "bins": [{"lower": 18, "upper": 29, "label": "18-29"},
//                 {"lower": 65, "label": "65+"}]},   // no upper = unbounded
//       {"name": "weight", "kind": "drop"}
//     ],
//     "keep": ["q9", "age"],                          // optional feature list
//     "consistency_rules": [
//       {"description": "mail and in-person",
//        "conjuncts": [{"column": "q4", "value": "..."}, {"column": "q12", "value": "*"}]}
//     ]                                               // "*" = any non-missing answer
//   }

#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rulemine/core.hpp"

namespace rulemine {

enum class ColumnKind { categorical, numeric_binned, drop };

struct Bin {
  double lower;  // inclusive
  double upper;  // inclusive; +infinity when open-ended
  std::string label;

  friend bool operator==(const Bin&, const Bin&) = default;
};

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::categorical;
  std::set<std::string> missing_tokens;  // stored lower-case
  std::vector<Bin> bins;

  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

/// Conjunct value matching any non-missing answer.
inline constexpr std::string_view kAnyAnswer = "*";

struct Conjunct {
  std::string column;
  std::string value;

  friend bool operator==(const Conjunct&, const Conjunct&) = default;
};

struct ConsistencyRule {
  std::string description;
  std::vector<Conjunct> conjuncts;

  friend bool operator==(const ConsistencyRule&, const ConsistencyRule&) = default;
};

struct SchemaSpec {
  std::vector<ColumnSpec> columns;
  std::vector<std::string> keep;  // empty = every non-dropped column
  std::vector<ConsistencyRule> consistency_rules;

  [[nodiscard]] const ColumnSpec* find(std::string_view name) const;
  /// `keep` when set, otherwise every non-dropped column in schema order.
  [[nodiscard]] std::vector<std::string> attribute_order() const;

  friend bool operator==(const SchemaSpec&, const SchemaSpec&) = default;
};

/// "", "NA", "NaN" (matched case-insensitively).
std::set<std::string> default_missing_tokens();

/// Ages 18-29, 30-44, 45-64, 65+.
std::vector<Bin> default_age_bins();

/// race, income, age, gender, q55, <location>, q12, q5, q9, q39, q40, q41,
/// newsint, q4. `location_column` names the dataset's voter-location field.
std::vector<std::string> default_feature_list(const std::string& location_column = "location");

/// Throws ConfigError on underscores in column names, overlapping or
/// unordered bins, duplicate labels, rules with fewer than two conjuncts
/// or keep entries missing from the schema.
void validate(const SchemaSpec& schema);

SchemaSpec parse_schema(std::string_view json_text);
SchemaSpec load_schema(const std::string& path);
/// Canonical JSON text of `schema`; parse_schema(to_json(s)) == s.
std::string to_json(const SchemaSpec& schema);

/// One raw survey response: non-dropped schema columns in header order.
using RawRow = Record;

struct LoadResult {
  std::vector<RawRow> rows;
  std::size_t ignored_columns = 0;  // header columns absent from the schema
};

/// Throws DataError for a missing header, a schema column absent from the
/// header, a malformed line or a row with the wrong field count.
LoadResult load_csv(std::istream& in, const SchemaSpec& schema);
LoadResult load_csv(const std::string& path, const SchemaSpec& schema);

class OutOfRange : public std::domain_error {
public:
  OutOfRange() : std::domain_error("out of binning range") {}
};

/// Label of the bin containing `value`; throws OutOfRange otherwise.
const std::string& bin_numeric(double value, const std::vector<Bin>& bins);

struct CleanReport {
  std::size_t rows_in = 0;
  std::size_t rows_out = 0;
  std::map<std::string, std::size_t> blanked;       // missing-token cells per column
  std::map<std::string, std::size_t> out_of_range;  // unbinnable numeric cells per column
  std::vector<std::size_t> dropped_per_rule;        // aligned with consistency rules

  [[nodiscard]] std::string to_json() const;
};

struct CleanResult {
  std::vector<RawRow> rows;
  CleanReport report;
};

/// Drops rows matching any consistency rule (evaluated on the values as
/// given), removes missing-token cells, and replaces numeric_binned values
/// with their bin label. Values that already equal a bin label are kept so
/// cleaning is idempotent; unbinnable values are removed and counted.
CleanResult clean(const std::vector<RawRow>& rows, const SchemaSpec& schema,
                  const std::vector<ConsistencyRule>& consistency);

/// Restricts rows to `keep`. Throws ConfigError for columns not in the schema.
std::vector<RawRow> select_features(const std::vector<RawRow>& rows, const std::vector<std::string>& keep,
                                    const SchemaSpec& schema);

}  // namespace rulemine

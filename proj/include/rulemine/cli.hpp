#pragma once

// Command-line front end: ingest -> encode -> mine -> rules -> categorize
// -> report. Exit codes: 0 success, 1 data error (or divergence for
// verify), 2 configuration error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rulemine/bench.hpp"
#include "rulemine/format.hpp"
#include "rulemine/ingest.hpp"
#include "rulemine/rules.hpp"

namespace rulemine::cli {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitConfig = 2;

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string schema;
  std::vector<Algorithm> algorithms{Algorithm::apriori};
  Thresholds thresholds;
  std::string categories;  // category config JSON path; empty = defaults
  std::optional<std::size_t> max_len;
  OutputFormat format = OutputFormat::table;
  std::string output;  // empty = stdout
  std::string report;  // CleanReport destination; empty = none
  std::size_t top = 0;  // 0 = all
  std::vector<Tag> tags;
  std::size_t repeat = 1;
  int threads = 0;
  bool minority_preset = false;
  std::size_t random_dbs = 0;  // verify: run the randomized suite instead of --input
  std::uint64_t seed = 1;
};

/// Parses argv into a RunConfig. Throws ConfigError on invalid values.
/// Returns nullopt after printing help to `out`.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

CategoryConfig parse_category_config(std::string_view json_text);

int cmd_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_mine(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_rules(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full entry point with error-to-exit-code mapping.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rulemine::cli

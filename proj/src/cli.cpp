#include "rulemine/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "rulemine/csv.hpp"
#include "rulemine/parallel.hpp"
#include "rulemine/verify.hpp"

namespace rulemine::cli {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) {
      out.push_back(part);
    }
  }
  return out;
}

struct Dataset {
  EncodedData encoded;
  CleanReport report;
};

Dataset load_dataset(const RunConfig& cfg, std::ostream& err) {
  if (cfg.schema.empty()) {
    throw ConfigError("--schema is required");
  }
  if (cfg.input.empty()) {
    throw ConfigError("--input is required");
  }
  const SchemaSpec schema = load_schema(cfg.schema);
  auto loaded = load_csv(cfg.input, schema);
  if (loaded.ignored_columns > 0) {
    err << "warning: " << loaded.ignored_columns << " CSV column(s) not in schema were ignored\n";
  }
  auto cleaned = clean(loaded.rows, schema, schema.consistency_rules);
  const auto order = schema.attribute_order();
  const auto selected = select_features(cleaned.rows, order, schema);
  Dataset ds{encode_rows(selected, order), std::move(cleaned.report)};

  if (!cfg.report.empty()) {
    std::ofstream rep(cfg.report);
    if (!rep) {
      throw DataError("cannot write report file '" + cfg.report + "'");
    }
    rep << ds.report.to_json() << '\n';
  }
  return ds;
}

CategoryConfig load_categories(const RunConfig& cfg) {
  if (cfg.categories.empty()) {
    return {};
  }
  std::ifstream in(cfg.categories);
  if (!in) {
    throw ConfigError("cannot open category config '" + cfg.categories + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_category_config(text.str());
}

// Runs `body` against the --output file or `out`.
template <typename Body>
void with_output(const RunConfig& cfg, std::ostream& out, Body&& body) {
  if (cfg.output.empty()) {
    body(out);
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) {
    throw DataError("cannot write output file '" + cfg.output + "'");
  }
  body(file);
}

MinerConfig miner_config(const RunConfig& cfg) { return {cfg.thresholds.min_support, cfg.max_len}; }

}  // namespace

CategoryConfig parse_category_config(std::string_view json_text) {
  CategoryConfig cc;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    if (doc.contains("equity_attributes")) {
      cc.equity_attributes = doc.at("equity_attributes").get<std::set<std::string>>();
    }
    if (doc.contains("minority_attribute")) {
      cc.minority_attribute = doc.at("minority_attribute").get<std::string>();
    }
    if (doc.contains("minority_excluded_values")) {
      cc.minority_excluded_values = doc.at("minority_excluded_values").get<std::set<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid category config: ") + e.what());
  }
  validate(cc);
  return cc;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Frequent-itemset and association-rule mining for categorical survey data", "rulemine"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string algorithm;
  std::string format = "table";
  std::string tags;
  std::optional<double> min_support;
  std::optional<std::size_t> max_len;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Survey CSV file");
    sub->add_option("--schema", cfg.schema, "Schema JSON file");
    sub->add_option("--report", cfg.report, "Write the cleaning report (JSON) to this path");
    sub->add_option("--output", cfg.output, "Write primary output here instead of stdout");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);
  };
  const auto add_mining = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--algorithm", algorithm, "apriori | fpgrowth | oracle (comma list for compare)");
    sub->add_option("--min-support", min_support, "Minimum support fraction in (0,1]");
    sub->add_option("--min-confidence", cfg.thresholds.min_confidence, "Minimum confidence");
    sub->add_option("--min-lift", cfg.thresholds.min_lift, "Minimum lift");
    sub->add_flag("--strict-lift", cfg.thresholds.strict_lift, "Require lift strictly above --min-lift");
    sub->add_flag("--minority-preset", cfg.minority_preset, "Minority-analysis preset (support 0.02)");
    sub->add_option("--max-len", max_len, "Maximum itemset length");
    sub->add_option("--format", format, "table | csv | json");
    sub->add_option("--top", cfg.top, "Show only the first k rows (0 = all)");
    sub->add_option("--categories", cfg.categories, "Category config JSON file");
  };

  auto* ingest = app.add_subcommand("ingest", "Load, clean and select features; write cleaned rows as CSV");
  add_common(ingest);
  auto* mine_cmd = app.add_subcommand("mine", "Write frequent itemsets");
  add_mining(mine_cmd);
  auto* rules_cmd = app.add_subcommand("rules", "Write categorized association rules");
  add_mining(rules_cmd);
  rules_cmd->add_option("--tags", tags, "Keep rules carrying all of these tags (equity,minority)");
  auto* compare_cmd = app.add_subcommand("compare", "Compare algorithms on identical inputs");
  add_mining(compare_cmd);
  compare_cmd->add_option("--repeat", cfg.repeat, "Runs per algorithm; time is the minimum")
      ->check(CLI::PositiveNumber);
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check apriori, fpgrowth and the brute-force oracle");
  add_mining(verify_cmd);
  verify_cmd->add_option("--random", cfg.random_dbs, "Run the randomized suite over this many databases");
  verify_cmd->add_option("--seed", cfg.seed, "Seed for --random");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  for (auto* sub : {ingest, mine_cmd, rules_cmd, compare_cmd, verify_cmd}) {
    if (sub->parsed()) {
      cfg.subcommand = sub->get_name();
    }
  }

  if (cfg.minority_preset) {
    if (min_support) {
      throw ConfigError("--minority-preset and --min-support are mutually exclusive");
    }
    cfg.thresholds.min_support = minority_preset().min_support;
  }
  if (min_support) {
    cfg.thresholds.min_support = *min_support;
  }
  validate(cfg.thresholds);
  if (max_len) {
    if (*max_len == 0) {
      throw ConfigError("max-len must be >= 1");
    }
    cfg.max_len = max_len;
  }
  cfg.format = parse_format(format);
  if (!algorithm.empty()) {
    cfg.algorithms.clear();
    for (const auto& name : split_list(algorithm)) {
      cfg.algorithms.push_back(parse_algorithm(name));
    }
    if (cfg.algorithms.empty()) {
      throw ConfigError("--algorithm must name at least one algorithm");
    }
  } else if (cfg.subcommand == "compare") {
    cfg.algorithms = {Algorithm::apriori, Algorithm::fpgrowth};
  }
  for (const auto& name : split_list(tags)) {
    cfg.tags.push_back(parse_tag(name));
  }
  return cfg;
}

int cmd_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.schema.empty() || cfg.input.empty()) {
    throw ConfigError("--input and --schema are required");
  }
  const SchemaSpec schema = load_schema(cfg.schema);
  auto loaded = load_csv(cfg.input, schema);
  if (loaded.ignored_columns > 0) {
    err << "warning: " << loaded.ignored_columns << " CSV column(s) not in schema were ignored\n";
  }
  const auto cleaned = clean(loaded.rows, schema, schema.consistency_rules);
  const auto order = schema.attribute_order();
  const auto selected = select_features(cleaned.rows, order, schema);
  const auto encoded = encode_rows(selected, order);  // validates exclusivity

  with_output(cfg, out, [&](std::ostream& o) {
    o << csv::join_row(order) << '\n';
    for (const auto& row : selected) {
      std::vector<std::string> cells(order.size());
      for (const auto& f : row) {
        const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), f.attribute) - order.begin());
        cells[pos] = f.value;
      }
      o << csv::join_row(cells) << '\n';
    }
  });
  if (!cfg.report.empty()) {
    std::ofstream rep(cfg.report);
    if (!rep) {
      throw DataError("cannot write report file '" + cfg.report + "'");
    }
    rep << cleaned.report.to_json() << '\n';
  }
  err << "rows: " << cleaned.report.rows_in << " read, " << cleaned.report.rows_out << " kept; items: "
      << encoded.dictionary.size() << '\n';
  return kExitOk;
}

int cmd_mine(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Dataset ds = load_dataset(cfg, err);
  const auto itemsets = mine(cfg.algorithms.front(), ds.encoded.db, miner_config(cfg));
  with_output(cfg, out, [&](std::ostream& o) { write_itemsets(o, itemsets, ds.encoded.dictionary, cfg.format, cfg.top); });
  return kExitOk;
}

int cmd_rules(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CategoryConfig cc = load_categories(cfg);
  const Dataset ds = load_dataset(cfg, err);
  const auto itemsets = mine(cfg.algorithms.front(), ds.encoded.db, miner_config(cfg));
  auto rules = categorize(generate_rules(itemsets, ds.encoded.db, cfg.thresholds), ds.encoded.dictionary, cc);
  if (!cfg.tags.empty()) {
    TagSet wanted;
    for (Tag t : cfg.tags) {
      wanted.add(t);
    }
    std::erase_if(rules, [&](const AssociationRule& r) { return !r.tags.contains(wanted); });
  }
  with_output(cfg, out, [&](std::ostream& o) { write_rules(o, rules, ds.encoded.dictionary, cfg.format, cfg.top); });
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CategoryConfig cc = load_categories(cfg);
  const Dataset ds = load_dataset(cfg, err);
  CompareOptions options;
  options.max_itemset_len = cfg.max_len;
  options.repeat = cfg.repeat;
  const auto report = compare(ds.encoded.db, ds.encoded.dictionary, cfg.thresholds, cc, cfg.algorithms, options);
  with_output(cfg, out, [&](std::ostream& o) { report.write(o, cfg.format); });
  for (const auto& row : report.rows) {
    if (row.error) {
      err << row.algorithm << ": " << *row.error << '\n';
    }
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const OracleLimits limits;
  if (cfg.random_dbs > 0) {
    std::size_t runs = 0;
    for (std::size_t i = 0; i < cfg.random_dbs; ++i) {
      const TransactionDb db = random_db(suite_db_spec(cfg.seed, i));
      for (double s : kSuiteSupports) {
        Thresholds t = cfg.thresholds;
        t.min_support = s;
        const auto report = check_equivalence(db, s, t, limits);
        ++runs;
        if (!report.equivalent) {
          with_output(cfg, out, [&](std::ostream& o) {
            o << "database: " << i << " (seed " << cfg.seed << ")\nmin_support: " << s << '\n' << report.to_text();
          });
          return kExitData;
        }
      }
    }
    with_output(cfg, out, [&](std::ostream& o) {
      o << "status: equivalent\ndatabases: " << cfg.random_dbs << "\nruns: " << runs << '\n';
    });
    return kExitOk;
  }

  const Dataset ds = load_dataset(cfg, err);
  if (!within(ds.encoded.db, limits)) {
    throw ConfigError("oracle limits exceeded: " + std::to_string(ds.encoded.db.n_items()) + " items, " +
                      std::to_string(ds.encoded.db.n_transactions()) + " transactions (max " +
                      std::to_string(limits.max_items) + " items, " + std::to_string(limits.max_transactions) +
                      " transactions)");
  }
  const auto report = check_equivalence(ds.encoded.db, cfg.thresholds.min_support, cfg.thresholds, limits,
                                        default_miners(), &ds.encoded.dictionary);
  with_output(cfg, out, [&](std::ostream& o) { o << report.to_text(); });
  return report.equivalent ? kExitOk : kExitData;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_args(argc, argv, out);
    if (!cfg) {
      return kExitOk;
    }
    set_thread_count(cfg->threads);
    if (cfg->subcommand == "ingest") {
      return cmd_ingest(*cfg, out, err);
    }
    if (cfg->subcommand == "mine") {
      return cmd_mine(*cfg, out, err);
    }
    if (cfg->subcommand == "rules") {
      return cmd_rules(*cfg, out, err);
    }
    if (cfg->subcommand == "compare") {
      return cmd_compare(*cfg, out, err);
    }
    if (cfg->subcommand == "verify") {
      return cmd_verify(*cfg, out, err);
    }
    throw ConfigError("unknown subcommand");
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace rulemine::cli

// Command-line front end: run universal-portfolio experiments on CSV or
// generated markets, compare a market against a time permutation of itself,
// and verify the exact rational identities.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "houp/houp.hpp"
#include "houp/oracle.hpp"
#include "houp/portfolio.hpp"

namespace {

using namespace houp;

struct RunConfig {
  std::string data;
  std::string generator;
  int steps = 50;
  std::vector<std::string> assets;
  int orders = 1;
  int samples = 10000;
  std::uint64_t seed = 0;
  int quad_nodes = 16;
  std::string out;
  std::string format = "csv";
};

std::string fmt17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

Market select_assets(const Market& market, const std::vector<std::string>& wanted) {
  if (wanted.empty()) return market;
  Market out;
  out.relatives.resize(market.periods(), static_cast<Index>(wanted.size()));
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    const auto it = std::find(market.labels.begin(), market.labels.end(), wanted[i]);
    if (it == market.labels.end())
      throw std::runtime_error("unknown asset label '" + wanted[i] + "'");
    out.labels.push_back(wanted[i]);
    out.relatives.col(static_cast<Index>(i)) =
        market.relatives.col(static_cast<Index>(it - market.labels.begin()));
  }
  validate(out);
  return out;
}

Market load_market(const RunConfig& config) {
  if (!config.data.empty() && !config.generator.empty())
    throw std::runtime_error("--data and --generator are mutually exclusive");
  if (!config.data.empty()) {
    CsvOptions options;
    options.select = config.assets;
    return load_csv(config.data, options);
  }
  if (config.generator == "toy") return select_assets(toy_market(config.steps), config.assets);
  if (config.generator == "counterexample")
    return select_assets(counterexample_market(), config.assets);
  if (config.generator.empty()) throw std::runtime_error("one of --data or --generator is required");
  throw std::runtime_error("unknown generator '" + config.generator +
                           "' (available: toy, counterexample)");
}

SamplerSpec base_spec(const RunConfig& config, Index assets) {
  SamplerSpec spec;
  spec.scheme = assets == 2 ? Scheme::GaussLegendre : Scheme::MonteCarlo;
  spec.nodes = config.quad_nodes;
  spec.samples = config.samples;
  spec.seed = config.seed;
  return spec;
}

struct Experiment {
  Market market;
  HoupResult houp;
  BestCrp best;
  WealthPath split;
};

Experiment run_experiment(Market market, const RunConfig& config) {
  Experiment exp{std::move(market), {}, {}, {}};
  exp.houp = compute_houp(exp.market, config.orders, base_spec(config, exp.market.assets()));
  exp.best = best_crp_hindsight(exp.market, exp.market.assets() == 2 ? 1024 : 64);
  exp.split = split_and_forget(exp.market);
  return exp;
}

std::vector<std::string> path_columns(const Experiment& exp) {
  std::vector<std::string> columns{"time"};
  columns.insert(columns.end(), exp.market.labels.begin(), exp.market.labels.end());
  for (int level = 1; level <= exp.houp.order; ++level)
    columns.push_back("UP" + std::to_string(level));
  return columns;
}

std::vector<std::vector<double>> path_rows(const Experiment& exp) {
  const Eigen::MatrixXd wealth = cumulative_wealth(exp.market);
  std::vector<std::vector<double>> rows;
  for (Index t = 0; t <= exp.market.periods(); ++t) {
    std::vector<double> row{static_cast<double>(t)};
    for (Index k = 0; k < exp.market.assets(); ++k) row.push_back(wealth(t, k));
    for (int level = 1; level <= exp.houp.order; ++level)
      row.push_back(exp.houp.values[static_cast<std::size_t>(level - 1)][t]);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct SummaryRow {
  std::string strategy;
  double final_value;
  double stderr_value;
};

std::vector<SummaryRow> summary_rows(const Experiment& exp) {
  std::vector<SummaryRow> rows;
  const Eigen::MatrixXd wealth = cumulative_wealth(exp.market);
  const Index horizon = exp.market.periods();
  for (Index k = 0; k < exp.market.assets(); ++k)
    rows.push_back({exp.market.labels[static_cast<std::size_t>(k)], wealth(horizon, k), 0.0});
  for (int level = 1; level <= exp.houp.order; ++level)
    rows.push_back({"UP" + std::to_string(level),
                    exp.houp.values[static_cast<std::size_t>(level - 1)][horizon],
                    exp.houp.final_stderr[static_cast<std::size_t>(level - 1)]});
  rows.push_back({"BCRP", exp.best.values[horizon], 0.0});
  rows.push_back({"SplitAndForget", exp.split[horizon], 0.0});
  return rows;
}

void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_table_json(const std::string& path, const std::vector<std::string>& columns,
                      const nlohmann::json& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const nlohmann::json doc = {{"columns", columns}, {"rows", rows}};
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_experiment(const Experiment& exp, const RunConfig& config, const std::string& prefix) {
  const auto columns = path_columns(exp);
  const auto rows = path_rows(exp);
  const auto summary = summary_rows(exp);
  if (config.format == "csv") {
    std::vector<std::vector<std::string>> text_rows;
    for (const auto& row : rows) {
      std::vector<std::string> text{std::to_string(static_cast<long long>(row[0]))};
      for (std::size_t i = 1; i < row.size(); ++i) text.push_back(fmt17(row[i]));
      text_rows.push_back(std::move(text));
    }
    write_table_csv(prefix + "_paths.csv", columns, text_rows);

    std::vector<std::vector<std::string>> summary_text;
    for (const auto& row : summary)
      summary_text.push_back({row.strategy, fmt17(row.final_value), fmt17(row.stderr_value)});
    write_table_csv(prefix + "_summary.csv", {"strategy", "final_value", "stderr"}, summary_text);
  } else {
    nlohmann::json json_rows = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json r = nlohmann::json::array();
      r.push_back(static_cast<long long>(row[0]));
      for (std::size_t i = 1; i < row.size(); ++i) r.push_back(row[i]);
      json_rows.push_back(std::move(r));
    }
    write_table_json(prefix + "_paths.json", columns, json_rows);

    nlohmann::json summary_json = nlohmann::json::array();
    for (const auto& row : summary)
      summary_json.push_back({row.strategy, row.final_value, row.stderr_value});
    write_table_json(prefix + "_summary.json", {"strategy", "final_value", "stderr"},
                     summary_json);
  }
}

void print_summary(const Experiment& exp) {
  std::printf("%-16s %20s %14s\n", "strategy", "final value", "stderr");
  for (const auto& row : summary_rows(exp))
    std::printf("%-16s %20.10g %14.4g\n", row.strategy.c_str(), row.final_value,
                row.stderr_value);
  std::printf("BCRP weights:");
  for (Index k = 0; k < exp.best.weights.size(); ++k)
    std::printf(" %s=%.6f", exp.market.labels[static_cast<std::size_t>(k)].c_str(),
                exp.best.weights[k]);
  std::printf("\n");
}

int cmd_run(const RunConfig& config) {
  const Experiment exp = run_experiment(load_market(config), config);
  if (!config.out.empty()) write_experiment(exp, config, config.out);
  print_summary(exp);
  return 0;
}

Permutation parse_permutation(const std::string& text, Index periods) {
  if (text == "reverse") return Permutation::reverse(periods);
  if (text.rfind("swap:", 0) == 0) {
    const auto comma = text.find(',', 5);
    if (comma == std::string::npos) throw std::runtime_error("malformed --perm; want swap:i,j");
    const long i = std::stol(text.substr(5, comma - 5));
    const long j = std::stol(text.substr(comma + 1));
    if (i < 1 || j < 1 || i > periods || j > periods)
      throw std::runtime_error("--perm swap indices must be in 1.." + std::to_string(periods));
    return Permutation::swap(periods, i - 1, j - 1);
  }
  // Explicit 1-based image list: "3,1,2" sends period 1 to the old period 3.
  Permutation sigma;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ','))
    sigma.map.push_back(static_cast<Index>(std::stol(cell)) - 1);
  sigma.validate(periods);
  return sigma;
}

int cmd_permute(const RunConfig& config, const std::string& perm_text, bool with_oracle) {
  const Market market = load_market(config);
  const Permutation sigma = parse_permutation(perm_text, market.periods());
  const Experiment original = run_experiment(market, config);
  const Experiment permuted = run_experiment(permute(market, sigma), config);

  std::vector<std::string> exact_original, exact_permuted;
  if (with_oracle) {
    RationalMarket exact;
    exact.labels = market.labels;
    exact.relatives.resize(market.periods(), market.assets());
    for (Index t = 0; t < market.periods(); ++t)
      for (Index k = 0; k < market.assets(); ++k)
        exact.relatives(t, k) = rational_from_double(market.relatives(t, k));
    const RationalMarket exact_sigma = permute(exact, sigma);
    for (int level = 1; level <= config.orders; ++level) {
      exact_original.push_back(to_string(
          oracle::exact_houp_value(exact, level, static_cast<int>(market.periods()))));
      exact_permuted.push_back(to_string(
          oracle::exact_houp_value(exact_sigma, level, static_cast<int>(market.periods()))));
    }
  }

  const Index horizon = market.periods();
  std::vector<std::string> columns{"level",     "final_original", "final_permuted",
                                   "abs_delta", "rel_delta",      "invariant_within_1e-10"};
  if (with_oracle) {
    columns.push_back("exact_original");
    columns.push_back("exact_permuted");
  }
  std::vector<std::vector<std::string>> rows;
  nlohmann::json json_rows = nlohmann::json::array();
  bool level1_invariant = false;
  for (int level = 1; level <= config.orders; ++level) {
    const double a = original.houp.values[static_cast<std::size_t>(level - 1)][horizon];
    const double b = permuted.houp.values[static_cast<std::size_t>(level - 1)][horizon];
    const double abs_delta = std::abs(a - b);
    const double rel_delta = abs_delta / std::max(std::abs(a), std::abs(b));
    const bool invariant = rel_delta <= 1e-10;
    if (level == 1) level1_invariant = invariant;
    std::vector<std::string> row{std::to_string(level), fmt17(a),
                                 fmt17(b),              fmt17(abs_delta),
                                 fmt17(rel_delta),      invariant ? "1" : "0"};
    nlohmann::json json_row = {level, a, b, abs_delta, rel_delta, invariant};
    if (with_oracle) {
      row.push_back(exact_original[static_cast<std::size_t>(level - 1)]);
      row.push_back(exact_permuted[static_cast<std::size_t>(level - 1)]);
      json_row.push_back(exact_original[static_cast<std::size_t>(level - 1)]);
      json_row.push_back(exact_permuted[static_cast<std::size_t>(level - 1)]);
    }
    rows.push_back(std::move(row));
    json_rows.push_back(std::move(json_row));
  }

  if (!config.out.empty()) {
    write_experiment(original, config, config.out + "_original");
    write_experiment(permuted, config, config.out + "_permuted");
    if (config.format == "csv")
      write_table_csv(config.out + "_compare.csv", columns, rows);
    else
      write_table_json(config.out + "_compare.json", columns, json_rows);
  }

  std::printf("%-6s %20s %20s %12s %12s\n", "level", "final_original", "final_permuted",
              "rel_delta", "invariant");
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::printf("%-6s %20s %20s %12.4g %12s\n", rows[i][0].c_str(), rows[i][1].c_str(),
                rows[i][2].c_str(), std::stod(rows[i][4]), rows[i][5].c_str());
  if (with_oracle)
    for (std::size_t i = 0; i < exact_original.size(); ++i)
      std::printf("exact level %zu: %s vs %s\n", i + 1, exact_original[i].c_str(),
                  exact_permuted[i].c_str());
  std::printf("level-1 invariance: %s\n", level1_invariant ? "OK" : "VIOLATED");
  return 0;
}

int cmd_verify(bool verbose, const std::string& json_path, bool swap_third_moments) {
  const oracle::VerifyReport report = oracle::verify_identities(swap_third_moments);
  oracle::print_report(report, std::cout, verbose);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw std::runtime_error("cannot open '" + json_path + "' for writing");
    out << oracle::report_json(report) << '\n';
  }
  return report.all_pass ? 0 : 1;
}

void add_run_flags(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--data", config.data, "CSV file of price relatives");
  cmd->add_option("--generator", config.generator, "built-in market: toy or counterexample");
  cmd->add_option("--steps", config.steps, "period count for --generator toy")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--assets", config.assets, "comma-separated asset labels to keep")
      ->delimiter(',');
  cmd->add_option("--orders", config.orders, "highest recursion level to compute")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--samples", config.samples, "Monte Carlo draws per level")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", config.seed, "base random seed");
  cmd->add_option("--quad-nodes", config.quad_nodes, "Gauss-Legendre node count for 2 assets")
      ->check(CLI::Range(1, 64));
  cmd->add_option("--out", config.out, "output prefix for the result tables");
  cmd->add_option("--format", config.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cover universal portfolios and their recursive high-order extensions"};
  app.require_subcommand(1);

  RunConfig run_config;
  CLI::App* run = app.add_subcommand("run", "compute UP levels and baselines on a market");
  add_run_flags(run, run_config);

  RunConfig permute_config;
  std::string perm_text;
  bool with_oracle = false;
  CLI::App* permute_cmd =
      app.add_subcommand("permute", "compare a market against a time permutation of itself");
  add_run_flags(permute_cmd, permute_config);
  permute_cmd->add_option("--perm", perm_text, "reverse, swap:i,j, or an explicit 1-based list")
      ->required();
  permute_cmd->add_flag("--oracle", with_oracle,
                        "cross-check final values in exact rational arithmetic");

  bool verbose = false;
  bool swap_third_moments = false;
  std::string json_path;
  CLI::App* verify = app.add_subcommand("verify", "verify the exact rational identities");
  verify->add_flag("--verbose", verbose, "print expected and computed fractions");
  verify->add_option("--json", json_path, "also write a machine-readable report");
  verify->add_flag("--swap-third-moments", swap_third_moments,
                   "self-test hook: corrupt the third-moment table (must fail)");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(run)) return cmd_run(run_config);
    if (app.got_subcommand(permute_cmd)) return cmd_permute(permute_config, perm_text, with_oracle);
    if (app.got_subcommand(verify)) return cmd_verify(verbose, json_path, swap_third_moments);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

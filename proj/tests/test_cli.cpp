#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "houp/houp.hpp"

using namespace houp;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string(HOUP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buffer;
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe))
    output.append(buffer.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string temp_prefix(const std::string& tag) {
  return (std::filesystem::temp_directory_path() / ("houp_cli_" + tag)).string();
}

}  // namespace

TEST_CASE("run: toy generator writes consistent paths and summary tables") {
  const std::string prefix = temp_prefix("run_toy");
  const CliResult result =
      run_cli("run --generator toy --orders 3 --samples 5000 --seed 1 --out " + prefix);
  CHECK(result.exit_code == 0);

  const auto paths = read_csv(prefix + "_paths.csv");
  const auto summary = read_csv(prefix + "_summary.csv");
  REQUIRE(paths.size() == 52);  // header + 51 times
  CHECK(paths[0] ==
        std::vector<std::string>{"time", "const", "osc", "UP1", "UP2", "UP3"});
  REQUIRE(summary.size() == 8);  // header + 2 assets + 3 levels + 2 baselines

  // Summary finals equal the last row of the paths table, column by column.
  const auto& last = paths.back();
  for (std::size_t i = 0; i < 5; ++i) CHECK(summary[1 + i][1] == last[1 + i]);

  // Level-1 value matches the in-process quadrature engine exactly.
  const UpResult up =
      universal_portfolio(toy_market(50), SamplerSpec{Scheme::GaussLegendre, 16, 5000, 1});
  CHECK(std::stod(summary[3][1]) == up.values[50]);
}

TEST_CASE("run: identical flags give bit-identical outputs") {
  const std::string a = temp_prefix("det_a");
  const std::string b = temp_prefix("det_b");
  const std::string flags = "run --generator toy --steps 30 --orders 4 --samples 4000 --seed 9";
  CHECK(run_cli(flags + " --out " + a).exit_code == 0);
  CHECK(run_cli(flags + " --out " + b).exit_code == 0);
  CHECK(slurp(a + "_paths.csv") == slurp(b + "_paths.csv"));
  CHECK(slurp(a + "_summary.csv") == slurp(b + "_summary.csv"));

  const std::string ja = temp_prefix("det_ja");
  const std::string jb = temp_prefix("det_jb");
  CHECK(run_cli(flags + " --format json --out " + ja).exit_code == 0);
  CHECK(run_cli(flags + " --format json --out " + jb).exit_code == 0);
  CHECK(slurp(ja + "_paths.json") == slurp(jb + "_paths.json"));
  CHECK(slurp(ja + "_summary.json") == slurp(jb + "_summary.json"));
  const auto parsed = nlohmann::json::parse(slurp(ja + "_summary.json"));
  CHECK(parsed.at("columns").size() == 3);
}

TEST_CASE("run: unknown asset labels exit with status 2 and name the label") {
  const CliResult result = run_cli("run --generator toy --assets nosuch");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("nosuch") != std::string::npos);
}

TEST_CASE("run: missing market source is a usage error") {
  CHECK(run_cli("run --orders 2").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("verify: default passes, corrupted moment table fails") {
  const std::string json_path = temp_prefix("verify") + ".json";
  const CliResult ok = run_cli("verify --json " + json_path);
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("3533/1080") == std::string::npos);  // fractions only when verbose

  const CliResult verbose = run_cli("verify --verbose");
  CHECK(verbose.exit_code == 0);
  CHECK(verbose.output.find("3533/1080") != std::string::npos);

  const auto doc = nlohmann::json::parse(slurp(json_path));
  CHECK(doc.at("all_pass").get<bool>());

  const CliResult swapped = run_cli("verify --swap-third-moments");
  CHECK(swapped.exit_code == 1);
  CHECK(swapped.output.find("9131/2160") != std::string::npos);
}

TEST_CASE("permute: identity permutation leaves every level unchanged") {
  const std::string prefix = temp_prefix("perm_id");
  const CliResult result =
      run_cli("permute --generator counterexample --perm 1,2,3 --orders 2 --samples 3000 "
              "--seed 5 --out " +
              prefix);
  CHECK(result.exit_code == 0);
  const auto compare = read_csv(prefix + "_compare.csv");
  REQUIRE(compare.size() == 3);
  for (std::size_t level = 1; level < compare.size(); ++level) {
    CHECK(compare[level][3] == "0");  // abs delta
    CHECK(compare[level][5] == "1");  // invariant flag
  }
}

TEST_CASE("permute: fixture swap reports the exact order-2 rational gap") {
  const CliResult result = run_cli(
      "permute --generator counterexample --perm swap:1,3 --orders 2 --samples 2000 --seed 3 "
      "--oracle");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("3533/1080") != std::string::npos);
  CHECK(result.output.find("49457/15120") != std::string::npos);
  CHECK(result.output.find("level-1 invariance: OK") != std::string::npos);
}

TEST_CASE("permute: reversal keeps the level-1 value on a CSV market") {
  // Random-ish 10x2 market written through the CSV interface.
  const std::string csv = temp_prefix("perm_data") + ".csv";
  {
    std::ofstream out(csv);
    out << "x,y\n";
    for (int t = 0; t < 10; ++t)
      out << 0.5 + 0.13 * ((t * 7) % 11) << "," << 0.6 + 0.09 * ((t * 5) % 13) << "\n";
  }
  const std::string prefix = temp_prefix("perm_rev");
  const CliResult result =
      run_cli("permute --data " + csv + " --perm reverse --orders 1 --out " + prefix);
  CHECK(result.exit_code == 0);
  const auto compare = read_csv(prefix + "_compare.csv");
  REQUIRE(compare.size() == 2);
  CHECK(compare[1][5] == "1");
}

TEST_CASE("permute: malformed permutations are usage errors") {
  CHECK(run_cli("permute --generator counterexample --perm swap:9,1").exit_code == 2);
  CHECK(run_cli("permute --generator counterexample --perm 1,1,2").exit_code == 2);
  CHECK(run_cli("permute --generator counterexample --perm nonsense").exit_code == 2);
}

#include "houp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "houp/simplex.hpp"

#include <json.hpp>

namespace houp::oracle {

namespace {

void check_enumeration_bound(Index assets, int t_max) {
  // K^t <= 10^6
  if (t_max * std::log(static_cast<double>(assets)) > std::log(1e6) + 1e-9)
    throw std::invalid_argument("exact_up_values: enumeration bound K^t <= 10^6 exceeded");
}

struct TupleEnumerator {
  const Eigen::MatrixX<BigInt>& numerators;  // rows scaled to integers
  const MomentFn& moment;
  int t_max;
  Index assets;
  std::vector<Rational> sums;       // sums[t] = sum over tuples of prod(n) * moment(hist)
  std::vector<int> histogram;
  std::map<std::vector<int>, Rational> moment_cache;

  const Rational& cached_moment() {
    auto it = moment_cache.find(histogram);
    if (it == moment_cache.end()) it = moment_cache.emplace(histogram, moment(histogram)).first;
    return it->second;
  }

  void descend(int t, const BigInt& partial) {
    if (t == t_max) return;
    for (Index k = 0; k < assets; ++k) {
      ++histogram[static_cast<std::size_t>(k)];
      const BigInt product = partial * numerators(t, k);
      sums[static_cast<std::size_t>(t) + 1] += cached_moment() * Rational(product);
      descend(t + 1, product);
      --histogram[static_cast<std::size_t>(k)];
    }
  }
};

}  // namespace

std::vector<Rational> exact_up_values(const RationalMarket& market, int t_max,
                                      const MomentFn& moment) {
  validate(market);
  if (market.assets() < 2)
    throw std::invalid_argument("exact_up_values: need at least 2 assets");
  if (t_max < 0 || t_max > market.periods())
    throw std::invalid_argument("exact_up_values: t out of range");
  check_enumeration_bound(market.assets(), t_max);
  const MomentFn moment_fn = moment ? moment : MomentFn(&exact_moment);

  // Scale each row to integers; one common denominator per row keeps the
  // partial products integral so normalization happens once per time index.
  Eigen::MatrixX<BigInt> numerators(t_max, market.assets());
  std::vector<BigInt> row_scale(static_cast<std::size_t>(t_max), BigInt(1));
  for (int t = 0; t < t_max; ++t) {
    BigInt common = 1;
    for (Index k = 0; k < market.assets(); ++k)
      common = boost::multiprecision::lcm(common, denominator(market.relatives(t, k)));
    for (Index k = 0; k < market.assets(); ++k) {
      const Rational& f = market.relatives(t, k);
      numerators(t, k) = numerator(f) * (common / denominator(f));
    }
    row_scale[static_cast<std::size_t>(t)] = common;
  }

  TupleEnumerator enumerator{numerators, moment_fn, t_max, market.assets(),
                             std::vector<Rational>(static_cast<std::size_t>(t_max) + 1, Rational(0)),
                             std::vector<int>(static_cast<std::size_t>(market.assets()), 0),
                             {}};
  enumerator.descend(0, BigInt(1));

  std::vector<Rational> values(static_cast<std::size_t>(t_max) + 1);
  values[0] = 1;
  BigInt scale = 1;
  for (int t = 1; t <= t_max; ++t) {
    scale *= row_scale[static_cast<std::size_t>(t) - 1];
    values[static_cast<std::size_t>(t)] = enumerator.sums[static_cast<std::size_t>(t)] / Rational(scale);
  }
  return values;
}

Rational exact_up_value(const RationalMarket& market, int t) {
  return exact_up_values(market, t).back();
}

Rational exact_up1_3_closed_form(const std::array<Rational, 3>& a,
                                 const std::array<Rational, 3>& b) {
  return ((a[0] + b[0]) * (a[1] + b[1]) * (a[2] + b[2]) + 2 * a[0] * a[1] * a[2] +
          2 * b[0] * b[1] * b[2]) /
         Rational(12);
}

Rational exact_houp_value(const RationalMarket& market, int order, int t,
                          const MomentFn& moment) {
  if (order < 1) throw std::invalid_argument("exact_houp_value: order must be >= 1");
  RationalMarket current = market;
  for (int level = 1; level < order; ++level) {
    const std::vector<Rational> path =
        exact_up_values(current, static_cast<int>(current.periods()), moment);
    Eigen::VectorX<Rational> wealth(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) wealth[static_cast<Index>(i)] = path[i];
    current = augment(current, "UP" + std::to_string(level), wealth);
  }
  return exact_up_values(current, t, moment)[static_cast<std::size_t>(t)];
}

Rational swapped_third_moment(const std::vector<int>& exponents) {
  if (exponents.size() == 3) {
    std::vector<int> sorted = exponents;
    std::sort(sorted.begin(), sorted.end());
    if (sorted == std::vector<int>{1, 1, 1}) return Rational(1, 10);
    if (sorted == std::vector<int>{0, 0, 3}) return Rational(1, 60);
  }
  return exact_moment(exponents);
}

namespace {

void check_equal(VerifyReport& report, const std::string& name, const Rational& expected,
                 const Rational& computed) {
  Check check{name, to_string(expected), to_string(computed), expected == computed};
  report.all_pass = report.all_pass && check.pass;
  report.checks.push_back(std::move(check));
}

}  // namespace

VerifyReport verify_identities(bool swap_third_moments) {
  const MomentFn moment =
      swap_third_moments ? MomentFn(&swapped_third_moment) : MomentFn(&exact_moment);
  VerifyReport report;

  // Uniform-simplex moments on S_3.
  check_equal(report, "S3 moment E[w_i w_j], i != j", Rational(1, 12), moment({1, 1, 0}));
  check_equal(report, "S3 moment E[w_i^2]", Rational(1, 6), moment({2, 0, 0}));
  check_equal(report, "S3 moment E[w_i w_j w_k], all distinct", Rational(1, 60), moment({1, 1, 1}));
  check_equal(report, "S3 moment E[w_i^2 w_j], i != j", Rational(1, 30), moment({2, 1, 0}));
  check_equal(report, "S3 moment E[w_i^3]", Rational(1, 10), moment({3, 0, 0}));

  const RationalMarket market = counterexample_market<Rational>();
  const RationalMarket permuted = permute(market, Permutation::swap(3, 0, 2));

  // Level-1 value path and price relatives of the fixture market.
  const std::vector<Rational> path = exact_up_values(market, 3, moment);
  check_equal(report, "fixture market UP1 relative c1", Rational(3, 2), path[1] / path[0]);
  check_equal(report, "fixture market UP1 relative c2", Rational(13, 9), path[2] / path[1]);
  check_equal(report, "fixture market UP1 relative c3", Rational(3, 2), path[3] / path[2]);
  check_equal(report, "fixture market UP1 value at t=2", Rational(13, 6), path[2]);
  check_equal(report, "fixture market UP1 value at t=3", Rational(13, 4), path[3]);
  check_equal(report, "fixture market UP1 t=3 closed form",
              exact_up1_3_closed_form({Rational(1), Rational(2), Rational(2)},
                                      {Rational(2), Rational(1), Rational(1)}),
              path[3]);

  // Same checks after swapping the first and last periods.
  const std::vector<Rational> path_permuted = exact_up_values(permuted, 3, moment);
  check_equal(report, "permuted market UP1 relative c2", Rational(14, 9),
              path_permuted[2] / path_permuted[1]);
  check_equal(report, "permuted market UP1 relative c3", Rational(39, 28),
              path_permuted[3] / path_permuted[2]);
  check_equal(report, "permuted market UP1 value at t=3", Rational(13, 4), path_permuted[3]);
  check_equal(report, "permuted market UP1 t=3 closed form",
              exact_up1_3_closed_form({Rational(2), Rational(2), Rational(1)},
                                      {Rational(1), Rational(1), Rational(2)}),
              path_permuted[3]);

  // Order-2 values: the two-period prefix, then the full three periods on
  // both markets. Only the permuted market's value moves.
  RationalMarket prefix;
  prefix.labels = market.labels;
  prefix.relatives = market.relatives.topRows(2);
  check_equal(report, "two-period market UP2 value at t=2", Rational(157, 72),
              exact_houp_value(prefix, 2, 2, moment));
  check_equal(report, "fixture market UP2 value at t=3", Rational(3533, 1080),
              exact_houp_value(market, 2, 3, moment));
  check_equal(report, "permuted market UP2 value at t=3", Rational(49457, 15120),
              exact_houp_value(permuted, 2, 3, moment));

  return report;
}

void print_report(const VerifyReport& report, std::ostream& out, bool verbose) {
  std::size_t passed = 0;
  for (const Check& check : report.checks) {
    out << (check.pass ? "[ok]   " : "[FAIL] ") << check.name;
    if (verbose || !check.pass)
      out << "  expected " << check.expected << ", computed " << check.computed;
    out << '\n';
    passed += check.pass ? 1 : 0;
  }
  out << (report.all_pass ? "all " : "FAILED: ") << passed << "/" << report.checks.size()
      << " exact identities hold\n";
}

std::string report_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& check : report.checks)
    checks.push_back({{"name", check.name},
                      {"expected", check.expected},
                      {"computed", check.computed},
                      {"pass", check.pass}});
  const nlohmann::json doc = {{"all_pass", report.all_pass}, {"checks", checks}};
  return doc.dump(2);
}

}  // namespace houp::oracle

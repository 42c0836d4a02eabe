#include "houp/portfolio.hpp"

#include <cmath>
#include <stdexcept>

#include "houp/detail/parallel.hpp"

namespace houp {

namespace {

double log_wealth_two_assets(const Market& market, double x) {
  double acc = 0.0;
  for (Index t = 0; t < market.periods(); ++t)
    acc += std::log(x * market.relatives(t, 0) + (1.0 - x) * market.relatives(t, 1));
  return acc;
}

double golden_section_max(const Market& market, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = log_wealth_two_assets(market, c);
  double fd = log_wealth_two_assets(market, d);
  while (b - a > 1e-9) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = log_wealth_two_assets(market, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = log_wealth_two_assets(market, d);
    }
  }
  return 0.5 * (a + b);
}

void enumerate_lattice(Eigen::VectorXi& counts, Index k, int remaining,
                       const std::function<void(const Eigen::VectorXi&)>& emit) {
  if (k == counts.size() - 1) {
    counts[k] = remaining;
    emit(counts);
    return;
  }
  for (int i = 0; i <= remaining; ++i) {
    counts[k] = i;
    enumerate_lattice(counts, k + 1, remaining - i, emit);
  }
}

}  // namespace

UpResult universal_portfolio(const Market& market, const SamplerSpec& spec) {
  validate(market);
  const Index assets = market.assets();
  const Index periods = market.periods();
  const SimplexRule rule = simplex_rule(assets, spec);
  const Index points = rule.size();
  const Index blocks = detail::block_count(points);

  UpResult result;
  result.values.resize(periods + 1);
  result.allocations.resize(periods, assets);
  result.values[0] = 1.0;
  // Point-set average of w itself: the uniform allocation in exact
  // expectation, and what keeps the mixture identity true at t = 0 for the
  // discrete point set.
  result.allocations.row(0) = rule.weights.transpose() * rule.points;

  Eigen::VectorXd crp_values = Eigen::VectorXd::Ones(points);
  // Per-block partial sums: column 0 holds sum q*V, columns 1..K sum q*V*w.
  Eigen::MatrixXd partial(blocks, assets + 1);

  for (Index t = 1; t <= periods; ++t) {
    const Eigen::VectorXd relatives_t = market.relatives.row(t - 1).transpose();
    detail::for_each_block(points, [&](Index b, Index begin, Index end) {
      const Index len = end - begin;
      auto block_points = rule.points.middleRows(begin, len);
      auto block_values = crp_values.segment(begin, len);
      block_values.array() *= (block_points * relatives_t).array();
      const Eigen::VectorXd weighted = rule.weights.segment(begin, len).cwiseProduct(block_values);
      partial(b, 0) = weighted.sum();
      partial.row(b).tail(assets) = (block_points.transpose() * weighted).transpose();
    });
    Eigen::RowVectorXd totals = partial.row(0);
    for (Index b = 1; b < blocks; ++b) totals += partial.row(b);
    result.values[t] = totals[0];
    if (t < periods) result.allocations.row(t) = totals.tail(assets) / totals[0];
  }

  if (spec.scheme == Scheme::MonteCarlo && points > 1) {
    const double mean = result.values[periods];
    double ss = 0.0;
    for (Index j = 0; j < points; ++j) {
      const double d = crp_values[j] - mean;
      ss += d * d;
    }
    result.final_stderr = std::sqrt(ss / static_cast<double>(points - 1)) /
                          std::sqrt(static_cast<double>(points));
  }
  return result;
}

BestCrp best_crp_hindsight(const Market& market, int resolution) {
  validate(market);
  if (resolution < 1) throw std::invalid_argument("best_crp_hindsight: resolution must be >= 1");
  const Index assets = market.assets();
  BestCrp best;

  if (assets == 1) {
    best.weights = Eigen::VectorXd::Ones(1);
  } else if (assets == 2) {
    // Coarse scan, then golden-section on the bracketing interval.
    double best_x = 0.0;
    double best_value = log_wealth_two_assets(market, 0.0);
    int best_i = 0;
    for (int i = 1; i <= resolution; ++i) {
      const double x = static_cast<double>(i) / resolution;
      const double value = log_wealth_two_assets(market, x);
      if (value > best_value) {
        best_value = value;
        best_x = x;
        best_i = i;
      }
    }
    const double lo = static_cast<double>(std::max(0, best_i - 1)) / resolution;
    const double hi = static_cast<double>(std::min(resolution, best_i + 1)) / resolution;
    const double refined = golden_section_max(market, lo, hi);
    if (log_wealth_two_assets(market, refined) > best_value) best_x = refined;
    best.weights.resize(2);
    best.weights << best_x, 1.0 - best_x;
  } else {
    Eigen::VectorXi counts(assets);
    Eigen::VectorXd best_w;
    double best_value = -std::numeric_limits<double>::infinity();
    enumerate_lattice(counts, 0, resolution, [&](const Eigen::VectorXi& c) {
      const Eigen::VectorXd w = c.cast<double>() / static_cast<double>(resolution);
      double value = 0.0;
      for (Index t = 0; t < market.periods(); ++t) value += std::log(market.relatives.row(t).dot(w));
      if (value > best_value) {
        best_value = value;
        best_w = w;
      }
    });
    best.weights = best_w;
  }

  best.values = crp_value<double>(market, best.weights);
  return best;
}

WealthPath split_and_forget(const Market& market) {
  validate(market);
  WealthPath values(market.periods() + 1);
  values[0] = 1.0;
  Eigen::VectorXd cumulative = Eigen::VectorXd::Ones(market.assets());
  for (Index t = 0; t < market.periods(); ++t) {
    cumulative.array() *= market.relatives.row(t).transpose().array();
    values[t + 1] = cumulative.mean();
  }
  return values;
}

}  // namespace houp

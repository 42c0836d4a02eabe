#pragma once

#include <vector>

#include "houp/market.hpp"
#include "houp/portfolio.hpp"
#include "houp/simplex.hpp"

namespace houp {

/// One universal portfolio per recursion level. Level 1 is the plain
/// universal portfolio of the raw market; level L is the universal portfolio
/// of the market augmented with the level-(L-1) path as a synthetic asset.
struct HoupResult {
  int order = 0;
  std::vector<WealthPath> values;            ///< one T+1 path per level
  std::vector<AllocationPath> allocations;   ///< level L has K+L-1 columns
  std::vector<double> final_stderr;          ///< per level; 0 for quadrature
  Market augmented;                          ///< K + order - 1 assets
};

/// Sampler actually used at a recursion level. Level 1 keeps the base spec
/// untouched (so level 1 reproduces universal_portfolio bitwise); deeper
/// levels switch to Monte Carlo with seed mix_seed(base.seed, level), keeping
/// levels independent yet reproducible.
SamplerSpec level_spec(const SamplerSpec& base, int level, Index base_assets);

/// Runs the recursion up to max_order levels. Level L evaluates
/// universal_portfolio on dimension K+L-1; the market is then augmented with
/// that level's wealth path under the label "UP<L>".
HoupResult compute_houp(const Market& market, int max_order, const SamplerSpec& spec);

/// Price relatives values[t]/values[t-1] of the requested level, 1-based.
Eigen::VectorXd houp_relatives(const HoupResult& result, int level);

}  // namespace houp

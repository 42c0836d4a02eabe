#pragma once

#include <Eigen/Core>

#include "houp/market.hpp"
#include "houp/simplex.hpp"

namespace houp {

/// Wealth multiples of initial capital, index 0..T with values[0] = 1.
using WealthPath = Eigen::VectorXd;

/// T x K matrix of simplex points; row t is the allocation held during the
/// transition t -> t+1.
using AllocationPath = Eigen::MatrixXd;

/// Value path of the constant rebalanced portfolio with weights w:
/// values[t] = prod_{s<=t} <w, f_s>.
template <typename Scalar>
Eigen::VectorX<Scalar> crp_value(const MarketT<Scalar>& market, const Eigen::VectorX<Scalar>& w) {
  if (w.size() != market.assets())
    throw std::invalid_argument("crp_value: weight dimension does not match asset count");
  Eigen::VectorX<Scalar> values(market.periods() + 1);
  values[0] = Scalar(1);
  for (Index t = 0; t < market.periods(); ++t)
    values[t + 1] = values[t] * market.relatives.row(t).dot(w.transpose());
  return values;
}

struct UpResult {
  WealthPath values;           ///< T+1 values, values[0] = 1
  AllocationPath allocations;  ///< T rows; row t = E-hat[w V_t] / E-hat[V_t]
  double final_stderr = 0.0;   ///< standard error of values[T] (0 for quadrature)
};

/// Cover's universal portfolio evaluated over the fixed point set of `spec`.
/// values[t] is the weighted average of CRP values at time t and
/// allocations[t] the value-weighted average of the points, so the mixture
/// identity values[t+1] = values[t] * <allocations[t], f_{t+1}> holds up to
/// rounding. Reductions use fixed blocks combined in index order; results are
/// bitwise reproducible for a given spec regardless of HOUP_THREADS.
UpResult universal_portfolio(const Market& market, const SamplerSpec& spec);

struct BestCrp {
  Eigen::VectorXd weights;
  WealthPath values;
};

/// Hindsight-optimal constant rebalanced portfolio. Two assets: coarse scan
/// of `resolution` segments plus golden-section refinement of the concave
/// log-wealth objective (maximizer located to ~1e-8 in weight space). Three
/// or more assets: exhaustive lattice search with `resolution` subdivisions
/// per axis.
BestCrp best_crp_hindsight(const Market& market, int resolution = 1024);

/// Buy equal parts at t = 0 and never trade:
/// values[t] = (1/K) * sum_k prod_{s<=t} f^k_s.
WealthPath split_and_forget(const Market& market);

}  // namespace houp

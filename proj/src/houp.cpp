#include "houp/houp.hpp"

#include <stdexcept>

namespace houp {

SamplerSpec level_spec(const SamplerSpec& base, int level, Index base_assets) {
  if (level < 1) throw std::invalid_argument("level_spec: level must be >= 1");
  if (base.scheme == Scheme::GaussLegendre && base_assets != 2)
    throw std::invalid_argument("level_spec: Gauss-Legendre base scheme requires a 2-asset market");
  if (level == 1) return base;
  SamplerSpec spec = base;
  spec.scheme = Scheme::MonteCarlo;
  spec.seed = mix_seed(base.seed, static_cast<std::uint64_t>(level));
  return spec;
}

HoupResult compute_houp(const Market& market, int max_order, const SamplerSpec& spec) {
  if (max_order < 1) throw std::invalid_argument("houp: max_order must be >= 1");
  validate(market);

  HoupResult result;
  result.order = max_order;
  Market current = market;
  for (int level = 1; level <= max_order; ++level) {
    const UpResult up = universal_portfolio(current, level_spec(spec, level, market.assets()));
    result.values.push_back(up.values);
    result.allocations.push_back(up.allocations);
    result.final_stderr.push_back(up.final_stderr);
    if (level < max_order) current = augment(current, "UP" + std::to_string(level), up.values);
  }
  result.augmented = std::move(current);
  return result;
}

Eigen::VectorXd houp_relatives(const HoupResult& result, int level) {
  if (level < 1 || level > result.order)
    throw std::invalid_argument("houp_relatives: level out of range");
  const WealthPath& path = result.values[static_cast<std::size_t>(level - 1)];
  Eigen::VectorXd relatives(path.size() - 1);
  for (Index t = 0; t + 1 < path.size(); ++t) relatives[t] = path[t + 1] / path[t];
  return relatives;
}

}  // namespace houp

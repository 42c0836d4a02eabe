#include "houp/simplex.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace houp {

namespace {

// P_n(x) and P_{n-1}(x) by the three-term recurrence, in extended precision.
void legendre_pair(int n, long double x, long double& pn, long double& pnm1) {
  long double p0 = 1.0L, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  pnm1 = p0;
}

}  // namespace

QuadratureRule gauss_legendre_rule(int nodes) {
  if (nodes < 1 || nodes > 64)
    throw std::invalid_argument("gauss_legendre_rule: nodes must be in [1, 64]");

  QuadratureRule rule;
  rule.points.resize(nodes);
  rule.weights.resize(nodes);
  if (nodes == 1) {
    rule.points[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }

  const long double pi = 3.141592653589793238462643383279502884L;
  const int half = (nodes + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    long double x = std::cos(pi * (i + 0.75L) / (nodes + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double pn, pnm1;
      legendre_pair(nodes, x, pn, pnm1);
      dp = nodes * (x * pn - pnm1) / (x * x - 1.0L);
      const long double step = pn / dp;
      x -= step;
      if (std::abs(step) < 1e-19L) break;
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    // i = 0 is the largest root; store ascending and mirror for exact symmetry.
    double xd = static_cast<double>(x);
    if (nodes % 2 == 1 && i == half - 1) xd = 0.0;
    rule.points[nodes - 1 - i] = xd;
    rule.points[i] = -xd;
    rule.weights[nodes - 1 - i] = static_cast<double>(w);
    rule.weights[i] = static_cast<double>(w);
  }
  return rule;
}

Eigen::MatrixXd sample_uniform(Index dim, Index count, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("sample_uniform: dim must be >= 2");
  if (count < 1) throw std::invalid_argument("sample_uniform: count must be >= 1");

  std::mt19937_64 rng(seed);
  Eigen::MatrixXd points(count, dim);
  for (Index i = 0; i < count; ++i) {
    double total = 0.0;
    for (Index k = 0; k < dim; ++k) {
      // u uniform on (0,1]: 53 high bits of the generator output, shifted off 0.
      const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
      const double e = -std::log(u);
      points(i, k) = e;
      total += e;
    }
    points.row(i) /= total;
  }
  return points;
}

SimplexRule simplex_rule(Index dim, const SamplerSpec& spec) {
  if (dim < 2) throw std::invalid_argument("simplex_rule: dim must be >= 2");
  switch (spec.scheme) {
    case Scheme::GaussLegendre: {
      if (dim != 2)
        throw std::invalid_argument("simplex_rule: Gauss-Legendre scheme requires dim = 2");
      const QuadratureRule gl = gauss_legendre_rule(spec.nodes);
      SimplexRule rule;
      rule.points.resize(spec.nodes, 2);
      // Map [-1,1] onto the segment {(x, 1-x) : x in [0,1]}.
      rule.points.col(0) = (1.0 + gl.points.array()) / 2.0;
      rule.points.col(1) = (1.0 - gl.points.array()) / 2.0;
      rule.weights = gl.weights / 2.0;
      return rule;
    }
    case Scheme::MonteCarlo: {
      if (spec.samples < 1)
        throw std::invalid_argument("simplex_rule: samples must be >= 1");
      SimplexRule rule;
      rule.points = sample_uniform(dim, spec.samples, spec.seed);
      rule.weights = Eigen::VectorXd::Constant(spec.samples, 1.0 / spec.samples);
      return rule;
    }
  }
  throw std::invalid_argument("simplex_rule: unknown scheme");
}

Eigen::VectorXd average_over_simplex(
    Index dim, const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& integrand,
    const SamplerSpec& spec) {
  const SimplexRule rule = simplex_rule(dim, spec);
  Eigen::VectorXd acc = rule.weights[0] * integrand(rule.points.row(0).transpose());
  for (Index j = 1; j < rule.size(); ++j) {
    const Eigen::VectorXd value = integrand(rule.points.row(j).transpose());
    if (value.size() != acc.size())
      throw std::invalid_argument("average_over_simplex: integrand returned inconsistent length");
    acc += rule.weights[j] * value;
  }
  return acc;
}

Rational exact_moment(const std::vector<int>& exponents) {
  const int k = static_cast<int>(exponents.size());
  if (k < 2) throw std::invalid_argument("exact_moment: need at least 2 exponents");
  BigInt numerator = factorial(k - 1);
  int total = 0;
  for (const int a : exponents) {
    if (a < 0) throw std::invalid_argument("exact_moment: exponents must be nonnegative");
    numerator *= factorial(a);
    total += a;
  }
  return Rational(numerator, factorial(k - 1 + total));
}

}  // namespace houp

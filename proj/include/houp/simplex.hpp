#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <vector>

#include "houp/rational.hpp"

namespace houp {

using Eigen::Index;

/// A point of the unit simplex S_K: K nonnegative weights summing to 1.
/// Stored as a plain dense vector; see is_simplex_point for the membership test.
using SimplexPoint = Eigen::VectorXd;

enum class Scheme { GaussLegendre, MonteCarlo };

/// Descriptor of an integration scheme over the unit simplex.
/// Gauss-Legendre quadrature is available for dimension 2 only; higher
/// dimensions use seeded Monte Carlo sampling.
struct SamplerSpec {
  Scheme scheme = Scheme::MonteCarlo;
  int nodes = 16;         ///< quadrature point count (Gauss-Legendre)
  int samples = 10000;    ///< Monte Carlo draw count
  std::uint64_t seed = 0;
};

/// Legendre rule on [-1,1]: abscissae in ascending order, positive weights.
/// Weights sum to 2 and the n-node rule integrates polynomials of degree
/// <= 2n-1 exactly.
struct QuadratureRule {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;
};

/// Nodes and weights of the n-node Gauss-Legendre rule, 1 <= n <= 64.
/// The rule is exactly symmetric about 0 (mirrored bit-for-bit).
QuadratureRule gauss_legendre_rule(int nodes);

/// Draws `count` points uniformly from S_dim, one point per row.
/// Points are built by normalizing independent exponential variables,
/// realized as -log(u) with u uniform on (0,1] so the logarithm is finite.
/// Bitwise deterministic for a fixed seed.
Eigen::MatrixXd sample_uniform(Index dim, Index count, std::uint64_t seed);

/// A fixed evaluation point set realizing E_{w in S_dim}[.]: points w_j as
/// rows and weights q_j summing to 1. Built once from a SamplerSpec and
/// reused for every time step of a portfolio run, so that identities that
/// hold for the exact expectation also hold for the discrete estimate.
struct SimplexRule {
  Eigen::MatrixXd points;   ///< M x dim
  Eigen::VectorXd weights;  ///< M, sums to 1
  Index dim() const { return points.cols(); }
  Index size() const { return points.rows(); }
};

SimplexRule simplex_rule(Index dim, const SamplerSpec& spec);

/// Componentwise estimate of E_{w in S_dim}[integrand(w)].
/// The reduction is sequential over the point index, so two calls with the
/// same spec agree bitwise.
Eigen::VectorXd average_over_simplex(
    Index dim, const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& integrand,
    const SamplerSpec& spec);

/// Exact mixed moment E[prod_i w_i^{a_i}] of the uniform law on S_K,
/// K = exponents.size() >= 2:
///   (K-1)! * prod_i(a_i!) / (K-1+sum_i a_i)!
Rational exact_moment(const std::vector<int>& exponents);

inline bool is_simplex_point(const Eigen::VectorXd& w, double tol = 1e-12) {
  return (w.array() >= 0.0).all() && std::abs(w.sum() - 1.0) <= tol;
}

/// SplitMix64 mix of a base seed and a stream index; used to derive
/// independent, reproducible per-level sampler seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + stream * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace houp

#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "houp/rational.hpp"

namespace houp {

using Eigen::Index;

/// A market over T periods and K assets: the T x K matrix of price relatives
/// (row t holds the wealth multipliers of the transition t -> t+1) plus one
/// label per asset. Entries are strictly positive; labels are unique.
template <typename Scalar>
struct MarketT {
  std::vector<std::string> labels;
  Eigen::MatrixX<Scalar> relatives;

  Index periods() const { return relatives.rows(); }
  Index assets() const { return relatives.cols(); }
};

using Market = MarketT<double>;
using RationalMarket = MarketT<Rational>;

template <typename Scalar>
void validate(const MarketT<Scalar>& market) {
  if (market.periods() < 1 || market.assets() < 1)
    throw std::invalid_argument("market: need at least one period and one asset");
  if (static_cast<Index>(market.labels.size()) != market.assets())
    throw std::invalid_argument("market: one label per asset required");
  std::unordered_set<std::string> seen;
  for (const auto& label : market.labels)
    if (!seen.insert(label).second)
      throw std::invalid_argument("market: duplicate asset label '" + label + "'");
  for (Index t = 0; t < market.periods(); ++t)
    for (Index k = 0; k < market.assets(); ++k)
      if (!(market.relatives(t, k) > Scalar(0)))
        throw std::invalid_argument("market: non-positive price relative at row " +
                                    std::to_string(t + 1) + ", column " + std::to_string(k + 1));
}

/// Per-asset cumulative wealth: row t is the componentwise product of the
/// first t rows of relatives, with row 0 all ones. (T+1) x K.
template <typename Scalar>
Eigen::MatrixX<Scalar> cumulative_wealth(const MarketT<Scalar>& market) {
  Eigen::MatrixX<Scalar> wealth(market.periods() + 1, market.assets());
  for (Index k = 0; k < market.assets(); ++k) wealth(0, k) = Scalar(1);
  for (Index t = 0; t < market.periods(); ++t)
    wealth.row(t + 1) = wealth.row(t).cwiseProduct(market.relatives.row(t));
  return wealth;
}

/// Two-asset generator: asset "const" never moves, asset "osc" alternates
/// price relatives 2, 1/2, 2, 1/2, ... starting with 2, so it returns to its
/// initial value after any even number of steps.
template <typename Scalar = double>
MarketT<Scalar> toy_market(Index steps) {
  if (steps < 1) throw std::invalid_argument("toy_market: steps must be >= 1");
  MarketT<Scalar> market;
  market.labels = {"const", "osc"};
  market.relatives.resize(steps, 2);
  const Scalar up = Scalar(2);
  const Scalar down = Scalar(1) / Scalar(2);
  for (Index t = 0; t < steps; ++t) {
    market.relatives(t, 0) = Scalar(1);
    market.relatives(t, 1) = (t % 2 == 0) ? up : down;
  }
  return market;
}

/// Three-period two-asset market whose rows are (1,2), (2,1), (2,1).
/// Swapping the first and last periods of this market changes the value of
/// the order-2 universal portfolio while leaving order 1 untouched, which is
/// what makes it a useful fixture.
template <typename Scalar = double>
MarketT<Scalar> counterexample_market() {
  MarketT<Scalar> market;
  market.labels = {"a", "b"};
  market.relatives.resize(3, 2);
  market.relatives << Scalar(1), Scalar(2), Scalar(2), Scalar(1), Scalar(2), Scalar(1);
  return market;
}

/// A bijection of {0, ..., T-1}; output row t of permute() is input row map[t].
struct Permutation {
  std::vector<Index> map;

  static Permutation identity(Index size);
  static Permutation reverse(Index size);
  static Permutation swap(Index size, Index i, Index j);
  Permutation inverse() const;
  void validate(Index size) const;
};

inline Permutation Permutation::identity(Index size) {
  Permutation sigma;
  sigma.map.resize(size);
  for (Index t = 0; t < size; ++t) sigma.map[t] = t;
  return sigma;
}

inline Permutation Permutation::reverse(Index size) {
  Permutation sigma;
  sigma.map.resize(size);
  for (Index t = 0; t < size; ++t) sigma.map[t] = size - 1 - t;
  return sigma;
}

inline Permutation Permutation::swap(Index size, Index i, Index j) {
  Permutation sigma = identity(size);
  if (i < 0 || j < 0 || i >= size || j >= size)
    throw std::invalid_argument("Permutation::swap: index out of range");
  std::swap(sigma.map[i], sigma.map[j]);
  return sigma;
}

inline void Permutation::validate(Index size) const {
  if (static_cast<Index>(map.size()) != size)
    throw std::invalid_argument("permutation: length does not match period count");
  std::vector<bool> seen(size, false);
  for (const Index t : map) {
    if (t < 0 || t >= size || seen[t])
      throw std::invalid_argument("permutation: not a bijection of the period indices");
    seen[t] = true;
  }
}

inline Permutation Permutation::inverse() const {
  Permutation inv;
  inv.map.resize(map.size());
  for (Index t = 0; t < static_cast<Index>(map.size()); ++t) inv.map[map[t]] = t;
  return inv;
}

template <typename Scalar>
MarketT<Scalar> permute(const MarketT<Scalar>& market, const Permutation& sigma) {
  sigma.validate(market.periods());
  MarketT<Scalar> out;
  out.labels = market.labels;
  out.relatives.resize(market.periods(), market.assets());
  for (Index t = 0; t < market.periods(); ++t) out.relatives.row(t) = market.relatives.row(sigma.map[t]);
  return out;
}

/// Appends a synthetic asset whose price relatives path[t]/path[t-1] are read
/// off a wealth path of T+1 positive values starting at 1. Existing columns
/// are copied untouched.
template <typename Scalar, typename Derived>
MarketT<Scalar> augment(const MarketT<Scalar>& market, const std::string& label,
                        const Eigen::MatrixBase<Derived>& path_expr) {
  static_assert(std::is_same_v<typename Derived::Scalar, Scalar>,
                "path scalar must match the market scalar");
  const Eigen::VectorX<Scalar> path = path_expr;
  if (path.size() != market.periods() + 1)
    throw std::invalid_argument("augment: path must have T+1 values");
  if (path[0] != Scalar(1)) throw std::invalid_argument("augment: path must start at 1");
  for (Index t = 0; t <= market.periods(); ++t)
    if (!(path[t] > Scalar(0))) throw std::invalid_argument("augment: non-positive path value");
  for (const auto& existing : market.labels)
    if (existing == label) throw std::invalid_argument("augment: duplicate asset label '" + label + "'");

  MarketT<Scalar> out;
  out.labels = market.labels;
  out.labels.push_back(label);
  out.relatives.resize(market.periods(), market.assets() + 1);
  out.relatives.leftCols(market.assets()) = market.relatives;
  for (Index t = 0; t < market.periods(); ++t)
    out.relatives(t, market.assets()) = path[t + 1] / path[t];
  return out;
}

struct CsvOptions {
  std::optional<bool> has_header;      ///< unset: auto-detect (header iff first row is non-numeric)
  std::vector<std::string> select;     ///< restrict/reorder columns; empty keeps all
};

/// Reads a comma-separated file of price relatives, one row per period, one
/// column per asset. UTF-8, LF or CRLF. Errors carry 1-based coordinates.
Market load_csv(const std::string& path, const CsvOptions& options = {});

/// Writes the header row and relatives with 17 significant digits, enough to
/// round-trip doubles exactly.
void save_csv(const Market& market, const std::string& path);

}  // namespace houp

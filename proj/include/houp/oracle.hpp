#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "houp/market.hpp"
#include "houp/rational.hpp"

namespace houp::oracle {

/// Mixed moment of the uniform simplex law, keyed by the exponent histogram.
/// Defaults to exact_moment; swappable so deliberately corrupted moment
/// tables can be fed through the same enumeration (regression hook).
using MomentFn = std::function<Rational(const std::vector<int>&)>;

/// Exact universal portfolio values for t = 0..t_max, by multilinear
/// expansion: E[prod_{s<=t} <w, f_s>] enumerated over all K^t index tuples,
/// each weighted by the moment of its histogram. Independent of the floating
/// engine. Requires K^t_max <= 10^6.
std::vector<Rational> exact_up_values(const RationalMarket& market, int t_max,
                                      const MomentFn& moment = {});

Rational exact_up_value(const RationalMarket& market, int t);

/// Two-asset closed form for the value at t = 3:
/// ((a1+b1)(a2+b2)(a3+b3) + 2 a1 a2 a3 + 2 b1 b2 b3) / 12.
Rational exact_up1_3_closed_form(const std::array<Rational, 3>& a,
                                 const std::array<Rational, 3>& b);

/// Exact order-`order` universal portfolio value at time t: augments the
/// market level by level with exact value paths, then enumerates the top
/// level. Requires (K+order-1)^t within the enumeration bound.
Rational exact_houp_value(const RationalMarket& market, int order, int t,
                          const MomentFn& moment = {});

/// The (wrong) third-moment table with the all-distinct and all-equal cases
/// transposed on S_3; everything else falls back to exact_moment. Feeding it
/// through the enumeration must break the known closed-form values, which is
/// what the regression tests pin down.
Rational swapped_third_moment(const std::vector<int>& exponents);

struct Check {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool all_pass = true;
};

/// Recomputes every closed-form value on the fixture markets and compares it,
/// as exact rationals, with the enumeration. With swap_third_moments the
/// corrupted table is used instead and the order-2 checks are expected to
/// fail. Failures are reported, never thrown.
VerifyReport verify_identities(bool swap_third_moments = false);

void print_report(const VerifyReport& report, std::ostream& out, bool verbose = false);
std::string report_json(const VerifyReport& report);

}  // namespace houp::oracle

#pragma once

// Exact lattice counts for scaled norm balls and the closed-form covering and
// counting bounds that go with them.

#include <cstdint>
#include <optional>
#include <utility>

#include "l1opt/numeric.hpp"

namespace l1opt {

// A possibly astronomically large bound. `exact` is present when the value is
// an integer small enough to materialize (see kMaxExactDigits).
struct BigBound {
  std::optional<BigInt> exact;
  double log10 = 0.0;

  static BigBound from_exact(BigInt v);
  // base^exponent for real exponent; exact when the exponent is integral
  // (within 1e-9) and the result has at most kMaxExactDigits digits.
  static BigBound power(double base, double exponent);
};

inline constexpr double kMaxExactDigits = 100000.0;

enum class BoundMode { kPrecise, kSimplified };

// #(L*B1 ∩ Z^k) for integer radius L; k == 0 gives 1, L < 0 gives 0.
// Sum over support sizes s of 2^s C(k,s) C(L,s).
BigInt count_l1_lattice_int(std::size_t k, std::int64_t radius);

BigInt count_l1_lattice(std::size_t n, const Rational& lambda);
BigInt count_l1_lattice(std::size_t n, double lambda);

// (1 + 2*floor(lambda))^n.
BigInt count_linf_lattice(std::size_t n, const Rational& lambda);
BigInt count_linf_lattice(std::size_t n, double lambda);

// n^{((2+delta)*floor(lambda))^2 / 2}, or n^{4*floor(lambda)^2} when
// simplified. The precise form is a formula evaluator only: at small n it can
// undershoot the true count because the underlying constant is asymptotic.
BigBound l1_count_upper_bound(std::size_t n, double lambda, double delta,
                              BoundMode mode = BoundMode::kPrecise);
// 2n; requires n >= 2 and lambda >= 1.
BigInt l1_count_lower_bound(std::size_t n, double lambda);

// Bounds on #(lambda*B2 ∩ Z^n): (2n, (1+2*floor(lambda))^n).
std::pair<BigInt, BigInt> l2_count_bounds(std::size_t n, double lambda);

// N(lambda*B1, r*Binf) <= n^{(lambda / (sqrt(2) r))^2}.
BigBound covering_bound_l1(std::size_t n, double lambda, double r);

// ((lambda/r)^n, (2 + lambda/r)^n).
std::pair<BigBound, BigBound> covering_bounds_linf(std::size_t n, double lambda, double r);

// n^{((2+delta)*floor(lambda))^2/2 + 1}; simplified n^{4*floor(lambda)^2 + 1}.
BigBound oracle_complexity_bound(std::size_t n, double lambda, double delta,
                                 BoundMode mode = BoundMode::kPrecise);

struct WidthEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Monte-Carlo estimate of E max_{x in lambda*B1} <g, x> = lambda * E max_j |g_j|
// with g standard normal. Deterministic per (seed, samples): uses
// std::mt19937_64 and a Box-Muller transform implemented here.
WidthEstimate estimate_gaussian_width(std::size_t n, double lambda, std::uint64_t samples,
                                      std::uint64_t seed);

// lambda * sqrt(2 ln n).
double gaussian_width_bound(std::size_t n, double lambda);

}  // namespace l1opt

#include "l1opt/counting.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace l1opt {

namespace {

void require_bound_dimension(std::size_t n) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidDimension,
                "bound formulas need n >= 2 (the Gaussian step degenerates at n = 1)");
  }
}

void require_radius(double r) {
  if (!(r > 0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kInvalidArgument, "covering radius r must be > 0");
  }
}

void require_delta(double delta) {
  if (!(delta > 0 && delta < 1)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
}

std::optional<std::int64_t> as_integer(double v) {
  const double rounded = std::round(v);
  if (std::abs(v - rounded) <= 1e-9 * std::max(1.0, std::abs(v)) && std::abs(rounded) < 9e15) {
    return static_cast<std::int64_t>(rounded);
  }
  return std::nullopt;
}

}  // namespace

BigBound BigBound::from_exact(BigInt v) {
  BigBound b;
  b.log10 = big_log10(v);
  b.exact = std::move(v);
  return b;
}

BigBound BigBound::power(double base, double exponent) {
  BigBound b;
  if (base == 0.0) {
    if (exponent == 0.0) return from_exact(1);
    return from_exact(0);
  }
  b.log10 = exponent * std::log10(base);
  const auto ib = as_integer(base);
  const auto ie = as_integer(exponent);
  if (ib && ie && *ie >= 0 && b.log10 <= kMaxExactDigits) {
    b.exact = pow_big(*ib, static_cast<std::uint64_t>(*ie));
    b.log10 = big_log10(*b.exact);
  }
  return b;
}

BigInt count_l1_lattice_int(std::size_t k, std::int64_t radius) {
  if (radius < 0) return 0;
  if (k == 0) return 1;
  const auto kk = static_cast<std::int64_t>(k);
  BigInt total = 0;
  for (std::int64_t s = 0; s <= std::min(kk, radius); ++s) {
    total += (BigInt(1) << s) * binomial(kk, s) * binomial(radius, s);
  }
  return total;
}

BigInt count_l1_lattice(std::size_t n, const Rational& lambda) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be >= 1");
  return count_l1_lattice_int(n, radius_floor(lambda));
}

BigInt count_l1_lattice(std::size_t n, double lambda) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be >= 1");
  return count_l1_lattice_int(n, radius_floor(lambda));
}

BigInt count_linf_lattice(std::size_t n, const Rational& lambda) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be >= 1");
  return pow_big(1 + 2 * radius_floor(lambda), n);
}

BigInt count_linf_lattice(std::size_t n, double lambda) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be >= 1");
  return pow_big(1 + 2 * radius_floor(lambda), n);
}

BigBound l1_count_upper_bound(std::size_t n, double lambda, double delta, BoundMode mode) {
  require_bound_dimension(n);
  const double L = static_cast<double>(radius_floor(lambda));
  if (mode == BoundMode::kSimplified) return BigBound::power(n, 4.0 * L * L);
  require_delta(delta);
  const double e = (2.0 + delta) * L;
  return BigBound::power(n, e * e / 2.0);
}

BigInt l1_count_lower_bound(std::size_t n, double lambda) {
  require_bound_dimension(n);
  if (!(lambda >= 1)) throw Error(ErrorCode::kInvalidArgument, "lower bound needs lambda >= 1");
  return BigInt(2 * n);
}

std::pair<BigInt, BigInt> l2_count_bounds(std::size_t n, double lambda) {
  require_bound_dimension(n);
  if (!(lambda >= 1)) throw Error(ErrorCode::kInvalidArgument, "lower bound needs lambda >= 1");
  return {BigInt(2 * n), count_linf_lattice(n, lambda)};
}

BigBound covering_bound_l1(std::size_t n, double lambda, double r) {
  require_bound_dimension(n);
  require_radius(r);
  if (!(lambda >= 0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  const double t = lambda / (std::numbers::sqrt2 * r);
  return BigBound::power(n, t * t);
}

std::pair<BigBound, BigBound> covering_bounds_linf(std::size_t n, double lambda, double r) {
  require_radius(r);
  if (!(lambda >= 0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  const double ratio = lambda / r;
  return {BigBound::power(ratio, n), BigBound::power(2.0 + ratio, n)};
}

BigBound oracle_complexity_bound(std::size_t n, double lambda, double delta, BoundMode mode) {
  require_bound_dimension(n);
  const double L = static_cast<double>(radius_floor(lambda));
  if (mode == BoundMode::kSimplified) return BigBound::power(n, 4.0 * L * L + 1.0);
  require_delta(delta);
  const double e = (2.0 + delta) * L;
  return BigBound::power(n, e * e / 2.0 + 1.0);
}

WidthEstimate estimate_gaussian_width(std::size_t n, double lambda, std::uint64_t samples,
                                      std::uint64_t seed) {
  require_bound_dimension(n);
  if (samples < 100) throw Error(ErrorCode::kInvalidArgument, "need at least 100 samples");
  if (!(lambda >= 0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  if (lambda == 0) return {};

  std::mt19937_64 engine(seed);
  auto uniform = [&engine] {
    // 53 random bits in (0, 1).
    return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
  };
  // Box-Muller emits normals in pairs; keep the spare.
  bool have_spare = false;
  double spare = 0.0;
  auto normal = [&] {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare = radius * std::sin(angle);
    have_spare = true;
    return radius * std::cos(angle);
  };

  // Welford accumulation of max_j |g_j|.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t s = 1; s <= samples; ++s) {
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) best = std::max(best, std::abs(normal()));
    const double d = best - mean;
    mean += d / static_cast<double>(s);
    m2 += d * (best - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {lambda * mean, lambda * std::sqrt(var / static_cast<double>(samples))};
}

double gaussian_width_bound(std::size_t n, double lambda) {
  return lambda * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

}  // namespace l1opt

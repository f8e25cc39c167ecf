#include <cmath>

#include "doctest.h"
#include "l1opt/counting.hpp"
#include "oracles.hpp"

using namespace l1opt;

TEST_CASE("l1 counts match the box scan") {
  CHECK(count_l1_lattice(2, 1.0) == 5);
  CHECK(count_l1_lattice(3, 2.0) == 25);
  CHECK(count_l1_lattice(1, 3.0) == 7);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (double lambda : {0.0, 0.5, 1.0, 2.0, 3.0, 3.9}) {
      CHECK(count_l1_lattice(n, lambda) == BigInt(oracle::count_l1(n, lambda)));
    }
  }
  CHECK(count_l1_lattice(4, Rational(7, 2)) == BigInt(oracle::count_l1(4, 3.5)));
  CHECK_THROWS_AS(count_l1_lattice(0, 1.0), Error);
}

TEST_CASE("radius two count is 2n^2 + 2n + 1") {
  for (std::size_t n = 1; n <= 50; ++n) {
    const BigInt nn(n);
    CHECK(count_l1_lattice(n, 2.0) == 2 * nn * nn + 2 * nn + 1);
  }
}

TEST_CASE("linf counts") {
  CHECK(count_linf_lattice(2, 1.0) == 9);
  CHECK(count_linf_lattice(3, 0.5) == 1);
  CHECK(count_linf_lattice(4, 2.0) == 625);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (double lambda : {0.0, 1.0, 2.5}) {
      CHECK(count_linf_lattice(n, lambda) == BigInt(oracle::count_linf(n, lambda)));
    }
  }
}

TEST_CASE("l1 count bounds") {
  auto up = l1_count_upper_bound(2, 1, 0.5, BoundMode::kSimplified);
  REQUIRE(up.exact);
  CHECK(*up.exact == 16);
  CHECK(l1_count_lower_bound(2, 1) == 4);
  up = l1_count_upper_bound(3, 1, 0.5, BoundMode::kSimplified);
  CHECK(*up.exact == 81);
  CHECK(l1_count_lower_bound(3, 1) == 6);
  CHECK(*l1_count_upper_bound(10, 0, 0.3).exact == 1);
  CHECK_THROWS_AS(l1_count_upper_bound(1, 1, 0.5), Error);
  CHECK_THROWS_AS(l1_count_upper_bound(3, 1, 1.5), Error);

  // Precise exponent ((2 + delta) L)^2 / 2 with delta = 0.5, L = 2: 12.5.
  const auto precise = l1_count_upper_bound(4, 2, 0.5);
  CHECK_FALSE(precise.exact);
  CHECK(precise.log10 == doctest::Approx(12.5 * std::log10(4.0)));

  for (std::size_t n = 2; n <= 6; ++n) {
    for (double lambda : {1.0, 2.0, 3.0, 4.0}) {
      const BigInt exact(oracle::count_l1(n, lambda));
      CHECK(BigInt(2 * n) <= exact);
      const auto b = l1_count_upper_bound(n, lambda, 0.5, BoundMode::kSimplified);
      REQUIRE(b.exact);
      CHECK(exact <= *b.exact);
    }
  }
}

TEST_CASE("l2 count bounds sandwich the box-scan count") {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (double lambda : {1.0, 1.5, 2.0}) {
      auto [lo, hi] = l2_count_bounds(n, lambda);
      const BigInt c(oracle::count_l2(n, lambda));
      CHECK(lo <= c);
      CHECK(c <= hi);
    }
  }
}

TEST_CASE("covering bounds") {
  auto b = covering_bound_l1(4, 1, 1);
  CHECK(b.log10 == doctest::Approx(0.30103).epsilon(1e-4));
  CHECK(covering_bound_l1(2, 0, 1).exact == BigInt(1));
  b = covering_bound_l1(9, 3, 3 / std::sqrt(2.0));
  REQUIRE(b.exact);
  CHECK(*b.exact == 9);

  auto [lo, hi] = covering_bounds_linf(2, 2, 1);
  CHECK(*lo.exact == 4);
  CHECK(*hi.exact == 16);
  std::tie(lo, hi) = covering_bounds_linf(3, 1, 1);
  CHECK(*lo.exact == 1);
  CHECK(*hi.exact == 27);
  std::tie(lo, hi) = covering_bounds_linf(1, 0, 1);
  CHECK(*lo.exact == 0);
  CHECK(*hi.exact == 2);
  CHECK_THROWS_AS(covering_bound_l1(3, 1, 0), Error);
}

TEST_CASE("oracle complexity bound") {
  CHECK(*oracle_complexity_bound(2, 2, 0.5, BoundMode::kSimplified).exact == 131072);
  CHECK(*oracle_complexity_bound(3, 1, 0.5, BoundMode::kSimplified).exact == 243);
  CHECK(*oracle_complexity_bound(5, 0, 0.5).exact == 5);
  CHECK(*oracle_complexity_bound(5, 0, 0.5, BoundMode::kSimplified).exact == 5);

  // Too many digits for an exact value; log10 still reported.
  const auto huge = oracle_complexity_bound(1000, 100, 0.5, BoundMode::kSimplified);
  CHECK_FALSE(huge.exact);
  CHECK(huge.log10 == doctest::Approx(40001 * 3.0));
}

TEST_CASE("gaussian width estimate") {
  const auto w2 = estimate_gaussian_width(2, 1, 100'000, 7);
  CHECK(w2.mean == doctest::Approx(1.128).epsilon(0.01));
  CHECK(w2.mean < gaussian_width_bound(2, 1));
  const auto w3 = estimate_gaussian_width(3, 2, 100'000, 7);
  CHECK(w3.mean == doctest::Approx(2.66).epsilon(0.01));
  CHECK(w3.mean < gaussian_width_bound(3, 2));
  CHECK(estimate_gaussian_width(5, 0, 1000, 1).mean == 0.0);

  // Same seed, same stream.
  const auto a = estimate_gaussian_width(4, 1, 5000, 11);
  const auto b = estimate_gaussian_width(4, 1, 5000, 11);
  CHECK(a.mean == b.mean);
  CHECK(a.standard_error == b.standard_error);
  CHECK_THROWS_AS(estimate_gaussian_width(4, 1, 10, 1), Error);
}

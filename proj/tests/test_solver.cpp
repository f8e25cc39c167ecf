#include <random>

#include "doctest.h"
#include "l1opt/counting.hpp"
#include "l1opt/lattice.hpp"
#include "l1opt/solver.hpp"
#include "oracles.hpp"

using namespace l1opt;

namespace {

using Q = Rational;

ProblemInstance<Q> sum_objective(std::size_t n) {
  return make_problem<Q>(n, 1, [n](std::span<const std::int64_t> x) {
    Evaluation<Q> e;
    for (std::size_t i = 0; i < n; ++i) e.objective += x[i];
    e.constraints = {Q(-1)};
    return e;
  });
}

// Smallest stream position among the oracle's optima.
oracle::Point first_in_stream(const std::vector<oracle::Point>& optima, std::size_t n,
                              std::int64_t r) {
  for (const auto& pt : l1_lattice_points(n, r)) {
    if (std::find(optima.begin(), optima.end(), pt.x) != optima.end()) return pt.x;
  }
  return {};
}

void check_against_oracle(const Payload<Q>& payload, std::int64_t r) {
  const auto p = make_payload_problem(payload);
  const auto s = solve_l1_ip(p, Q(r));
  const auto ref = oracle::brute_minimize(payload, r, [r](const oracle::Point& x) {
    return oracle::l1(x) <= r;
  });
  REQUIRE((s.status == SolveStatus::kOptimal) == ref.feasible);
  CHECK(s.points_enumerated == oracle::count_l1(payload.n, static_cast<double>(r)));
  if (!ref.feasible) return;
  CHECK(*s.f_star == ref.best);
  CHECK(*s.x_star == first_in_stream(ref.optima, payload.n, r));
  CHECK(*s.ordinal == canonical_ordinal(*s.x_star, r));
}

}  // namespace

TEST_CASE("sum objective: ties go to the smallest canonical ordinal") {
  const auto s = solve_l1_ip(sum_objective(3), Q(1));
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(*s.f_star == -1);
  CHECK(*s.x_star == std::vector<std::int64_t>{0, 0, -1});
  CHECK(s.oracle_calls == 7);
  CHECK(s.points_enumerated == 7);
}

TEST_CASE("small ILP") {
  const auto p = make_linear_oracle<Q>({-1, -1}, {{1, 1}}, {1});
  const auto s = solve_l1_ip(p, Q(2));
  CHECK(*s.f_star == -1);
  CHECK(s.points_enumerated == 13);
  check_against_oracle(*p.payload, 2);
}

TEST_CASE("radius zero checks only the origin") {
  const auto p = make_linear_oracle<Q>({3, -2}, {{1, 0}}, {0});
  auto s = solve_l1_ip(p, Q(1, 2));
  CHECK(*s.x_star == std::vector<std::int64_t>{0, 0});
  CHECK(s.oracle_calls == 1);
  const auto bad = make_linear_oracle<Q>({3, -2}, {{1, 0}}, {-1});
  s = solve_l1_ip(bad, Q(0));
  CHECK(s.status == SolveStatus::kInfeasible);
  CHECK_FALSE(s.x_star);
}

TEST_CASE("oracle evaluation helpers") {
  auto p = make_linear_oracle<Q>({1, -1}, {{1, 1}}, {1});
  std::vector<std::int64_t> x{2, 3};
  CHECK(p.oracle(x).objective == -1);
  x = {1, 1};
  CHECK(p.oracle(x).constraints == std::vector<Q>{1});
  auto q = make_quadratic_oracle<Q>({{1, 0}, {0, 1}}, {0, 0}, {});
  x = {1, -2};
  CHECK(q.oracle(x).objective == 5);
  CHECK_THROWS_AS(make_linear_oracle<Q>({1, 1}, {{1}}, {1}), Error);
}

TEST_CASE("random ILPs agree with the oracle") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 4;
    const std::int64_t r = static_cast<std::int64_t>(rng() % 4);
    check_against_oracle(oracle::random_ilp(n, 1 + rng() % 3, rng), r);
  }
}

TEST_CASE("random nonconvex IQP and IQCQP agree with the oracle") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const std::int64_t r = static_cast<std::int64_t>(rng() % 4);
    check_against_oracle(oracle::random_iqp(n, rng() % 2, t % 2 == 0, rng), r);
  }
}

TEST_CASE("parallel solve equals the serial reference") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng() % 3;
    const auto p = make_payload_problem(oracle::random_iqp(n, 2, false, rng));
    const auto serial = solve_l1_ip_serial(p, Q(3));
    for (int threads : {1, 2, 3, 8}) {
      SolveOptions<Q> opts;
      opts.threads = threads;
      CHECK(solve_l1_ip(p, Q(3), opts) == serial);
    }
  }
}

TEST_CASE("objective lower bound stops early with the serial result") {
  const auto p = sum_objective(4);
  SolveOptions<Q> opts;
  opts.objective_lower_bound = Q(-2);
  const auto serial = solve_l1_ip_serial(p, Q(2), opts);
  CHECK(serial.stopped_early);
  CHECK(*serial.f_star == -2);
  CHECK(serial.points_enumerated < count_l1_lattice_int(4, 2));
  opts.threads = 4;
  CHECK(solve_l1_ip(p, Q(2), opts) == serial);
}

TEST_CASE("float arithmetic with tolerance") {
  const auto p = make_linear_oracle<double>({-1, -1}, {{0.1, 0.2}}, {0.3});
  const auto s = solve_l1_ip(p, 2.0);
  CHECK(*s.f_star == doctest::Approx(-2));
  SolveOptions<double> strict;
  strict.tolerance = 0;
  // 0.1 + 0.2 > 0.3 in binary, so x = (1, 1) is lost without tolerance.
  const auto t = solve_l1_ip(p, 2.0, strict);
  CHECK(*t.f_star == doctest::Approx(-2));
  CHECK(*t.x_star != std::vector<std::int64_t>{1, 1});
}

TEST_CASE("oracle exceptions propagate") {
  auto p = make_problem<Q>(2, 0, [](std::span<const std::int64_t> x) -> Evaluation<Q> {
    if (x[0] == 1) throw Error(ErrorCode::kOracleFailure, "boom");
    return {};
  });
  CHECK_THROWS_AS(solve_l1_ip(p, Q(1)), Error);
  SolveOptions<Q> opts;
  opts.threads = 3;
  CHECK_THROWS_AS(solve_l1_ip(p, Q(2), opts), Error);
}

TEST_CASE("weighted: unit weights reduce to the plain solver") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 4;
    const Q lambda(static_cast<int>(rng() % 4));
    const auto p = make_payload_problem(oracle::random_ilp(n, 2, rng));
    WeightedL1Spec<Q> spec{std::vector<Q>(n, Q(1)), lambda};
    CHECK(solve_weighted_l1_ip(p, spec) == solve_l1_ip(p, lambda));
  }
}

TEST_CASE("weighted examples") {
  const auto p = make_linear_oracle<Q>({-1, -1}, {}, {});
  auto s = solve_weighted_l1_ip(p, WeightedL1Spec<Q>{{1, 10}, 2});
  CHECK(*s.f_star == -2);
  CHECK(*s.x_star == std::vector<std::int64_t>{2, 0});

  s = solve_weighted_l1_ip(p, WeightedL1Spec<Q>{{3, 3}, 2});
  CHECK(*s.x_star == std::vector<std::int64_t>{0, 0});
  CHECK(s.oracle_calls == 1);

  CHECK_THROWS_AS(solve_weighted_l1_ip(p, WeightedL1Spec<Q>{{0, 1}, 2}), Error);
  CHECK_THROWS_AS(solve_weighted_l1_ip(p, WeightedL1Spec<Q>{{1}, 2}), Error);

  const WeightedL1Spec<Q> spec{{Q(1, 2), 3, 1}, Q(5, 2)};
  CHECK(spec.kept_coordinates() == std::vector<std::size_t>{0, 2});
  CHECK(spec.effective_radius() == 5);
}

TEST_CASE("weighted: general weights agree with a weighted box scan") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> wnum(1, 5), wden(1, 3);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<Q> w(n);
    for (auto& e : w) e = Q(wnum(rng), wden(rng));
    const Q lambda(static_cast<int>(1 + rng() % 3));
    const auto payload = oracle::random_ilp(n, 2, rng);
    const auto s = solve_weighted_l1_ip(make_payload_problem(payload), WeightedL1Spec<Q>{w, lambda});

    Q min_w = *std::min_element(w.begin(), w.end());
    const auto box = static_cast<std::int64_t>(floor_to_int64(lambda / min_w));
    const auto ref = oracle::brute_minimize(payload, box, [&](const oracle::Point& x) {
      Q norm = 0;
      for (std::size_t i = 0; i < n; ++i) norm += w[i] * std::llabs(x[i]);
      return norm <= lambda;
    });
    REQUIRE((s.status == SolveStatus::kOptimal) == ref.feasible);
    if (!ref.feasible) continue;
    CHECK(*s.f_star == ref.best);
    CHECK(std::find(ref.optima.begin(), ref.optima.end(), *s.x_star) != ref.optima.end());
  }
}

TEST_CASE("brute_force_box_solve agrees with solve_l1_ip") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const std::int64_t r = static_cast<std::int64_t>(rng() % 4);
    const auto p = make_payload_problem(oracle::random_iqp(n, 1, t % 3 == 0, rng));
    IntBox box{std::vector<std::int64_t>(n, -r), std::vector<std::int64_t>(n, r)};
    BoxSolveOptions<Q> opts;
    opts.extra_l1 = Q(r);
    const auto a = brute_force_box_solve(p, box, opts);
    const auto b = solve_l1_ip(p, Q(r));
    CHECK(a.status == b.status);
    CHECK(a.f_star == b.f_star);
    CHECK(a.x_star == b.x_star);
  }
  // Degenerate box: only the origin.
  const auto p = make_linear_oracle<Q>({1, 1}, {}, {});
  const auto s = brute_force_box_solve(p, IntBox{{0, 0}, {0, 0}});
  CHECK(s.points_enumerated == 1);
  CHECK(*s.x_star == std::vector<std::int64_t>{0, 0});
}

#pragma once

// Mixed-integer extension: min { f(x, y) : g(x, y) <= 0, |x|_1 <= lambda,
// x integer, y real } where the problem is convex in y for every fixed x.
// Enumerates x canonically and hands each one to a convex inner solver.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "l1opt/numeric.hpp"
#include "l1opt/problem.hpp"
#include "l1opt/solver.hpp"

namespace l1opt {

template <class T>
struct InnerResult {
  bool feasible = false;
  std::vector<T> y;
  T value{};
};

template <class T>
struct MixedProblem {
  std::size_t n = 0;  // integer block
  std::size_t m = 0;  // continuous block
  // Solves the convex subproblem in y for a fixed x. Must be exact, or
  // document its tolerance. Throws to signal failure.
  std::function<InnerResult<T>(std::span<const std::int64_t>)> inner_solver;
};

template <class T>
struct MixedSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<std::vector<std::int64_t>> x;
  std::optional<std::vector<T>> y;
  std::optional<T> value;
  std::optional<BigInt> ordinal;
  std::uint64_t inner_solves = 0;
  std::uint64_t points_enumerated = 0;

  friend bool operator==(const MixedSolution&, const MixedSolution&) = default;
};

// Ties go to the smallest canonical ordinal of x. The inner solver must be
// reentrant when threads > 1.
template <class T>
MixedSolution<T> solve_mixed_integer(const MixedProblem<T>& p, const T& lambda, int threads = 1);

// min cx'x + cy'y  s.t.  Ax x + Ay y <= b, with the y-subproblem solved by the
// built-in simplex. An unbounded subproblem throws kOracleFailure.
template <class T>
MixedProblem<T> make_linear_mixed_problem(std::vector<T> cx, std::vector<T> cy, Matrix<T> Ax,
                                          Matrix<T> Ay, std::vector<T> b);

}  // namespace l1opt

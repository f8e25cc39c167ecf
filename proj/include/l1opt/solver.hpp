#pragma once

// Exact solution of min { f(x) : g(x) <= 0, |x|_1 <= lambda, x integer } by
// exhaustive canonical enumeration, its weighted-l1 variant, and an
// independent box-scan solver used for cross-validation.

#include <cstdint>
#include <optional>
#include <vector>

#include "l1opt/numeric.hpp"
#include "l1opt/problem.hpp"

namespace l1opt {

enum class SolveStatus { kOptimal, kInfeasible };

std::string_view status_name(SolveStatus s);

template <class T>
struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<std::vector<std::int64_t>> x_star;
  std::optional<T> f_star;
  // Canonical ordinal of the winner in the enumeration that produced it (for
  // the weighted solver: of the reduced vector y).
  std::optional<BigInt> ordinal;
  std::uint64_t oracle_calls = 0;
  std::uint64_t points_enumerated = 0;
  // Set when enumeration ended at the caller's objective lower bound.
  bool stopped_early = false;

  friend bool operator==(const Solution&, const Solution&) = default;
};

template <class T>
struct SolveOptions {
  // Per-constraint feasibility slack: 0 for Rational, 1e-9 for double.
  T tolerance = ScalarTraits<T>::default_tolerance();
  // 1 runs the serial reference kernel; more uses OpenMP chunks. Oracles must
  // be reentrant when threads > 1.
  int threads = 1;
  // Stop at the first feasible point whose objective is <= this value. Off by
  // default. Reported counters are those of the serial scan.
  std::optional<T> objective_lower_bound;
};

template <class T>
Solution<T> solve_l1_ip(const ProblemInstance<T>& p, const T& lambda,
                        const SolveOptions<T>& opts = {});

// Always the single-threaded kernel, whatever opts.threads says.
template <class T>
Solution<T> solve_l1_ip_serial(const ProblemInstance<T>& p, const T& lambda,
                               const SolveOptions<T>& opts = {});

template <class T>
struct WeightedL1Spec {
  std::vector<T> w;
  T lambda{};

  // Throws kInvalidWeights if any weight is <= 0 or the size is wrong.
  void validate(std::size_t n) const;
  // Indices with w_i <= lambda, ascending.
  std::vector<std::size_t> kept_coordinates() const;
  // lambda / min_i w_i over all i.
  T effective_radius() const;
};

// min { f(x) : g(x) <= 0, sum_i w_i |x_i| <= lambda, x integer }.
// Coordinates with w_i > lambda are fixed to 0; the remaining ones are
// enumerated as y in the l1-ball of radius floor(lambda / min_i w_i) and the
// exact weighted constraint is re-checked before each oracle call.
template <class T>
Solution<T> solve_weighted_l1_ip(const ProblemInstance<T>& p, const WeightedL1Spec<T>& spec,
                                 const SolveOptions<T>& opts = {});

struct IntBox {
  std::vector<std::int64_t> lower;
  std::vector<std::int64_t> upper;
};

template <class T>
struct BoxSolveOptions {
  // Restrict to |x|_1 <= floor(extra_l1); ties then go to the smallest
  // canonical ordinal instead of the lexicographically smallest point.
  std::optional<T> extra_l1;
  // Restrict to the weighted ball; ties go to the smallest canonical ordinal
  // of the reduced vector, matching solve_weighted_l1_ip.
  std::optional<WeightedL1Spec<T>> weighted;
  T tolerance = ScalarTraits<T>::default_tolerance();
};

// Exhaustive scan of an integer box in lexicographic order. Independent of
// the lattice enumerator; used as the test oracle.
template <class T>
Solution<T> brute_force_box_solve(const ProblemInstance<T>& p, const IntBox& box,
                                  const BoxSolveOptions<T>& opts = {});

}  // namespace l1opt

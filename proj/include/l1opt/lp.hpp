#pragma once

// Dense two-phase simplex over an ordered field. With Rational it is exact;
// with double it uses a 1e-9 pivot tolerance. Bland's rule throughout, so it
// terminates on degenerate problems. Intended for the small LPs of the bound
// estimator, not for large sparse models.

#include <optional>
#include <vector>

#include "l1opt/numeric.hpp"
#include "l1opt/problem.hpp"

namespace l1opt {

enum class Sense { kMinimize, kMaximize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view lp_status_name(LpStatus s);

// optimize c'x subject to A x <= b and optional per-variable bounds.
// `lower` / `upper` may be empty (all free) or have one entry per variable.
template <class T>
struct LpProblem {
  std::vector<T> c;
  Matrix<T> A;
  std::vector<T> b;
  Sense sense = Sense::kMaximize;
  std::vector<std::optional<T>> lower;
  std::vector<std::optional<T>> upper;
};

template <class T>
struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  T value{};
  std::vector<T> x;
};

// Reports infeasible / unbounded through the status.
template <class T>
LpResult<T> lp_optimize(const LpProblem<T>& problem);

// Same, but throws kLpInfeasible / kLpUnbounded.
template <class T>
LpResult<T> lp_solve(const LpProblem<T>& problem);

}  // namespace l1opt

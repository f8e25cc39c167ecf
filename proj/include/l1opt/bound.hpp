#pragma once

// A-priori oracle-complexity bound for integer programs whose continuous
// relaxation C = {x : g(x) <= 0} is bounded and convex.
//
// The estimator brackets C coordinate-wise (2n solves), splits x = s - t with
// 0 <= s <= u and 0 <= t <= l, and maximizes sum(s + t) over the lifted set
// (one solve over 2n variables). The floor of that maximum is an l1 radius rho
// whose ball contains every integer point of C, so enumerating rho*B1 solves
// the program; the bound is the enumeration's complexity at radius rho.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "l1opt/counting.hpp"
#include "l1opt/lp.hpp"
#include "l1opt/numeric.hpp"

namespace l1opt {

template <class T>
struct BackendResult {
  LpStatus status = LpStatus::kInfeasible;
  T value{};
  std::vector<T> point;
};

// Linear optimization over a convex set C in R^n. Implementations must report
// unbounded and infeasible distinctly.
template <class T>
class ConvexOptBackend {
 public:
  virtual ~ConvexOptBackend() = default;

  virtual std::size_t dimension() const = 0;
  // True if the solve methods may be called concurrently.
  virtual bool reentrant() const { return false; }

  // max direction'x over C.
  virtual BackendResult<T> maximize(std::span<const T> direction) const = 0;

  // max cs's + ct't over {(s, t) : s - t in C, 0 <= s <= upper, 0 <= t <= lower}.
  // The returned point is (s, t) concatenated.
  virtual BackendResult<T> maximize_lifted(std::span<const T> cs, std::span<const T> ct,
                                           std::span<const T> upper,
                                           std::span<const T> lower) const = 0;
};

// C = {x : A x <= b}, solved with the built-in simplex.
template <class T>
class LpBackend final : public ConvexOptBackend<T> {
 public:
  LpBackend(Matrix<T> A, std::vector<T> b);

  std::size_t dimension() const override { return n_; }
  bool reentrant() const override { return true; }
  BackendResult<T> maximize(std::span<const T> direction) const override;
  BackendResult<T> maximize_lifted(std::span<const T> cs, std::span<const T> ct,
                                   std::span<const T> upper,
                                   std::span<const T> lower) const override;

  const Matrix<T>& A() const { return A_; }
  const std::vector<T>& b() const { return b_; }

 private:
  std::size_t n_;
  Matrix<T> A_;
  std::vector<T> b_;
};

template <class T>
struct BoundReport {
  std::vector<T> l;  // l_i = -min(min_C x_i, 0)
  std::vector<T> u;  // u_i = max(max_C x_i, 0)
  T lifted_max{};    // max sum(s + t) before flooring
  std::int64_t rho = 0;
  BigBound bnd;
  double delta = 0.83;
  BoundMode mode = BoundMode::kSimplified;
  std::size_t backend_calls = 0;
};

template <class T>
struct BoundOptions {
  double delta = 0.83;  // (2 + 0.83)^2 / 2 ~= 4, matching the simplified form
  BoundMode mode = BoundMode::kSimplified;
  // Coordinate solves run concurrently when > 1 and the backend is reentrant.
  int threads = 1;
};

// Exactly 2n + 1 backend calls. Throws kUnboundedRegion / kInfeasibleRegion,
// and kInvalidDimension for n < 2 (the bound formula needs n >= 2).
//
// With double, rho = floor(max + 1e-9) so an integral maximum is not lost to
// roundoff; with Rational the floor is exact.
template <class T>
BoundReport<T> estimate_bound(const ConvexOptBackend<T>& backend, const BoundOptions<T>& opts = {});

using FeasibilityOracle = std::function<bool(std::span<const std::int64_t>)>;

// A x <= b, evaluated exactly.
template <class T>
FeasibilityOracle make_linear_feasibility(Matrix<T> A, std::vector<T> b);

struct VerifyResult {
  bool passed = true;
  std::optional<std::vector<std::int64_t>> counterexample;
  bool exhaustive = true;
  std::uint64_t points_checked = 0;
  std::string note;
};

// Checks that every feasible integer point in the box [-l, u] has
// |x|_1 <= rho. Exhaustive (lexicographic order) when the box holds at most
// `budget` points; otherwise samples `budget` points uniformly and says so in
// `note`.
template <class T>
VerifyResult verify_cover(const BoundReport<T>& report, const FeasibilityOracle& feasible,
                          std::uint64_t budget = 1'000'000, std::uint64_t seed = 1);

}  // namespace l1opt

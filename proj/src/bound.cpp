#include "l1opt/bound.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <random>

namespace l1opt {

template <class T>
LpBackend<T>::LpBackend(Matrix<T> A, std::vector<T> b)
    : n_(A.empty() ? 0 : A.front().size()), A_(std::move(A)), b_(std::move(b)) {
  if (A_.size() != b_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "A and b have different row counts");
  }
  for (const auto& row : A_) {
    if (row.size() != n_) throw Error(ErrorCode::kShapeMismatch, "ragged constraint matrix");
  }
}

template <class T>
BackendResult<T> LpBackend<T>::maximize(std::span<const T> direction) const {
  LpProblem<T> lp;
  lp.c.assign(direction.begin(), direction.end());
  lp.A = A_;
  lp.b = b_;
  lp.sense = Sense::kMaximize;
  LpResult<T> r = lp_optimize(lp);
  return {r.status, std::move(r.value), std::move(r.x)};
}

template <class T>
BackendResult<T> LpBackend<T>::maximize_lifted(std::span<const T> cs, std::span<const T> ct,
                                               std::span<const T> upper,
                                               std::span<const T> lower) const {
  // Variables (s, t); A s - A t <= b.
  LpProblem<T> lp;
  lp.c.assign(cs.begin(), cs.end());
  lp.c.insert(lp.c.end(), ct.begin(), ct.end());
  for (std::size_t i = 0; i < A_.size(); ++i) {
    std::vector<T> row = A_[i];
    for (std::size_t j = 0; j < n_; ++j) row.push_back(T(-A_[i][j]));
    lp.A.push_back(std::move(row));
  }
  lp.b = b_;
  lp.sense = Sense::kMaximize;
  lp.lower.assign(2 * n_, T(0));
  lp.upper.resize(2 * n_);
  for (std::size_t j = 0; j < n_; ++j) {
    lp.upper[j] = upper[j];
    lp.upper[n_ + j] = lower[j];
  }
  LpResult<T> r = lp_optimize(lp);
  return {r.status, std::move(r.value), std::move(r.x)};
}

namespace {

template <class T>
void check_status(const BackendResult<T>& r) {
  if (r.status == LpStatus::kUnbounded) {
    throw Error(ErrorCode::kUnboundedRegion,
                "the relaxation {x : g(x) <= 0} is unbounded; no finite l1 cover exists");
  }
  if (r.status == LpStatus::kInfeasible) {
    throw Error(ErrorCode::kInfeasibleRegion, "the relaxation {x : g(x) <= 0} is empty");
  }
}

template <class T>
std::int64_t floor_radius(const T& v) {
  if constexpr (ScalarTraits<T>::exact) {
    return floor_to_int64(v);
  } else {
    return floor_to_int64(v + 1e-9);
  }
}

}  // namespace

template <class T>
BoundReport<T> estimate_bound(const ConvexOptBackend<T>& backend, const BoundOptions<T>& opts) {
  const std::size_t n = backend.dimension();
  if (n < 2) throw Error(ErrorCode::kInvalidDimension, "bound estimation needs n >= 2");

  // Solve k < n maximizes -x_k (so min x_k = -value); solve n + k maximizes x_k.
  std::vector<BackendResult<T>> coord(2 * n);
  std::vector<std::exception_ptr> errors(2 * n);
  const int threads = backend.reentrant() ? std::max(1, opts.threads) : 1;
  const auto solves = static_cast<std::int64_t>(2 * n);
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
  for (std::int64_t k = 0; k < solves; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      std::vector<T> dir(n, T(0));
      dir[idx % n] = idx < n ? T(-1) : T(1);
      coord[idx] = backend.maximize(dir);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (std::size_t k = 0; k < 2 * n; ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    check_status(coord[k]);
  }

  BoundReport<T> report;
  report.delta = opts.delta;
  report.mode = opts.mode;
  report.l.resize(n);
  report.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const T min_xi = T(-coord[i].value);
    const T max_xi = coord[n + i].value;
    report.l[i] = min_xi < 0 ? T(-min_xi) : T(0);
    report.u[i] = max_xi > 0 ? max_xi : T(0);
  }

  const std::vector<T> ones(n, T(1));
  BackendResult<T> lifted = backend.maximize_lifted(ones, ones, report.u, report.l);
  check_status(lifted);
  report.backend_calls = 2 * n + 1;
  report.lifted_max = lifted.value;
  report.rho = floor_radius(lifted.value);
  report.bnd = oracle_complexity_bound(n, static_cast<double>(report.rho), opts.delta, opts.mode);
  return report;
}

template <class T>
FeasibilityOracle make_linear_feasibility(Matrix<T> A, std::vector<T> b) {
  return [A = std::move(A), b = std::move(b)](std::span<const std::int64_t> x) {
    for (std::size_t i = 0; i < A.size(); ++i) {
      T lhs{};
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] != 0) lhs += A[i][j] * ScalarTraits<T>::from_int(x[j]);
      }
      if (lhs > b[i]) return false;
    }
    return true;
  };
}

template <class T>
VerifyResult verify_cover(const BoundReport<T>& report, const FeasibilityOracle& feasible,
                          std::uint64_t budget, std::uint64_t seed) {
  const std::size_t n = report.l.size();
  if (report.u.size() != n || n == 0) {
    throw Error(ErrorCode::kShapeMismatch, "report bounds have inconsistent sizes");
  }
  std::vector<std::int64_t> lo(n), hi(n);
  BigInt box_points = 1;
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = -floor_radius(report.l[i]);
    hi[i] = floor_radius(report.u[i]);
    box_points *= BigInt(hi[i] - lo[i] + 1);
  }

  VerifyResult result;
  auto check = [&](const std::vector<std::int64_t>& x) {
    ++result.points_checked;
    std::int64_t norm = 0;
    for (auto xi : x) norm += std::llabs(xi);
    if (norm > report.rho && feasible(x)) {
      result.passed = false;
      result.counterexample = x;
      return false;
    }
    return true;
  };

  if (box_points <= BigInt(budget)) {
    std::vector<std::int64_t> x = lo;
    while (true) {
      if (!check(x)) return result;
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (x[i] < hi[i]) {
          ++x[i];
          break;
        }
        x[i] = lo[i];
        if (i == 0) return result;
      }
    }
  }

  result.exhaustive = false;
  std::mt19937_64 engine(seed);
  std::vector<std::uniform_int_distribution<std::int64_t>> dists;
  for (std::size_t i = 0; i < n; ++i) dists.emplace_back(lo[i], hi[i]);
  std::vector<std::int64_t> x(n);
  for (std::uint64_t s = 0; s < budget; ++s) {
    for (std::size_t i = 0; i < n; ++i) x[i] = dists[i](engine);
    if (!check(x)) break;
  }
  result.note = "box holds " + box_points.str() + " points, more than the budget of " +
                std::to_string(budget) + "; checked " + std::to_string(result.points_checked) +
                " uniform samples, so a pass is evidence rather than proof";
  return result;
}

#define L1OPT_INSTANTIATE(T)                                                                   \
  template class LpBackend<T>;                                                                 \
  template BoundReport<T> estimate_bound<T>(const ConvexOptBackend<T>&,                        \
                                            const BoundOptions<T>&);                           \
  template FeasibilityOracle make_linear_feasibility<T>(Matrix<T>, std::vector<T>);            \
  template VerifyResult verify_cover<T>(const BoundReport<T>&, const FeasibilityOracle&,       \
                                        std::uint64_t, std::uint64_t);

L1OPT_INSTANTIATE(Rational)
L1OPT_INSTANTIATE(double)

#undef L1OPT_INSTANTIATE

}  // namespace l1opt

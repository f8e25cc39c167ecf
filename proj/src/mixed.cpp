#include "l1opt/mixed.hpp"

#include <string>

#include "l1opt/lp.hpp"
#include "scan_kernel.hpp"

namespace l1opt {

namespace {

// Inner value plus its minimizer; ordered by value only.
template <class T>
struct Candidate {
  T value{};
  std::vector<T> y;
  bool operator<(const Candidate& other) const { return value < other.value; }
};

std::string format_point(std::span<const std::int64_t> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

}  // namespace

template <class T>
MixedSolution<T> solve_mixed_integer(const MixedProblem<T>& p, const T& lambda, int threads) {
  if (p.n == 0) throw Error(ErrorCode::kInvalidDimension, "integer block must have n >= 1");
  if (!p.inner_solver) throw Error(ErrorCode::kInvalidArgument, "mixed problem has no inner solver");
  const std::int64_t radius = radius_floor(lambda);

  auto make_visitor = [&p] {
    return [&p](const LatticePoint& pt, Candidate<T>& out) {
      InnerResult<T> r = p.inner_solver(pt.x);
      if (!r.feasible) return detail::Visit::kRejected;
      if (r.y.size() != p.m) {
        throw Error(ErrorCode::kOracleFailure,
                    "inner solver returned y of size " + std::to_string(r.y.size()) +
                        ", expected " + std::to_string(p.m));
      }
      out.value = std::move(r.value);
      out.y = std::move(r.y);
      return detail::Visit::kAccepted;
    };
  };
  auto r = detail::scan_ball<Candidate<T>>(p.n, radius, threads, make_visitor, std::nullopt);

  MixedSolution<T> s;
  s.points_enumerated = r.points;
  s.inner_solves = r.calls;
  if (r.found) {
    s.status = SolveStatus::kOptimal;
    s.x = std::move(r.point);
    s.y = std::move(r.best.y);
    s.value = std::move(r.best.value);
    s.ordinal = std::move(r.ordinal);
  }
  return s;
}

template <class T>
MixedProblem<T> make_linear_mixed_problem(std::vector<T> cx, std::vector<T> cy, Matrix<T> Ax,
                                          Matrix<T> Ay, std::vector<T> b) {
  const std::size_t n = cx.size();
  const std::size_t m = cy.size();
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "integer block must have n >= 1");
  if (Ax.size() != b.size() || Ay.size() != b.size()) {
    throw Error(ErrorCode::kShapeMismatch, "Ax, Ay and b must have the same number of rows");
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (Ax[i].size() != n) throw Error(ErrorCode::kShapeMismatch, "Ax row width != len(cx)");
    if (Ay[i].size() != m) throw Error(ErrorCode::kShapeMismatch, "Ay row width != len(cy)");
  }

  MixedProblem<T> p;
  p.n = n;
  p.m = m;
  p.inner_solver = [=](std::span<const std::int64_t> x) {
    T fixed{};
    for (std::size_t j = 0; j < n; ++j) fixed += cx[j] * ScalarTraits<T>::from_int(x[j]);
    InnerResult<T> out;
    if (m == 0) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        T lhs{};
        for (std::size_t j = 0; j < n; ++j) lhs += Ax[i][j] * ScalarTraits<T>::from_int(x[j]);
        if (lhs > b[i]) return out;
      }
      out.feasible = true;
      out.value = fixed;
      return out;
    }
    LpProblem<T> lp;
    lp.c = cy;
    lp.sense = Sense::kMinimize;
    lp.A = Ay;
    lp.b = b;
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) lp.b[i] -= Ax[i][j] * ScalarTraits<T>::from_int(x[j]);
    }
    LpResult<T> r = lp_optimize(lp);
    if (r.status == LpStatus::kUnbounded) {
      throw Error(ErrorCode::kOracleFailure,
                  "continuous subproblem is unbounded at x = " + format_point(x));
    }
    if (r.status == LpStatus::kInfeasible) return out;
    out.feasible = true;
    out.value = fixed + r.value;
    out.y = std::move(r.x);
    return out;
  };
  return p;
}

#define L1OPT_INSTANTIATE(T)                                                                   \
  template MixedSolution<T> solve_mixed_integer<T>(const MixedProblem<T>&, const T&, int);     \
  template MixedProblem<T> make_linear_mixed_problem<T>(std::vector<T>, std::vector<T>,        \
                                                        Matrix<T>, Matrix<T>, std::vector<T>);

L1OPT_INSTANTIATE(Rational)
L1OPT_INSTANTIATE(double)

#undef L1OPT_INSTANTIATE

}  // namespace l1opt

#include "l1opt/solver.hpp"

#include <cstdlib>
#include <string>

#include "l1opt/lattice.hpp"
#include "scan_kernel.hpp"

namespace l1opt {

std::string_view status_name(SolveStatus s) {
  return s == SolveStatus::kOptimal ? "optimal" : "infeasible";
}

namespace {

template <class T>
bool feasible(const Evaluation<T>& e, std::size_t m, const T& tol) {
  if (e.constraints.size() != m) {
    throw Error(ErrorCode::kOracleFailure, "oracle returned " +
                                               std::to_string(e.constraints.size()) +
                                               " constraint values, expected " + std::to_string(m));
  }
  for (const T& g : e.constraints) {
    if (g > tol) return false;
  }
  return true;
}

template <class T>
Solution<T> to_solution(detail::ScanResult<T>&& r) {
  Solution<T> s;
  s.points_enumerated = r.points;
  s.oracle_calls = r.calls;
  s.stopped_early = r.stopped;
  if (r.found) {
    s.status = SolveStatus::kOptimal;
    s.x_star = std::move(r.point);
    s.f_star = std::move(r.best);
    s.ordinal = std::move(r.ordinal);
  }
  return s;
}

template <class T>
void check_problem(const ProblemInstance<T>& p) {
  if (p.n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be >= 1");
  if (!p.oracle) throw Error(ErrorCode::kInvalidArgument, "problem has no oracle");
}

template <class T>
Solution<T> solve_impl(const ProblemInstance<T>& p, const T& lambda, const SolveOptions<T>& opts,
                       int threads) {
  check_problem(p);
  const std::int64_t radius = radius_floor(lambda);
  auto make_visitor = [&p, &opts] {
    return [&p, &opts](const LatticePoint& pt, T& value) {
      Evaluation<T> e = p.oracle(pt.x);
      if (!feasible(e, p.m, opts.tolerance)) return detail::Visit::kRejected;
      value = std::move(e.objective);
      return detail::Visit::kAccepted;
    };
  };
  return to_solution(
      detail::scan_ball<T>(p.n, radius, threads, make_visitor, opts.objective_lower_bound));
}

template <class T>
T abs_value(const T& v) {
  return v < 0 ? T(-v) : v;
}

template <class T>
std::int64_t weighted_radius(const T& mu) {
  if constexpr (ScalarTraits<T>::exact) {
    return floor_to_int64(mu);
  } else {
    // A float quotient that should be integral can land just below it; the
    // exact weighted check inside the loop discards any extra points.
    return floor_to_int64(mu * (1.0 + 1e-12) + 1e-9);
  }
}

template <class T>
T weighted_norm(const std::vector<T>& w, std::span<const std::int64_t> x) {
  T total{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) total += w[i] * ScalarTraits<T>::from_int(std::llabs(x[i]));
  }
  return total;
}

}  // namespace

template <class T>
Solution<T> solve_l1_ip(const ProblemInstance<T>& p, const T& lambda, const SolveOptions<T>& opts) {
  return solve_impl(p, lambda, opts, opts.threads);
}

template <class T>
Solution<T> solve_l1_ip_serial(const ProblemInstance<T>& p, const T& lambda,
                               const SolveOptions<T>& opts) {
  return solve_impl(p, lambda, opts, 1);
}

template <class T>
void WeightedL1Spec<T>::validate(std::size_t n) const {
  if (w.size() != n) {
    throw Error(ErrorCode::kInvalidWeights, "weights: expected " + std::to_string(n) +
                                                " entries, got " + std::to_string(w.size()));
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0)) {
      throw Error(ErrorCode::kInvalidWeights,
                  "weights[" + std::to_string(i) + "] must be > 0");
    }
  }
  if (lambda < 0) throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
}

template <class T>
std::vector<std::size_t> WeightedL1Spec<T>::kept_coordinates() const {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= lambda) kept.push_back(i);
  }
  return kept;
}

template <class T>
T WeightedL1Spec<T>::effective_radius() const {
  T min_w = w.front();
  for (const T& wi : w) min_w = std::min(min_w, wi);
  return lambda / min_w;
}

template <class T>
Solution<T> solve_weighted_l1_ip(const ProblemInstance<T>& p, const WeightedL1Spec<T>& spec,
                                 const SolveOptions<T>& opts) {
  check_problem(p);
  spec.validate(p.n);
  const std::vector<std::size_t> kept = spec.kept_coordinates();
  const T bound = spec.lambda + opts.tolerance;

  auto evaluate = [&](std::span<const std::int64_t> x, T& value) {
    if (weighted_norm(spec.w, x) > bound) return detail::Visit::kSkipped;
    Evaluation<T> e = p.oracle(x);
    if (!feasible(e, p.m, opts.tolerance)) return detail::Visit::kRejected;
    value = std::move(e.objective);
    return detail::Visit::kAccepted;
  };

  if (kept.empty()) {
    // Every weight exceeds lambda, so only the origin is admissible.
    const std::vector<std::int64_t> origin(p.n, 0);
    Solution<T> s;
    s.points_enumerated = 1;
    T value{};
    const auto v = evaluate(origin, value);
    if (v != detail::Visit::kSkipped) s.oracle_calls = 1;
    if (v == detail::Visit::kAccepted) {
      s.status = SolveStatus::kOptimal;
      s.x_star = origin;
      s.f_star = value;
      s.ordinal = BigInt(0);
    }
    return s;
  }

  const std::int64_t radius = weighted_radius(spec.effective_radius());
  auto make_visitor = [&] {
    return [&, x = std::vector<std::int64_t>(p.n, 0)](const LatticePoint& pt,
                                                      T& value) mutable {
      for (std::size_t j = 0; j < kept.size(); ++j) x[kept[j]] = pt.x[j];
      return evaluate(x, value);
    };
  };
  auto result = detail::scan_ball<T>(kept.size(), radius, opts.threads, make_visitor,
                                     opts.objective_lower_bound);
  if (result.found) {
    std::vector<std::int64_t> x(p.n, 0);
    for (std::size_t j = 0; j < kept.size(); ++j) x[kept[j]] = result.point[j];
    result.point = std::move(x);
  }
  return to_solution(std::move(result));
}

template <class T>
Solution<T> brute_force_box_solve(const ProblemInstance<T>& p, const IntBox& box,
                                  const BoxSolveOptions<T>& opts) {
  check_problem(p);
  if (box.lower.size() != p.n || box.upper.size() != p.n) {
    throw Error(ErrorCode::kShapeMismatch, "box dimension does not match the problem");
  }
  for (std::size_t i = 0; i < p.n; ++i) {
    if (box.lower[i] > box.upper[i]) return Solution<T>{};
  }

  std::optional<std::int64_t> l1_radius;
  if (opts.extra_l1) l1_radius = radius_floor(*opts.extra_l1);
  std::vector<std::size_t> kept;
  std::int64_t reduced_radius = 0;
  if (opts.weighted) {
    opts.weighted->validate(p.n);
    kept = opts.weighted->kept_coordinates();
    if (!kept.empty()) reduced_radius = weighted_radius(opts.weighted->effective_radius());
  }

  // Ordering key among equal objective values.
  auto tie_key = [&](const std::vector<std::int64_t>& x) -> BigInt {
    if (opts.weighted) {
      if (kept.empty()) return 0;
      std::vector<std::int64_t> y;
      for (std::size_t i : kept) y.push_back(x[i]);
      return canonical_ordinal(y, reduced_radius);
    }
    return canonical_ordinal(x, *l1_radius);
  };
  const bool ordinal_ties = l1_radius.has_value() || opts.weighted.has_value();

  Solution<T> best;
  std::vector<std::int64_t> x = box.lower;
  while (true) {
    bool admissible = true;
    if (l1_radius) {
      std::int64_t norm = 0;
      for (auto xi : x) norm += std::llabs(xi);
      admissible = norm <= *l1_radius;
    }
    if (admissible && opts.weighted) {
      admissible = weighted_norm(opts.weighted->w, x) <= opts.weighted->lambda + opts.tolerance;
    }
    if (admissible) {
      ++best.points_enumerated;
      ++best.oracle_calls;
      Evaluation<T> e = p.oracle(x);
      if (feasible(e, p.m, opts.tolerance)) {
        bool take = !best.f_star || e.objective < *best.f_star;
        // Lexicographic scan already visits the lexicographically smallest
        // tie first; ordinal ties need an explicit comparison.
        if (!take && ordinal_ties && e.objective == *best.f_star) {
          take = tie_key(x) < *best.ordinal;
        }
        if (take) {
          best.status = SolveStatus::kOptimal;
          best.f_star = std::move(e.objective);
          best.x_star = x;
          if (ordinal_ties) best.ordinal = tie_key(x);
        }
      }
    }
    // Odometer step over the box.
    std::size_t i = p.n;
    while (i > 0) {
      --i;
      if (x[i] < box.upper[i]) {
        ++x[i];
        break;
      }
      x[i] = box.lower[i];
      if (i == 0) return best;
    }
  }
}

#define L1OPT_INSTANTIATE(T)                                                                   \
  template struct WeightedL1Spec<T>;                                                           \
  template Solution<T> solve_l1_ip<T>(const ProblemInstance<T>&, const T&,                     \
                                      const SolveOptions<T>&);                                 \
  template Solution<T> solve_l1_ip_serial<T>(const ProblemInstance<T>&, const T&,              \
                                             const SolveOptions<T>&);                          \
  template Solution<T> solve_weighted_l1_ip<T>(const ProblemInstance<T>&,                      \
                                               const WeightedL1Spec<T>&,                       \
                                               const SolveOptions<T>&);                        \
  template Solution<T> brute_force_box_solve<T>(const ProblemInstance<T>&, const IntBox&,      \
                                                const BoxSolveOptions<T>&);

L1OPT_INSTANTIATE(Rational)
L1OPT_INSTANTIATE(double)

#undef L1OPT_INSTANTIATE

}  // namespace l1opt

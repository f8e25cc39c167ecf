#include "l1opt/ptas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "scan_kernel.hpp"

namespace l1opt {

void LipschitzProblem::validate() const {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be >= 1");
  if (!oracle) throw Error(ErrorCode::kInvalidArgument, "problem has no oracle");
  if (!(kappa > 0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::kInvalidArgument, "kappa must be > 0");
  }
  if (!(lambda >= 0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  }
}

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be > 0");
  }
}

// floor(lambda / step), then pulled down until step * R <= lambda holds in
// floating point, so every grid point stays inside the ball.
std::int64_t grid_radius(double lambda, double step) {
  std::int64_t r = floor_to_int64(lambda / step * (1.0 + 1e-12));
  while (r > 0 && static_cast<double>(r) * step > lambda) --r;
  return r;
}

double max_violation(const Evaluation<double>& e) {
  double worst = 0.0;
  for (double g : e.constraints) worst = std::max(worst, g);
  return worst;
}

Evaluation<double> checked_eval(const LipschitzProblem& p, std::span<const double> x) {
  Evaluation<double> e = p.oracle(x);
  if (e.constraints.size() != p.m) {
    throw Error(ErrorCode::kOracleFailure, "oracle returned " +
                                               std::to_string(e.constraints.size()) +
                                               " constraint values, expected " + std::to_string(p.m));
  }
  return e;
}

bool accepts(const Evaluation<double>& e, double limit) {
  return std::all_of(e.constraints.begin(), e.constraints.end(),
                     [limit](double g) { return g <= limit; });
}

void finish(const LipschitzProblem& p, ContinuousSolution& s, std::vector<std::int64_t> grid) {
  std::vector<double> x(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) x[i] = s.step * static_cast<double>(grid[i]);
  const Evaluation<double> e = checked_eval(p, x);
  s.status = SolveStatus::kOptimal;
  s.max_violation = max_violation(e);
  s.x_hat = std::move(x);
  s.grid_point = std::move(grid);
}

ContinuousSolution run_ptas(const LipschitzProblem& p, double epsilon, int threads,
                            const std::vector<double>* weights) {
  p.validate();
  check_epsilon(epsilon);
  ContinuousSolution s;
  s.step = epsilon / p.kappa;

  std::vector<std::size_t> kept(p.n);
  for (std::size_t i = 0; i < p.n; ++i) kept[i] = i;
  std::vector<double> grid_weights;
  if (weights) {
    if (weights->size() != p.n) {
      throw Error(ErrorCode::kInvalidWeights, "weights: expected " + std::to_string(p.n) +
                                                  " entries, got " +
                                                  std::to_string(weights->size()));
    }
    kept.clear();
    double min_w = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.n; ++i) {
      const double w = (*weights)[i];
      if (!(w > 0) || !std::isfinite(w)) {
        throw Error(ErrorCode::kInvalidWeights, "weights[" + std::to_string(i) + "] must be > 0");
      }
      grid_weights.push_back(w * s.step);
      if (grid_weights.back() <= p.lambda) kept.push_back(i);
      min_w = std::min(min_w, grid_weights.back());
    }
    s.grid_radius = kept.empty() ? 0 : grid_radius(p.lambda, min_w);
  } else {
    s.grid_radius = grid_radius(p.lambda, s.step);
  }

  auto admissible = [&](std::span<const std::int64_t> v) {
    if (!weights) return true;
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      total += grid_weights[i] * static_cast<double>(std::llabs(v[i]));
    }
    return total <= p.lambda * (1.0 + 1e-12);
  };

  if (kept.empty()) {
    const std::vector<std::int64_t> origin(p.n, 0);
    const std::vector<double> x(p.n, 0.0);
    s.points_enumerated = 1;
    s.oracle_calls = 1;
    const Evaluation<double> e = checked_eval(p, x);
    if (accepts(e, epsilon)) {
      s.f_hat = e.objective;
      s.ordinal = BigInt(0);
      finish(p, s, origin);
    }
    return s;
  }

  auto make_visitor = [&] {
    return [&, v = std::vector<std::int64_t>(p.n, 0), x = std::vector<double>(p.n, 0.0)](
               const LatticePoint& pt, double& value) mutable {
      for (std::size_t j = 0; j < kept.size(); ++j) v[kept[j]] = pt.x[j];
      if (!admissible(v)) return detail::Visit::kSkipped;
      for (std::size_t i = 0; i < p.n; ++i) x[i] = s.step * static_cast<double>(v[i]);
      Evaluation<double> e = checked_eval(p, x);
      if (!accepts(e, epsilon)) return detail::Visit::kRejected;
      value = e.objective;
      return detail::Visit::kAccepted;
    };
  };
  auto r = detail::scan_ball<double>(kept.size(), s.grid_radius, threads, make_visitor,
                                     std::nullopt);
  s.points_enumerated = r.points;
  s.oracle_calls = r.calls;
  if (r.found) {
    std::vector<std::int64_t> grid(p.n, 0);
    for (std::size_t j = 0; j < kept.size(); ++j) grid[kept[j]] = r.point[j];
    s.f_hat = r.best;
    s.ordinal = std::move(r.ordinal);
    finish(p, s, std::move(grid));
  }
  return s;
}

ContinuousSolution grid_scan(const LipschitzProblem& p, const std::vector<double>* weights,
                             double step, double accept, std::uint64_t max_points) {
  p.validate();
  if (!(step > 0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidArgument, "step must be > 0");
  }
  ContinuousSolution s;
  s.step = step;
  const std::int64_t K = grid_radius(p.lambda, step);
  s.grid_radius = K;
  std::vector<std::int64_t> reach(p.n, K);
  if (weights) {
    if (weights->size() != p.n) throw Error(ErrorCode::kInvalidWeights, "weights size != n");
    for (std::size_t i = 0; i < p.n; ++i) {
      if (!((*weights)[i] > 0)) throw Error(ErrorCode::kInvalidWeights, "weights must be > 0");
      reach[i] = grid_radius(p.lambda, (*weights)[i] * step);
    }
  }
  double box = 1.0;
  for (auto r : reach) box *= static_cast<double>(2 * r + 1);
  if (box > static_cast<double>(max_points)) {
    throw Error(ErrorCode::kGridTooLarge,
                "reference grid has " + std::to_string(box) + " points, limit " +
                    std::to_string(max_points));
  }

  std::vector<std::int64_t> k(p.n);
  for (std::size_t i = 0; i < p.n; ++i) k[i] = -reach[i];
  std::vector<double> x(p.n);
  std::vector<std::int64_t> best_k;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    bool inside;
    if (weights) {
      double total = 0.0;
      for (std::size_t i = 0; i < p.n; ++i) {
        total += (*weights)[i] * step * static_cast<double>(std::llabs(k[i]));
      }
      inside = total <= p.lambda * (1.0 + 1e-12);
    } else {
      std::int64_t norm = 0;
      for (auto ki : k) norm += std::llabs(ki);
      inside = norm <= K;
    }
    if (inside) {
      ++s.points_enumerated;
      ++s.oracle_calls;
      for (std::size_t i = 0; i < p.n; ++i) x[i] = step * static_cast<double>(k[i]);
      const Evaluation<double> e = checked_eval(p, x);
      if (accepts(e, accept) && e.objective < best) {
        best = e.objective;
        best_k = k;
      }
    }
    std::size_t i = p.n;
    bool wrapped = true;
    while (i > 0) {
      --i;
      if (k[i] < reach[i]) {
        ++k[i];
        wrapped = false;
        break;
      }
      k[i] = -reach[i];
    }
    if (wrapped) break;
  }
  if (!best_k.empty()) {
    s.f_hat = best;
    finish(p, s, std::move(best_k));
  }
  return s;
}

}  // namespace

ContinuousSolution solve_lipschitz_ptas(const LipschitzProblem& p, double epsilon,
                                        const PtasOptions& opts) {
  return run_ptas(p, epsilon, opts.threads, nullptr);
}

ContinuousSolution solve_lipschitz_ptas_serial(const LipschitzProblem& p, double epsilon) {
  return run_ptas(p, epsilon, 1, nullptr);
}

ContinuousSolution solve_weighted_lipschitz_ptas(const LipschitzProblem& p,
                                                 const std::vector<double>& weights,
                                                 double epsilon, const PtasOptions& opts) {
  return run_ptas(p, epsilon, opts.threads, &weights);
}

ContinuousSolution fine_grid_reference(const LipschitzProblem& p, double step,
                                       std::uint64_t max_points) {
  return grid_scan(p, nullptr, step, 0.0, max_points);
}

ContinuousSolution weighted_grid_reference(const LipschitzProblem& p,
                                           const std::vector<double>& weights, double step,
                                           double accept_tolerance, std::uint64_t max_points) {
  return grid_scan(p, &weights, step, accept_tolerance, max_points);
}

std::vector<double> sample_l1_ball(std::size_t n, double lambda, std::mt19937_64& engine) {
  // Normalized exponential spacings are uniform on the simplex {sum <= 1}.
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> y(n);
  double total = expo(engine);
  for (auto& v : y) {
    v = expo(engine);
    total += v;
  }
  for (auto& v : y) v = lambda * v / total * (coin(engine) ? -1.0 : 1.0);
  return y;
}

LipschitzCheck check_lipschitz(const LipschitzProblem& p, std::uint64_t pairs,
                               std::uint64_t seed) {
  p.validate();
  std::mt19937_64 engine(seed);
  LipschitzCheck out;
  for (std::uint64_t k = 0; k < pairs; ++k) {
    const auto a = sample_l1_ball(p.n, p.lambda, engine);
    const auto b = sample_l1_ball(p.n, p.lambda, engine);
    double dist = 0.0;
    for (std::size_t i = 0; i < p.n; ++i) dist = std::max(dist, std::abs(a[i] - b[i]));
    if (dist <= 1e-12) continue;
    const auto ea = checked_eval(p, a);
    const auto eb = checked_eval(p, b);
    double diff = std::abs(ea.objective - eb.objective);
    for (std::size_t i = 0; i < p.m; ++i) {
      diff = std::max(diff, std::abs(ea.constraints[i] - eb.constraints[i]));
    }
    out.observed = std::max(out.observed, diff / dist);
    ++out.pairs;
  }
  out.exceeds = out.observed > p.kappa * (1.0 + 1e-9);
  return out;
}

namespace {

double affine_modulus(const Matrix<double>& Q, const std::vector<double>& c, double lambda,
                      std::size_t n) {
  double linear = 0.0;
  for (double v : c) linear += std::abs(v);
  double col = 0.0;
  if (!Q.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += std::abs(Q[i][j] + Q[j][i]);
      col = std::max(col, sum);
    }
  }
  return linear + lambda * col;
}

}  // namespace

double payload_lipschitz_bound(const Payload<double>& payload, double lambda) {
  payload.validate();
  double kappa = affine_modulus(payload.Q, payload.c, lambda, payload.n);
  for (const auto& row : payload.A) kappa = std::max(kappa, affine_modulus({}, row, lambda, payload.n));
  for (const auto& q : payload.quadratic) {
    kappa = std::max(kappa, affine_modulus(q.A, q.b, lambda, payload.n));
  }
  return kappa;
}

LipschitzProblem make_lipschitz_problem(const Payload<double>& payload, double lambda,
                                        std::optional<double> kappa) {
  payload.validate();
  LipschitzProblem p;
  p.n = payload.n;
  p.m = payload.constraint_count();
  p.lambda = lambda;
  p.kappa = kappa.value_or(payload_lipschitz_bound(payload, lambda));
  // A constant problem has modulus 0; any positive kappa is valid for it.
  if (!(p.kappa > 0)) p.kappa = 1.0;
  p.oracle = [data = payload](std::span<const double> x) {
    return evaluate_payload<double, double>(data, x);
  };
  return p;
}

}  // namespace l1opt

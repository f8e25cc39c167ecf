#pragma once

// Additive approximation scheme for
//   min { f(x) : g(x) <= 0, |x|_1 <= lambda, x real }
// with f and every g_i kappa-Lipschitz in the l-infinity norm. The scheme
// enumerates the grid (eps/kappa) * Z^n inside the l1-ball, accepts points
// with g(x) <= eps, and returns the best one: f(x_hat) - f(x*) <= eps.
//
// kappa is taken on trust. An underestimate voids the guarantee;
// check_lipschitz can flag an obviously wrong value.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "l1opt/numeric.hpp"
#include "l1opt/problem.hpp"
#include "l1opt/solver.hpp"

namespace l1opt {

using RealOracle = std::function<Evaluation<double>(std::span<const double>)>;

struct LipschitzProblem {
  std::size_t n = 0;
  std::size_t m = 0;
  RealOracle oracle;
  double kappa = 1.0;
  double lambda = 0.0;

  void validate() const;
};

struct ContinuousSolution {
  // kInfeasible here means no grid point satisfied g <= eps (or g <= 0 for
  // the reference solver).
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<std::vector<double>> x_hat;
  // x_hat = step * grid_point exactly (one rounding per coordinate).
  std::optional<std::vector<std::int64_t>> grid_point;
  std::optional<double> f_hat;
  std::optional<double> max_violation;  // max_i g_i(x_hat), 0 if m == 0
  std::optional<BigInt> ordinal;
  double step = 0.0;
  std::int64_t grid_radius = 0;  // |grid_point|_1 <= grid_radius
  std::uint64_t oracle_calls = 0;
  std::uint64_t points_enumerated = 0;
};

struct PtasOptions {
  int threads = 1;
};

ContinuousSolution solve_lipschitz_ptas(const LipschitzProblem& p, double epsilon,
                                        const PtasOptions& opts = {});

// Serial reference kernel.
ContinuousSolution solve_lipschitz_ptas_serial(const LipschitzProblem& p, double epsilon);

// Weighted variant: sum_i w_i |x_i| <= lambda. The grid constraint in grid
// units is sum_i (w_i * step) |v_i| <= lambda, which goes through the same
// reduction as solve_weighted_l1_ip.
ContinuousSolution solve_weighted_lipschitz_ptas(const LipschitzProblem& p,
                                                 const std::vector<double>& weights,
                                                 double epsilon, const PtasOptions& opts = {});

// Brute-force minimum of f over {step * k : k integer, |step*k|_1 <= lambda,
// g <= 0} by scanning the enclosing box. Throws kGridTooLarge if the box
// exceeds max_points.
ContinuousSolution fine_grid_reference(const LipschitzProblem& p, double step,
                                       std::uint64_t max_points = 50'000'000);

// Same grid scan, restricted to sum_i w_i |x_i| <= lambda and accepting
// g <= accept_tolerance. Test oracle for the weighted PTAS.
ContinuousSolution weighted_grid_reference(const LipschitzProblem& p,
                                           const std::vector<double>& weights, double step,
                                           double accept_tolerance,
                                           std::uint64_t max_points = 50'000'000);

struct LipschitzCheck {
  double observed = 0.0;  // largest |h(x) - h(y)| / |x - y|_inf seen
  bool exceeds = false;   // observed > kappa
  std::uint64_t pairs = 0;
};

// Samples pairs in lambda*B1 and reports the largest observed ratio over f
// and every g_i.
LipschitzCheck check_lipschitz(const LipschitzProblem& p, std::uint64_t pairs,
                               std::uint64_t seed = 1);

// Uniform sample from lambda*B1 (used by the covering checks too).
std::vector<double> sample_l1_ball(std::size_t n, double lambda, std::mt19937_64& engine);

// Upper bound on the l-infinity Lipschitz constant over lambda*B1 of the
// objective and every constraint of a linear or quadratic payload:
// |c|_1 + lambda * max_j sum_i |Q_ij + Q_ji|, maximized over f and the g_i.
// Conservative for quadratics; exact for linear functions.
double payload_lipschitz_bound(const Payload<double>& payload, double lambda);

// Lipschitz problem over a payload; kappa defaults to the bound above.
LipschitzProblem make_lipschitz_problem(const Payload<double>& payload, double lambda,
                                        std::optional<double> kappa = std::nullopt);

}  // namespace l1opt

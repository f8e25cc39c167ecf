// Serial reference kernels against the OpenMP ones. Thread count is the
// benchmark argument for the parallel variants.

#include <benchmark/benchmark.h>

#include "l1opt/ptas.hpp"
#include "l1opt/solver.hpp"

using namespace l1opt;

namespace {

// Nonconvex quadratic in n variables with one linear constraint.
ProblemInstance<double> quadratic_instance(std::size_t n) {
  Payload<double> p;
  p.n = n;
  p.c.assign(n, 0.0);
  p.Q.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    p.c[i] = (i % 3 == 0) ? -1.0 : 0.5;
    p.Q[i][i] = (i % 2 == 0) ? 1.0 : -0.5;
    if (i + 1 < n) p.Q[i][i + 1] = 0.25;
  }
  p.A = {std::vector<double>(n, 1.0)};
  p.b = {2.0};
  return make_payload_problem(std::move(p));
}

LipschitzProblem lipschitz_instance(std::size_t n) {
  Payload<double> p;
  p.n = n;
  p.c.assign(n, 0.3);
  p.Q.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) p.Q[i][i] = (i % 2 == 0) ? 1.0 : -1.0;
  return make_lipschitz_problem(p, 1.0);
}

void BM_SolveSerial(benchmark::State& state) {
  const auto p = quadratic_instance(24);
  for (auto _ : state) benchmark::DoNotOptimize(solve_l1_ip_serial(p, 3.0));
}

void BM_SolveParallel(benchmark::State& state) {
  const auto p = quadratic_instance(24);
  SolveOptions<double> opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_l1_ip(p, 3.0, opts));
}

void BM_PtasSerial(benchmark::State& state) {
  const auto p = lipschitz_instance(4);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lipschitz_ptas_serial(p, 0.4));
}

void BM_PtasParallel(benchmark::State& state) {
  const auto p = lipschitz_instance(4);
  PtasOptions opts{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solve_lipschitz_ptas(p, 0.4, opts));
}

}  // namespace

BENCHMARK(BM_SolveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PtasSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PtasParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

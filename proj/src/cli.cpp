#include "l1opt/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "l1opt/bound.hpp"
#include "l1opt/counting.hpp"
#include "l1opt/lattice.hpp"
#include "l1opt/mixed.hpp"
#include "l1opt/problem_file.hpp"
#include "l1opt/ptas.hpp"
#include "l1opt/solver.hpp"

namespace l1opt {

using nlohmann::ordered_json;

namespace {

// A command result plus the exit code it maps to.
struct Outcome {
  ordered_json result;
  int code = kExitOk;
};

ordered_json header(std::string_view command) {
  ordered_json j;
  j["tool"] = "l1opt";
  j["version"] = std::string(kToolVersion);
  j["command"] = std::string(command);
  return j;
}

ordered_json scalar_json(const Rational& r) { return to_string(r); }
ordered_json scalar_json(double d) { return d; }

template <class T>
T from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, double>) {
    return to_double(r);
  } else {
    return r;
  }
}

template <class T>
std::vector<T> from_rational(const std::vector<Rational>& v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(from_rational<T>(e));
  return out;
}

template <class T>
ordered_json vector_json(const std::vector<T>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& e : v) out.push_back(scalar_json(e));
  return out;
}

ordered_json int_vector_json(const std::vector<std::int64_t>& v) {
  ordered_json out = ordered_json::array();
  for (auto e : v) out.push_back(e);
  return out;
}

ordered_json big_bound_json(const BigBound& b) {
  ordered_json j;
  j["exact"] = b.exact ? ordered_json(to_string(*b.exact)) : ordered_json(nullptr);
  j["log10"] = b.log10;
  return j;
}

std::vector<Rational> parse_list(const std::string& text, const std::string& field) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse,
                  "field '" + field + "[" + std::to_string(i) + "]': " + e.what());
    }
    ++i;
  }
  if (out.empty()) throw Error(ErrorCode::kParse, "field '" + field + "': empty list");
  return out;
}

Rational parse_flag(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, flag + ": " + e.what());
  }
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string file;
  std::optional<std::string> lambda;
  std::optional<std::string> weights;
  std::optional<std::string> tolerance;
  int parallel = 1;
};

template <class T>
Outcome solve_integer(const ProblemFile& f, const Rational& tol, int threads) {
  ProblemInstance<T> p = make_payload_problem(f.payload.template convert<T>());
  SolveOptions<T> opts;
  opts.tolerance = from_rational<T>(tol);
  opts.threads = threads;
  Solution<T> s;
  if (f.weights) {
    WeightedL1Spec<T> spec{from_rational<T>(*f.weights), from_rational<T>(f.lambda)};
    s = solve_weighted_l1_ip(p, spec, opts);
  } else {
    s = solve_l1_ip(p, from_rational<T>(f.lambda), opts);
  }

  Outcome o{header("solve")};
  o.result["kind"] = std::string(kind_name(f.kind));
  o.result["status"] = std::string(status_name(s.status));
  o.result["objective"] = s.f_star ? scalar_json(*s.f_star) : ordered_json(nullptr);
  o.result["x"] = s.x_star ? int_vector_json(*s.x_star) : ordered_json(nullptr);
  o.result["ordinal"] = s.ordinal ? ordered_json(to_string(*s.ordinal)) : ordered_json(nullptr);
  o.result["oracle_calls"] = s.oracle_calls;
  o.result["points_enumerated"] = s.points_enumerated;
  o.code = s.status == SolveStatus::kOptimal ? kExitOk : kExitInfeasible;
  return o;
}

template <class T>
Outcome solve_mixed(const ProblemFile& f, int threads) {
  const std::size_t n = f.n;
  const auto& pl = f.payload;
  std::vector<T> cx, cy;
  for (std::size_t j = 0; j < pl.n; ++j) {
    (j < n ? cx : cy).push_back(from_rational<T>(pl.c[j]));
  }
  Matrix<T> Ax, Ay;
  for (const auto& row : pl.A) {
    std::vector<T> rx, ry;
    for (std::size_t j = 0; j < pl.n; ++j) (j < n ? rx : ry).push_back(from_rational<T>(row[j]));
    Ax.push_back(std::move(rx));
    Ay.push_back(std::move(ry));
  }
  MixedProblem<T> p = make_linear_mixed_problem<T>(std::move(cx), std::move(cy), std::move(Ax),
                                                   std::move(Ay), from_rational<T>(pl.b));
  MixedSolution<T> s = solve_mixed_integer(p, from_rational<T>(f.lambda), threads);

  Outcome o{header("solve")};
  o.result["kind"] = std::string(kind_name(f.kind));
  o.result["status"] = std::string(status_name(s.status));
  o.result["objective"] = s.value ? scalar_json(*s.value) : ordered_json(nullptr);
  o.result["x"] = s.x ? int_vector_json(*s.x) : ordered_json(nullptr);
  o.result["y"] = s.y ? vector_json(*s.y) : ordered_json(nullptr);
  o.result["ordinal"] = s.ordinal ? ordered_json(to_string(*s.ordinal)) : ordered_json(nullptr);
  o.result["oracle_calls"] = s.inner_solves;
  o.result["points_enumerated"] = s.points_enumerated;
  o.code = s.status == SolveStatus::kOptimal ? kExitOk : kExitInfeasible;
  return o;
}

Outcome cmd_solve(const SolveArgs& a) {
  ProblemFile f = load_problem_file(a.file);
  if (!is_integer_kind(f.kind)) {
    throw Error(ErrorCode::kInvalidArgument,
                "solve needs an integer kind (ilp, iqp, iqcqp, mixed), got '" +
                    std::string(kind_name(f.kind)) + "'; use the ptas command");
  }
  if (a.lambda) f.lambda = parse_flag(*a.lambda, "--lambda");
  if (a.weights) f.weights = parse_list(*a.weights, "weights");
  f.validate();

  Rational tol = 0;
  if (a.tolerance) {
    tol = parse_flag(*a.tolerance, "--tolerance");
  } else if (const char* env = std::getenv(kToleranceEnv); env && *env) {
    tol = parse_flag(env, kToleranceEnv);
  } else if (f.arithmetic == Arithmetic::kFloat) {
    tol = parse_rational("1e-9");
  }
  if (tol < 0) throw Error(ErrorCode::kOutOfRange, "tolerance must be >= 0");

  if (f.kind == ProblemKind::kMixed) {
    return f.arithmetic == Arithmetic::kRational ? solve_mixed<Rational>(f, a.parallel)
                                                 : solve_mixed<double>(f, a.parallel);
  }
  return f.arithmetic == Arithmetic::kRational ? solve_integer<Rational>(f, tol, a.parallel)
                                               : solve_integer<double>(f, tol, a.parallel);
}

// ---- count ----------------------------------------------------------------

struct CountArgs {
  std::size_t n = 0;
  std::string lambda;
  std::string norm = "l1";
  bool bounds = false;
  bool simplified = false;
  double delta = 0.83;
  bool width = false;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
};

Outcome cmd_count(const CountArgs& a) {
  if (a.n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be >= 1");
  const Rational lambda = parse_flag(a.lambda, "lambda");
  if (lambda < 0) throw Error(ErrorCode::kOutOfRange, "lambda must be >= 0");
  const double lambda_d = to_double(lambda);

  Outcome o{header("count")};
  o.result["n"] = a.n;
  o.result["lambda"] = to_string(lambda);
  o.result["norm"] = a.norm;
  const BigInt count =
      a.norm == "l1" ? count_l1_lattice(a.n, lambda) : count_linf_lattice(a.n, lambda);
  o.result["count"] = to_string(count);

  if (a.bounds) {
    if (a.norm != "l1") {
      throw Error(ErrorCode::kInvalidArgument, "--bounds applies to --norm l1 only");
    }
    const BoundMode mode = a.simplified ? BoundMode::kSimplified : BoundMode::kPrecise;
    ordered_json b;
    b["mode"] = a.simplified ? "simplified" : "precise";
    b["delta"] = a.delta;
    BigBound upper = l1_count_upper_bound(a.n, lambda_d, a.delta, mode);
    b["lower"] = to_string(l1_count_lower_bound(a.n, lambda_d));
    b["upper"] = big_bound_json(upper);
    o.result["bounds"] = std::move(b);
  }
  if (a.width) {
    if (a.norm != "l1") {
      throw Error(ErrorCode::kInvalidArgument, "--width applies to --norm l1 only");
    }
    WidthEstimate w = estimate_gaussian_width(a.n, lambda_d, a.samples, a.seed);
    ordered_json g;
    g["mean"] = w.mean;
    g["standard_error"] = w.standard_error;
    g["samples"] = a.samples;
    g["seed"] = a.seed;
    g["bound"] = gaussian_width_bound(a.n, lambda_d);
    o.result["gaussian_width"] = std::move(g);
  }
  return o;
}

// ---- bound ----------------------------------------------------------------

struct BoundArgs {
  std::string file;
  double delta = 0.83;
  bool simplified = false;
  bool verify = false;
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  int parallel = 1;
};

template <class T>
Outcome run_bound(const ProblemFile& f, const BoundArgs& a) {
  Matrix<T> A;
  for (const auto& row : f.payload.A) A.push_back(from_rational<T>(row));
  std::vector<T> b = from_rational<T>(f.payload.b);
  LpBackend<T> backend(A, b);

  BoundOptions<T> opts;
  opts.delta = a.delta;
  opts.mode = a.simplified ? BoundMode::kSimplified : BoundMode::kPrecise;
  opts.threads = a.parallel;

  Outcome o{header("bound")};
  o.result["kind"] = std::string(kind_name(f.kind));
  BoundReport<T> r;
  try {
    r = estimate_bound(backend, opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUnboundedRegion) {
      o.result["status"] = "unbounded-region";
      o.code = kExitUnbounded;
      return o;
    }
    if (e.code() == ErrorCode::kInfeasibleRegion) {
      o.result["status"] = "infeasible-region";
      o.code = kExitInfeasible;
      return o;
    }
    throw;
  }

  o.result["status"] = "ok";
  ordered_json br;
  br["l"] = vector_json(r.l);
  br["u"] = vector_json(r.u);
  br["lifted_max"] = scalar_json(r.lifted_max);
  br["rho"] = r.rho;
  br["bnd"] = big_bound_json(r.bnd);
  br["delta"] = r.delta;
  br["mode"] = r.mode == BoundMode::kSimplified ? "simplified" : "precise";
  br["backend_calls"] = r.backend_calls;
  o.result["bound_report"] = std::move(br);

  if (a.verify) {
    VerifyResult v = verify_cover(r, make_linear_feasibility(A, b), a.budget, a.seed);
    ordered_json vj;
    vj["passed"] = v.passed;
    vj["exhaustive"] = v.exhaustive;
    vj["points_checked"] = v.points_checked;
    vj["counterexample"] =
        v.counterexample ? int_vector_json(*v.counterexample) : ordered_json(nullptr);
    if (!v.note.empty()) vj["note"] = v.note;
    o.result["verify"] = std::move(vj);
    if (!v.passed) o.code = kExitError;
  }
  return o;
}

Outcome cmd_bound(const BoundArgs& a) {
  ProblemFile f = load_problem_file(a.file);
  if (f.kind == ProblemKind::kMixed || !f.payload.quadratic.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "bound needs linear constraints in x only (the built-in LP backend)");
  }
  if (!(a.delta > 0 && a.delta < 1)) {
    throw Error(ErrorCode::kOutOfRange, "--delta must lie in (0, 1)");
  }
  return f.arithmetic == Arithmetic::kRational ? run_bound<Rational>(f, a)
                                               : run_bound<double>(f, a);
}

// ---- ptas -----------------------------------------------------------------

struct PtasArgs {
  std::string file;
  std::optional<std::string> epsilon;
  std::optional<std::string> kappa;
  std::optional<std::string> lambda;
  int parallel = 1;
};

Outcome cmd_ptas(const PtasArgs& a) {
  ProblemFile f = load_problem_file(a.file);
  if (!is_lipschitz_kind(f.kind)) {
    throw Error(ErrorCode::kInvalidArgument,
                "ptas needs kind lipschitz-linear or lipschitz-quadratic, got '" +
                    std::string(kind_name(f.kind)) + "'");
  }
  if (a.epsilon) f.epsilon = parse_flag(*a.epsilon, "--epsilon");
  if (a.kappa) f.kappa = parse_flag(*a.kappa, "--kappa");
  if (a.lambda) f.lambda = parse_flag(*a.lambda, "--lambda");
  f.validate();
  if (!f.epsilon) throw Error(ErrorCode::kInvalidArgument, "epsilon missing: set it in the file or pass --epsilon");

  const double lambda = to_double(f.lambda);
  const double epsilon = to_double(*f.epsilon);
  std::optional<double> kappa;
  if (f.kappa) kappa = to_double(*f.kappa);
  LipschitzProblem p = make_lipschitz_problem(f.payload.convert<double>(), lambda, kappa);

  PtasOptions opts;
  opts.threads = a.parallel;
  ContinuousSolution s = f.weights ? solve_weighted_lipschitz_ptas(
                                         p, from_rational<double>(*f.weights), epsilon, opts)
                                   : solve_lipschitz_ptas(p, epsilon, opts);

  Outcome o{header("ptas")};
  o.result["kind"] = std::string(kind_name(f.kind));
  const bool found = s.status == SolveStatus::kOptimal;
  o.result["status"] = found ? "optimal" : "no-feasible-grid-point";
  o.result["objective"] = s.f_hat ? ordered_json(*s.f_hat) : ordered_json(nullptr);
  o.result["x"] = s.x_hat ? vector_json(*s.x_hat) : ordered_json(nullptr);
  o.result["grid_point"] = s.grid_point ? int_vector_json(*s.grid_point) : ordered_json(nullptr);
  o.result["max_violation"] =
      s.max_violation ? ordered_json(*s.max_violation) : ordered_json(nullptr);
  o.result["ordinal"] = s.ordinal ? ordered_json(to_string(*s.ordinal)) : ordered_json(nullptr);
  o.result["epsilon"] = epsilon;
  o.result["kappa"] = p.kappa;
  o.result["step"] = s.step;
  o.result["grid_radius"] = s.grid_radius;
  o.result["oracle_calls"] = s.oracle_calls;
  o.result["points_enumerated"] = s.points_enumerated;
  o.code = found ? kExitOk : kExitInfeasible;
  return o;
}

// ---- enumerate ------------------------------------------------------------

struct EnumerateArgs {
  std::size_t n = 0;
  std::string lambda;
  std::optional<std::uint64_t> limit;
  int parallel = 1;
};

void cmd_enumerate(const EnumerateArgs& a, std::ostream& out) {
  if (a.n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be >= 1");
  const Rational lambda = parse_flag(a.lambda, "lambda");
  std::uint64_t emitted = 0;
  std::string line;
  for (const LatticePoint& pt : l1_lattice_iter(a.n, lambda)) {
    if (a.limit && emitted >= *a.limit) break;
    line.assign("[");
    for (std::size_t i = 0; i < pt.x.size(); ++i) {
      if (i) line += ',';
      line += std::to_string(pt.x[i]);
    }
    line += "]\n";
    out << line;
    ++emitted;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and approximate optimization over integer points of l1-balls", "l1opt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  bool timing = false;
  app.add_flag("--timing", timing, "Add wall_time_ms to the result (breaks byte-identity)");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Exact solve of an integer problem file");
  solve->add_option("file", sa.file, "Problem file (ilp, iqp, iqcqp or mixed)")->required();
  solve->add_option("--lambda", sa.lambda, "Override the l1 radius");
  solve->add_option("--weights", sa.weights, "Comma-separated positive weights, e.g. 1,10");
  solve->add_option("--tolerance", sa.tolerance,
                    std::string("Constraint tolerance (default: $") + kToleranceEnv +
                        ", else 0 for rational and 1e-9 for float)");
  solve->add_option("--parallel", sa.parallel, "Worker threads")->check(CLI::PositiveNumber);

  CountArgs ca;
  auto* count = app.add_subcommand("count", "Count integer points of a norm ball");
  count->add_option("n", ca.n, "Dimension")->required();
  count->add_option("lambda", ca.lambda, "Radius")->required();
  count->add_option("--norm", ca.norm, "l1 or linf")->check(CLI::IsMember({"l1", "linf"}));
  count->add_flag("--bounds", ca.bounds, "Also report the lower and upper count bounds");
  count->add_flag("--simplified", ca.simplified, "Use the simplified exponent 4*floor(lambda)^2");
  count->add_option("--delta", ca.delta, "Slack parameter in (0, 1)");
  count->add_flag("--width", ca.width, "Monte-Carlo Gaussian width of the l1-ball");
  count->add_option("--samples", ca.samples, "Samples for --width");
  count->add_option("--seed", ca.seed, "Seed for --width");

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "l1 radius covering the relaxation of a linear region");
  bound->add_option("file", ba.file, "Problem file with linear constraints")->required();
  bound->add_option("--delta", ba.delta, "Slack parameter in (0, 1)");
  bound->add_flag("--simplified", ba.simplified, "Report bnd = n^(4 rho^2 + 1)");
  bound->add_flag("--verify", ba.verify, "Check every feasible integer point in the box");
  bound->add_option("--budget", ba.budget, "Point budget for --verify");
  bound->add_option("--seed", ba.seed, "Seed for sampled verification");
  bound->add_option("--parallel", ba.parallel, "Worker threads")->check(CLI::PositiveNumber);

  PtasArgs pa;
  auto* ptas = app.add_subcommand("ptas", "Additive approximation for Lipschitz problems");
  ptas->add_option("file", pa.file, "Problem file (lipschitz-linear or lipschitz-quadratic)")
      ->required();
  ptas->add_option("--epsilon", pa.epsilon, "Additive tolerance");
  ptas->add_option("--kappa", pa.kappa, "Lipschitz constant (default: derived from coefficients)");
  ptas->add_option("--lambda", pa.lambda, "Override the l1 radius");
  ptas->add_option("--parallel", pa.parallel, "Worker threads")->check(CLI::PositiveNumber);

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "Stream l1-ball lattice points in canonical order");
  enumerate->add_option("n", ea.n, "Dimension")->required();
  enumerate->add_option("lambda", ea.lambda, "Radius")->required();
  enumerate->add_option("--limit", ea.limit, "Stop after this many points");
  enumerate->add_option("--parallel", ea.parallel, "Accepted for uniformity; output is serial")
      ->check(CLI::PositiveNumber);

  for (auto* sub : {solve, count, bound, ptas, enumerate}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    if (enumerate->parsed()) {
      cmd_enumerate(ea, out);
      return kExitOk;
    }
    Outcome o;
    if (solve->parsed()) {
      o = cmd_solve(sa);
    } else if (count->parsed()) {
      o = cmd_count(ca);
    } else if (bound->parsed()) {
      o = cmd_bound(ba);
    } else {
      o = cmd_ptas(pa);
    }
    if (timing) {
      const auto elapsed = std::chrono::steady_clock::now() - start;
      o.result["wall_time_ms"] =
          std::chrono::duration<double, std::milli>(elapsed).count();
    }
    out << o.result.dump(2) << '\n';
    if (o.code == kExitUnbounded) {
      err << "l1opt: the relaxation is unbounded; no finite l1 cover exists\n";
    } else if (o.code == kExitInfeasible) {
      err << "l1opt: no feasible point\n";
    }
    return o.code;
  } catch (const Error& e) {
    err << "l1opt: error [" << error_code_name(e.code()) << "]: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "l1opt: error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace l1opt

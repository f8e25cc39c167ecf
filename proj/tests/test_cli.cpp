#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "l1opt/cli.hpp"
#include "l1opt/problem_file.hpp"

using namespace l1opt;
namespace fs = std::filesystem;

namespace {

const fs::path kData = L1OPT_TEST_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("l1opt_test_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("problem files round-trip") {
  for (const auto& entry : fs::directory_iterator(kData)) {
    if (entry.path().extension() != ".json") continue;
    if (entry.path().filename() == "bad_weights.json") continue;
    CAPTURE(entry.path().string());
    const ProblemFile a = load_problem_file(entry.path().string());
    const std::string text = serialize_problem_file(a);
    const ProblemFile b = parse_problem_file(text);
    CHECK(a == b);
    CHECK(serialize_problem_file(b) == text);
  }
}

TEST_CASE("scalars parse exactly in every accepted form") {
  const auto f = parse_problem_file(R"({"kind": "ilp", "n": 4, "lambda": "5/2",
      "c": [3, "-3/4", [6, -8], "0.125"]})");
  CHECK(f.lambda == Rational(5, 2));
  CHECK(f.payload.c == std::vector<Rational>{3, Rational(-3, 4), Rational(-3, 4), Rational(1, 8)});
  CHECK(f.m == 0);
  CHECK(to_string(f.payload.c[1]) == "-3/4");

  const auto g = parse_problem_file(R"({"kind": "ilp", "arithmetic": "float", "n": 1,
      "lambda": 0.1, "c": [1e-3]})");
  CHECK(g.lambda == Rational(1, 10));
  CHECK(g.payload.c[0] == Rational(1, 1000));
}

TEST_CASE("problem file diagnostics name the field") {
  auto message = [](const std::string& text) -> std::string {
    try {
      parse_problem_file(text);
    } catch (const Error& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message(R"({"kind": "ilp", "n": 2, "lambda": 1, "c": [1, 0.5]})").find("c[1]") !=
        std::string::npos);
  CHECK(message(R"({"kind": "ilp", "n": 2, "lambda": 1, "c": [1, 2], "weights": [1, 0]})")
            .find("weights[1]") != std::string::npos);
  CHECK(message(R"({"kind": "ilp", "n": 2, "lambda": 1, "c": [1]})").find("c:") !=
        std::string::npos);
  CHECK(message(R"({"kind": "ilp", "n": 2, "lambda": 1, "A": [[1, 1]], "b": []})").find("A") !=
        std::string::npos);
  CHECK(message(R"({"kind": "ilp", "n": 2, "lambda": -1})").find("lambda") != std::string::npos);
  CHECK(message(R"({"kind": "ilp", "n": 2, "lambda": 1, "cc": []})").find("cc") !=
        std::string::npos);
  CHECK(message(R"({"kind": "ilp", "n": 2, "lambda": "1/0"})").find("lambda") !=
        std::string::npos);
  CHECK(message("{\"kind\": \"ilp\",\n \"n\": }").find("line 2") != std::string::npos);
  CHECK(message(R"({"kind": "ilp", "n": 1, "lambda": 1, "Q": [[1]]})").find("Q") !=
        std::string::npos);
  CHECK(message(R"({"kind": "ilp", "n": 1, "m": 3, "lambda": 1})").find("'m'") !=
        std::string::npos);
}

TEST_CASE("cli solve") {
  auto r = cli({"solve", data("ilp_example.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.json()["objective"] == "-1");
  CHECK(r.json()["status"] == "optimal");
  CHECK(r.err.empty());

  r = cli({"solve", data("weighted_example.json")});
  CHECK(r.json()["objective"] == "-2");
  CHECK(r.json()["x"] == nlohmann::json::array({2, 0}));

  r = cli({"solve", data("ilp_example.json"), "--weights", "1,10"});
  CHECK(r.code == kExitOk);

  r = cli({"solve", data("bad_weights.json")});
  CHECK(r.code == kExitError);
  CHECK(r.out.empty());
  CHECK(r.err.find("weights[0]") != std::string::npos);

  r = cli({"solve", data("ilp_example.json"), "--weights", "1,0"});
  CHECK(r.code == kExitError);
  CHECK(r.err.find("weights[1]") != std::string::npos);

  r = cli({"solve", data("ilp_example.json"), "--lambda", "0"});
  CHECK(r.json()["objective"] == "0");
  CHECK(r.json()["points_enumerated"] == 1);

  const auto infeasible = write_temp("infeasible.json",
                                     R"({"kind": "ilp", "n": 1, "lambda": 2, "c": [1],
                                         "A": [[0]], "b": [-1]})");
  r = cli({"solve", infeasible.string()});
  CHECK(r.code == kExitInfeasible);
  CHECK(r.json()["status"] == "infeasible");
  CHECK(r.json()["objective"].is_null());

  r = cli({"solve", data("ptas_linear.json")});
  CHECK(r.code == kExitError);
  r = cli({"solve", "/nonexistent/problem.json"});
  CHECK(r.code == kExitError);
}

TEST_CASE("cli solve tolerance from flag and environment") {
  const auto f = write_temp("tol.json", R"({"kind": "ilp", "n": 1, "lambda": 1, "c": [-1],
                                           "A": [[1]], "b": ["1/2"]})");
  auto r = cli({"solve", f.string()});
  CHECK(r.json()["x"] == nlohmann::json::array({0}));
  r = cli({"solve", f.string(), "--tolerance", "1/2"});
  CHECK(r.json()["x"] == nlohmann::json::array({1}));
  ::setenv(kToleranceEnv, "0.5", 1);
  r = cli({"solve", f.string()});
  ::unsetenv(kToleranceEnv);
  CHECK(r.json()["x"] == nlohmann::json::array({1}));
  r = cli({"solve", f.string(), "--tolerance", "-1"});
  CHECK(r.code == kExitError);
}

TEST_CASE("cli solve: mixed and quadratic kinds") {
  auto r = cli({"solve", data("mixed_example.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.json()["objective"] == "-1");
  CHECK(r.json()["y"] == nlohmann::json::array({"0"}));
  r = cli({"solve", data("iqcqp_example.json")});
  CHECK(r.code == kExitOk);
}

TEST_CASE("cli count") {
  auto r = cli({"count", "3", "2"});
  CHECK(r.json()["count"] == "25");
  r = cli({"count", "2", "1", "--norm", "linf"});
  CHECK(r.json()["count"] == "9");
  r = cli({"count", "2", "1", "--bounds", "--simplified"});
  CHECK(r.json()["bounds"]["lower"] == "4");
  CHECK(r.json()["bounds"]["upper"]["exact"] == "16");
  r = cli({"count", "1", "1", "--bounds"});
  CHECK(r.code == kExitError);
  CHECK(r.err.find("invalid-dimension") != std::string::npos);
  r = cli({"count", "4", "1", "--width", "--samples", "2000", "--seed", "3"});
  CHECK(r.json()["gaussian_width"]["mean"].get<double>() <
        r.json()["gaussian_width"]["bound"].get<double>());
  r = cli({"count", "2", "1", "--norm", "l3"});
  CHECK(r.code == kExitError);
  r = cli({"count", "0", "1"});
  CHECK(r.code == kExitError);
}

TEST_CASE("cli bound") {
  auto r = cli({"bound", data("unit_box.json"), "--simplified", "--verify"});
  CHECK(r.code == kExitOk);
  auto j = r.json();
  CHECK(j["bound_report"]["rho"] == 2);
  CHECK(j["bound_report"]["bnd"]["exact"] == "131072");
  CHECK(j["bound_report"]["l"] == nlohmann::json::array({"0", "0"}));
  CHECK(j["bound_report"]["u"] == nlohmann::json::array({"1", "1"}));
  CHECK(j["verify"]["passed"] == true);

  r = cli({"bound", data("simplex3.json"), "--simplified"});
  CHECK(r.json()["bound_report"]["rho"] == 1);
  CHECK(r.json()["bound_report"]["bnd"]["exact"] == "243");
  CHECK(r.json()["bound_report"]["backend_calls"] == 7);

  r = cli({"bound", data("halfspace.json")});
  CHECK(r.code == kExitUnbounded);
  CHECK(r.json()["status"] == "unbounded-region");

  r = cli({"bound", data("iqcqp_example.json")});
  CHECK(r.code == kExitError);
  r = cli({"bound", data("unit_box.json"), "--delta", "2"});
  CHECK(r.code == kExitError);
}

TEST_CASE("cli ptas") {
  auto r = cli({"ptas", data("ptas_linear.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.json()["objective"] == -1.0);
  CHECK(r.json()["grid_radius"] == 4);

  r = cli({"ptas", data("ptas_linear.json"), "--epsilon", "0.5", "--kappa", "2"});
  CHECK(r.json()["step"] == 0.25);

  const auto infeasible = write_temp("ptas_none.json",
                                     R"({"kind": "lipschitz-linear", "n": 1, "lambda": 1,
                                         "epsilon": "1/2", "c": [1], "A": [[0]], "b": [-1]})");
  r = cli({"ptas", infeasible.string()});
  CHECK(r.code == kExitInfeasible);
  CHECK(r.json()["status"] == "no-feasible-grid-point");

  r = cli({"ptas", data("ptas_linear.json"), "--epsilon", "0"});
  CHECK(r.code == kExitError);
  r = cli({"ptas", data("ilp_example.json")});
  CHECK(r.code == kExitError);
}

TEST_CASE("cli enumerate") {
  auto r = cli({"enumerate", "2", "1"});
  CHECK(r.out == "[0,0]\n[0,1]\n[0,-1]\n[1,0]\n[-1,0]\n");
  r = cli({"enumerate", "3", "2", "--limit", "3"});
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
  r = cli({"enumerate", "0", "2"});
  CHECK(r.code == kExitError);
}

TEST_CASE("cli results are identical across runs and thread counts") {
  for (const std::vector<std::string>& base :
       {std::vector<std::string>{"solve", data("iqcqp_example.json")},
        {"ptas", data("lipschitz_quadratic.json")},
        {"enumerate", "3", "3"}}) {
    auto args = base;
    args.insert(args.end(), {"--parallel", "1"});
    const Run ref = cli(args);
    CHECK(ref.code == kExitOk);
    for (const char* k : {"1", "2", "8"}) {
      args.back() = k;
      CHECK(cli(args).out == ref.out);
    }
  }
}

TEST_CASE("cli usage errors") {
  CHECK(cli({}).code == kExitError);
  CHECK(cli({"frobnicate"}).code == kExitError);
  CHECK(cli({"solve"}).code == kExitError);
  auto r = cli({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("solve") != std::string::npos);
  r = cli({"--timing", "count", "2", "1"});
  CHECK(r.json().contains("wall_time_ms"));
}

#include "l1opt/problem_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace l1opt {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct KindEntry {
  ProblemKind kind;
  std::string_view name;
};

constexpr KindEntry kKinds[] = {
    {ProblemKind::kIlp, "ilp"},
    {ProblemKind::kIqp, "iqp"},
    {ProblemKind::kIqcqp, "iqcqp"},
    {ProblemKind::kLipschitzLinear, "lipschitz-linear"},
    {ProblemKind::kLipschitzQuadratic, "lipschitz-quadratic"},
    {ProblemKind::kMixed, "mixed"},
};

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::kParse, "field '" + field + "': " + msg);
}

std::string index(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

std::size_t parse_size(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer()) fail(field, "must be non-negative");
  fail(field, "expected a non-negative integer");
}

std::vector<Rational> parse_vector(const json& j, const std::string& field, bool allow_float) {
  if (!j.is_array()) fail(field, "expected an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_scalar(j[i], index(field, i), allow_float));
  }
  return out;
}

Matrix<Rational> parse_matrix(const json& j, const std::string& field, bool allow_float) {
  if (!j.is_array()) fail(field, "expected an array of rows");
  Matrix<Rational> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_vector(j[i], index(field, i), allow_float));
  }
  return out;
}

ordered_json vector_to_json(const std::vector<Rational>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& e : v) out.push_back(to_string(e));
  return out;
}

ordered_json matrix_to_json(const Matrix<Rational>& m) {
  ordered_json out = ordered_json::array();
  for (const auto& row : m) out.push_back(vector_to_json(row));
  return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw Error(ErrorCode::kParse, "unknown field '" + key + "' in " + where);
    }
  }
}

}  // namespace

std::string_view kind_name(ProblemKind k) {
  for (const auto& e : kKinds) {
    if (e.kind == k) return e.name;
  }
  return "unknown";
}

bool is_integer_kind(ProblemKind k) {
  return k == ProblemKind::kIlp || k == ProblemKind::kIqp || k == ProblemKind::kIqcqp ||
         k == ProblemKind::kMixed;
}

bool is_lipschitz_kind(ProblemKind k) {
  return k == ProblemKind::kLipschitzLinear || k == ProblemKind::kLipschitzQuadratic;
}

Rational parse_scalar(const json& j, const std::string& field, bool allow_float) {
  if (j.is_number_unsigned()) return Rational(BigInt(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Rational(BigInt(j.get<std::int64_t>()));
  try {
    if (j.is_number_float()) {
      if (!allow_float) {
        fail(field, "floating-point literal " + j.dump() +
                        " is not exact; write it as a string such as \"" + j.dump() +
                        "\" or use \"arithmetic\": \"float\"");
      }
      return parse_rational(j.dump());
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
      const BigInt num = j[0].is_number_unsigned() ? BigInt(j[0].get<std::uint64_t>())
                                                   : BigInt(j[0].get<std::int64_t>());
      const BigInt den = j[1].is_number_unsigned() ? BigInt(j[1].get<std::uint64_t>())
                                                   : BigInt(j[1].get<std::int64_t>());
      if (den == 0) fail(field, "zero denominator");
      // Boost 1.74 rejects a negative denominator in the two-argument constructor.
      return Rational(num) / Rational(den);
    }
  } catch (const Error& e) {
    if (std::string_view(e.what()).starts_with("field '")) throw;
    fail(field, e.what());
  }
  fail(field, "expected an integer, a numeric string or a [numerator, denominator] pair");
}

void ProblemFile::validate() const {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "field 'n': must be >= 1");
  if (kind != ProblemKind::kMixed && n_continuous != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "field 'n_continuous': only allowed for kind 'mixed'");
  }
  const std::size_t width = n + n_continuous;
  if (payload.n != width) {
    throw Error(ErrorCode::kShapeMismatch, "payload dimension " + std::to_string(payload.n) +
                                               " does not match n = " + std::to_string(width));
  }
  payload.validate();
  if (payload.constraint_count() != m) {
    throw Error(ErrorCode::kShapeMismatch,
                "field 'm': says " + std::to_string(m) + " constraints but the file defines " +
                    std::to_string(payload.constraint_count()));
  }

  const bool quadratic_objective = !payload.Q.empty();
  const bool quadratic_constraints = !payload.quadratic.empty();
  switch (kind) {
    case ProblemKind::kIlp:
    case ProblemKind::kLipschitzLinear:
    case ProblemKind::kMixed:
      if (quadratic_objective) {
        throw Error(ErrorCode::kInvalidArgument,
                    "field 'Q': not allowed for kind '" + std::string(kind_name(kind)) + "'");
      }
      [[fallthrough]];
    case ProblemKind::kIqp:
      if (quadratic_constraints) {
        throw Error(ErrorCode::kInvalidArgument,
                    "field 'quadratic_constraints': not allowed for kind '" +
                        std::string(kind_name(kind)) + "'");
      }
      break;
    case ProblemKind::kIqcqp:
    case ProblemKind::kLipschitzQuadratic:
      break;
  }

  if (lambda < 0) throw Error(ErrorCode::kOutOfRange, "field 'lambda': must be >= 0");
  if (weights) {
    if (kind == ProblemKind::kMixed) {
      throw Error(ErrorCode::kInvalidWeights, "field 'weights': not supported for kind 'mixed'");
    }
    if (weights->size() != n) {
      throw Error(ErrorCode::kInvalidWeights,
                  "field 'weights': expected " + std::to_string(n) + " entries, got " +
                      std::to_string(weights->size()));
    }
    for (std::size_t i = 0; i < weights->size(); ++i) {
      if ((*weights)[i] <= 0) {
        throw Error(ErrorCode::kInvalidWeights,
                    "field 'weights[" + std::to_string(i) + "]': must be > 0, got " +
                        to_string((*weights)[i]));
      }
    }
  }
  if (epsilon && *epsilon <= 0) {
    throw Error(ErrorCode::kOutOfRange, "field 'epsilon': must be > 0");
  }
  if (kappa && *kappa <= 0) throw Error(ErrorCode::kOutOfRange, "field 'kappa': must be > 0");
}

ProblemFile parse_problem_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "problem file must be a JSON object");
  check_keys(doc,
             {"kind", "arithmetic", "n", "n_continuous", "m", "lambda", "weights", "epsilon",
              "kappa", "c", "Q", "A", "b", "quadratic_constraints"},
             "problem file");

  auto require = [&doc](const char* key) -> const json& {
    if (!doc.contains(key)) fail(key, "missing");
    return doc[key];
  };

  ProblemFile p;
  {
    const json& k = require("kind");
    if (!k.is_string()) fail("kind", "expected a string");
    bool found = false;
    for (const auto& e : kKinds) {
      if (k.get<std::string>() == e.name) {
        p.kind = e.kind;
        found = true;
      }
    }
    if (!found) {
      fail("kind", "unknown kind '" + k.get<std::string>() +
                       "'; expected ilp, iqp, iqcqp, lipschitz-linear, lipschitz-quadratic "
                       "or mixed");
    }
  }
  if (doc.contains("arithmetic")) {
    const json& a = doc["arithmetic"];
    if (a == "rational") {
      p.arithmetic = Arithmetic::kRational;
    } else if (a == "float") {
      p.arithmetic = Arithmetic::kFloat;
    } else {
      fail("arithmetic", "expected \"rational\" or \"float\"");
    }
  }
  const bool allow_float = p.arithmetic == Arithmetic::kFloat;

  p.n = parse_size(require("n"), "n");
  if (doc.contains("n_continuous")) p.n_continuous = parse_size(doc["n_continuous"], "n_continuous");
  p.lambda = parse_scalar(require("lambda"), "lambda", allow_float);
  if (doc.contains("weights")) p.weights = parse_vector(doc["weights"], "weights", allow_float);
  if (doc.contains("epsilon")) p.epsilon = parse_scalar(doc["epsilon"], "epsilon", allow_float);
  if (doc.contains("kappa")) p.kappa = parse_scalar(doc["kappa"], "kappa", allow_float);

  Payload<Rational>& pl = p.payload;
  pl.n = p.n + p.n_continuous;
  if (doc.contains("c")) {
    pl.c = parse_vector(doc["c"], "c", allow_float);
  } else {
    pl.c.assign(pl.n, Rational(0));
  }
  if (doc.contains("Q")) pl.Q = parse_matrix(doc["Q"], "Q", allow_float);
  if (doc.contains("A")) pl.A = parse_matrix(doc["A"], "A", allow_float);
  if (doc.contains("b")) pl.b = parse_vector(doc["b"], "b", allow_float);
  if (doc.contains("quadratic_constraints")) {
    const json& qs = doc["quadratic_constraints"];
    if (!qs.is_array()) fail("quadratic_constraints", "expected an array");
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const std::string field = index("quadratic_constraints", i);
      if (!qs[i].is_object()) fail(field, "expected an object with A, b, c");
      check_keys(qs[i], {"A", "b", "c"}, field);
      QuadraticConstraint<Rational> q;
      if (qs[i].contains("A")) q.A = parse_matrix(qs[i]["A"], field + ".A", allow_float);
      if (qs[i].contains("b")) q.b = parse_vector(qs[i]["b"], field + ".b", allow_float);
      if (qs[i].contains("c")) q.c = parse_scalar(qs[i]["c"], field + ".c", allow_float);
      pl.quadratic.push_back(std::move(q));
    }
  }

  const std::size_t defined = pl.constraint_count();
  p.m = doc.contains("m") ? parse_size(doc["m"], "m") : defined;
  p.validate();
  return p;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_file(buf.str());
}

ordered_json problem_to_json(const ProblemFile& p) {
  ordered_json j;
  j["kind"] = std::string(kind_name(p.kind));
  j["arithmetic"] = p.arithmetic == Arithmetic::kRational ? "rational" : "float";
  j["n"] = p.n;
  if (p.kind == ProblemKind::kMixed) j["n_continuous"] = p.n_continuous;
  j["m"] = p.m;
  j["lambda"] = to_string(p.lambda);
  if (p.weights) j["weights"] = vector_to_json(*p.weights);
  if (p.epsilon) j["epsilon"] = to_string(*p.epsilon);
  if (p.kappa) j["kappa"] = to_string(*p.kappa);
  j["c"] = vector_to_json(p.payload.c);
  if (!p.payload.Q.empty()) j["Q"] = matrix_to_json(p.payload.Q);
  j["A"] = matrix_to_json(p.payload.A);
  j["b"] = vector_to_json(p.payload.b);
  if (!p.payload.quadratic.empty()) {
    ordered_json qs = ordered_json::array();
    for (const auto& q : p.payload.quadratic) {
      ordered_json e;
      if (!q.A.empty()) e["A"] = matrix_to_json(q.A);
      if (!q.b.empty()) e["b"] = vector_to_json(q.b);
      e["c"] = to_string(q.c);
      qs.push_back(std::move(e));
    }
    j["quadratic_constraints"] = std::move(qs);
  }
  return j;
}

std::string serialize_problem_file(const ProblemFile& p) { return problem_to_json(p).dump(2) + "\n"; }

}  // namespace l1opt

#pragma once

// JSON problem files. Every coefficient is held as an exact rational no
// matter which arithmetic the file asks for, so parse -> serialize -> parse
// is the identity.
//
// Scalars may be written as JSON integers, strings ("7", "-3/4", "1.25",
// "2e-3") or [numerator, denominator] pairs. Plain JSON floats are accepted
// only when "arithmetic" is "float"; they are read as the decimal text that
// the JSON library prints for them.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "l1opt/numeric.hpp"
#include "l1opt/problem.hpp"

namespace l1opt {

enum class ProblemKind { kIlp, kIqp, kIqcqp, kLipschitzLinear, kLipschitzQuadratic, kMixed };

std::string_view kind_name(ProblemKind k);
bool is_integer_kind(ProblemKind k);
bool is_lipschitz_kind(ProblemKind k);

struct ProblemFile {
  ProblemKind kind = ProblemKind::kIlp;
  Arithmetic arithmetic = Arithmetic::kRational;
  std::size_t n = 0;             // integer (or real, for lipschitz kinds) dimension
  std::size_t n_continuous = 0;  // mixed only: y block, appended after x
  std::size_t m = 0;             // number of constraints
  // For mixed files payload.n == n + n_continuous and the objective and
  // constraints are linear in (x, y).
  Payload<Rational> payload;
  Rational lambda;
  std::optional<std::vector<Rational>> weights;
  std::optional<Rational> epsilon;
  std::optional<Rational> kappa;

  // Throws Error naming the offending field.
  void validate() const;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

// Throws Error(kParse) with the line/column or field path of the problem.
ProblemFile parse_problem_file(std::string_view text);
ProblemFile load_problem_file(const std::string& path);

nlohmann::ordered_json problem_to_json(const ProblemFile& p);
std::string serialize_problem_file(const ProblemFile& p);

// Scalar helpers shared with the command-line front end.
Rational parse_scalar(const nlohmann::json& j, const std::string& field, bool allow_float);

}  // namespace l1opt

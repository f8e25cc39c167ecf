#include "l1opt/problem.hpp"

#include <string>

namespace l1opt {

namespace {

template <class T>
void check_square(const Matrix<T>& M, std::size_t n, const std::string& field) {
  if (M.empty()) return;
  if (M.size() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                field + ": expected " + std::to_string(n) + " rows, got " +
                    std::to_string(M.size()));
  }
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (M[i].size() != n) {
      throw Error(ErrorCode::kShapeMismatch, field + "[" + std::to_string(i) + "]: expected " +
                                                 std::to_string(n) + " columns, got " +
                                                 std::to_string(M[i].size()));
    }
  }
}

}  // namespace

template <class T>
void Payload<T>::validate() const {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be >= 1");
  if (c.size() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "c: expected " + std::to_string(n) + " entries, got " + std::to_string(c.size()));
  }
  check_square(Q, n, "Q");
  if (A.size() != b.size()) {
    throw Error(ErrorCode::kShapeMismatch, "A has " + std::to_string(A.size()) +
                                               " rows but b has " + std::to_string(b.size()) +
                                               " entries");
  }
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != n) {
      throw Error(ErrorCode::kShapeMismatch, "A[" + std::to_string(i) + "]: expected " +
                                                 std::to_string(n) + " columns, got " +
                                                 std::to_string(A[i].size()));
    }
  }
  for (std::size_t i = 0; i < quadratic.size(); ++i) {
    const std::string field = "quadratic_constraints[" + std::to_string(i) + "]";
    check_square(quadratic[i].A, n, field + ".A");
    if (!quadratic[i].b.empty() && quadratic[i].b.size() != n) {
      throw Error(ErrorCode::kShapeMismatch, field + ".b: expected " + std::to_string(n) +
                                                 " entries, got " +
                                                 std::to_string(quadratic[i].b.size()));
    }
  }
}

template <class T>
ProblemInstance<T> make_payload_problem(Payload<T> payload) {
  payload.validate();
  ProblemInstance<T> p;
  p.n = payload.n;
  p.m = payload.constraint_count();
  p.payload = std::move(payload);
  // The oracle holds its own copy so the instance stays copyable.
  p.oracle = [data = *p.payload](std::span<const std::int64_t> x) {
    return evaluate_payload<T, std::int64_t>(data, x);
  };
  return p;
}

template <class T>
ProblemInstance<T> make_linear_oracle(Vector<T> c, Matrix<T> A, Vector<T> b) {
  Payload<T> payload;
  payload.n = c.size();
  payload.c = std::move(c);
  payload.A = std::move(A);
  payload.b = std::move(b);
  return make_payload_problem(std::move(payload));
}

template <class T>
ProblemInstance<T> make_quadratic_oracle(Matrix<T> Q, Vector<T> c,
                                         std::vector<QuadraticConstraint<T>> constraints) {
  Payload<T> payload;
  payload.n = c.size();
  payload.Q = std::move(Q);
  payload.c = std::move(c);
  payload.quadratic = std::move(constraints);
  return make_payload_problem(std::move(payload));
}

template <class T>
ProblemInstance<T> make_problem(std::size_t n, std::size_t m, IntOracle<T> oracle) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be >= 1");
  ProblemInstance<T> p;
  p.n = n;
  p.m = m;
  p.oracle = std::move(oracle);
  return p;
}

#define L1OPT_INSTANTIATE(T)                                                                   \
  template struct Payload<T>;                                                                  \
  template ProblemInstance<T> make_payload_problem<T>(Payload<T>);                             \
  template ProblemInstance<T> make_linear_oracle<T>(Vector<T>, Matrix<T>, Vector<T>);          \
  template ProblemInstance<T> make_quadratic_oracle<T>(Matrix<T>, Vector<T>,                   \
                                                       std::vector<QuadraticConstraint<T>>);   \
  template ProblemInstance<T> make_problem<T>(std::size_t, std::size_t, IntOracle<T>);

L1OPT_INSTANTIATE(Rational)
L1OPT_INSTANTIATE(double)

#undef L1OPT_INSTANTIATE

}  // namespace l1opt

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "l1opt/numeric.hpp"

namespace l1opt {

template <class T>
using Vector = std::vector<T>;
template <class T>
using Matrix = std::vector<std::vector<T>>;

// Objective value and every constraint value at one point. Evaluating an
// oracle once is one oracle step.
template <class T>
struct Evaluation {
  T objective{};
  std::vector<T> constraints;
};

template <class T>
using IntOracle = std::function<Evaluation<T>(std::span<const std::int64_t>)>;

// x' A x + b' x + c <= 0
template <class T>
struct QuadraticConstraint {
  Matrix<T> A;
  Vector<T> b;
  T c{};

  friend bool operator==(const QuadraticConstraint&, const QuadraticConstraint&) = default;
};

// Structured problem data for the built-in classes.
//   objective:   x' Q x + c' x          (Q empty for linear objectives)
//   constraints: A x - b <= 0 (rows), then each quadratic constraint.
template <class T>
struct Payload {
  std::size_t n = 0;
  Matrix<T> Q;
  Vector<T> c;
  Matrix<T> A;
  Vector<T> b;
  std::vector<QuadraticConstraint<T>> quadratic;

  std::size_t constraint_count() const { return A.size() + quadratic.size(); }
  bool linear_objective() const { return Q.empty(); }
  bool linear_constraints() const { return quadratic.empty(); }

  // Throws kShapeMismatch naming the offending field.
  void validate() const;

  template <class U>
  Payload<U> convert() const;

  friend bool operator==(const Payload&, const Payload&) = default;
};

template <class T>
struct ProblemInstance {
  std::size_t n = 0;
  std::size_t m = 0;
  IntOracle<T> oracle;
  std::optional<Payload<T>> payload;

  static constexpr Arithmetic arithmetic = ScalarTraits<T>::arithmetic;
};

// Oracle over any scalar point type (integer points for the IP solvers, real
// points for the continuous ones).
template <class T, class X>
Evaluation<T> evaluate_payload(const Payload<T>& p, std::span<const X> x);

template <class T>
ProblemInstance<T> make_payload_problem(Payload<T> payload);

// f = c'x, g = Ax - b.
template <class T>
ProblemInstance<T> make_linear_oracle(Vector<T> c, Matrix<T> A, Vector<T> b);

// f = x'Qx + c'x, g_i = x'A_i x + b_i'x + c_i.
template <class T>
ProblemInstance<T> make_quadratic_oracle(Matrix<T> Q, Vector<T> c,
                                         std::vector<QuadraticConstraint<T>> constraints);

// Wraps an arbitrary callable as a problem with n variables and m constraints.
template <class T>
ProblemInstance<T> make_problem(std::size_t n, std::size_t m, IntOracle<T> oracle);

// ---------------------------------------------------------------------------

template <class T>
template <class U>
Payload<U> Payload<T>::convert() const {
  auto cv = [](const T& v) -> U {
    if constexpr (std::is_same_v<U, double>) {
      return to_double(v);
    } else {
      return U(v);
    }
  };
  auto vec = [&](const Vector<T>& v) {
    Vector<U> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(cv(e));
    return out;
  };
  auto mat = [&](const Matrix<T>& m) {
    Matrix<U> out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(vec(row));
    return out;
  };
  Payload<U> out;
  out.n = n;
  out.Q = mat(Q);
  out.c = vec(c);
  out.A = mat(A);
  out.b = vec(b);
  for (const auto& q : quadratic) out.quadratic.push_back({mat(q.A), vec(q.b), cv(q.c)});
  return out;
}

namespace detail {

template <class T, class X>
T as_scalar(const X& x) {
  if constexpr (std::is_same_v<T, Rational> && std::is_integral_v<X>) {
    return Rational(static_cast<long long>(x));
  } else {
    return static_cast<T>(x);
  }
}

template <class T, class X>
T dot(const Vector<T>& a, std::span<const X> x) {
  T acc{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (x[i] == 0 || a[i] == 0) continue;
    acc += a[i] * as_scalar<T>(x[i]);
  }
  return acc;
}

template <class T, class X>
T quadratic_form(const Matrix<T>& M, std::span<const X> x) {
  T acc{};
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (x[i] == 0) continue;
    const T row = dot(M[i], x);
    if (row != 0) acc += row * as_scalar<T>(x[i]);
  }
  return acc;
}

}  // namespace detail

template <class T, class X>
Evaluation<T> evaluate_payload(const Payload<T>& p, std::span<const X> x) {
  Evaluation<T> e;
  e.objective = detail::dot(p.c, x);
  if (!p.Q.empty()) e.objective += detail::quadratic_form(p.Q, x);
  e.constraints.reserve(p.constraint_count());
  for (std::size_t i = 0; i < p.A.size(); ++i) {
    e.constraints.push_back(detail::dot(p.A[i], x) - p.b[i]);
  }
  for (const auto& q : p.quadratic) {
    T v = q.c;
    if (!q.b.empty()) v += detail::dot(q.b, x);
    if (!q.A.empty()) v += detail::quadratic_form(q.A, x);
    e.constraints.push_back(std::move(v));
  }
  return e;
}

}  // namespace l1opt

#pragma once

// Brute-force references used by the tests. Nothing here calls into the
// enumeration, counting, LP or solver code under test; everything is a box
// scan or a dense exact linear solve.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "l1opt/numeric.hpp"
#include "l1opt/problem.hpp"

namespace oracle {

using l1opt::BigInt;
using l1opt::Rational;
using Point = std::vector<std::int64_t>;

// Calls visit(x) for every x in the box [-r, r]^n, in lexicographic order.
inline void for_each_box_point(std::size_t n, std::int64_t r,
                               const std::function<void(const Point&)>& visit) {
  Point x(n, -r);
  while (true) {
    visit(x);
    std::size_t i = n;
    while (true) {
      if (i == 0) return;
      --i;
      if (x[i] < r) {
        ++x[i];
        break;
      }
      x[i] = -r;
    }
  }
}

inline std::int64_t l1(const Point& x) {
  std::int64_t s = 0;
  for (auto v : x) s += std::llabs(v);
  return s;
}

inline std::int64_t floor_radius(double lambda) {
  return static_cast<std::int64_t>(std::floor(lambda));
}

inline std::set<Point> l1_points(std::size_t n, double lambda) {
  std::set<Point> out;
  const std::int64_t r = floor_radius(lambda);
  for_each_box_point(n, r, [&](const Point& x) {
    if (static_cast<double>(l1(x)) <= lambda) out.insert(x);
  });
  return out;
}

inline std::uint64_t count_l1(std::size_t n, double lambda) { return l1_points(n, lambda).size(); }

inline std::uint64_t count_linf(std::size_t n, double lambda) {
  std::uint64_t c = 0;
  for_each_box_point(n, floor_radius(lambda), [&](const Point&) { ++c; });
  return c;
}

inline std::uint64_t count_l2(std::size_t n, double lambda) {
  std::uint64_t c = 0;
  for_each_box_point(n, floor_radius(lambda), [&](const Point& x) {
    double s = 0;
    for (auto v : x) s += static_cast<double>(v * v);
    if (s <= lambda * lambda) ++c;
  });
  return c;
}

// ---- problems -------------------------------------------------------------

struct BruteResult {
  bool feasible = false;
  Rational best;
  std::vector<Point> optima;  // lexicographic order
};

// Exact minimum over the integer points of the radius-r l1-ball (or of a
// weighted ball when weights are given).
inline BruteResult brute_minimize(const l1opt::Payload<Rational>& p, std::int64_t box_radius,
                                  const std::function<bool(const Point&)>& in_domain) {
  BruteResult r;
  for_each_box_point(p.n, box_radius, [&](const Point& x) {
    if (!in_domain(x)) return;
    // Direct evaluation, term by term.
    Rational f = 0;
    for (std::size_t i = 0; i < p.n; ++i) f += p.c[i] * x[i];
    if (!p.Q.empty()) {
      for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t j = 0; j < p.n; ++j) f += p.Q[i][j] * x[i] * x[j];
    }
    for (std::size_t k = 0; k < p.A.size(); ++k) {
      Rational g = -p.b[k];
      for (std::size_t i = 0; i < p.n; ++i) g += p.A[k][i] * x[i];
      if (g > 0) return;
    }
    for (const auto& q : p.quadratic) {
      Rational g = q.c;
      for (std::size_t i = 0; i < q.b.size(); ++i) g += q.b[i] * x[i];
      for (std::size_t i = 0; i < q.A.size(); ++i)
        for (std::size_t j = 0; j < p.n; ++j) g += q.A[i][j] * x[i] * x[j];
      if (g > 0) return;
    }
    if (!r.feasible || f < r.best) {
      r.feasible = true;
      r.best = f;
      r.optima.clear();
    }
    if (f == r.best) r.optima.push_back(x);
  });
  return r;
}

// ---- random instances -----------------------------------------------------

// Rational with numerator and denominator drawn from [-5, 5] (denominator
// nonzero).
inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<int> sign(0, 1);
  const int d = den(rng) * (sign(rng) ? 1 : -1);
  return Rational(num(rng)) / d;
}

inline std::vector<Rational> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::vector<Rational> v(n);
  for (auto& e : v) e = random_rational(rng);
  return v;
}

inline l1opt::Matrix<Rational> random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  l1opt::Matrix<Rational> m(r);
  for (auto& row : m) row = random_vector(c, rng);
  return m;
}

inline l1opt::Payload<Rational> random_ilp(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  l1opt::Payload<Rational> p;
  p.n = n;
  p.c = random_vector(n, rng);
  p.A = random_matrix(m, n, rng);
  p.b = random_vector(m, rng);
  return p;
}

inline l1opt::Payload<Rational> random_iqp(std::size_t n, std::size_t m, bool quadratic_constraint,
                                           std::mt19937_64& rng) {
  l1opt::Payload<Rational> p = random_ilp(n, m, rng);
  p.Q = random_matrix(n, n, rng);
  if (quadratic_constraint) {
    l1opt::QuadraticConstraint<Rational> q;
    q.A = random_matrix(n, n, rng);
    q.b = random_vector(n, rng);
    q.c = random_rational(rng);
    p.quadratic.push_back(std::move(q));
  }
  return p;
}

// ---- linear programming by vertex enumeration -----------------------------

// Solves M y = r exactly; returns nullopt when M is singular.
inline std::optional<std::vector<Rational>> solve_square(l1opt::Matrix<Rational> M,
                                                         std::vector<Rational> r) {
  const std::size_t n = M.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(r[piv], r[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || M[row][col] == 0) continue;
      const Rational f = M[row][col] / M[col][col];
      for (std::size_t k = col; k < n; ++k) M[row][k] -= f * M[col][k];
      r[row] -= f * r[col];
    }
  }
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = r[i] / M[i][i];
  return y;
}

struct VertexResult {
  bool feasible = false;
  Rational value;
};

// max c'x over {A x <= b}, assumed bounded and pointed: the optimum sits at
// a vertex, i.e. a feasible solution of n tight, independent rows.
inline VertexResult lp_by_vertices(const std::vector<Rational>& c, const l1opt::Matrix<Rational>& A,
                                   const std::vector<Rational>& b) {
  const std::size_t n = c.size();
  const std::size_t m = A.size();
  VertexResult best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == n) {
      l1opt::Matrix<Rational> M;
      std::vector<Rational> r;
      for (auto k : pick) {
        M.push_back(A[k]);
        r.push_back(b[k]);
      }
      auto y = solve_square(M, r);
      if (!y) return;
      for (std::size_t k = 0; k < m; ++k) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < n; ++j) lhs += A[k][j] * (*y)[j];
        if (lhs > b[k]) return;
      }
      Rational v = 0;
      for (std::size_t j = 0; j < n; ++j) v += c[j] * (*y)[j];
      if (!best.feasible || v > best.value) {
        best.feasible = true;
        best.value = v;
      }
      return;
    }
    for (std::size_t k = from; k < m; ++k) {
      pick[depth] = k;
      rec(depth + 1, k + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace oracle

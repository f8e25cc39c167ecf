#include "l1opt/lp.hpp"

#include <string>

namespace l1opt {

std::string_view lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

template <class T>
struct Tol {
  static bool positive(const T& v) { return v > 0; }
  static bool negative(const T& v) { return v < 0; }
  static bool zero(const T& v) { return v == 0; }
};

template <>
struct Tol<double> {
  static constexpr double kEps = 1e-9;
  static bool positive(double v) { return v > kEps; }
  static bool negative(double v) { return v < -kEps; }
  static bool zero(double v) { return v <= kEps && v >= -kEps; }
};

// How an original variable is expressed through nonnegative columns:
// x = offset + sign * z[col] (- z[col2] when free).
template <class T>
struct VarMap {
  T offset{};
  int sign = 1;
  std::size_t col = 0;
  std::optional<std::size_t> neg_col;
};

// Tableau for: maximize obj'z, rows z <= rhs, z >= 0. Row 0 is the objective
// row holding -reduced costs; column `width` is the right-hand side.
template <class T>
class Tableau {
 public:
  Tableau(const Matrix<T>& rows, const std::vector<T>& rhs, std::size_t structural)
      : structural_(structural), slack_count_(rows.size()) {
    std::size_t artificial = 0;
    for (const T& r : rhs) {
      if (Tol<T>::negative(r)) ++artificial;
    }
    width_ = structural_ + slack_count_ + artificial;
    first_artificial_ = structural_ + slack_count_;
    t_.assign(rows.size() + 1, std::vector<T>(width_ + 1, T(0)));
    basis_.assign(rows.size(), 0);
    std::size_t next_art = first_artificial_;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto& row = t_[i + 1];
      const bool flip = Tol<T>::negative(rhs[i]);
      for (std::size_t j = 0; j < structural_; ++j) row[j] = flip ? T(-rows[i][j]) : rows[i][j];
      row[structural_ + i] = flip ? T(-1) : T(1);
      row[width_] = flip ? T(-rhs[i]) : rhs[i];
      if (flip) {
        row[next_art] = T(1);
        basis_[i] = next_art++;
      } else {
        basis_[i] = structural_ + i;
      }
    }
  }

  // Returns false if the constraints are infeasible.
  bool phase_one() {
    if (first_artificial_ == width_) return true;
    auto& obj = t_[0];
    std::fill(obj.begin(), obj.end(), T(0));
    // maximize -sum(a): row0 = sum(a) expressed in nonbasics.
    for (std::size_t j = first_artificial_; j < width_; ++j) obj[j] = T(1);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] >= first_artificial_) subtract_row(0, i + 1, T(1));
    }
    run(width_);
    if (Tol<T>::negative(t_[0][width_])) return false;

    // Pivot zero-level artificials out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < basis_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (!Tol<T>::zero(t_[i + 1][j])) {
          col = j;
          break;
        }
      }
      if (col) {
        pivot(i + 1, *col);
        ++i;
      } else {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i + 1));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    return true;
  }

  // Returns false if unbounded.
  bool phase_two(const std::vector<T>& objective) {
    auto& obj = t_[0];
    std::fill(obj.begin(), obj.end(), T(0));
    for (std::size_t j = 0; j < structural_; ++j) obj[j] = T(-objective[j]);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const T f = t_[0][basis_[i]];
      if (!Tol<T>::zero(f)) subtract_row(0, i + 1, f);
    }
    return run(first_artificial_);
  }

  std::vector<T> structural_values() const {
    std::vector<T> z(structural_, T(0));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] < structural_) z[basis_[i]] = t_[i + 1][width_];
    }
    return z;
  }

 private:
  void subtract_row(std::size_t target, std::size_t source, const T& factor) {
    auto& dst = t_[target];
    const auto& src = t_[source];
    for (std::size_t j = 0; j <= width_; ++j) {
      if (!Tol<T>::zero(src[j])) dst[j] -= factor * src[j];
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& r = t_[row];
    const T p = r[col];
    for (auto& v : r) {
      if (v != 0) v /= p;
    }
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == row) continue;
      const T f = t_[i][col];
      if (!Tol<T>::zero(f)) subtract_row(i, row, f);
      t_[i][col] = T(0);
    }
    basis_[row - 1] = col;
  }

  // Bland's rule over columns [0, limit). Returns false on unboundedness.
  bool run(std::size_t limit) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < limit; ++j) {
        if (Tol<T>::negative(t_[0][j])) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      T best_ratio{};
      for (std::size_t i = 1; i < t_.size(); ++i) {
        const T& a = t_[i][*enter];
        if (!Tol<T>::positive(a)) continue;
        const T ratio = t_[i][width_] / a;
        if (!leave || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i - 1] < basis_[*leave - 1])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  std::size_t structural_;
  std::size_t slack_count_;
  std::size_t width_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::vector<T>> t_;
  std::vector<std::size_t> basis_;
};

template <class T>
void check_shapes(const LpProblem<T>& p) {
  const std::size_t n = p.c.size();
  if (p.A.size() != p.b.size()) {
    throw Error(ErrorCode::kShapeMismatch, "lp: A and b have different row counts");
  }
  for (const auto& row : p.A) {
    if (row.size() != n) throw Error(ErrorCode::kShapeMismatch, "lp: A row width != len(c)");
  }
  if (!p.lower.empty() && p.lower.size() != n) {
    throw Error(ErrorCode::kShapeMismatch, "lp: lower bounds size != len(c)");
  }
  if (!p.upper.empty() && p.upper.size() != n) {
    throw Error(ErrorCode::kShapeMismatch, "lp: upper bounds size != len(c)");
  }
}

}  // namespace

template <class T>
LpResult<T> lp_optimize(const LpProblem<T>& p) {
  check_shapes(p);
  const std::size_t n = p.c.size();
  auto lo = [&](std::size_t j) -> std::optional<T> {
    return p.lower.empty() ? std::nullopt : p.lower[j];
  };
  auto hi = [&](std::size_t j) -> std::optional<T> {
    return p.upper.empty() ? std::nullopt : p.upper[j];
  };

  LpResult<T> result;
  std::vector<VarMap<T>> map(n);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (lo(j) && hi(j) && *hi(j) < *lo(j)) return result;  // empty box
    if (lo(j)) {
      map[j] = {*lo(j), 1, cols++, std::nullopt};
    } else if (hi(j)) {
      map[j] = {*hi(j), -1, cols++, std::nullopt};
    } else {
      map[j] = {T(0), 1, cols, cols + 1};
      cols += 2;
    }
  }

  Matrix<T> rows;
  std::vector<T> rhs;
  auto add_row = [&](const std::vector<T>& a, const T& bound) {
    std::vector<T> row(cols, T(0));
    T r = bound;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[j] == 0) continue;
      r -= a[j] * map[j].offset;
      row[map[j].col] += map[j].sign == 1 ? a[j] : T(-a[j]);
      if (map[j].neg_col) row[*map[j].neg_col] -= a[j];
    }
    rows.push_back(std::move(row));
    rhs.push_back(std::move(r));
  };
  for (std::size_t i = 0; i < p.A.size(); ++i) add_row(p.A[i], p.b[i]);
  for (std::size_t j = 0; j < n; ++j) {
    if (lo(j) && hi(j)) {
      std::vector<T> e(n, T(0));
      e[j] = T(1);
      add_row(e, *hi(j));
    }
  }

  std::vector<T> objective(cols, T(0));
  for (std::size_t j = 0; j < n; ++j) {
    const T cj = p.sense == Sense::kMaximize ? p.c[j] : T(-p.c[j]);
    objective[map[j].col] += map[j].sign == 1 ? cj : T(-cj);
    if (map[j].neg_col) objective[*map[j].neg_col] -= cj;
  }

  Tableau<T> tableau(rows, rhs, cols);
  if (!tableau.phase_one()) return result;
  if (!tableau.phase_two(objective)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  const std::vector<T> z = tableau.structural_values();
  result.status = LpStatus::kOptimal;
  result.x.resize(n);
  result.value = T(0);
  for (std::size_t j = 0; j < n; ++j) {
    T v = map[j].offset + (map[j].sign == 1 ? z[map[j].col] : T(-z[map[j].col]));
    if (map[j].neg_col) v -= z[*map[j].neg_col];
    result.value += p.c[j] * v;
    result.x[j] = std::move(v);
  }
  return result;
}

template <class T>
LpResult<T> lp_solve(const LpProblem<T>& p) {
  LpResult<T> r = lp_optimize(p);
  if (r.status == LpStatus::kInfeasible) throw Error(ErrorCode::kLpInfeasible, "LP is infeasible");
  if (r.status == LpStatus::kUnbounded) throw Error(ErrorCode::kLpUnbounded, "LP is unbounded");
  return r;
}

template LpResult<Rational> lp_optimize<Rational>(const LpProblem<Rational>&);
template LpResult<double> lp_optimize<double>(const LpProblem<double>&);
template LpResult<Rational> lp_solve<Rational>(const LpProblem<Rational>&);
template LpResult<double> lp_solve<double>(const LpProblem<double>&);

}  // namespace l1opt

#include "l1opt/lattice.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

#include "l1opt/counting.hpp"

namespace l1opt {

bool MultisetVector::valid() const {
  if (u.empty() || value_bound < 1) return false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 1 || u[i] > value_bound) return false;
    if (i > 0 && u[i - 1] > u[i]) return false;
  }
  return true;
}

MultisetVector multiset_first(std::size_t k, std::int64_t value_bound) {
  if (k == 0 || value_bound < 1) {
    throw Error(ErrorCode::kInvalidDimension, "multiset needs k >= 1 and N >= 1");
  }
  return MultisetVector{std::vector<std::int64_t>(k, 1), value_bound};
}

std::optional<std::size_t> multiset_advance(MultisetVector& m) {
  auto& u = m.u;
  std::size_t i = u.size();
  while (i > 0 && u[i - 1] == m.value_bound) --i;
  if (i == 0) return std::nullopt;
  --i;
  const std::int64_t next = u[i] + 1;
  for (std::size_t j = i; j < u.size(); ++j) u[j] = next;
  return i;
}

std::optional<MultisetVector> multiset_next(const MultisetVector& u) {
  MultisetVector next = u;
  if (!multiset_advance(next)) return std::nullopt;
  return next;
}

std::vector<std::int64_t> phi(const MultisetVector& m) {
  std::vector<std::int64_t> v(m.u.size());
  std::int64_t prev = 1;
  for (std::size_t i = 0; i < m.u.size(); ++i) {
    v[i] = m.u[i] - prev;
    prev = m.u[i];
  }
  return v;
}

MultisetVector phi_inverse(std::span<const std::int64_t> v, std::int64_t value_bound) {
  if (v.empty() || value_bound < 1) {
    throw Error(ErrorCode::kInvalidDimension, "phi_inverse needs k >= 1 and N >= 1");
  }
  MultisetVector m{std::vector<std::int64_t>(v.size()), value_bound};
  std::int64_t running = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) throw Error(ErrorCode::kOutOfRange, "phi_inverse: negative entry");
    running += v[i];
    if (running > value_bound) {
      throw Error(ErrorCode::kOutOfRange, "phi_inverse: sum(v) exceeds N - 1");
    }
    m.u[i] = running;
  }
  return m;
}

SignPatternCursor::SignPatternCursor(std::span<const std::int64_t> b) {
  pattern_.s.assign(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != 0) {
      pattern_.s[i] = 1;
      pattern_.support.push_back(i);
    }
  }
}

void SignPatternCursor::advance() {
  for (std::size_t idx : pattern_.support) {
    int& s = pattern_.s[idx];
    s = -s;
    if (s < 0) return;  // 0 -> 1 bit flip, no carry
  }
  done_ = true;  // counter wrapped
}

std::vector<SignPattern> sign_patterns(std::span<const std::int64_t> b) {
  std::vector<SignPattern> out;
  for (SignPatternCursor c(b); !c.done(); c.advance()) out.push_back(c.pattern());
  return out;
}

L1LatticeCursor::L1LatticeCursor(std::size_t n, std::int64_t radius)
    : L1LatticeCursor(n, radius, std::nullopt) {}

L1LatticeCursor L1LatticeCursor::partition(std::size_t n, std::int64_t radius,
                                           std::int64_t first_entry) {
  return L1LatticeCursor(n, radius, first_entry);
}

L1LatticeCursor::L1LatticeCursor(std::size_t n, std::int64_t radius,
                                 std::optional<std::int64_t> first)
    : n_(n), radius_(radius), pinned_first_(first) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "lattice dimension must be >= 1");
  if (radius < 0) throw Error(ErrorCode::kInvalidArgument, "radius must be >= 0");
  const std::int64_t start = first.value_or(1);
  if (start < 1 || start > radius + 1) {
    throw Error(ErrorCode::kOutOfRange, "partition index outside [1, radius + 1]");
  }
  u_ = MultisetVector{std::vector<std::int64_t>(n, start), radius + 1};
  magnitude_.assign(n, 0);
  point_.x.assign(n, 0);
  load_magnitudes(0);
  point_.ordinal = first ? partition_offset(n, radius, start) : BigInt(0);
}

void L1LatticeCursor::load_magnitudes(std::size_t from) {
  // Entries before `from` are unchanged; after a multiset step only the
  // changed index can become nonzero in the suffix.
  while (!support_.empty() && support_.back() >= from) support_.pop_back();
  for (std::size_t j = from; j < n_; ++j) {
    const std::int64_t prev = j == 0 ? 1 : u_.u[j - 1];
    magnitude_[j] = u_.u[j] - prev;
    point_.x[j] = magnitude_[j];
    if (magnitude_[j] != 0) support_.push_back(j);
  }
  point_.l1 = u_.u.back() - 1;
  reset_signs();
}

void L1LatticeCursor::reset_signs() {
  negative_.assign(support_.size(), 0);
  for (std::size_t idx : support_) point_.x[idx] = magnitude_[idx];
}

bool L1LatticeCursor::advance_signs() {
  for (std::size_t slot = 0; slot < support_.size(); ++slot) {
    const std::size_t idx = support_[slot];
    point_.x[idx] = -point_.x[idx];
    if (negative_[slot] == 0) {
      negative_[slot] = 1;
      return true;
    }
    negative_[slot] = 0;
  }
  return false;
}

void L1LatticeCursor::advance() {
  if (done_) return;
  if (!advance_signs()) {
    const auto changed = multiset_advance(u_);
    if (!changed || (pinned_first_ && *changed == 0)) {
      done_ = true;
      return;
    }
    load_magnitudes(*changed);
  }
  ++point_.ordinal;
}

L1LatticeCursor L1LatticeCursor::at_ordinal(std::size_t n, std::int64_t radius,
                                            const BigInt& ordinal) {
  const auto x = point_at_ordinal(n, radius, ordinal);
  L1LatticeCursor cursor(n, radius);
  std::vector<std::int64_t> magnitude(n);
  for (std::size_t i = 0; i < n; ++i) magnitude[i] = std::llabs(x[i]);
  cursor.u_ = phi_inverse(magnitude, radius + 1);
  cursor.load_magnitudes(0);
  for (std::size_t slot = 0; slot < cursor.support_.size(); ++slot) {
    const std::size_t idx = cursor.support_[slot];
    cursor.negative_[slot] = x[idx] < 0 ? 1 : 0;
    cursor.point_.x[idx] = x[idx];
  }
  cursor.point_.ordinal = ordinal;
  return cursor;
}

L1LatticeRange l1_lattice_points(std::size_t n, std::int64_t radius) {
  return L1LatticeRange(n, radius);
}

L1LatticeRange l1_lattice_iter(std::size_t n, const Rational& lambda) {
  return L1LatticeRange(n, radius_floor(lambda));
}

L1LatticeRange l1_lattice_iter(std::size_t n, double lambda) {
  return L1LatticeRange(n, radius_floor(lambda));
}

BigInt partition_offset(std::size_t n, std::int64_t radius, std::int64_t first_entry) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "lattice dimension must be >= 1");
  if (first_entry < 1 || first_entry > radius + 1) {
    throw Error(ErrorCode::kOutOfRange, "partition index outside [1, radius + 1]");
  }
  BigInt offset = 0;
  for (std::int64_t a = 0; a + 1 < first_entry; ++a) {
    offset += BigInt(a == 0 ? 1 : 2) * count_l1_lattice_int(n - 1, radius - a);
  }
  return offset;
}

BigInt canonical_ordinal(std::span<const std::int64_t> x, std::int64_t radius) {
  const std::size_t n = x.size();
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "lattice dimension must be >= 1");
  std::int64_t norm = 0;
  for (std::int64_t xi : x) norm += std::llabs(xi);
  if (norm > radius) {
    throw Error(ErrorCode::kOutOfBall, "point has l1 norm " + std::to_string(norm) +
                                           " > radius " + std::to_string(radius));
  }

  // Outer order is lexicographic in |x|. For each position count the signed
  // points whose magnitude prefix agrees so far and is smaller here.
  BigInt ordinal = 0;
  std::int64_t used = 0;
  std::size_t prefix_support = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t vi = std::llabs(x[i]);
    for (std::int64_t a = 0; a < vi; ++a) {
      const std::size_t support = prefix_support + (a != 0 ? 1 : 0);
      ordinal += (BigInt(1) << support) * count_l1_lattice_int(n - i - 1, radius - used - a);
    }
    used += vi;
    if (vi != 0) ++prefix_support;
  }

  BigInt sign_index = 0;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    if (x[i] < 0) sign_index |= BigInt(1) << bit;
    ++bit;
  }
  return ordinal + sign_index;
}

std::vector<std::int64_t> point_at_ordinal(std::size_t n, std::int64_t radius,
                                           const BigInt& ordinal) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "lattice dimension must be >= 1");
  if (ordinal < 0 || ordinal >= count_l1_lattice_int(n, radius)) {
    throw Error(ErrorCode::kOutOfRange, "ordinal past the end of the enumeration");
  }
  std::vector<std::int64_t> x(n, 0);
  BigInt rest = ordinal;
  std::int64_t used = 0;
  std::size_t support = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::int64_t a = 0;; ++a) {
      const std::size_t s = support + (a != 0 ? 1 : 0);
      const BigInt block = (BigInt(1) << s) * count_l1_lattice_int(n - i - 1, radius - used - a);
      if (rest < block) {
        x[i] = a;
        break;
      }
      rest -= block;
    }
    used += x[i];
    if (x[i] != 0) ++support;
  }
  // What remains indexes the sign pattern.
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    if (boost::multiprecision::bit_test(rest, static_cast<unsigned>(bit))) x[i] = -x[i];
    ++bit;
  }
  return x;
}

}  // namespace l1opt

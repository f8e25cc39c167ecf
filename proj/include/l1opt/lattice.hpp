#pragma once

// Streaming enumeration of the integer points of an l1-ball.
//
// Points of {x in Z^n : |x|_1 <= L} are produced in a fixed canonical order:
// the outer loop walks the multisets u in M_n^{L+1} (nondecreasing vectors
// over [L+1]) in lexicographic order, maps each one to a magnitude vector
// v = phi(u), and the inner loop walks every sign assignment of the nonzero
// entries of v as a binary counter. Ordinals number this sequence from 0 and
// are used for deterministic tie-breaking by every solver in the library.

#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <vector>

#include "l1opt/numeric.hpp"

namespace l1opt {

// Nondecreasing vector of k entries in [1, N].
struct MultisetVector {
  std::vector<std::int64_t> u;
  std::int64_t value_bound = 0;  // N

  std::size_t size() const { return u.size(); }
  bool valid() const;
  friend bool operator==(const MultisetVector&, const MultisetVector&) = default;
};

struct LatticePoint {
  std::vector<std::int64_t> x;
  std::int64_t l1 = 0;
  BigInt ordinal = 0;
};

// Entries in {-1, 0, +1}; nonzero exactly on `support` (ascending).
struct SignPattern {
  std::vector<int> s;
  std::vector<std::size_t> support;
};

MultisetVector multiset_first(std::size_t k, std::int64_t value_bound);

// Lexicographic successor; nullopt after (N, ..., N). Amortized O(1).
std::optional<MultisetVector> multiset_next(const MultisetVector& u);

// Advances in place; returns the smallest index that changed, or nullopt if
// `u` was the last multiset (in which case `u` is left unchanged).
std::optional<std::size_t> multiset_advance(MultisetVector& u);

// v_1 = u_1 - 1, v_i = u_i - u_{i-1}.
std::vector<std::int64_t> phi(const MultisetVector& u);

// Prefix sums shifted by one. Throws kOutOfRange if sum(v) > N - 1 or any
// entry is negative.
MultisetVector phi_inverse(std::span<const std::int64_t> v, std::int64_t value_bound);

// Binary counter over the support of `b`: bit j belongs to the j-th support
// index (ascending), bit 0 means +1 and bit 1 means -1.
class SignPatternCursor {
 public:
  explicit SignPatternCursor(std::span<const std::int64_t> b);

  bool done() const { return done_; }
  const SignPattern& pattern() const { return pattern_; }
  void advance();

 private:
  SignPattern pattern_;
  bool done_ = false;
};

std::vector<SignPattern> sign_patterns(std::span<const std::int64_t> b);

// Single-threaded cursor over the points of the radius-L ball, either all of
// them or a single partition (all multisets with a fixed first entry u_1).
// Memory is O(n).
class L1LatticeCursor {
 public:
  L1LatticeCursor(std::size_t n, std::int64_t radius);

  // Points whose multiset starts with u_1 = first_entry, first_entry in
  // [1, radius + 1]. Ordinals are global, so partitions concatenated in
  // first_entry order reproduce the full sequence.
  static L1LatticeCursor partition(std::size_t n, std::int64_t radius,
                                   std::int64_t first_entry);

  // Cursor positioned on the point with the given ordinal; it then runs to the
  // end of the full sequence. Throws kOutOfRange past the last point.
  static L1LatticeCursor at_ordinal(std::size_t n, std::int64_t radius, const BigInt& ordinal);

  bool done() const { return done_; }
  const LatticePoint& point() const { return point_; }
  void advance();

  std::size_t dimension() const { return n_; }
  std::int64_t radius() const { return radius_; }

 private:
  L1LatticeCursor(std::size_t n, std::int64_t radius, std::optional<std::int64_t> first);
  void load_magnitudes(std::size_t from);
  void reset_signs();
  bool advance_signs();

  std::size_t n_;
  std::int64_t radius_;
  std::optional<std::int64_t> pinned_first_;
  MultisetVector u_;
  std::vector<std::int64_t> magnitude_;
  std::vector<std::size_t> support_;
  std::vector<std::uint8_t> negative_;  // sign bit per support slot
  LatticePoint point_;
  bool done_ = false;
};

// Input range over the cursor, for range-for loops.
class L1LatticeRange {
 public:
  class iterator {
   public:
    using value_type = LatticePoint;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    explicit iterator(L1LatticeCursor* cursor) : cursor_(cursor) {}
    const LatticePoint& operator*() const { return cursor_->point(); }
    const LatticePoint* operator->() const { return &cursor_->point(); }
    iterator& operator++() {
      cursor_->advance();
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return cursor_->done(); }

   private:
    L1LatticeCursor* cursor_ = nullptr;
  };

  L1LatticeRange(std::size_t n, std::int64_t radius) : cursor_(n, radius) {}
  iterator begin() { return iterator(&cursor_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  L1LatticeCursor cursor_;
};

// Every point of lambda*B1 ∩ Z^n in canonical order. Non-integral lambda is
// floored; n == 0 throws kInvalidDimension.
L1LatticeRange l1_lattice_iter(std::size_t n, const Rational& lambda);
L1LatticeRange l1_lattice_iter(std::size_t n, double lambda);
L1LatticeRange l1_lattice_points(std::size_t n, std::int64_t radius);

// Position of x in the canonical sequence for the given integer radius.
// Throws kOutOfBall if |x|_1 > radius.
BigInt canonical_ordinal(std::span<const std::int64_t> x, std::int64_t radius);

// Inverse of canonical_ordinal.
std::vector<std::int64_t> point_at_ordinal(std::size_t n, std::int64_t radius,
                                           const BigInt& ordinal);

// Ordinal of the first point of the partition with u_1 = first_entry.
BigInt partition_offset(std::size_t n, std::int64_t radius, std::int64_t first_entry);

// Number of partitions (= radius + 1).
inline std::int64_t partition_count(std::int64_t radius) { return radius + 1; }

}  // namespace l1opt

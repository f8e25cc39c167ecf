#pragma once

// Enumerate-and-keep-the-best kernel shared by every solver.
//
// scan_serial walks the canonical sequence with one cursor and is the
// reference implementation. scan_parallel splits the ordinal range into
// contiguous chunks, scans them with OpenMP, and merges the per-chunk winners
// in chunk order with a strict `<`, which reproduces the serial winner (the
// smallest ordinal among the optima) and the serial work counters exactly.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <vector>

#include "l1opt/counting.hpp"
#include "l1opt/lattice.hpp"

namespace l1opt::detail {

enum class Visit {
  kSkipped,   // filtered before the oracle; no oracle call
  kRejected,  // oracle called, point infeasible
  kAccepted,  // oracle called, feasible, value written
};

template <class V>
struct ScanResult {
  bool found = false;
  V best{};
  std::vector<std::int64_t> point;
  BigInt ordinal = 0;
  std::uint64_t points = 0;
  std::uint64_t calls = 0;
  bool stopped = false;  // reached the caller's lower bound
};

template <class V, class Visitor>
void scan_cursor(L1LatticeCursor& cursor, std::uint64_t limit, Visitor& visit,
                 const std::optional<V>& stop_at, ScanResult<V>& out) {
  V value{};
  for (std::uint64_t k = 0; k < limit && !cursor.done(); ++k, cursor.advance()) {
    const LatticePoint& pt = cursor.point();
    ++out.points;
    const Visit v = visit(pt, value);
    if (v == Visit::kSkipped) continue;
    ++out.calls;
    if (v != Visit::kAccepted) continue;
    if (!out.found || value < out.best) {
      out.found = true;
      out.best = value;
      out.point = pt.x;
      out.ordinal = pt.ordinal;
      if (stop_at && !(*stop_at < out.best)) {
        out.stopped = true;
        return;
      }
    }
  }
}

template <class V, class MakeVisitor>
ScanResult<V> scan_serial(std::size_t n, std::int64_t radius, MakeVisitor make_visitor,
                          const std::optional<V>& stop_at) {
  ScanResult<V> out;
  L1LatticeCursor cursor(n, radius);
  auto visit = make_visitor();
  scan_cursor(cursor, std::numeric_limits<std::uint64_t>::max(), visit, stop_at, out);
  return out;
}

// Visitors must be independent per thread (make_visitor is called once per
// chunk) and the oracles they call must be reentrant.
template <class V, class MakeVisitor>
ScanResult<V> scan_parallel(std::size_t n, std::int64_t radius, int threads,
                            MakeVisitor make_visitor, const std::optional<V>& stop_at) {
  const BigInt total_big = count_l1_lattice_int(n, radius);
  if (threads <= 1 || total_big > BigInt(std::numeric_limits<std::int64_t>::max())) {
    return scan_serial<V>(n, radius, make_visitor, stop_at);
  }
  const auto total = total_big.convert_to<std::uint64_t>();
  const std::uint64_t chunks =
      std::min<std::uint64_t>(total, static_cast<std::uint64_t>(threads) * 16);
  const std::uint64_t chunk_size = (total + chunks - 1) / chunks;
  const auto chunk_count = static_cast<std::int64_t>((total + chunk_size - 1) / chunk_size);

  std::vector<ScanResult<V>> results(static_cast<std::size_t>(chunk_count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunk_count));
  std::atomic<std::int64_t> first_stop{std::numeric_limits<std::int64_t>::max()};

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t c = 0; c < chunk_count; ++c) {
    // Later chunks cannot change the answer once an earlier one stopped.
    if (c > first_stop.load(std::memory_order_relaxed)) continue;
    const auto idx = static_cast<std::size_t>(c);
    try {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk_size;
      const std::uint64_t len = std::min(chunk_size, total - begin);
      auto cursor = L1LatticeCursor::at_ordinal(n, radius, BigInt(begin));
      auto visit = make_visitor();
      scan_cursor(cursor, len, visit, stop_at, results[idx]);
      if (results[idx].stopped) {
        std::int64_t seen = first_stop.load();
        while (c < seen && !first_stop.compare_exchange_weak(seen, c)) {
        }
      }
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }

  ScanResult<V> merged;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    ScanResult<V>& r = results[i];
    merged.points += r.points;
    merged.calls += r.calls;
    if (r.found && (!merged.found || r.best < merged.best)) {
      merged.found = true;
      merged.best = std::move(r.best);
      merged.point = std::move(r.point);
      merged.ordinal = std::move(r.ordinal);
    }
    if (r.stopped) {
      merged.stopped = true;
      break;
    }
  }
  return merged;
}

template <class V, class MakeVisitor>
ScanResult<V> scan_ball(std::size_t n, std::int64_t radius, int threads, MakeVisitor make_visitor,
                        const std::optional<V>& stop_at) {
  if (threads <= 1) return scan_serial<V>(n, radius, make_visitor, stop_at);
  return scan_parallel<V>(n, radius, threads, make_visitor, stop_at);
}

}  // namespace l1opt::detail

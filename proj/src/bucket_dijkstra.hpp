#pragma once

// Shortest paths on an 8-connected grid with axial step `res` and diagonal
// step `res * sqrt(2)`. Buckets are `res` wide, so a relaxation out of bucket
// k always lands in bucket k+1 or later; stale entries are skipped and a late
// improvement simply re-enters a bucket, which keeps the result exact.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "efx/grid_map.hpp"

namespace efx::detail {

/// `passable(idx)` decides whether a cell may be entered; `diagonal_ok(r, c,
/// dr, dc)` may veto a diagonal step. `parent` (optional) receives the
/// predecessor index of every reached cell, -1 for the source.
/// `visit(idx, d)` sees every settled label (a cell may be seen again with a
/// smaller d). Before each bucket, `keep_going(d_lo)` may stop the search;
/// every label not yet visited is >= d_lo. With `touched`, `dist` must
/// already hold +inf everywhere and every index written is appended, so the
/// caller can reset just those.
template <class Passable, class DiagonalOk, class Visit, class KeepGoing>
void bucket_search(const OccupancyGrid& m, std::size_t source, std::vector<double>& dist,
                   std::vector<std::int32_t>* parent, std::vector<std::uint32_t>* touched,
                   Passable passable, DiagonalOk diagonal_ok, Visit visit, KeepGoing keep_going) {
  const int rows = m.rows();
  const int cols = m.cols();
  const double axial = m.resolution();
  const double diag = m.resolution() * std::sqrt(2.0);
  if (!touched) dist.assign(m.size(), std::numeric_limits<double>::infinity());
  if (parent) parent->assign(m.size(), -1);

  struct Entry {
    std::uint32_t idx;
    double label;
  };
  constexpr std::size_t kRing = 4;
  std::vector<Entry> buckets[kRing];
  std::vector<Entry> work;

  dist[source] = 0.0;
  if (touched) touched->push_back(static_cast<std::uint32_t>(source));
  buckets[0].push_back({static_cast<std::uint32_t>(source), 0.0});
  std::size_t pending = 1;
  std::size_t current = 0;

  while (pending > 0) {
    auto& bucket = buckets[current % kRing];
    if (bucket.empty()) {
      ++current;
      continue;
    }
    // One bucket of slack covers rounding in the bucket index.
    if (!keep_going(current == 0 ? 0.0 : static_cast<double>(current - 1) * axial)) break;
    work.swap(bucket);
    pending -= work.size();
    for (const Entry& e : work) {
      if (e.label > dist[e.idx]) continue;
      visit(static_cast<std::size_t>(e.idx), e.label);
      const int r = static_cast<int>(e.idx / static_cast<std::uint32_t>(cols));
      const int c = static_cast<int>(e.idx % static_cast<std::uint32_t>(cols));
      for (const GridCoord& d : kNeighbors8) {
        const int nr = r + d.row;
        const int nc = c + d.col;
        if (nr < 0 || nc < 0 || nr >= rows || nc >= cols) continue;
        const std::size_t n = static_cast<std::size_t>(nr) * static_cast<std::size_t>(cols) +
                              static_cast<std::size_t>(nc);
        if (!passable(n)) continue;
        const bool is_diag = d.row != 0 && d.col != 0;
        if (is_diag && !diagonal_ok(r, c, d.row, d.col)) continue;
        const double cand = e.label + (is_diag ? diag : axial);
        if (cand < dist[n]) {
          if (touched && dist[n] == std::numeric_limits<double>::infinity())
            touched->push_back(static_cast<std::uint32_t>(n));
          dist[n] = cand;
          if (parent) (*parent)[n] = static_cast<std::int32_t>(e.idx);
          std::size_t b = static_cast<std::size_t>(cand / axial);
          if (b < current) b = current;
          buckets[b % kRing].push_back({static_cast<std::uint32_t>(n), cand});
          ++pending;
        }
      }
    }
    work.clear();
  }
}

template <class Passable, class DiagonalOk>
void bucket_dijkstra(const OccupancyGrid& m, std::size_t source, std::vector<double>& dist,
                     std::vector<std::int32_t>* parent, Passable passable,
                     DiagonalOk diagonal_ok) {
  bucket_search(
      m, source, dist, parent, nullptr, passable, diagonal_ok, [](std::size_t, double) {},
      [](double) { return true; });
}

}  // namespace efx::detail

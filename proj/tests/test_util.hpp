#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "urbanmot/assignment.hpp"
#include "urbanmot/geometry.hpp"
#include "urbanmot/types.hpp"

namespace urbanmot::testutil {

// Fixed-seed generator with explicit scalings so test data is stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

inline BoundingBox random_int_box(Rng& rng, int max_extent) {
  BoundingBox box;
  box.x = rng.uniform_int(0, max_extent);
  box.y = rng.uniform_int(0, max_extent);
  box.w = rng.uniform_int(1, max_extent);
  box.h = rng.uniform_int(1, max_extent);
  return box;
}

inline BoundingBox random_box(Rng& rng, double span) {
  BoundingBox box;
  box.x = rng.uniform(0.0, span);
  box.y = rng.uniform(0.0, span);
  box.w = rng.uniform(0.5, span);
  box.h = rng.uniform(0.5, span);
  return box;
}

inline ColorHistogram random_normalized_histogram(Rng& rng, std::size_t bins) {
  std::vector<double> values(bins);
  double sum = 0.0;
  for (double& v : values) {
    v = rng.uniform(0.0, 1.0);
    sum += v;
  }
  for (double& v : values) v /= sum;
  return ColorHistogram(std::move(values));
}

// Integer pixel-membership Jaccard: counts pixels (ix, iy) with
// x <= ix < x + w. Independent of the rectangle arithmetic under test.
inline double pixel_set_jaccard(const BoundingBox& a, const BoundingBox& b) {
  const auto ax = static_cast<long>(a.x), ay = static_cast<long>(a.y);
  const auto aw = static_cast<long>(a.w), ah = static_cast<long>(a.h);
  const auto bx = static_cast<long>(b.x), by = static_cast<long>(b.y);
  const auto bw = static_cast<long>(b.w), bh = static_cast<long>(b.h);
  long inter = 0;
  for (long ix = ax; ix < ax + aw; ++ix) {
    for (long iy = ay; iy < ay + ah; ++iy) {
      if (ix >= bx && ix < bx + bw && iy >= by && iy < by + bh) ++inter;
    }
  }
  const long uni = aw * ah + bw * bh - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

// Sums the entries of a pairing in ascending row order, mirroring how the
// tests total the solver output.
inline double pairing_total(const CostMatrix& m, std::vector<MatchPair> pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const MatchPair& a, const MatchPair& b) { return a.row < b.row; });
  double total = 0.0;
  for (const auto& p : pairs) total += m.at(p.row, p.col);
  return total;
}

// Exhaustive minimum over injective assignments of size min(rows, cols).
// Candidate totals are evaluated in row order so they are comparable with
// solver totals at full precision.
inline double brute_force_min_assignment(const CostMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t depth_max = std::min(rows, cols);
  if (depth_max == 0) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  const bool by_rows = rows <= cols;
  const std::size_t other_count = by_rows ? cols : rows;
  std::vector<int> pick(depth_max, -1);
  std::vector<char> used(other_count, 0);

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == depth_max) {
      std::vector<MatchPair> pairs;
      pairs.reserve(depth_max);
      for (std::size_t d = 0; d < depth_max; ++d) {
        const std::size_t r = by_rows ? d : static_cast<std::size_t>(pick[d]);
        const std::size_t c = by_rows ? static_cast<std::size_t>(pick[d]) : d;
        pairs.push_back({r, c});
      }
      best = std::min(best, pairing_total(m, std::move(pairs)));
      return;
    }
    for (std::size_t o = 0; o < other_count; ++o) {
      if (used[o]) continue;
      used[o] = 1;
      pick[depth] = static_cast<int>(o);
      self(self, depth + 1);
      used[o] = 0;
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace urbanmot::testutil

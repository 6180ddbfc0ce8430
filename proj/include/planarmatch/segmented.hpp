#pragma once
// Block segmentation of the two vertex lines and the segmented statistic X_t.
// Bottom indices {1..n} split into I = floor(n/t) blocks of size t (remainder
// folded into the last block, so its size is in [t, 2t-1]); top indices
// {1..k} split the same way with block size s. With s = kt/n integral the two
// sides have equally many blocks, which aligns bottom block i with top block
// i. A_i is the event that some bottom index in block i maps into the aligned
// top block; X_t counts the A_i that occur. Picking one witness per occurring
// block yields a planar matching, so X_t <= T_n always.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "planarmatch/types.hpp"

namespace planarmatch {

// Closed 1-based index interval [lo, hi].
struct Interval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  std::uint64_t count() const { return hi - lo + 1; }
  bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }
  bool operator==(const Interval&) const = default;
};

struct Segmentation {
  std::size_t n = 0;
  std::size_t t = 0;
  std::uint64_t k = 0;
  std::uint64_t s = 0;
  std::vector<Interval> blocks_bottom;  // I = floor(n/t) blocks
  std::vector<Interval> blocks_top;     // J = floor(k/s) blocks
};

namespace detail {

inline std::vector<Interval> fold_blocks(std::uint64_t total, std::uint64_t size) {
  const std::uint64_t count = total / size;
  std::vector<Interval> blocks(count);
  for (std::uint64_t b = 0; b < count; ++b)
    blocks[b] = {b * size + 1, (b + 1) * size};
  blocks.back().hi = total;  // fold the remainder into the last block
  return blocks;
}

}  // namespace detail

inline Segmentation segment(std::size_t n, std::size_t t, std::uint64_t k, std::uint64_t s) {
  if (t < 1 || t > n)
    throw std::invalid_argument("segment: need 1 <= t <= n, got t = " + std::to_string(t) +
                                ", n = " + std::to_string(n));
  if (s < 1 || s > k)
    throw std::invalid_argument("segment: need 1 <= s <= k, got s = " + std::to_string(s) +
                                ", k = " + std::to_string(k));
  // The aligned-block construction needs top blocks at least as coarse,
  // proportionally, as bottom blocks: s <= tk/n.
  if (s * n > static_cast<std::uint64_t>(t) * k)
    throw std::invalid_argument("segment: need s <= t*k/n");
  Segmentation seg{n, t, k, s, detail::fold_blocks(n, t), detail::fold_blocks(k, s)};
  return seg;
}

// Valid segment sizes are those t with s = kt/n integral. Every n has at
// least one (t = n gives s = k).
inline bool segment_size_valid(std::size_t n, std::uint64_t k, std::size_t t) {
  return t >= 1 && t <= n && (k * t) % n == 0;
}

// Nearest valid t values around hint, for error messages and the "sqrt"
// sentinel. Ordered by distance from hint, ties toward the smaller t.
inline std::vector<std::size_t> nearby_valid_segment_sizes(std::size_t n, std::uint64_t k,
                                                           std::size_t hint,
                                                           std::size_t count = 3) {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; out.size() < count && d < n; ++d) {
    if (hint >= d + 1 && segment_size_valid(n, k, hint - d)) out.push_back(hint - d);
    if (d > 0 && hint + d <= n && out.size() < count && segment_size_valid(n, k, hint + d))
      out.push_back(hint + d);
  }
  return out;
}

// Resolve the "sqrt" sentinel: round(sqrt(n)) snapped to the nearest valid t.
inline std::size_t resolve_segment_size(std::size_t n, std::uint64_t k) {
  const auto hint = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  const auto near = nearby_valid_segment_sizes(n, k, std::max<std::size_t>(hint, 1), 1);
  return near.front();  // t = n is always valid, so this never comes up empty
}

struct SegStats {
  std::size_t t = 0;
  std::uint64_t s = 0;
  std::size_t I = 0;
  std::size_t x_t = 0;
  std::vector<char> indicators;  // indicators[i-1] = 1 iff A_i occurred
};

// X_t for one injection. Rejects t unless s = kt/n is a positive integer:
// silently flooring s would change the distribution under test.
inline SegStats segmented_count(const Injection& inj, std::size_t t) {
  if (t < 1 || t > inj.n)
    throw std::invalid_argument("segmented_count: need 1 <= t <= n");
  if ((inj.k * t) % inj.n != 0) {
    std::string msg = "segmented_count: s = k*t/n = " + std::to_string(inj.k) + "*" +
                      std::to_string(t) + "/" + std::to_string(inj.n) +
                      " is not an integer; nearby valid t:";
    for (std::size_t v : nearby_valid_segment_sizes(inj.n, inj.k, t)) {
      msg += ' ';
      msg += std::to_string(v);
    }
    throw std::invalid_argument(msg);
  }
  const std::uint64_t s = inj.k * t / inj.n;
  const Segmentation seg = segment(inj.n, t, inj.k, s);
  const std::size_t I = seg.blocks_bottom.size();
  SegStats stats{t, s, I, 0, std::vector<char>(I, 0)};
  for (std::size_t b = 0; b < I; ++b) {
    const Interval& bottom = seg.blocks_bottom[b];
    const Interval& top = seg.blocks_top[b];
    for (std::uint64_t z = bottom.lo; z <= bottom.hi; ++z) {
      if (top.contains(inj.pi[z - 1])) {
        stats.indicators[b] = 1;
        ++stats.x_t;
        break;
      }
    }
  }
  return stats;
}

}  // namespace planarmatch

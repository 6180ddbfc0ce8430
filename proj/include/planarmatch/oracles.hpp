#pragma once
// Independent brute-force oracles used to validate the solvers and the exact
// probability formulas. These deliberately share no code with the things they
// check: the rainbow oracle enumerates matchings from subsets instead of
// running the DP, and the event-probability oracles enumerate injections
// instead of multiplying falling factorials.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "planarmatch/exactprob.hpp"
#include "planarmatch/rainbow.hpp"
#include "planarmatch/types.hpp"

namespace planarmatch {

// Maximum rainbow planar matching size by exhaustive enumeration: every
// planar matching corresponds to one (row subset, column subset) pair of
// equal size, matched in sorted order.
inline std::size_t brute_force_Rn(const ColourAssignment& c) {
  if (c.n > 6)
    throw resource_guard_error("brute_force_Rn: exhaustive enumeration capped at n <= 6, got n = " +
                               std::to_string(c.n));
  if (!c.is_valid()) throw std::invalid_argument("brute_force_Rn: invalid colour assignment");
  const unsigned n = static_cast<unsigned>(c.n);
  std::size_t best = 0;
  std::vector<unsigned> rows, cols;
  std::vector<std::uint32_t> colour_stamp(c.r + 1, 0);
  std::uint32_t stamp = 0;
  for (std::uint32_t rm = 1; rm < (1u << n); ++rm) {
    const auto size = static_cast<std::size_t>(std::popcount(rm));
    if (size <= best) continue;
    rows.clear();
    for (unsigned i = 0; i < n; ++i)
      if (rm & (1u << i)) rows.push_back(i + 1);
    for (std::uint32_t cm = 1; cm < (1u << n); ++cm) {
      if (static_cast<std::size_t>(std::popcount(cm)) != size) continue;
      cols.clear();
      for (unsigned j = 0; j < n; ++j)
        if (cm & (1u << j)) cols.push_back(j + 1);
      ++stamp;
      bool rainbow = true;
      for (std::size_t e = 0; e < size && rainbow; ++e) {
        const std::uint32_t col = c.colour(rows[e], cols[e]);
        if (colour_stamp[col] == stamp)
          rainbow = false;
        else
          colour_stamp[col] = stamp;
      }
      if (rainbow) {
        best = size;
        break;  // no larger matching for this row subset either way
      }
    }
  }
  return best;
}

namespace detail {

// Enumerate injections of {1..positions} into {1..k}, calling visit(tuple)
// on every complete assignment. positions is tiny (<= 9 in any oracle use).
template <typename Visit>
void for_each_injection(std::uint64_t k, std::size_t positions, Visit&& visit) {
  std::vector<std::uint64_t> tuple(positions, 0);
  std::vector<char> used(k + 1, 0);
  std::size_t depth = 0;
  std::uint64_t v = 1;
  // Iterative DFS; tuple[depth] holds the value currently tried at depth.
  while (true) {
    if (v > k) {
      if (depth == 0) break;
      --depth;
      v = tuple[depth];
      used[v] = 0;
      ++v;
      continue;
    }
    if (used[v]) {
      ++v;
      continue;
    }
    tuple[depth] = v;
    used[v] = 1;
    if (depth + 1 == positions) {
      visit(const_cast<const std::vector<std::uint64_t>&>(tuple));
      used[v] = 0;
      ++v;
    } else {
      ++depth;
      v = 1;
    }
  }
}

}  // namespace detail

// Exact P(A_1^c) by complete enumeration of injections of {1..t} into {1..k}:
// the fraction whose first block avoids the top block {1..s}.
inline BigRat brute_force_a1c(std::uint64_t k, std::uint64_t s, std::uint64_t t) {
  if (k > 10 || t > k)
    throw resource_guard_error("brute_force_a1c: enumeration capped at k <= 10, t <= k");
  if (s < 1 || s > k || t < 1) throw std::invalid_argument("brute_force_a1c: need 1 <= s <= k, t >= 1");
  std::uint64_t total = 0, avoid = 0;
  detail::for_each_injection(k, static_cast<std::size_t>(t),
                             [&](const std::vector<std::uint64_t>& tuple) {
                               ++total;
                               for (std::uint64_t x : tuple)
                                 if (x <= s) return;
                               ++avoid;
                             });
  return BigRat(avoid, total);
}

struct EventProbs {
  BigRat pA1c;
  BigRat pJoint;
};

// Exact (P(A_1^c), P(A_1^c and A_2^c)) by complete enumeration of injections
// of {1..2t} into {1..k}. Block 1 is positions 1..t vs top interval {1..s};
// block 2 is positions t+1..2t vs top interval {s+1..min(2s,k)}.
inline EventProbs brute_force_event_probs(std::uint64_t k, std::uint64_t s, std::uint64_t t) {
  if (k > 12 || t > 2)
    throw resource_guard_error("brute_force_event_probs: enumeration capped at k <= 12, t <= 2");
  if (s < 1 || s > k || t < 1 || 2 * t > k)
    throw std::invalid_argument("brute_force_event_probs: need 1 <= s <= k, 1 <= t, 2t <= k");
  const std::uint64_t top2_hi = std::min(2 * s, k);
  std::uint64_t total = 0, avoid1 = 0, avoid_both = 0;
  detail::for_each_injection(k, static_cast<std::size_t>(2 * t),
                             [&](const std::vector<std::uint64_t>& tuple) {
                               ++total;
                               bool a1c = true, a2c = true;
                               for (std::uint64_t z = 0; z < t; ++z)
                                 if (tuple[z] <= s) a1c = false;
                               for (std::uint64_t z = t; z < 2 * t; ++z)
                                 if (tuple[z] > s && tuple[z] <= top2_hi) a2c = false;
                               if (a1c) ++avoid1;
                               if (a1c && a2c) ++avoid_both;
                             });
  return {BigRat(avoid1, total), BigRat(avoid_both, total)};
}

}  // namespace planarmatch

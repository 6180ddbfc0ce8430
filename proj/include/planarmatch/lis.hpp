#pragma once
// Longest increasing subsequence of an injection's value sequence. For a
// 1-regular subgraph of K_{k,n} encoded as pi, the LIS length T_n equals the
// maximum planar matching size: a planar matching is exactly a set of bottom
// indices on which both i and pi(i) increase.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "planarmatch/types.hpp"

namespace planarmatch {

// Patience sorting, O(n log n). pile_tops[p] holds the smallest possible tail
// value of an increasing subsequence of length p+1; each new value replaces
// the first pile top >= it (strict increase: values are distinct anyway).
inline std::size_t lis_length(const Injection& inj) {
  std::vector<std::uint64_t> pile_tops;
  pile_tops.reserve(inj.pi.size());
  for (std::uint64_t v : inj.pi) {
    auto it = std::lower_bound(pile_tops.begin(), pile_tops.end(), v);
    if (it == pile_tops.end())
      pile_tops.push_back(v);
    else
      *it = v;
  }
  return pile_tops.size();
}

// Quadratic reference implementation (test oracle): best[i] = LIS length
// ending at i.
inline std::size_t lis_length_oracle(const Injection& inj) {
  const std::size_t n = inj.pi.size();
  std::vector<std::uint32_t> best(n, 1);
  std::size_t overall = n ? 1 : 0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::uint64_t vi = inj.pi[i];
    std::uint32_t b = 1;
    for (std::size_t j = 0; j < i; ++j)
      if (inj.pi[j] < vi && best[j] + 1 > b) b = best[j] + 1;
    best[i] = b;
    if (b > overall) overall = b;
  }
  return overall;
}

// Patience sorting with parent pointers: returns one maximum planar matching
// {(i, pi(i))} witnessing lis_length.
inline PlanarMatching lis_witness(const Injection& inj) {
  const std::size_t n = inj.pi.size();
  std::vector<std::uint64_t> pile_tops;
  std::vector<std::size_t> pile_index_at;  // element index currently on each pile
  std::vector<std::size_t> parent(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t v = inj.pi[i];
    const std::size_t p =
        std::lower_bound(pile_tops.begin(), pile_tops.end(), v) - pile_tops.begin();
    if (p == pile_tops.size()) {
      pile_tops.push_back(v);
      pile_index_at.push_back(i);
    } else {
      pile_tops[p] = v;
      pile_index_at[p] = i;
    }
    if (p > 0) parent[i] = pile_index_at[p - 1];
  }
  PlanarMatching m;
  if (!pile_tops.empty()) {
    m.edges.resize(pile_tops.size());
    std::size_t idx = pile_index_at.back();
    for (std::size_t p = pile_tops.size(); p-- > 0; idx = parent[idx]) {
      m.edges[p] = {static_cast<std::int64_t>(idx + 1),
                    static_cast<std::int64_t>(inj.pi[idx])};
    }
  }
  return m;
}

}  // namespace planarmatch

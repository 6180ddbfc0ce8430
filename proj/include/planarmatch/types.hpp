#pragma once
// Core domain types shared by both problem settings: edge-colour grids on
// K_{n,n}, random injections {1..n} -> {1..k} (uniform 1-regular subgraphs of
// K_{k,n}), and planar (non-crossing) matchings. All indices and values are
// 1-based externally; internal vectors are 0-based.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace planarmatch {

// Thrown when an exact solver or enumeration oracle is asked for more than
// its size guard allows. Callers either fall back to a heuristic or surface
// the guard to the user (exit code 5 in the CLI).
class resource_guard_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Edge colouring of K_{n,n}: one label in {1..r} per cell (i, j).
struct ColourAssignment {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<std::uint32_t> cells;  // row-major, cells[(i-1)*n + (j-1)]

  std::uint32_t colour(std::size_t i, std::size_t j) const {
    if (i < 1 || i > n || j < 1 || j > n)
      throw std::out_of_range("ColourAssignment::colour: index (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") outside 1.." + std::to_string(n));
    return cells[(i - 1) * n + (j - 1)];
  }

  bool is_valid() const {
    if (n == 0 || r == 0 || cells.size() != n * n) return false;
    for (std::uint32_t c : cells)
      if (c < 1 || c > r) return false;
    return true;
  }
};

// Injection pi: {1..n} -> {1..k}, k >= n; pi[i-1] is the top endpoint of the
// edge at bottom vertex i.
struct Injection {
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::vector<std::uint64_t> pi;

  std::uint64_t value(std::size_t i) const {
    if (i < 1 || i > n)
      throw std::out_of_range("Injection::value: index " + std::to_string(i) + " outside 1.." +
                              std::to_string(n));
    return pi[i - 1];
  }

  bool is_valid() const {
    if (n == 0 || k < n || pi.size() != n) return false;
    for (std::uint64_t v : pi)
      if (v < 1 || v > k) return false;
    std::vector<std::uint64_t> sorted(pi);
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }
};

// Non-crossing matching: edges listed as (bottom index, top index).
struct PlanarMatching {
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;

  std::size_t size() const { return edges.size(); }
};

// True iff both coordinate sequences are strictly increasing and positive.
// Strict increase in both coordinates is exactly the no-two-edges-cross
// condition for a bipartite graph drawn on two parallel lines, and it also
// rules out repeated bottom or top indices.
inline bool validate_planar(const PlanarMatching& m) {
  std::int64_t prev_i = 0, prev_j = 0;
  for (const auto& [i, j] : m.edges) {
    if (i <= prev_i || j <= prev_j) return false;
    prev_i = i;
    prev_j = j;
  }
  return true;
}

// As above, additionally requiring indices within 1..bottom_max x 1..top_max.
inline bool validate_planar(const PlanarMatching& m, std::int64_t bottom_max,
                            std::int64_t top_max) {
  if (!validate_planar(m)) return false;
  for (const auto& [i, j] : m.edges)
    if (i > bottom_max || j > top_max) return false;
  return true;
}

// Sort edges by bottom index. validate_planar judges the sequence as given,
// so callers holding an unordered edge set canonicalize first.
inline PlanarMatching canonicalized(PlanarMatching m) {
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

}  // namespace planarmatch

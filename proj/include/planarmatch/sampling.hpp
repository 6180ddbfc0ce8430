#pragma once
// Uniform samplers for the two random models. Both are deterministic
// functions of (parameters, seed): same inputs give byte-identical outputs on
// every platform and thread count.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "planarmatch/rng.hpp"
#include "planarmatch/types.hpp"

namespace planarmatch {

// Each edge colour i.i.d. uniform on {1..r}. The Rng overload lets callers
// (e.g. the experiment runner) hand in a per-trial stream.
inline ColourAssignment sample_colouring(std::size_t n, std::size_t r, Rng& rng) {
  if (n == 0 || r == 0)
    throw std::invalid_argument("sample_colouring: n and r must be positive");
  ColourAssignment c{n, r, {}};
  c.cells.resize(n * n);
  for (auto& cell : c.cells) cell = static_cast<std::uint32_t>(rng.below(r) + 1);
  return c;
}

inline ColourAssignment sample_colouring(std::size_t n, std::size_t r, Seed seed) {
  Rng rng(seed);
  return sample_colouring(n, r, rng);
}

namespace detail {

// Dense partial Fisher-Yates: materialize {1..k}, swap a random tail element
// into each of the first n slots. O(k) memory.
inline std::vector<std::uint64_t> fisher_yates_dense(std::size_t n, std::uint64_t k, Rng& rng) {
  std::vector<std::uint64_t> pool(k);
  for (std::uint64_t v = 0; v < k; ++v) pool[v] = v + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t j = i + rng.below(k - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n);
  return pool;
}

// Same swap sequence as the dense variant, but only displaced slots are
// stored, so k can be astronomically larger than n. Draws the identical
// random indices in the identical order, hence identical output.
inline std::vector<std::uint64_t> fisher_yates_sparse(std::size_t n, std::uint64_t k, Rng& rng) {
  std::unordered_map<std::uint64_t, std::uint64_t> displaced;  // slot -> current value
  displaced.reserve(2 * n);
  auto slot_value = [&](std::uint64_t slot) {
    auto it = displaced.find(slot);
    return it == displaced.end() ? slot + 1 : it->second;
  };
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t j = i + rng.below(k - i);
    const std::uint64_t at_j = slot_value(j);
    const std::uint64_t at_i = slot_value(i);
    out[i] = at_j;
    displaced[j] = at_i;
  }
  return out;
}

// Dense is faster until the pool itself dominates; beyond this the sparse
// path takes over with identical output (covered by tests).
inline constexpr std::uint64_t dense_pool_limit = std::uint64_t{1} << 22;

}  // namespace detail

// Uniform over all k(k-1)...(k-n+1) injections {1..n} -> {1..k}.
inline Injection sample_injection(std::size_t n, std::uint64_t k, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_injection: n must be positive");
  if (k < n)
    throw std::invalid_argument("sample_injection: need k >= n, got n = " + std::to_string(n) +
                                ", k = " + std::to_string(k));
  Injection inj{n, k, {}};
  inj.pi = (k <= detail::dense_pool_limit) ? detail::fisher_yates_dense(n, k, rng)
                                           : detail::fisher_yates_sparse(n, k, rng);
  return inj;
}

inline Injection sample_injection(std::size_t n, std::uint64_t k, Seed seed) {
  Rng rng(seed);
  return sample_injection(n, k, rng);
}

}  // namespace planarmatch

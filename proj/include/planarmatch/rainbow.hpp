#pragma once
// Rainbow planar matchings of an edge-coloured K_{n,n}: an exact memoized
// branch-and-bound solver for desk-scale instances, a deterministic greedy
// lower bound for everything else, and the analytic quantities used to bound
// the distribution of the maximum size R_n (colour-collision probability,
// binary entropy, the colour-density threshold alpha0, and both tail bounds).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "planarmatch/bounds.hpp"
#include "planarmatch/types.hpp"

namespace planarmatch {

// True iff m is planar and its edge colours under c are pairwise distinct.
// Out-of-range indices on a structurally planar matching throw.
inline bool is_rainbow(const PlanarMatching& m, const ColourAssignment& c) {
  if (!validate_planar(m)) return false;
  std::vector<char> used(c.r + 1, 0);
  for (const auto& [i, j] : m.edges) {
    const std::uint32_t col = c.colour(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    if (used[col]) return false;
    used[col] = 1;
  }
  return true;
}

struct RainbowSolution {
  std::size_t size = 0;
  PlanarMatching witness;
  bool exact = false;
};

// Size guards for the exact solver. Configurable, but the used-colour bitmask
// is a uint64, so r can never exceed 64 regardless of the guard.
struct ExactGuard {
  std::size_t max_n = 14;
  std::size_t max_r = 20;
};

namespace detail {

// State (i, j, used-colour mask) = best number of rainbow edges addable using
// bottom i..n, top j..n, colours outside mask. Transitions: skip row, skip
// column, or take edge (i, j) when its colour is free. Memoized; branches cut
// as soon as a state meets its cheap upper bound min(rows, cols, colours
// left), which is what keeps random instances tractable at the guard sizes.
class RainbowExactSolver {
public:
  explicit RainbowExactSolver(const ColourAssignment& c) : c_(c), n_(c.n) {
    dense_ = c.r <= 16;
    if (dense_) memo_.assign((n_ + 1) * (n_ + 1) << c.r, -1);
  }

  int best(std::size_t i, std::size_t j, std::uint64_t mask) {
    const int rows = static_cast<int>(n_ - i + 1);
    const int cols = static_cast<int>(n_ - j + 1);
    const int colours = static_cast<int>(c_.r) - std::popcount(mask);
    const int ub = std::min({rows, cols, colours});
    if (ub <= 0) return 0;
    const std::uint64_t key = (mask * (n_ + 1) + (i - 1)) * (n_ + 1) + (j - 1);
    if (dense_) {
      if (memo_[key] >= 0) return memo_[key];
    } else if (auto it = map_.find(key); it != map_.end()) {
      return it->second;
    }
    int v = 0;
    const std::uint64_t bit = std::uint64_t{1} << (c_.colour(i, j) - 1);
    if (!(mask & bit)) v = 1 + best(i + 1, j + 1, mask | bit);
    if (v < ub) v = std::max(v, best(i + 1, j, mask));
    if (v < ub) v = std::max(v, best(i, j + 1, mask));
    if (dense_)
      memo_[key] = static_cast<std::int8_t>(v);
    else
      map_.emplace(key, static_cast<std::int8_t>(v));
    return v;
  }

  PlanarMatching reconstruct() {
    PlanarMatching m;
    std::size_t i = 1, j = 1;
    std::uint64_t mask = 0;
    int v = best(1, 1, 0);
    while (v > 0) {
      const std::uint64_t bit = std::uint64_t{1} << (c_.colour(i, j) - 1);
      if (!(mask & bit) && 1 + best(i + 1, j + 1, mask | bit) == v) {
        m.edges.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
        ++i, ++j;
        mask |= bit;
        --v;
      } else if (best(i + 1, j, mask) == v) {
        ++i;
      } else {
        ++j;
      }
    }
    return m;
  }

private:
  const ColourAssignment& c_;
  std::size_t n_;
  bool dense_ = false;
  std::vector<std::int8_t> memo_;
  std::unordered_map<std::uint64_t, std::int8_t> map_;
};

}  // namespace detail

// Exact maximum rainbow planar matching size with witness. Throws
// resource_guard_error beyond the guard; callers fall back to the greedy
// heuristic for larger instances.
inline RainbowSolution max_rainbow_exact(const ColourAssignment& c, ExactGuard guard = {}) {
  if (!c.is_valid()) throw std::invalid_argument("max_rainbow_exact: invalid colour assignment");
  if (c.n > guard.max_n || c.r > guard.max_r || c.r > 64)
    throw resource_guard_error(
        "max_rainbow_exact: instance exceeds size guard (n = " + std::to_string(c.n) +
        " vs max " + std::to_string(guard.max_n) + ", r = " + std::to_string(c.r) + " vs max " +
        std::to_string(std::min<std::size_t>(guard.max_r, 64)) +
        "); use max_rainbow_greedy for a lower-bound witness");
  detail::RainbowExactSolver solver(c);
  RainbowSolution sol;
  sol.size = static_cast<std::size_t>(solver.best(1, 1, 0));
  sol.witness = solver.reconstruct();
  sol.exact = true;
  return sol;
}

// Deterministic greedy sweep: scan bottom rows left to right; at each, take
// the smallest admissible top index whose colour is still unused. A valid
// rainbow planar matching and a lower bound for the exact maximum.
inline RainbowSolution max_rainbow_greedy(const ColourAssignment& c) {
  if (!c.is_valid()) throw std::invalid_argument("max_rainbow_greedy: invalid colour assignment");
  RainbowSolution sol;
  std::vector<char> used(c.r + 1, 0);
  std::size_t next_top = 1;
  for (std::size_t i = 1; i <= c.n && next_top <= c.n && sol.witness.size() < c.r; ++i) {
    for (std::size_t j = next_top; j <= c.n; ++j) {
      const std::uint32_t col = c.colour(i, j);
      if (!used[col]) {
        used[col] = 1;
        sol.witness.edges.emplace_back(static_cast<std::int64_t>(i),
                                       static_cast<std::int64_t>(j));
        next_top = j + 1;
        break;
      }
    }
  }
  sol.size = sol.witness.size();
  sol.exact = false;
  return sol;
}

// P(a fixed planar matching of t edges is rainbow) = prod_{i=1}^{t-1} (r-i)/r;
// zero for t > r by pigeonhole.
inline double rainbow_prob(std::uint64_t t, std::uint64_t r) {
  if (t < 1 || r < 1) throw std::invalid_argument("rainbow_prob: need t >= 1, r >= 1");
  if (t > r) return 0.0;
  double p = 1.0;
  for (std::uint64_t i = 1; i < t; ++i)
    p *= static_cast<double>(r - i) / static_cast<double>(r);
  return p;
}

// sqrt(e) * exp(-t^2/(2r)) >= rainbow_prob(t, r); the derivation uses t <= r.
inline double rainbow_prob_upper(std::uint64_t t, std::uint64_t r) {
  if (t < 1 || t > r)
    throw std::invalid_argument("rainbow_prob_upper: need 1 <= t <= r");
  const double td = static_cast<double>(t);
  return std::exp(0.5) * std::exp(-td * td / (2.0 * static_cast<double>(r)));
}

// H(x) = -x ln x - (1-x) ln(1-x), natural logs, endpoint limits 0.
inline double binary_entropy(double x) {
  if (!(x >= 0.0) || x > 1.0) throw std::invalid_argument("binary_entropy: need 0 <= x <= 1");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
}

// The colour-density threshold: unique root of 2H(x) = x/2 in (1/2, 1),
// bisected to absolute tolerance 1e-12.
inline double alpha0() {
  double lo = 0.5, hi = 1.0;
  // g(x) = 2H(x) - x/2 is positive at 1/2 and negative near 1.
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double g = 2.0 * binary_entropy(mid) - mid / 2.0;
    (g > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Union bound over matching sizes t in ((1-eps) alpha n, min(n, alpha n)]:
// P(R_n > (1-eps) r) <= sqrt(e) m n^2 exp(2nH((1-eps)alpha) - (1-eps)^2 alpha n / 2),
// m = number of such t. The count-of-matchings step uses binomial
// monotonicity, literal only when (1-eps)alpha >= 1/2; outside that the value
// is still computed as written but flagged out-of-regime.
inline Bound upper_tail_bound(std::size_t n, double alpha, double eps) {
  if (!(eps > 0.0) || eps >= 0.5)
    throw std::invalid_argument("upper_tail_bound: need 0 < eps < 1/2");
  if (!(alpha > 0.5)) throw std::invalid_argument("upper_tail_bound: need alpha > 1/2");
  const double x = (1.0 - eps) * alpha;
  if (!(x < 1.0)) throw std::invalid_argument("upper_tail_bound: need (1-eps)*alpha < 1");
  const double nd = static_cast<double>(n);
  const double hi = std::min(nd, alpha * nd);
  const double lo = x * nd;
  const double m = std::max(0.0, std::floor(hi) - std::floor(lo));
  const double value =
      std::exp(0.5) * m * nd * nd *
      std::exp(2.0 * nd * binary_entropy(x) - (1.0 - eps) * (1.0 - eps) * alpha * nd / 2.0);
  return {detail::clamp01(value), x >= 0.5};
}

// P(R_n <= eps r) <= n (2^alpha eps)^n: every matching of eps r vertical
// edges misses some colour unless the base is large; vacuous once
// 2^alpha eps >= 1.
inline double lower_tail_bound(std::size_t n, double alpha, double eps) {
  if (!(eps > 0.0) || eps >= 0.5)
    throw std::invalid_argument("lower_tail_bound: need 0 < eps < 1/2");
  if (!(alpha > 0.0)) throw std::invalid_argument("lower_tail_bound: need alpha > 0");
  const double nd = static_cast<double>(n);
  return detail::clamp01(nd * std::pow(std::pow(2.0, alpha) * eps, nd));
}

}  // namespace planarmatch

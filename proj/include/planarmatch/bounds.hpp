#pragma once
// Closed-form bounds attached to the segmented statistic X_t and to T_n: the
// sandwich around P(A_1^c), the pairwise-correlation bound, mean bounds for
// X_t and T_n, the general tail bound for T_n, a Chernoff tail bound, and the
// structural variance bound. Probability-valued outputs are clamped to [0,1]
// and carry an in-regime flag instead of erroring when only the asymptotic
// regime assumption (not a structural precondition) is violated: the bounds
// are vacuous-but-defined there, and reports should say so rather than die.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "planarmatch/exactprob.hpp"

namespace planarmatch {

struct Bound {
  double value = 0.0;
  bool in_regime = true;
};

struct SandwichBounds {
  double lower = 0.0;
  double upper = 1.0;
  bool in_regime = true;
};

struct JointBound {
  double value = 0.0;  // clamped to [0,1]
  double raw = 0.0;    // unclamped, for display
  bool in_regime = true;
};

struct MeanBoundsXt {
  double lower = 0.0;
  double upper = 0.0;
};

struct MeanBoundsTn {
  double lower = 0.0;  // floored at 0; see lower_vacuous
  double upper = 0.0;
  bool lower_vacuous = false;
};

struct TailBound {
  double threshold = 0.0;
  double prob_lower = 0.0;
};

namespace detail {
inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }
}  // namespace detail

// The regime both Lemma-style bounds assume: (s+t)/k <= 1/8.
inline bool small_block_regime(std::uint64_t k, std::uint64_t s, std::uint64_t t) {
  return 8 * (s + t) <= k;
}

// exp(-st/k -+ c(s+t)^2 t / k^2) sandwich around the exact P(A_1^c), with
// c = 8 below and c = 4 above.
inline SandwichBounds prob_A1c_bounds(std::uint64_t k, std::uint64_t s, std::uint64_t t) {
  if (s < 1 || s > k || t < 1 || t > k)
    throw std::invalid_argument("prob_A1c_bounds: need 1 <= s <= k and 1 <= t <= k");
  const double kd = static_cast<double>(k);
  const double main_term = static_cast<double>(s) * static_cast<double>(t) / kd;
  const double sq = static_cast<double>(s + t) * static_cast<double>(s + t) *
                    static_cast<double>(t) / (kd * kd);
  SandwichBounds b;
  b.lower = detail::clamp01(std::exp(-main_term - 8.0 * sq));
  b.upper = detail::clamp01(std::exp(-main_term + 4.0 * sq));
  b.in_regime = small_block_regime(k, s, t);
  return b;
}

// P(A_1^c and A_2^c) <= P(A_1^c)^2 exp(5t^2/k): near-independence of the two
// block events up to an explicit correlation factor.
inline JointBound joint_bound_A1A2(std::uint64_t k, std::uint64_t s, std::uint64_t t) {
  const double p = prob_A1c_exact(k, s, t);
  JointBound b;
  b.raw = p * p * std::exp(5.0 * static_cast<double>(t) * static_cast<double>(t) /
                           static_cast<double>(k));
  b.value = detail::clamp01(b.raw);
  b.in_regime = small_block_regime(k, s, t);
  return b;
}

// mu_t = (n/t)(1 - e^{-t^2/n}): first-order value of E[X_t].
inline double mu_t(std::size_t n, std::size_t t) {
  if (t < 1 || t > n) throw std::invalid_argument("mu_t: need 1 <= t <= n");
  const double nd = static_cast<double>(n), td = static_cast<double>(t);
  return (nd / td) * (1.0 - std::exp(-td * td / nd));
}

// (mu_t - (17/t) e^{-t^2/n}, mu_t + (32 n/k^2) e^{-t^2/n}).
inline MeanBoundsXt mean_bounds_Xt(std::size_t n, std::uint64_t k, std::size_t t) {
  if (k < n) throw std::invalid_argument("mean_bounds_Xt: need k >= n");
  if (t < 1 || t > n) throw std::invalid_argument("mean_bounds_Xt: need 1 <= t <= n");
  if ((k * t) % n != 0)
    throw std::invalid_argument("mean_bounds_Xt: s = k*t/n must be an integer (k = " +
                                std::to_string(k) + ", t = " + std::to_string(t) +
                                ", n = " + std::to_string(n) + ")");
  const double nd = static_cast<double>(n), td = static_cast<double>(t),
               kd = static_cast<double>(k);
  const double mu = mu_t(n, t);
  const double decay = std::exp(-td * td / nd);
  return {mu - (17.0 / td) * decay, mu + (32.0 * nd / (kd * kd)) * decay};
}

// ((1 - e^{-1}) sqrt(n) - 17/sqrt(n), (e + eps) sqrt(n) + 1) for E[T_n]. The
// lower end goes negative for n <= 26; it is floored at 0 and flagged vacuous.
inline MeanBoundsTn mean_bounds_Tn(std::size_t n, double eps) {
  if (n < 1) throw std::invalid_argument("mean_bounds_Tn: need n >= 1");
  if (eps < 0.0) throw std::invalid_argument("mean_bounds_Tn: need eps >= 0");
  const double rn = std::sqrt(static_cast<double>(n));
  const double raw_lower = (1.0 - std::exp(-1.0)) * rn - 17.0 / rn;
  MeanBoundsTn b;
  b.lower = std::max(0.0, raw_lower);
  b.upper = (std::exp(1.0) + eps) * rn + 1.0;
  b.lower_vacuous = raw_lower <= 0.0;
  return b;
}

// P(T_n >= sqrt(n/(b log n))) >= 1 - n^{-(b/2-1)}, valid for 2 < b <= n/(32^2 log n).
inline TailBound tail_bound_general(std::size_t n, double b) {
  if (n < 2) throw std::invalid_argument("tail_bound_general: need n >= 2");
  const double nd = static_cast<double>(n);
  const double logn = std::log(nd);
  const double cap = nd / (1024.0 * logn);
  if (cap <= 2.0)
    throw std::invalid_argument(
        "tail_bound_general: parameter range for b is empty at n = " + std::to_string(n) +
        " (n/(1024 log n) = " + std::to_string(cap) + " <= 2); increase n");
  if (!(b > 2.0) || b > cap)
    throw std::invalid_argument("tail_bound_general: need 2 < b <= n/(1024 log n) = " +
                                std::to_string(cap));
  return {std::sqrt(nd / (b * logn)), 1.0 - std::pow(nd, -(b / 2.0 - 1.0))};
}

// Two-sided multiplicative Chernoff tail: P(|S - theta| > gamma theta) <=
// 2 exp(-gamma^2 theta / 4), for gamma in (0, 1/2].
inline double chernoff_bound(double theta, double gamma) {
  if (!(theta > 0.0)) throw std::invalid_argument("chernoff_bound: need theta > 0");
  if (!(gamma > 0.0) || gamma > 0.5)
    throw std::invalid_argument("chernoff_bound: need 0 < gamma <= 1/2");
  return std::min(1.0, 2.0 * std::exp(-gamma * gamma * theta / 4.0));
}

// Structural form D (sqrt(n) + n^2/k) of the X_t variance bound. D is an
// existential constant, so this is report annotation, never a pass/fail test.
inline double var_bound_Xt(std::size_t n, std::uint64_t k, double D) {
  if (!(D > 0.0)) throw std::invalid_argument("var_bound_Xt: need D > 0");
  if (k < n) throw std::invalid_argument("var_bound_Xt: need k >= n");
  const double nd = static_cast<double>(n);
  return D * (std::sqrt(nd) + nd * nd / static_cast<double>(k));
}

}  // namespace planarmatch

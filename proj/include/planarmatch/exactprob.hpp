#pragma once
// Exact avoidance/occupancy probabilities for the aligned-block events, in
// arbitrary-precision arithmetic. Falling-factorial ratios lose precision
// catastrophically in floating point (hundreds of near-cancelling factors),
// so everything here is computed over exact integers, reduced as a rational,
// and only then converted to double where a double is wanted.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace planarmatch {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// (a)_c = a(a-1)...(a-c+1); empty product = 1; zero once the product crosses 0.
inline BigInt falling_factorial(std::uint64_t a, std::uint64_t c) {
  if (c > a) return 0;
  BigInt prod = 1;
  for (std::uint64_t i = 0; i < c; ++i) prod *= BigInt(a - i);
  return prod;
}

// Exact binomial coefficient; the running product is divisible at each step.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt prod = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    prod *= BigInt(n - k + i);
    prod /= BigInt(i);
  }
  return prod;
}

// P(A_1^c): the first block of t bottom indices all avoid the aligned top
// block {1..s}. Under a uniform injection this is (k-s)_t / (k)_t.
inline BigRat prob_A1c_exact_rational(std::uint64_t k, std::uint64_t s, std::uint64_t t) {
  if (s < 1 || s > k || t < 1 || t > k)
    throw std::invalid_argument("prob_A1c_exact: need 1 <= s <= k and 1 <= t <= k");
  return BigRat(falling_factorial(k - s, t), falling_factorial(k, t));
}

inline double prob_A1c_exact(std::uint64_t k, std::uint64_t s, std::uint64_t t) {
  return prob_A1c_exact_rational(k, s, t).convert_to<double>();
}

// P(A_1^c and A_2^c): both of the first two blocks avoid their aligned top
// blocks. Conditioning on how many of each block's values land in the
// *other* block's top interval (j_1 hits of {s+1..2s} from block 1, j_2 hits
// of {1..s} from block 2) gives
//   sum_{j1,j2} C(t,j1) C(t,j2) (s)_{j1} (s)_{j2} (k-2s)_{2t-j1-j2} / (k)_{2t}.
// Grouping by m = j1 + j2 turns the double sum into a self-convolution of
// a_j = C(t,j) (s)_j, which cuts the big-integer work from O(t^2) large
// products to O(t^2) small ones plus O(t) large ones.
inline BigRat prob_joint_A1A2_exact_rational(std::uint64_t k, std::uint64_t s,
                                             std::uint64_t t) {
  if (s < 1 || t < 1 || 2 * s > k || 2 * t > k)
    throw std::invalid_argument("prob_joint_A1A2_exact: need s,t >= 1, 2s <= k, 2t <= k");
  std::vector<BigInt> a(t + 1);
  for (std::uint64_t j = 0; j <= t; ++j) a[j] = binomial(t, j) * falling_factorial(s, j);
  std::vector<BigInt> w(2 * t + 1);  // w[m] = sum_{j1+j2=m} a[j1]*a[j2]
  for (std::uint64_t j1 = 0; j1 <= t; ++j1)
    for (std::uint64_t j2 = 0; j2 <= t; ++j2) w[j1 + j2] += a[j1] * a[j2];
  BigInt num = 0;
  for (std::uint64_t m = 0; m <= 2 * t; ++m) num += w[m] * falling_factorial(k - 2 * s, 2 * t - m);
  return BigRat(num, falling_factorial(k, 2 * t));
}

inline double prob_joint_A1A2_exact(std::uint64_t k, std::uint64_t s, std::uint64_t t) {
  return prob_joint_A1A2_exact_rational(k, s, t).convert_to<double>();
}

// f(a, b, c) = (a-b)_c / (a)_c, evaluated directly in doubles (the intended
// use keeps b + c well below a, where every factor is benign).
inline double falling_ratio(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  if (a < 1) throw std::invalid_argument("falling_ratio: need a >= 1");
  if (c > a) throw std::invalid_argument("falling_ratio: (a)_c = 0 when c > a");
  double ratio = 1.0;
  for (std::uint64_t i = 0; i < c; ++i) {
    if (b + i >= a) return 0.0;  // numerator factor hit zero
    ratio *= static_cast<double>(a - b - i) / static_cast<double>(a - i);
  }
  return ratio;
}

}  // namespace planarmatch

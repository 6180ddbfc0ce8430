// Draw one uniform injection [n] -> [k], read off the longest increasing
// subsequence and the segmented indicator count X_t for a spread of block
// sizes, and show the X_t <= T_n domination plus the mean window for X_t.

#include <cstdio>

#include "planarmatch/planarmatch.hpp"

using namespace planarmatch;

int main() {
  const std::size_t n = 400;
  const std::uint64_t k = 800;

  const Injection inj = sample_injection(n, k, Seed{7});
  const std::size_t T = lis_length(inj);
  std::printf("n = %zu, k = %llu, T_n = %zu\n", n, static_cast<unsigned long long>(k), T);

  std::printf("%6s %6s %6s %12s %12s %12s\n", "t", "s", "X_t", "mu_t", "mean_lo", "mean_hi");
  for (std::size_t t : {5, 10, 16, 20, 25, 40}) {
    if (!segment_size_valid(n, k, t)) continue;  // need s = kt/n integral
    const SegStats stats = segmented_count(inj, t);
    const MeanBoundsXt mb = mean_bounds_Xt(n, k, t);
    std::printf("%6zu %6llu %6llu %12.4f %12.4f %12.4f\n", stats.t,
                static_cast<unsigned long long>(stats.s),
                static_cast<unsigned long long>(stats.x_t), mu_t(n, t), mb.lower, mb.upper);
    if (stats.x_t > T) {
      std::printf("violation: X_t exceeded T_n\n");  // must be unreachable
      return 1;
    }
  }

  const MeanBoundsTn tn = mean_bounds_Tn(n, 0.1);
  std::printf("\nE[T_n] window at this n: [%.4f, %.4f]\n", tn.lower, tn.upper);
  return 0;
}

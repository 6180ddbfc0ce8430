// Rainbow planar matchings: predicate, exact solver vs brute force, greedy
// lower bound, and the analytic pieces around R_n.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "planarmatch/planarmatch.hpp"

using namespace planarmatch;
using Catch::Approx;

namespace {

// All 2^(n*n) colourings of K_{n,n} with exactly r colours available.
template <typename Fn>
void for_each_colouring(std::size_t n, std::size_t r, Fn&& fn) {
  ColourAssignment c{n, r, std::vector<std::uint32_t>(n * n, 1)};
  const std::size_t cells = n * n;
  std::size_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= r;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (std::size_t i = 0; i < cells; ++i) {
      c.cells[i] = static_cast<std::uint32_t>(rest % r + 1);
      rest /= r;
    }
    fn(c);
  }
}

}  // namespace

TEST_CASE("is_rainbow demands planarity and distinct colours", "[rainbow]") {
  const ColourAssignment c{3, 3, {1, 2, 3, 2, 3, 1, 3, 1, 2}};  // latin square
  REQUIRE(is_rainbow(PlanarMatching{{{1, 1}, {2, 2}, {3, 3}}}, c));        // colours 1,3,2
  REQUIRE_FALSE(is_rainbow(PlanarMatching{{{1, 1}, {2, 3}, {3, 2}}}, c));  // crossing
  REQUIRE(is_rainbow(PlanarMatching{{{1, 2}, {2, 3}}}, c));        // colours 2,1: distinct
  REQUIRE_FALSE(is_rainbow(PlanarMatching{{{1, 2}, {3, 3}}}, c));  // colours 2,2: collision
  REQUIRE(is_rainbow(PlanarMatching{}, c));  // empty matching is vacuously rainbow
}

TEST_CASE("is_rainbow pinned colour collisions", "[rainbow]") {
  // 2x2 grid, colours: (1,1)=1 (1,2)=1 (2,1)=1 (2,2)=1: any 2-matching collides.
  const ColourAssignment mono{2, 2, {1, 1, 1, 1}};
  REQUIRE_FALSE(is_rainbow(PlanarMatching{{{1, 1}, {2, 2}}}, mono));
  REQUIRE(is_rainbow(PlanarMatching{{{1, 1}}}, mono));
  // Distinct diagonal: rainbow.
  const ColourAssignment two{2, 2, {1, 2, 2, 2}};
  REQUIRE(is_rainbow(PlanarMatching{{{1, 1}, {2, 2}}}, two));
}

TEST_CASE("exact solver equals exhaustive enumeration on all 2x2 grids", "[rainbow]") {
  for_each_colouring(2, 2, [](const ColourAssignment& c) {
    const RainbowSolution sol = max_rainbow_exact(c);
    REQUIRE(sol.size == brute_force_Rn(c));
    REQUIRE(sol.exact);
    REQUIRE(is_rainbow(sol.witness, c));
    REQUIRE(sol.witness.size() == sol.size);
  });
}

TEST_CASE("exact solver equals brute force on random instances", "[rainbow]") {
  Rng rng(Seed{707});
  for (int instance = 0; instance < 300; ++instance) {
    const std::size_t n = 1 + rng.below(5);
    const std::size_t r = 1 + rng.below(6);
    const ColourAssignment c = sample_colouring(n, r, Seed{rng.next()});
    const RainbowSolution sol = max_rainbow_exact(c);
    REQUIRE(sol.size == brute_force_Rn(c));
    REQUIRE(is_rainbow(sol.witness, c));
    REQUIRE(sol.witness.size() == sol.size);
    REQUIRE(validate_planar(sol.witness, static_cast<std::int64_t>(n),
                            static_cast<std::int64_t>(n)));
  }
}

TEST_CASE("exact solver handles the sparse-memo path (r > 16)", "[rainbow]") {
  Rng rng(Seed{808});
  for (int instance = 0; instance < 20; ++instance) {
    const ColourAssignment c = sample_colouring(6, 18, Seed{rng.next()});
    const RainbowSolution sol = max_rainbow_exact(c);
    REQUIRE(sol.size == brute_force_Rn(c));
    REQUIRE(is_rainbow(sol.witness, c));
  }
}

TEST_CASE("monochromatic and fully-distinct grids pin the extremes", "[rainbow]") {
  const ColourAssignment mono{5, 3, std::vector<std::uint32_t>(25, 2)};
  REQUIRE(max_rainbow_exact(mono).size == 1);

  // All cells distinct colours: the full diagonal works, R_n = n.
  ColourAssignment distinct{4, 16, std::vector<std::uint32_t>(16)};
  for (std::size_t i = 0; i < 16; ++i) distinct.cells[i] = static_cast<std::uint32_t>(i + 1);
  REQUIRE(max_rainbow_exact(distinct).size == 4);
  const RainbowSolution greedy = max_rainbow_greedy(distinct);
  REQUIRE(greedy.size == 4);  // greedy takes (1,1),(2,2),(3,3),(4,4)
  REQUIRE_FALSE(greedy.exact);
}

TEST_CASE("greedy is a valid lower bound", "[rainbow]") {
  Rng rng(Seed{909});
  for (int instance = 0; instance < 300; ++instance) {
    const std::size_t n = 1 + rng.below(6);
    const std::size_t r = 1 + rng.below(6);
    const ColourAssignment c = sample_colouring(n, r, Seed{rng.next()});
    const RainbowSolution greedy = max_rainbow_greedy(c);
    REQUIRE(is_rainbow(greedy.witness, c));
    REQUIRE(greedy.size <= max_rainbow_exact(c).size);
  }
}

TEST_CASE("exact solver guard trips with a greedy hint", "[rainbow]") {
  const ColourAssignment big = sample_colouring(15, 4, Seed{3});
  REQUIRE_THROWS_AS(max_rainbow_exact(big), resource_guard_error);
  try {
    max_rainbow_exact(big);
    FAIL("expected resource_guard_error");
  } catch (const resource_guard_error& e) {
    REQUIRE(std::string(e.what()).find("greedy") != std::string::npos);
  }
  // Custom guard admits it.
  REQUIRE(max_rainbow_exact(big, ExactGuard{16, 20}).size >= 1);
  // r beyond the colour mask width is always refused.
  const ColourAssignment wide = sample_colouring(3, 70, Seed{4});
  REQUIRE_THROWS_AS(max_rainbow_exact(wide, ExactGuard{100, 100}), resource_guard_error);
}

TEST_CASE("rainbow probability formula", "[rainbow]") {
  REQUIRE(rainbow_prob(1, 5) == 1.0);
  REQUIRE(rainbow_prob(3, 4) == Approx(0.375).epsilon(1e-12));  // (3/4)(2/4)
  REQUIRE(rainbow_prob(5, 4) == 0.0);                           // t > r: pigeonhole
  REQUIRE(rainbow_prob(4, 4) == Approx(0.09375).epsilon(1e-12));
  REQUIRE_THROWS_AS(rainbow_prob(0, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(rainbow_prob(1, 0), std::invalid_argument);
}

TEST_CASE("rainbow probability upper bound dominates on its domain", "[rainbow]") {
  REQUIRE(rainbow_prob_upper(2, 2) == Approx(0.6065306597126334).epsilon(1e-12));
  for (std::uint64_t r = 1; r <= 40; ++r)
    for (std::uint64_t t = 1; t <= r; ++t)
      REQUIRE(rainbow_prob(t, r) <= rainbow_prob_upper(t, r));
  REQUIRE_THROWS_AS(rainbow_prob_upper(3, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(rainbow_prob_upper(0, 2), std::invalid_argument);
}

TEST_CASE("binary entropy endpoints, symmetry, and a pinned value", "[rainbow]") {
  REQUIRE(binary_entropy(0.0) == 0.0);
  REQUIRE(binary_entropy(1.0) == 0.0);
  REQUIRE(binary_entropy(0.5) == Approx(std::log(2.0)).epsilon(1e-14));
  REQUIRE(binary_entropy(0.25) == Approx(0.5623351446188083).epsilon(1e-12));
  REQUIRE(binary_entropy(0.3) == Approx(binary_entropy(0.7)).epsilon(1e-14));
  REQUIRE_THROWS_AS(binary_entropy(-0.01), std::invalid_argument);
  REQUIRE_THROWS_AS(binary_entropy(1.01), std::invalid_argument);
}

TEST_CASE("colour-density threshold alpha0", "[rainbow]") {
  const double a = alpha0();
  REQUIRE(a == Approx(0.9373026831309814).margin(1e-9));
  REQUIRE(a > 0.5);
  REQUIRE(a < 1.0);
  REQUIRE(std::abs(2.0 * binary_entropy(a) - a / 2.0) < 1e-10);
}

TEST_CASE("upper tail bound pinned value and regime flag", "[rainbow]") {
  // n=100, alpha=1, eps=0.02: deep in the exponentially-small regime.
  const Bound b = upper_tail_bound(100, 1.0, 0.02);
  REQUIRE(b.in_regime);  // (1-eps)*alpha = 0.98 >= 1/2
  REQUIRE(b.value == Approx(1.5098e-8).epsilon(1e-3));
  REQUIRE(b.value > 0.0);
  REQUIRE(b.value < 1.0);

  // Small n: the pre-asymptotic bound exceeds 1 and is clamped.
  REQUIRE(upper_tail_bound(10, 1.0, 0.1).value == 1.0);
  // Empty union range (no integer t in ((1-eps)alpha n, alpha n]): bound 0.
  REQUIRE(upper_tail_bound(5, 0.9, 0.1).value == 0.0);

  // Out-of-regime flag when (1-eps)*alpha < 1/2.
  REQUIRE_FALSE(upper_tail_bound(100, 0.52, 0.1).in_regime);

  REQUIRE_THROWS_AS(upper_tail_bound(100, 0.4, 0.1), std::invalid_argument);   // alpha <= 1/2
  REQUIRE_THROWS_AS(upper_tail_bound(100, 1.0, 0.0), std::invalid_argument);   // eps = 0
  REQUIRE_THROWS_AS(upper_tail_bound(100, 1.0, 0.5), std::invalid_argument);   // eps = 1/2
  REQUIRE_THROWS_AS(upper_tail_bound(100, 2.1, 0.02), std::invalid_argument);  // (1-eps)a >= 1
}

TEST_CASE("lower tail bound pinned value and clamp", "[rainbow]") {
  // n (2^alpha eps)^n at n=10, alpha=1, eps=0.1: 10 * 0.2^10.
  REQUIRE(lower_tail_bound(10, 1.0, 0.1) == Approx(1.024e-6).epsilon(1e-12));
  REQUIRE(lower_tail_bound(10, 1.0, 0.49) == 1.0);  // vacuous, clamped
  REQUIRE_THROWS_AS(lower_tail_bound(10, 0.0, 0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(lower_tail_bound(10, 1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(lower_tail_bound(10, 1.0, 0.5), std::invalid_argument);
}

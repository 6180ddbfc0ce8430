#pragma once
// Seeded experiment runner. Trial i always draws from RNG stream i of the run
// seed, results land in slot i of a preallocated table, and every statistic
// is reduced from that table in index order on one thread afterwards - so a
// report is a pure function of (config, seed), no matter how many workers
// execute the trials or how the scheduler interleaves them.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "planarmatch/bounds.hpp"
#include "planarmatch/lis.hpp"
#include "planarmatch/rainbow.hpp"
#include "planarmatch/rng.hpp"
#include "planarmatch/sampling.hpp"
#include "planarmatch/segmented.hpp"
#include "planarmatch/types.hpp"

namespace planarmatch {

enum class Mode { rainbow, dependent };
enum class Solver { exact, greedy, lis };

inline const char* to_string(Mode m) { return m == Mode::rainbow ? "rainbow" : "dependent"; }
inline const char* to_string(Solver s) {
  switch (s) {
    case Solver::exact: return "exact";
    case Solver::greedy: return "greedy";
    default: return "lis";
  }
}

struct ExperimentConfig {
  Mode mode = Mode::rainbow;
  std::size_t n = 0;
  std::uint64_t k = 0;   // dependent mode; defaults to n when 0
  std::size_t r = 0;     // rainbow mode; derived from alpha when 0
  double alpha = 0.0;    // rainbow mode; derived from r when 0
  bool t_sqrt = true;    // dependent mode: t = "sqrt" sentinel
  std::size_t t = 0;     // explicit segment size when t_sqrt is false
  std::size_t trials = 1;
  Seed seed;
  double eps = 0.1;      // tail/mean bound parameter
  double b = 0.0;        // T_n tail bound parameter; 0 = no tail comparison
  Solver solver = Solver::exact;
  ExactGuard guard;      // rainbow exact solver guard
};

enum class CheckStatus { pass, fail, flagged };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "flagged";
  }
}

struct CheckResult {
  std::string name;
  double analytic = 0.0;
  double empirical = 0.0;
  CheckStatus status = CheckStatus::pass;
};

struct BoundEntry {
  std::string name;
  double value = 0.0;
  bool in_regime = true;
};

struct TailEntry {
  std::string statistic;  // "R_n" or "T_n"
  std::string side;       // "<=", ">", ">="
  double threshold = 0.0;
  double frequency = 0.0;
};

struct StatSummary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance; 0 when trials < 2
  double se = 0.0;        // standard error of the mean
};

struct ExperimentReport {
  int schema_version = 1;
  std::string rng_algorithm = Rng::algorithm;
  // Normalized config echo. t/s are the resolved values (dependent mode).
  Mode mode = Mode::rainbow;
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::size_t r = 0;
  double alpha = 0.0;
  bool t_sqrt = false;
  std::size_t t = 0;
  std::uint64_t s = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double eps = 0.0;
  double b = 0.0;
  Solver solver = Solver::exact;
  // Statistics of the primary quantity (R_n or T_n) and, in dependent mode,
  // of the secondary block statistic X_t.
  std::string primary_name;
  StatSummary primary;
  bool has_secondary = false;
  std::string secondary_name;
  StatSummary secondary;
  std::vector<TailEntry> empirical_tail;
  std::vector<BoundEntry> bound_values;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
};

// Per-trial raw values, for CSV output. Parallel arrays indexed by trial.
struct TrialTable {
  std::vector<std::uint64_t> primary;    // R_n or T_n
  std::vector<std::uint64_t> secondary;  // X_t (dependent mode only)
};

enum class TailSide { le, lt, ge, gt };

inline const char* to_string(TailSide s) {
  switch (s) {
    case TailSide::le: return "<=";
    case TailSide::lt: return "<";
    case TailSide::ge: return ">=";
    default: return ">";
  }
}

// Fraction of samples beyond threshold on the given side.
template <typename T>
double empirical_tail(const std::vector<T>& samples, double threshold, TailSide side) {
  if (samples.empty()) throw std::invalid_argument("empirical_tail: empty sample set");
  std::size_t count = 0;
  for (const T& v : samples) {
    const double x = static_cast<double>(v);
    const bool hit = side == TailSide::le   ? x <= threshold
                     : side == TailSide::lt ? x < threshold
                     : side == TailSide::ge ? x >= threshold
                                            : x > threshold;
    count += hit;
  }
  return static_cast<double>(count) / static_cast<double>(samples.size());
}

namespace detail {

// Run fn(trial) for every trial index on the requested number of workers.
// Work-stealing order is irrelevant: each call writes only to its own slots.
// The first exception (if any) is rethrown on the calling thread.
template <typename Fn>
void run_trials(std::size_t trials, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
  if (workers <= 1) {
    for (std::size_t i = 0; i < trials; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (;;) {
          const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= trials) return;
          fn(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(trials, std::memory_order_relaxed);  // drain remaining work
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Mean/variance/SE reduced in fixed index order (determinism requires a
// fixed summation order; never reduce in completion order).
template <typename T>
StatSummary summarize(const std::vector<T>& values) {
  StatSummary s;
  const std::size_t n = values.size();
  if (n == 0) return s;
  double sum = 0.0;
  for (const T& v : values) sum += static_cast<double>(v);
  s.mean = sum / static_cast<double>(n);
  if (n >= 2) {
    double ss = 0.0;
    for (const T& v : values) {
      const double d = static_cast<double>(v) - s.mean;
      ss += d * d;
    }
    s.variance = ss / static_cast<double>(n - 1);
  }
  s.se = std::sqrt(s.variance / static_cast<double>(n));
  return s;
}

// Standard error of the sample variance via the fourth central moment:
// SE(var) ~ sqrt((m4 - var^2)/n).
template <typename T>
double variance_se(const std::vector<T>& values, const StatSummary& s) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double m4 = 0.0;
  for (const T& v : values) {
    const double d = static_cast<double>(v) - s.mean;
    m4 += d * d * d * d;
  }
  m4 /= static_cast<double>(n);
  return std::sqrt(std::max(0.0, m4 - s.variance * s.variance) / static_cast<double>(n));
}

inline double frequency_se(double freq, std::size_t trials) {
  return std::sqrt(std::max(0.0, freq * (1.0 - freq)) / static_cast<double>(trials));
}

}  // namespace detail

// Validate and fill in derived fields (r/alpha, k, resolved t). Throws
// std::invalid_argument on contradictions and resource_guard_error when the
// exact solver is requested beyond its guard.
inline ExperimentConfig normalize_config(ExperimentConfig cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (cfg.n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (cfg.mode == Mode::rainbow) {
    if (cfg.solver == Solver::lis)
      throw std::invalid_argument("config: solver 'lis' is for dependent mode");
    if (cfg.r == 0 && cfg.alpha <= 0.0)
      throw std::invalid_argument("config: rainbow mode needs r or alpha");
    if (cfg.r == 0)
      cfg.r = static_cast<std::size_t>(std::max(1.0, std::round(cfg.alpha * static_cast<double>(cfg.n))));
    if (cfg.alpha <= 0.0) cfg.alpha = static_cast<double>(cfg.r) / static_cast<double>(cfg.n);
    if (cfg.solver == Solver::exact && (cfg.n > cfg.guard.max_n || cfg.r > cfg.guard.max_r || cfg.r > 64))
      throw resource_guard_error(
          "config: exact rainbow solver guarded to n <= " + std::to_string(cfg.guard.max_n) +
          ", r <= " + std::to_string(std::min<std::size_t>(cfg.guard.max_r, 64)) +
          "; rerun with --solver greedy for a lower-bound experiment");
  } else {
    if (cfg.solver != Solver::lis)
      throw std::invalid_argument("config: dependent mode uses solver 'lis'");
    if (cfg.k == 0) cfg.k = cfg.n;
    if (cfg.k < cfg.n) throw std::invalid_argument("config: dependent mode needs k >= n");
    if (cfg.t_sqrt) {
      cfg.t = resolve_segment_size(cfg.n, cfg.k);
    } else if (!segment_size_valid(cfg.n, cfg.k, cfg.t)) {
      std::string msg = "config: t = " + std::to_string(cfg.t) +
                        " gives non-integer s = k*t/n; nearby valid t:";
      for (std::size_t v : nearby_valid_segment_sizes(cfg.n, cfg.k, std::max<std::size_t>(cfg.t, 1)))
        msg += ' ' + std::to_string(v);
      throw std::invalid_argument(msg);
    }
    if (cfg.b != 0.0) tail_bound_general(cfg.n, cfg.b);  // validates b's range
  }
  if (cfg.eps < 0.0 || cfg.eps >= 0.5)
    throw std::invalid_argument("config: eps must lie in [0, 1/2)");
  return cfg;
}

// Monte Carlo over colourings of K_{n,n}: per-trial maximum rainbow planar
// matching (exact solver or greedy lower bound), compared against the
// variance claim and both tail bounds.
inline ExperimentReport run_rainbow(const ExperimentConfig& raw_cfg, unsigned workers = 0,
                                    TrialTable* table_out = nullptr) {
  const ExperimentConfig cfg = normalize_config(raw_cfg);
  if (cfg.mode != Mode::rainbow) throw std::invalid_argument("run_rainbow: config.mode mismatch");

  std::vector<std::uint64_t> rn(cfg.trials);
  std::atomic<std::size_t> witness_failures{0};
  detail::run_trials(cfg.trials, workers, [&](std::size_t trial) {
    Rng rng(cfg.seed, trial);
    const ColourAssignment c = sample_colouring(cfg.n, cfg.r, rng);
    const RainbowSolution sol =
        cfg.solver == Solver::exact ? max_rainbow_exact(c, cfg.guard) : max_rainbow_greedy(c);
    if (!is_rainbow(sol.witness, c) || sol.witness.size() != sol.size ||
        sol.size > std::min<std::size_t>(cfg.n, cfg.r))
      witness_failures.fetch_add(1);
    rn[trial] = sol.size;
  });
  if (witness_failures.load() > 0)
    throw std::logic_error("run_rainbow: a solver returned an invalid witness");

  ExperimentReport rep;
  rep.mode = cfg.mode;
  rep.n = cfg.n;
  rep.r = cfg.r;
  rep.alpha = cfg.alpha;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed.value;
  rep.eps = cfg.eps;
  rep.solver = cfg.solver;
  rep.primary_name = "R_n";
  rep.primary = detail::summarize(rn);

  const bool exact = cfg.solver == Solver::exact;
  if (!exact)
    rep.notes.push_back(
        "greedy solver: R_n statistics are lower bounds; tail checks are reported flagged");

  // Empirical tails at the two thresholds the closed-form estimates cover.
  const double thr_low = cfg.eps * static_cast<double>(cfg.r);
  const double thr_up = (1.0 - cfg.eps) * static_cast<double>(cfg.r);
  const double freq_low = cfg.eps > 0.0 ? empirical_tail(rn, thr_low, TailSide::le) : 0.0;
  const double freq_up = cfg.eps > 0.0 ? empirical_tail(rn, thr_up, TailSide::gt) : 0.0;
  if (cfg.eps > 0.0) {
    rep.empirical_tail.push_back({"R_n", "<=", thr_low, freq_low});
    rep.empirical_tail.push_back({"R_n", ">", thr_up, freq_up});
  }

  // Analytic tail bounds; the upper one requires alpha > 1/2.
  bool have_upper = false;
  Bound upper{};
  if (cfg.eps > 0.0 && cfg.alpha > 0.5 && (1.0 - cfg.eps) * cfg.alpha < 1.0) {
    upper = upper_tail_bound(cfg.n, cfg.alpha, cfg.eps);
    rep.bound_values.push_back({"upper_tail_bound", upper.value, upper.in_regime});
    have_upper = true;
  } else if (cfg.eps > 0.0) {
    rep.notes.push_back("upper_tail_bound undefined here (needs alpha > 1/2 and (1-eps)alpha < 1)");
  }
  bool have_lower = false;
  double lower = 0.0;
  if (cfg.eps > 0.0) {
    lower = lower_tail_bound(cfg.n, cfg.alpha, cfg.eps);
    rep.bound_values.push_back({"lower_tail_bound", lower, true});
    have_lower = true;
  }

  rep.checks.push_back({"witness_valid", 1.0, 1.0, CheckStatus::pass});

  // var(R_n) <= 2 E[R_n] should hold at this density; check with 4 SE(var) slack.
  const double se_var = detail::variance_se(rn, rep.primary);
  const double var_cap = 2.0 * rep.primary.mean + 4.0 * se_var;
  rep.checks.push_back({"var_le_two_mean", var_cap, rep.primary.variance,
                        rep.primary.variance <= var_cap ? CheckStatus::pass : CheckStatus::fail});

  // Tail-vs-bound checks compare the empirical frequency of the exact R_n
  // only; a greedy lower bound overstates the lower tail and understates the
  // upper one, so those rows are informational (flagged) under greedy.
  if (have_upper) {
    const double slack = 4.0 * detail::frequency_se(freq_up, cfg.trials);
    const CheckStatus st = !exact          ? CheckStatus::flagged
                           : freq_up <= upper.value + slack ? CheckStatus::pass
                                                         : CheckStatus::fail;
    rep.checks.push_back({"upper_tail_vs_bound", upper.value, freq_up, st});
  }
  if (have_lower) {
    const double slack = 4.0 * detail::frequency_se(freq_low, cfg.trials);
    const CheckStatus st = !exact          ? CheckStatus::flagged
                           : freq_low <= lower + slack ? CheckStatus::pass
                                                    : CheckStatus::fail;
    rep.checks.push_back({"lower_tail_vs_bound", lower, freq_low, st});
  }

  if (table_out) table_out->primary = std::move(rn);
  return rep;
}

// Monte Carlo over uniform injections: per-trial T_n (LIS) and X_t, compared
// against the mean bounds for both, the structural variance form, and the
// general tail bound when b is supplied.
inline ExperimentReport run_dependent(const ExperimentConfig& raw_cfg, unsigned workers = 0,
                                      TrialTable* table_out = nullptr) {
  const ExperimentConfig cfg = normalize_config(raw_cfg);
  if (cfg.mode != Mode::dependent) throw std::invalid_argument("run_dependent: config.mode mismatch");
  const std::uint64_t s = cfg.k * cfg.t / cfg.n;

  std::vector<std::uint64_t> tn(cfg.trials), xt(cfg.trials);
  std::atomic<std::size_t> invariant_failures{0};
  detail::run_trials(cfg.trials, workers, [&](std::size_t trial) {
    Rng rng(cfg.seed, trial);
    const Injection inj = sample_injection(cfg.n, cfg.k, rng);
    const std::size_t T = lis_length(inj);
    const PlanarMatching witness = lis_witness(inj);
    bool ok = inj.is_valid() && witness.size() == T &&
              validate_planar(witness, static_cast<std::int64_t>(cfg.n),
                              static_cast<std::int64_t>(cfg.k));
    for (const auto& [i, j] : witness.edges)
      ok = ok && inj.pi[static_cast<std::size_t>(i) - 1] == static_cast<std::uint64_t>(j);
    const SegStats seg = segmented_count(inj, cfg.t);
    // X_t <= T_n holds for every instance, not just on average: picking one
    // witness index per occurring block yields a planar matching of size X_t.
    if (!ok || seg.x_t > T) invariant_failures.fetch_add(1);
    tn[trial] = T;
    xt[trial] = seg.x_t;
  });
  if (invariant_failures.load() > 0)
    throw std::logic_error("run_dependent: per-trial invariant violated (witness or X_t <= T_n)");

  ExperimentReport rep;
  rep.mode = cfg.mode;
  rep.n = cfg.n;
  rep.k = cfg.k;
  rep.t_sqrt = cfg.t_sqrt;
  rep.t = cfg.t;
  rep.s = s;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed.value;
  rep.eps = cfg.eps;
  rep.b = cfg.b;
  rep.solver = cfg.solver;
  rep.primary_name = "T_n";
  rep.primary = detail::summarize(tn);
  rep.has_secondary = true;
  rep.secondary_name = "X_t";
  rep.secondary = detail::summarize(xt);
  if (cfg.t_sqrt)
    rep.notes.push_back("t resolved from sqrt sentinel: t = " + std::to_string(cfg.t) +
                        ", s = " + std::to_string(s));

  rep.checks.push_back({"witness_valid", 1.0, 1.0, CheckStatus::pass});
  rep.checks.push_back({"xt_le_tn", 0.0, 0.0, CheckStatus::pass});

  // Mean bounds for T_n; the criterion is strict membership, no extra slack.
  const MeanBoundsTn mb_tn = mean_bounds_Tn(cfg.n, cfg.eps);
  rep.bound_values.push_back({"tn_mean_lower", mb_tn.lower, !mb_tn.lower_vacuous});
  rep.bound_values.push_back({"tn_mean_upper", mb_tn.upper, true});
  if (mb_tn.lower_vacuous) rep.notes.push_back("tn_mean_lower is vacuous at this n (floored at 0)");
  rep.checks.push_back({"tn_mean_ge_lower", mb_tn.lower, rep.primary.mean,
                        rep.primary.mean >= mb_tn.lower ? CheckStatus::pass : CheckStatus::fail});
  rep.checks.push_back({"tn_mean_le_upper", mb_tn.upper, rep.primary.mean,
                        rep.primary.mean <= mb_tn.upper ? CheckStatus::pass : CheckStatus::fail});

  // Mean bounds for X_t, with 4 SE slack on each side.
  const MeanBoundsXt mb_xt = mean_bounds_Xt(cfg.n, cfg.k, cfg.t);
  rep.bound_values.push_back({"mu_t", mu_t(cfg.n, cfg.t), true});
  rep.bound_values.push_back({"xt_mean_lower", mb_xt.lower, true});
  rep.bound_values.push_back({"xt_mean_upper", mb_xt.upper, true});
  {
    const double lo = mb_xt.lower - 4.0 * rep.secondary.se;
    const double hi = mb_xt.upper + 4.0 * rep.secondary.se;
    rep.checks.push_back({"xt_mean_ge_lower", lo, rep.secondary.mean,
                          rep.secondary.mean >= lo ? CheckStatus::pass : CheckStatus::fail});
    rep.checks.push_back({"xt_mean_le_upper", hi, rep.secondary.mean,
                          rep.secondary.mean <= hi ? CheckStatus::pass : CheckStatus::fail});
  }

  // Structural variance form with D = 1: D is an existential constant, so
  // this row is annotation (flagged), never pass/fail.
  rep.bound_values.push_back({"xt_var_structural_D1", var_bound_Xt(cfg.n, cfg.k, 1.0), true});
  rep.checks.push_back({"xt_var_structural", var_bound_Xt(cfg.n, cfg.k, 1.0),
                        rep.secondary.variance, CheckStatus::flagged});

  // Exact block-event probabilities and their sandwich/correlation bounds at
  // the resolved (k, s, t).
  rep.bound_values.push_back({"pa1c_exact", prob_A1c_exact(cfg.k, s, cfg.t), true});
  const SandwichBounds sw = prob_A1c_bounds(cfg.k, s, cfg.t);
  rep.bound_values.push_back({"pa_one_lower", sw.lower, sw.in_regime});
  rep.bound_values.push_back({"pa_one_upper", sw.upper, sw.in_regime});
  if (2 * s <= cfg.k && 2 * static_cast<std::uint64_t>(cfg.t) <= cfg.k && cfg.t <= 400) {
    rep.bound_values.push_back(
        {"pa_joint_exact", prob_joint_A1A2_exact(cfg.k, s, cfg.t), true});
    const JointBound jb = joint_bound_A1A2(cfg.k, s, cfg.t);
    rep.bound_values.push_back({"pa_two_bound", jb.value, jb.in_regime});
  }

  // Tail of T_n against the general lower bound, when b is supplied.
  if (cfg.b != 0.0) {
    const TailBound tb = tail_bound_general(cfg.n, cfg.b);
    const double freq = empirical_tail(tn, tb.threshold, TailSide::ge);
    rep.empirical_tail.push_back({"T_n", ">=", tb.threshold, freq});
    rep.bound_values.push_back({"tn_tail_threshold", tb.threshold, true});
    rep.bound_values.push_back({"tn_tail_prob_lower", tb.prob_lower, true});
    const double slack = 4.0 * detail::frequency_se(freq, cfg.trials);
    rep.checks.push_back({"tn_tail_vs_bound", tb.prob_lower, freq,
                          freq >= tb.prob_lower - slack ? CheckStatus::pass : CheckStatus::fail});
  }

  if (table_out) {
    table_out->primary = std::move(tn);
    table_out->secondary = std::move(xt);
  }
  return rep;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg, unsigned workers = 0,
                                       TrialTable* table_out = nullptr) {
  return cfg.mode == Mode::rainbow ? run_rainbow(cfg, workers, table_out)
                                   : run_dependent(cfg, workers, table_out);
}

}  // namespace planarmatch

// Batch CLI for the planarmatch library.
//
// Subcommands:
//   rainbow-sim    Monte Carlo over coloured K_{n,n}: R_n vs tail/variance bounds
//   dependent-sim  Monte Carlo over random injections: T_n and X_t vs mean/tail bounds
//   bounds         evaluate a named analytic bound at given parameters
//   exact          solve one sampled instance exactly and print the witness
//   oracle-check   run a solver/formula-vs-enumeration equivalence suite
//
// Exit codes: 0 success; 2 usage error; 3 failed check under --check;
// 4 I/O failure; 5 resource-guard rejection. PLANARMATCH_THREADS caps the
// worker count (default: hardware concurrency).

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "planarmatch/planarmatch.hpp"

namespace pm = planarmatch;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

unsigned workers_from_env() {
  const char* env = std::getenv("PLANARMATCH_THREADS");
  if (!env) return 0;  // auto
  const long v = std::atol(env);
  return v > 0 ? static_cast<unsigned>(v) : 0;
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    if (item.empty()) throw std::invalid_argument("--n: empty element in list '" + text + "'");
    std::size_t used = 0;
    const unsigned long long v = std::stoull(item, &used);
    if (used != item.size() || v == 0)
      throw std::invalid_argument("--n: expected positive integer(s), got '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

void print_report_summary(const pm::ExperimentReport& rep) {
  std::printf("%s n=%zu", pm::to_string(rep.mode), rep.n);
  if (rep.mode == pm::Mode::rainbow)
    std::printf(" r=%zu alpha=%s", rep.r, fmt(rep.alpha).c_str());
  else
    std::printf(" k=%llu t=%zu s=%llu", static_cast<unsigned long long>(rep.k), rep.t,
                static_cast<unsigned long long>(rep.s));
  std::printf(" trials=%zu seed=%llu solver=%s\n", rep.trials,
              static_cast<unsigned long long>(rep.seed), pm::to_string(rep.solver));
  std::printf("  %s: mean %s variance %s se %s\n", rep.primary_name.c_str(),
              fmt(rep.primary.mean).c_str(), fmt(rep.primary.variance).c_str(),
              fmt(rep.primary.se).c_str());
  if (rep.has_secondary)
    std::printf("  %s: mean %s variance %s se %s\n", rep.secondary_name.c_str(),
                fmt(rep.secondary.mean).c_str(), fmt(rep.secondary.variance).c_str(),
                fmt(rep.secondary.se).c_str());
  for (const pm::TailEntry& t : rep.empirical_tail)
    std::printf("  tail P(%s %s %s) = %s\n", t.statistic.c_str(), t.side.c_str(),
                fmt(t.threshold).c_str(), fmt(t.frequency).c_str());
  for (const pm::CheckResult& c : rep.checks)
    std::printf("  check %s: %s (empirical %s vs analytic %s)\n", c.name.c_str(),
                pm::to_string(c.status), fmt(c.empirical).c_str(), fmt(c.analytic).c_str());
  for (const std::string& note : rep.notes) std::printf("  note: %s\n", note.c_str());
}

struct SimFlags {
  std::string n_list;
  std::uint64_t k = 0;
  std::size_t r = 0;
  double alpha = 0.0;
  std::string t = "sqrt";
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double eps = 0.1;
  double b = 0.0;
  std::string solver;
  std::string out, csv, svg;
  bool check = false;
};

int run_sims(pm::Mode mode, const SimFlags& f) {
  std::vector<std::size_t> ns = parse_n_list(f.n_list);
  std::vector<pm::ExperimentReport> reports;
  std::vector<pm::TrialTable> tables;
  const unsigned workers = workers_from_env();
  for (std::size_t n : ns) {
    pm::ExperimentConfig cfg;
    cfg.mode = mode;
    cfg.n = n;
    cfg.trials = f.trials;
    cfg.seed = pm::Seed{f.seed};
    cfg.eps = f.eps;
    if (mode == pm::Mode::rainbow) {
      cfg.r = f.r;
      cfg.alpha = f.alpha;
      cfg.solver = f.solver.empty() ? pm::Solver::exact : pm::solver_from_string(f.solver);
    } else {
      cfg.k = f.k;  // 0 = default to n
      cfg.b = f.b;
      cfg.solver = f.solver.empty() ? pm::Solver::lis : pm::solver_from_string(f.solver);
      if (f.t == "sqrt") {
        cfg.t_sqrt = true;
      } else {
        cfg.t_sqrt = false;
        std::size_t used = 0;
        cfg.t = static_cast<std::size_t>(std::stoull(f.t, &used));
        if (used != f.t.size())
          throw std::invalid_argument("--t: expected integer or 'sqrt', got '" + f.t + "'");
      }
    }
    pm::TrialTable table;
    reports.push_back(pm::run_experiment(cfg, workers, &table));
    tables.push_back(std::move(table));
    print_report_summary(reports.back());
  }

  if (!f.out.empty()) pm::write_text_file(f.out, pm::serialize_reports(reports));
  if (!f.csv.empty()) pm::write_text_file(f.csv, pm::csv_for_runs(reports, tables));
  if (!f.svg.empty()) {
    std::vector<std::pair<double, double>> pts, means;
    const bool sweep = ns.size() > 1;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      for (std::size_t trial = 0; trial < tables[i].primary.size(); ++trial) {
        const double x = sweep ? static_cast<double>(reports[i].n)
                               : static_cast<double>(trial + 1);
        pts.emplace_back(x, static_cast<double>(tables[i].primary[trial]));
      }
      means.emplace_back(static_cast<double>(sweep ? static_cast<double>(reports[i].n)
                                                   : static_cast<double>(reports[i].trials) / 2.0),
                         reports[i].primary.mean);
    }
    const std::string stat = reports.front().primary_name;
    pm::write_text_file(
        f.svg, pm::svg_scatter(stat + (sweep ? " vs n" : " by trial"),
                               sweep ? "n" : "trial", stat, pts, means));
  }

  if (f.check) {
    std::size_t failed = 0;
    for (const pm::ExperimentReport& rep : reports)
      for (const pm::CheckResult& c : rep.checks)
        if (c.status == pm::CheckStatus::fail) {
          ++failed;
          std::printf("FAILED check %s (n=%zu): empirical %s vs analytic %s\n", c.name.c_str(),
                      rep.n, fmt(c.empirical).c_str(), fmt(c.analytic).c_str());
        }
    if (failed > 0) {
      std::printf("%zu check(s) failed\n", failed);
      return 3;
    }
    std::printf("all checks passed\n");
  }
  return 0;
}

struct BoundsFlags {
  std::string which;
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t s = 0;
  std::size_t t = 0;
  std::size_t r = 0;
  double alpha = 0.0;
  double eps = 0.1;
  double b = 0.0;
};

void need(bool present, const char* what) {
  if (!present) throw std::invalid_argument(std::string("bounds: missing required flag ") + what);
}

int run_bounds(const BoundsFlags& f) {
  if (f.which == "pa_one") {
    need(f.k > 0, "--k");
    need(f.s > 0, "--s");
    need(f.t > 0, "--t");
    const pm::SandwichBounds b = pm::prob_A1c_bounds(f.k, f.s, f.t);
    const double exact = pm::prob_A1c_exact(f.k, f.s, f.t);
    std::printf("pa_one(k=%llu, s=%llu, t=%zu): lower %s upper %s exact %s (%s)\n",
                static_cast<unsigned long long>(f.k), static_cast<unsigned long long>(f.s), f.t,
                fmt(b.lower).c_str(), fmt(b.upper).c_str(), fmt(exact).c_str(),
                b.in_regime ? "in-regime" : "out-of-regime");
  } else if (f.which == "pa_two" || f.which == "joint") {
    need(f.k > 0, "--k");
    need(f.s > 0, "--s");
    need(f.t > 0, "--t");
    const pm::JointBound jb = pm::joint_bound_A1A2(f.k, f.s, f.t);
    std::printf("pa_two(k=%llu, s=%llu, t=%zu): bound %s (raw %s, %s)",
                static_cast<unsigned long long>(f.k), static_cast<unsigned long long>(f.s), f.t,
                fmt(jb.value).c_str(), fmt(jb.raw).c_str(),
                jb.in_regime ? "in-regime" : "out-of-regime");
    if (2 * f.s <= f.k && 2 * f.t <= f.k)
      std::printf(" exact %s", fmt(pm::prob_joint_A1A2_exact(f.k, f.s, f.t)).c_str());
    std::printf("\n");
  } else if (f.which == "mean_xt") {
    need(f.n > 0, "--n");
    need(f.k > 0, "--k");
    need(f.t > 0, "--t");
    const pm::MeanBoundsXt mb = pm::mean_bounds_Xt(f.n, f.k, f.t);
    std::printf("mean_xt(n=%zu, k=%llu, t=%zu): mu_t %s lower %s upper %s\n", f.n,
                static_cast<unsigned long long>(f.k), f.t, fmt(pm::mu_t(f.n, f.t)).c_str(),
                fmt(mb.lower).c_str(), fmt(mb.upper).c_str());
  } else if (f.which == "mean_tn") {
    need(f.n > 0, "--n");
    const pm::MeanBoundsTn mb = pm::mean_bounds_Tn(f.n, f.eps);
    std::printf("mean_tn(n=%zu, eps=%s): lower %s upper %s%s\n", f.n, fmt(f.eps).c_str(),
                fmt(mb.lower).c_str(), fmt(mb.upper).c_str(),
                mb.lower_vacuous ? " (lower vacuous, floored at 0)" : "");
  } else if (f.which == "mu_t") {
    need(f.n > 0, "--n");
    need(f.t > 0, "--t");
    std::printf("mu_t(n=%zu, t=%zu): %s\n", f.n, f.t, fmt(pm::mu_t(f.n, f.t)).c_str());
  } else if (f.which == "tail_general") {
    need(f.n > 0, "--n");
    need(f.b != 0.0, "--b");
    const pm::TailBound tb = pm::tail_bound_general(f.n, f.b);
    std::printf("tail_general(n=%zu, b=%s): threshold %s prob_lower %s\n", f.n, fmt(f.b).c_str(),
                fmt(tb.threshold).c_str(), fmt(tb.prob_lower).c_str());
  } else if (f.which == "rainbow_prob") {
    need(f.t > 0, "--t");
    need(f.r > 0, "--r");
    std::printf("rainbow_prob(t=%zu, r=%zu): exact %s", f.t, f.r,
                fmt(pm::rainbow_prob(f.t, f.r)).c_str());
    if (f.t <= f.r) std::printf(" upper %s", fmt(pm::rainbow_prob_upper(f.t, f.r)).c_str());
    std::printf("\n");
  } else if (f.which == "rainbow_tails") {
    need(f.n > 0, "--n");
    need(f.alpha > 0.0, "--alpha");
    const pm::Bound up = pm::upper_tail_bound(f.n, f.alpha, f.eps);
    const double lo = pm::lower_tail_bound(f.n, f.alpha, f.eps);
    std::printf("rainbow_tails(n=%zu, alpha=%s, eps=%s): upper %s (%s) lower %s\n", f.n,
                fmt(f.alpha).c_str(), fmt(f.eps).c_str(), fmt(up.value).c_str(),
                up.in_regime ? "in-regime" : "out-of-regime", fmt(lo).c_str());
  } else if (f.which == "alpha0") {
    const double a = pm::alpha0();
    std::printf("alpha0: %.12f (residual %s)\n", a,
                fmt(2.0 * pm::binary_entropy(a) - a / 2.0).c_str());
  } else {
    throw std::invalid_argument("bounds: unknown --which '" + f.which + "'");
  }
  return 0;
}

void print_witness(const pm::PlanarMatching& m) {
  std::printf("witness:");
  for (const auto& [i, j] : m.edges)
    std::printf(" (%lld,%lld)", static_cast<long long>(i), static_cast<long long>(j));
  std::printf("\n");
}

struct ExactFlags {
  std::string mode;
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::size_t r = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
};

int run_exact(const ExactFlags& f) {
  if (f.mode == "rainbow") {
    std::size_t r = f.r;
    if (r == 0 && f.alpha > 0.0)
      r = static_cast<std::size_t>(std::max(1.0, std::round(f.alpha * static_cast<double>(f.n))));
    if (f.n == 0 || r == 0)
      throw std::invalid_argument("exact --mode rainbow: need --n and --r (or --alpha)");
    const pm::ColourAssignment c = pm::sample_colouring(f.n, r, pm::Seed{f.seed});
    const pm::RainbowSolution sol = pm::max_rainbow_exact(c);
    std::printf("R_n = %zu (exact)\n", sol.size);
    print_witness(sol.witness);
    std::printf("witness_valid: %s\n", pm::is_rainbow(sol.witness, c) ? "true" : "false");
  } else if (f.mode == "dependent") {
    if (f.n == 0) throw std::invalid_argument("exact --mode dependent: need --n");
    const std::uint64_t k = f.k == 0 ? f.n : f.k;
    const pm::Injection inj = pm::sample_injection(f.n, k, pm::Seed{f.seed});
    const std::size_t T = pm::lis_length(inj);
    const pm::PlanarMatching w = pm::lis_witness(inj);
    std::printf("T_n = %zu\n", T);
    print_witness(w);
    std::printf("witness_valid: %s\n",
                pm::validate_planar(w, static_cast<std::int64_t>(f.n),
                                    static_cast<std::int64_t>(k)) &&
                        w.size() == T
                    ? "true"
                    : "false");
  } else {
    throw std::invalid_argument("exact: --mode must be rainbow or dependent");
  }
  return 0;
}

struct OracleFlags {
  std::string suite;
  std::uint64_t kmax = 0;
  std::uint64_t seed = 0;
};

int run_oracle_check(const OracleFlags& f) {
  if (f.suite == "a1c") {
    const std::uint64_t kmax = f.kmax == 0 ? 9 : f.kmax;
    std::size_t verified = 0;
    for (std::uint64_t k = 1; k <= kmax; ++k)
      for (std::uint64_t s = 1; s <= k; ++s)
        for (std::uint64_t t = 1; t <= k; ++t) {
          if (pm::prob_A1c_exact_rational(k, s, t) != pm::brute_force_a1c(k, s, t)) {
            std::printf("MISMATCH a1c at k=%llu s=%llu t=%llu\n",
                        static_cast<unsigned long long>(k), static_cast<unsigned long long>(s),
                        static_cast<unsigned long long>(t));
            return 3;
          }
          ++verified;
        }
    std::printf("a1c: verified %zu (k,s,t) triples up to k=%llu\n", verified,
                static_cast<unsigned long long>(kmax));
  } else if (f.suite == "joint") {
    const std::uint64_t kmax = f.kmax == 0 ? 12 : f.kmax;
    std::size_t verified = 0;
    for (std::uint64_t k = 2; k <= kmax; ++k)
      for (std::uint64_t t = 1; t <= 2 && 2 * t <= k; ++t)
        for (std::uint64_t s = 1; 2 * s <= k; ++s) {
          const pm::EventProbs probs = pm::brute_force_event_probs(k, s, t);
          if (pm::prob_joint_A1A2_exact_rational(k, s, t) != probs.pJoint ||
              pm::prob_A1c_exact_rational(k, s, t) != probs.pA1c) {
            std::printf("MISMATCH joint at k=%llu s=%llu t=%llu\n",
                        static_cast<unsigned long long>(k), static_cast<unsigned long long>(s),
                        static_cast<unsigned long long>(t));
            return 3;
          }
          ++verified;
        }
    std::printf("joint: verified %zu (k,s,t) triples up to k=%llu\n", verified,
                static_cast<unsigned long long>(kmax));
  } else if (f.suite == "rainbow") {
    const std::size_t instances = 500;
    pm::Rng rng(pm::Seed{f.seed}, 0);
    for (std::size_t i = 0; i < instances; ++i) {
      const std::size_t n = 1 + rng.below(6);
      const std::size_t r = 1 + rng.below(6);
      const pm::ColourAssignment c =
          pm::sample_colouring(n, r, pm::Seed{rng.next()});
      const pm::RainbowSolution sol = pm::max_rainbow_exact(c);
      const pm::RainbowSolution greedy = pm::max_rainbow_greedy(c);
      if (sol.size != pm::brute_force_Rn(c) || greedy.size > sol.size ||
          !pm::is_rainbow(sol.witness, c) || !pm::is_rainbow(greedy.witness, c)) {
        std::printf("MISMATCH rainbow solver at instance %zu (n=%zu r=%zu)\n", i, n, r);
        return 3;
      }
    }
    std::printf("rainbow: verified %zu random instances (n <= 6, r <= 6)\n", instances);
  } else if (f.suite == "lis") {
    const std::size_t instances = 10000;
    pm::Rng rng(pm::Seed{f.seed}, 0);
    for (std::size_t i = 0; i < instances; ++i) {
      const std::size_t n = 1 + rng.below(200);
      const std::uint64_t mult = 1 + rng.below(4);
      const pm::Injection inj = pm::sample_injection(n, n * mult, pm::Seed{rng.next()});
      if (pm::lis_length(inj) != pm::lis_length_oracle(inj)) {
        std::printf("MISMATCH lis at instance %zu (n=%zu)\n", i, n);
        return 3;
      }
    }
    std::printf("lis: verified %zu random instances (n <= 200)\n", instances);
  } else {
    throw std::invalid_argument("oracle-check: --suite must be a1c, joint, rainbow, or lis");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and Monte Carlo analysis of rainbow planar matchings and LIS of random injections"};
  app.require_subcommand(1);

  SimFlags rainbow_flags, dependent_flags;
  BoundsFlags bounds_flags;
  ExactFlags exact_flags;
  OracleFlags oracle_flags;

  CLI::App* rainbow_sim = app.add_subcommand("rainbow-sim", "Monte Carlo over coloured K_{n,n}");
  rainbow_sim->add_option("--n", rainbow_flags.n_list, "bottom/top size, or comma list for a sweep")
      ->required();
  rainbow_sim->add_option("--r", rainbow_flags.r, "colour count");
  rainbow_sim->add_option("--alpha", rainbow_flags.alpha, "colour density r/n (alternative to --r)");
  rainbow_sim->add_option("--trials", rainbow_flags.trials, "number of trials");
  rainbow_sim->add_option("--seed", rainbow_flags.seed, "RNG seed");
  rainbow_sim->add_option("--eps", rainbow_flags.eps, "tail parameter in (0, 1/2)");
  rainbow_sim->add_option("--solver", rainbow_flags.solver, "exact | greedy (default exact)");
  rainbow_sim->add_option("--out", rainbow_flags.out, "JSON report path");
  rainbow_sim->add_option("--csv", rainbow_flags.csv, "per-trial CSV path");
  rainbow_sim->add_option("--svg", rainbow_flags.svg, "SVG scatter path");
  rainbow_sim->add_flag("--check", rainbow_flags.check, "exit 3 if any check fails");

  CLI::App* dependent_sim =
      app.add_subcommand("dependent-sim", "Monte Carlo over uniform random injections");
  dependent_sim->add_option("--n", dependent_flags.n_list, "bottom size, or comma list for a sweep")
      ->required();
  dependent_sim->add_option("--k", dependent_flags.k, "top size (default n)");
  dependent_sim->add_option("--t", dependent_flags.t, "segment size, or 'sqrt' (default)");
  dependent_sim->add_option("--trials", dependent_flags.trials, "number of trials");
  dependent_sim->add_option("--seed", dependent_flags.seed, "RNG seed");
  dependent_sim->add_option("--eps", dependent_flags.eps, "mean-bound parameter");
  dependent_sim->add_option("--b", dependent_flags.b, "tail-bound parameter (enables tail check)");
  dependent_sim->add_option("--solver", dependent_flags.solver, "lis (default)");
  dependent_sim->add_option("--out", dependent_flags.out, "JSON report path");
  dependent_sim->add_option("--csv", dependent_flags.csv, "per-trial CSV path");
  dependent_sim->add_option("--svg", dependent_flags.svg, "SVG scatter path");
  dependent_sim->add_flag("--check", dependent_flags.check, "exit 3 if any check fails");

  CLI::App* bounds = app.add_subcommand("bounds", "evaluate a named analytic bound");
  bounds
      ->add_option("--which", bounds_flags.which,
                   "pa_one | pa_two | mean_xt | mean_tn | mu_t | tail_general | rainbow_prob | "
                   "rainbow_tails | alpha0")
      ->required();
  bounds->add_option("--n", bounds_flags.n, "n");
  bounds->add_option("--k", bounds_flags.k, "k");
  bounds->add_option("--s", bounds_flags.s, "s");
  bounds->add_option("--t", bounds_flags.t, "t");
  bounds->add_option("--r", bounds_flags.r, "r");
  bounds->add_option("--alpha", bounds_flags.alpha, "alpha");
  bounds->add_option("--eps", bounds_flags.eps, "eps");
  bounds->add_option("--b", bounds_flags.b, "b");

  CLI::App* exact = app.add_subcommand("exact", "solve one sampled instance exactly");
  exact->add_option("--mode", exact_flags.mode, "rainbow | dependent")->required();
  exact->add_option("--n", exact_flags.n, "n")->required();
  exact->add_option("--k", exact_flags.k, "k (dependent; default n)");
  exact->add_option("--r", exact_flags.r, "r (rainbow)");
  exact->add_option("--alpha", exact_flags.alpha, "alpha (rainbow; alternative to --r)");
  exact->add_option("--seed", exact_flags.seed, "RNG seed");

  CLI::App* oracle = app.add_subcommand("oracle-check", "formula/solver vs enumeration suites");
  oracle->add_option("--suite", oracle_flags.suite, "a1c | joint | rainbow | lis")->required();
  oracle->add_option("--kmax", oracle_flags.kmax, "largest k to enumerate (a1c: 9, joint: 12)");
  oracle->add_option("--seed", oracle_flags.seed, "RNG seed for randomized suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (rainbow_sim->parsed()) return run_sims(pm::Mode::rainbow, rainbow_flags);
    if (dependent_sim->parsed()) return run_sims(pm::Mode::dependent, dependent_flags);
    if (bounds->parsed()) return run_bounds(bounds_flags);
    if (exact->parsed()) return run_exact(exact_flags);
    if (oracle->parsed()) return run_oracle_check(oracle_flags);
  } catch (const pm::resource_guard_error& e) {
    std::fprintf(stderr, "resource guard: %s\n", e.what());
    return 5;
  } catch (const pm::io_error& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

#pragma once

// Monte Carlo harness for the concentration experiments: samples G_{n,p},
// measures the t-stability number (exact with a deterministic budget, plus
// the greedy witness), the peeling colouring, and how the results sit inside
// the predicted window.
//
// Trial i draws every bit of randomness from derive_stream(master_seed, i),
// so a batch is a pure function of its configuration; trials are independent
// and may run on any number of worker threads without changing a byte of
// output.

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tstab/formulas.hpp"
#include "tstab/graph.hpp"
#include "tstab/params.hpp"
#include "tstab/peeling.hpp"
#include "tstab/prng.hpp"
#include "tstab/stable_sets.hpp"

namespace tstab {

struct TrialRecord {
  std::uint64_t seed = 0;
  int n = 0;
  int t = 0;
  double p = 0.0;
  std::optional<int> alpha_exact;  // empty when the search budget ran out
  int alpha_heuristic = 0;
  StabilityWindow window{};
  std::optional<int> chi_greedy;   // empty when the peel formula has no domain
  double elapsed_ms = 0.0;         // deterministic modeled search time

  std::optional<bool> in_window() const {
    if (!alpha_exact) return std::nullopt;
    return window.contains(*alpha_exact);
  }
};

struct ExperimentConfig {
  Params params;
  int n = 0;
  int trials = 0;
  double epsilon = 0.2;
  std::uint64_t master_seed = 0;
  long long budget_ms = 10000;
  int jobs = 0;  // <= 0: hardware concurrency
};

inline TrialRecord run_trial(const ExperimentConfig& cfg, int index,
                             const StabilityWindow& window) {
  const std::uint64_t trial_seed =
      derive_stream(cfg.master_seed, static_cast<std::uint64_t>(index));
  const Graph g = sample_gnp(cfg.n, cfg.params.p, derive_stream(trial_seed, 0));

  TrialRecord rec;
  rec.seed = trial_seed;
  rec.n = cfg.n;
  rec.t = cfg.params.t;
  rec.p = cfg.params.p;
  rec.window = window;

  rec.alpha_heuristic = static_cast<int>(
      greedy_stable_set(g, cfg.params.t, derive_stream(trial_seed, 1)).size());

  const StableSearchResult search =
      exact_stability_number(g, cfg.params.t, cfg.budget_ms);
  rec.alpha_exact = search.alpha;
  rec.elapsed_ms = search.elapsed_ms();

  if (cfg.n >= 3) {
    try {
      const PeelResult peel = peel_colouring(g, cfg.params, cfg.epsilon,
                                             derive_stream(trial_seed, 2));
      rec.chi_greedy = peel.colour_count();
    } catch (const std::domain_error&) {
      rec.chi_greedy = std::nullopt;
    }
  }
  return rec;
}

inline std::vector<TrialRecord> run_concentration_experiment(
    const ExperimentConfig& cfg) {
  if (cfg.trials < 1)
    throw std::domain_error("run_concentration_experiment: trials must be >= 1");
  const StabilityWindow window =
      stability_window(cfg.params, cfg.n, cfg.epsilon);

  std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
  int jobs = cfg.jobs > 0
                 ? cfg.jobs
                 : static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  if (jobs > cfg.trials) jobs = cfg.trials;

  if (jobs == 1) {
    for (int i = 0; i < cfg.trials; ++i) records[static_cast<std::size_t>(i)] =
        run_trial(cfg, i, window);
    return records;
  }

  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= cfg.trials) return;
        records[static_cast<std::size_t>(i)] = run_trial(cfg, i, window);
      }
    });
  }
  for (auto& worker : workers) worker.join();
  return records;
}

struct ExperimentSummary {
  std::map<int, int> histogram;  // alpha value -> #trials (exact values only)
  int exact_trials = 0;
  int timeouts = 0;
  int in_window = 0;
  int support_lo = 0;
  int support_hi = 0;
  int mode_value = 0;

  int support_width() const {
    return exact_trials == 0 ? 0 : support_hi - support_lo + 1;
  }
  double fraction_in_window() const {
    return exact_trials == 0 ? 0.0
                             : static_cast<double>(in_window) / exact_trials;
  }
};

inline ExperimentSummary summarize(const std::vector<TrialRecord>& records) {
  ExperimentSummary s;
  for (const auto& rec : records) {
    if (!rec.alpha_exact) {
      ++s.timeouts;
      continue;
    }
    const int a = *rec.alpha_exact;
    ++s.histogram[a];
    ++s.exact_trials;
    if (rec.window.contains(a)) ++s.in_window;
  }
  if (s.exact_trials > 0) {
    s.support_lo = s.histogram.begin()->first;
    s.support_hi = s.histogram.rbegin()->first;
    int best = 0;
    for (const auto& [value, count] : s.histogram) {
      if (count > best) {
        best = count;
        s.mode_value = value;
      }
    }
  }
  return s;
}

}  // namespace tstab

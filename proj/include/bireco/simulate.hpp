#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bireco/likelihood.hpp"
#include "bireco/model.hpp"

namespace bireco {

enum class Stage { kCliquesOnly, kTuples, kTuplesPlusLikelihood };

std::string_view stage_name(Stage stage);

struct TrialConfig {
  std::size_t dimension = 3;
  std::size_t n = 10;
  std::vector<std::uint64_t> intervals;  // one per column
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  Stage stage = Stage::kTuples;
  WeightMode weight_mode = WeightMode::kReciprocal;
  std::uint64_t candidate_cap = 10'000'000;
  unsigned threads = 1;

  static TrialConfig uniform(std::size_t dimension, std::size_t n, std::uint64_t interval,
                             std::size_t trials, std::uint64_t seed, Stage stage);

  // Throws Error(kInvalidOptions).
  void validate() const;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of trial `index`: mix64(master ^ mix64(index + golden-ratio constant)).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

// Uniform integer in [0, bound) by rejection, portable across standard
// libraries (unlike std::uniform_int_distribution).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Human-readable description of the generator and seed mixing, echoed in
// reports.
std::string_view rng_description();

Dataset generate_dataset(const TrialConfig& config, std::uint64_t trial_index);

struct TrialResult {
  bool exploded = false;
  std::size_t distinct_rows = 0;
  std::size_t candidates = 0;
  bool lookup_feasible = false;
  bool cliques_full_recovery = false;
  std::size_t singles_deduced = 0;
  std::size_t doubles_deduced = 0;
  bool tuples_full_recovery = false;
  double tuples_proportion = 0.0;
  bool likelihood_full_recovery = false;
  double likelihood_proportion = 0.0;
  double expected_random = 0.0;
};

// Runs one trial through the configured stage.
TrialResult run_trial(const TrialConfig& config, std::uint64_t trial_index);

struct MetricSummary {
  double mean = 0.0;
  double standard_error = 0.0;
};

struct AggregateReport {
  TrialConfig config;
  std::size_t trials_completed = 0;
  std::size_t trials_exploded = 0;
  std::map<std::string, MetricSummary> metrics;
  std::vector<TrialResult> trials;  // indexed by trial, exploded ones included
};

// Trials run in parallel; aggregation follows trial order, so the report does
// not depend on the thread count.
AggregateReport run_trials(const TrialConfig& config);

MetricSummary summarize(const std::vector<double>& values);

}  // namespace bireco

#include "bireco/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "bireco/deduction.hpp"
#include "bireco/error.hpp"
#include "bireco/evaluation.hpp"
#include "bireco/graph.hpp"
#include "bireco/lookup.hpp"

namespace bireco {

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::kCliquesOnly: return "cliques_only";
    case Stage::kTuples: return "tuples";
    case Stage::kTuplesPlusLikelihood: return "tuples_plus_likelihood";
  }
  return "unknown";
}

TrialConfig TrialConfig::uniform(std::size_t dimension, std::size_t n,
                                 std::uint64_t interval, std::size_t trials,
                                 std::uint64_t seed, Stage stage) {
  TrialConfig c;
  c.dimension = dimension;
  c.n = n;
  c.intervals.assign(dimension, interval);
  c.trials = trials;
  c.seed = seed;
  c.stage = stage;
  return c;
}

void TrialConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidOptions, what); };
  if (dimension < 2) fail("dimension must be at least 2");
  if (n < 1) fail("n must be at least 1");
  if (trials < 1) fail("trials must be at least 1");
  if (intervals.size() != dimension) fail("need one interval per column");
  for (auto i : intervals) {
    if (i < 1) fail("intervals must be at least 1");
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Reject the low (2^64 mod bound) words so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return x % bound;
}

std::string_view rng_description() {
  return "mt19937_64 per trial; seed = splitmix64(master ^ splitmix64(index + "
         "0x9e3779b97f4a7c15)); draws in [0,I) by rejection of words below "
         "(2^64 mod I), then word mod I; row-major fill";
}

Dataset generate_dataset(const TrialConfig& config, std::uint64_t trial_index) {
  std::mt19937_64 rng(trial_seed(config.seed, trial_index));
  std::vector<ValueVector> rows(config.n, ValueVector(config.dimension));
  for (auto& row : rows) {
    for (std::size_t d = 0; d < config.dimension; ++d) {
      row[d] = std::to_string(uniform_below(rng, config.intervals[d]));
    }
  }
  return Dataset::from_rows(config.dimension, std::move(rows));
}

TrialResult run_trial(const TrialConfig& config, std::uint64_t trial_index) {
  TrialResult r;
  const Dataset data = generate_dataset(config, trial_index);
  const auto distinct = distinct_rows(data);
  r.distinct_rows = distinct.size();
  const ProjectionSet proj = project(data);
  r.lookup_feasible = lookup_reconstruct(proj).reconstructed();

  auto graph = std::make_shared<const ReconstructionGraph>(build_graph(proj));
  std::optional<CandidateSet> cands;
  try {
    cands.emplace(enumerate_candidates(graph, {config.candidate_cap, 1}));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCandidateExplosion) throw;
    r.exploded = true;
    return r;
  }
  r.candidates = cands->size();
  r.cliques_full_recovery = r.candidates == r.distinct_rows;
  if (config.stage == Stage::kCliquesOnly) return r;

  const auto singles = deduce_singles(*cands);
  const auto doubles = deduce_doubles(*cands);
  r.singles_deduced = singles.count();
  r.doubles_deduced = doubles.count();
  const double truth = static_cast<double>(r.distinct_rows);
  r.tuples_full_recovery = r.doubles_deduced == r.distinct_rows;
  r.tuples_proportion = static_cast<double>(r.doubles_deduced) / truth;
  if (config.stage == Stage::kTuples) return r;

  TruthSet truth_set;
  for (const auto& [row, count] : distinct) truth_set.insert(row);
  std::vector<CandidateIndex> universe;
  for (std::size_t c = 0; c < cands->size(); ++c) {
    if (!doubles.is_deduced[c]) universe.push_back(static_cast<CandidateIndex>(c));
  }
  const auto statements = build_statements(proj, *cands, doubles);
  const auto scores = score_candidates(statements, universe, config.weight_mode);
  const std::size_t slots = r.distinct_rows - std::min(r.distinct_rows, r.doubles_deduced);
  const auto selection = select_rows(scores, slots);
  const auto metrics = compute_metrics(*cands, doubles, selection, truth_set);
  r.likelihood_full_recovery = metrics.full_recovery;
  r.likelihood_proportion = metrics.proportion_recovered;
  r.expected_random = metrics.expected_random;
  return r;
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  if (values.empty()) return s;
  // Neumaier-compensated sums.
  auto compensated = [](const std::vector<double>& xs, auto&& f) {
    double sum = 0.0;
    double carry = 0.0;
    for (double x : xs) {
      const double v = f(x);
      const double t = sum + v;
      carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
      sum = t;
    }
    return sum + carry;
  };
  const double n = static_cast<double>(values.size());
  s.mean = compensated(values, [](double x) { return x; }) / n;
  if (values.size() > 1) {
    const double mean = s.mean;
    const double ss = compensated(values, [mean](double x) { return (x - mean) * (x - mean); });
    s.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

AggregateReport run_trials(const TrialConfig& config) {
  config.validate();
  AggregateReport report;
  report.config = config;
  report.trials.resize(config.trials);

  const unsigned threads = std::max(
      1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.trials)));
  auto work = [&](unsigned worker) {
    for (std::size_t t = worker; t < config.trials; t += threads) {
      report.trials[t] = run_trial(config, t);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  std::map<std::string, std::vector<double>> series;
  auto add = [&](const char* name, double v) { series[name].push_back(v); };
  for (const auto& r : report.trials) {
    if (r.exploded) {
      ++report.trials_exploded;
      continue;
    }
    ++report.trials_completed;
    add("distinct_rows", static_cast<double>(r.distinct_rows));
    add("candidates", static_cast<double>(r.candidates));
    add("lookup_success", r.lookup_feasible ? 1.0 : 0.0);
    add("cliques_full_recovery", r.cliques_full_recovery ? 1.0 : 0.0);
    if (config.stage == Stage::kCliquesOnly) continue;
    add("singles_deduced", static_cast<double>(r.singles_deduced));
    add("doubles_deduced", static_cast<double>(r.doubles_deduced));
    add("tuples_full_recovery", r.tuples_full_recovery ? 1.0 : 0.0);
    add("tuples_proportion", r.tuples_proportion);
    if (config.stage == Stage::kTuples) continue;
    add("likelihood_full_recovery", r.likelihood_full_recovery ? 1.0 : 0.0);
    add("likelihood_proportion", r.likelihood_proportion);
    add("expected_random", r.expected_random);
  }
  for (const auto& [name, values] : series) report.metrics[name] = summarize(values);
  return report;
}

}  // namespace bireco

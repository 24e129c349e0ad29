// Command-line front end: project, reconstruct, simulate, embed, oracle.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bireco/embed.hpp"
#include "bireco/error.hpp"
#include "bireco/io.hpp"
#include "bireco/likelihood.hpp"
#include "bireco/pipeline.hpp"
#include "bireco/simulate.hpp"

namespace {

using namespace bireco;
using nlohmann::json;

constexpr int kExitDataError = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

struct ProjectArgs {
  std::string csv;
  std::vector<std::string> columns;
  bool no_header = false;
  std::string output;
};

int run_project(const ProjectArgs& a) {
  const Dataset data = load_dataset_csv(a.csv, {!a.no_header, a.columns});
  emit(a.output, serialize_projections(project(data)));
  return 0;
}

struct ReconstructArgs {
  std::string projections;
  std::size_t distinct_count = 0;
  std::string weight_mode = "reciprocal";
  std::string truth;
  bool truth_no_header = false;
  std::uint64_t cap = 10'000'000;
  unsigned threads = 1;
  std::string output;
};

int run_reconstruct(const ReconstructArgs& a) {
  const ProjectionSet proj = parse_projections(read_file(a.projections));
  PipelineOptions options;
  options.weight_mode = parse_weight_mode(a.weight_mode);
  options.candidate_cap = a.cap;
  options.threads = a.threads;
  PipelineResult result = run_pipeline(proj, a.distinct_count, options);
  if (!a.truth.empty()) {
    CsvOptions csv{!a.truth_no_header, {}};
    // With a header, pick the projection's columns by name.
    if (csv.header) csv.columns = proj.column_names();
    const Dataset truth = load_dataset_csv(a.truth, csv);
    if (truth.dimension() != proj.dimension()) {
      throw Error(ErrorCode::kInvalidOptions, "truth CSV width does not match projections");
    }
    TruthSet set(truth.rows().begin(), truth.rows().end());
    evaluate_against(result, set);
  }
  emit(a.output, serialize_report(result));
  return 0;
}

struct SimulateArgs {
  std::size_t dim = 5;
  std::size_t n = 32;
  std::vector<std::uint64_t> interval{8};
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::string stage = "tuples";
  std::string weight_mode = "reciprocal";
  std::uint64_t cap = 10'000'000;
  unsigned threads = 1;
  bool per_trial = false;
  std::string output;
};

Stage parse_stage(const std::string& s) {
  if (s == "cliques" || s == "cliques_only") return Stage::kCliquesOnly;
  if (s == "tuples") return Stage::kTuples;
  if (s == "likelihood" || s == "tuples_plus_likelihood") return Stage::kTuplesPlusLikelihood;
  throw Error(ErrorCode::kInvalidOptions, "unknown stage '" + s + "'");
}

int run_simulate(const SimulateArgs& a) {
  TrialConfig config;
  config.dimension = a.dim;
  config.n = a.n;
  if (a.interval.size() == 1) {
    config.intervals.assign(a.dim, a.interval.front());
  } else {
    config.intervals = a.interval;
  }
  config.trials = a.trials;
  if (a.seed) {
    config.seed = *a.seed;
  } else if (const char* env = std::getenv("BIRECO_SEED")) {
    config.seed = std::stoull(env);
  }
  config.stage = parse_stage(a.stage);
  config.weight_mode = parse_weight_mode(a.weight_mode);
  config.candidate_cap = a.cap;
  config.threads = a.threads;

  const AggregateReport report = run_trials(config);
  json doc;
  doc["version"] = kReportVersion;
  doc["config"] = {{"dimension", config.dimension},
                   {"n", config.n},
                   {"intervals", config.intervals},
                   {"trials", config.trials},
                   {"seed", config.seed},
                   {"stage", stage_name(config.stage)},
                   {"weight_mode", weight_mode_name(config.weight_mode)},
                   {"candidate_cap", config.candidate_cap}};
  doc["rng"] = rng_description();
  doc["trials_completed"] = report.trials_completed;
  doc["trials_exploded"] = report.trials_exploded;
  json metrics = json::object();
  for (const auto& [name, m] : report.metrics) {
    metrics[name] = {{"mean", m.mean}, {"standard_error", m.standard_error}};
  }
  doc["metrics"] = std::move(metrics);
  if (a.per_trial) {
    json trials = json::array();
    for (const auto& t : report.trials) {
      trials.push_back({{"exploded", t.exploded},
                        {"distinct_rows", t.distinct_rows},
                        {"candidates", t.candidates},
                        {"singles_deduced", t.singles_deduced},
                        {"doubles_deduced", t.doubles_deduced},
                        {"tuples_proportion", t.tuples_proportion},
                        {"likelihood_proportion", t.likelihood_proportion},
                        {"expected_random", t.expected_random}});
    }
    doc["trials"] = std::move(trials);
  }
  emit(a.output, canonical_dump(doc));
  return 0;
}

struct EmbedArgs {
  std::string report;
  std::string method = "pca";
  std::string color = "likelihood";
  std::string output;
};

int run_embed(const EmbedArgs& a) {
  const ReportView view = report_from_json(json::parse(read_file(a.report)));
  const CodedRows coded = code_rows(view.candidates, view.domains, view.columns);
  EmbeddingResult emb;
  if (a.method == "pca") {
    emb = pca_2d(coded);
  } else if (a.method == "mds") {
    emb = mds_2d(coded);
  } else {
    throw Error(ErrorCode::kInvalidOptions, "unknown method '" + a.method + "'");
  }
  PlotSpec spec;
  if (a.color == "likelihood") {
    spec = likelihood_style(view.deduced, view.scores);
  } else if (a.color == "accuracy") {
    if (!view.labels) {
      throw Error(ErrorCode::kInvalidOptions,
                  "accuracy colouring needs a report produced with --truth");
    }
    spec = accuracy_style(*view.labels);
  } else {
    throw Error(ErrorCode::kInvalidOptions, "unknown colour mode '" + a.color + "'");
  }
  spec.metadata.push_back("source: " + std::filesystem::path(a.report).filename().string());
  for (const auto& w : emb.warnings) spec.metadata.push_back("warning: " + w);
  emit(a.output, render_plot(emb, spec));
  return 0;
}

struct OracleArgs {
  std::string report;
  std::uint64_t cap = 10'000'000;
  unsigned threads = 1;
  std::string output;
};

int run_oracle(const OracleArgs& a) {
  const ReportView view = report_from_json(json::parse(read_file(a.report)));
  const CoverFrequencies freq = exact_cover_frequencies(
      view.statements, view.undeduced, view.slots, {a.cap, a.threads});

  std::vector<std::size_t> rank(freq.universe.size());
  for (std::size_t k = 0; k < rank.size(); ++k) rank[k] = k;
  std::stable_sort(rank.begin(), rank.end(), [&](std::size_t x, std::size_t y) {
    return freq.appearances[x] > freq.appearances[y];
  });
  json top = json::array();
  for (std::size_t k = 0; k < view.slots && k < rank.size(); ++k) {
    top.push_back(freq.universe[rank[k]]);
  }
  json candidates = json::array();
  for (std::size_t k = 0; k < freq.universe.size(); ++k) {
    candidates.push_back({{"index", freq.universe[k]},
                          {"appearances", freq.appearances[k]},
                          {"proportion", freq.proportion[k]}});
  }
  std::vector<CandidateIndex> chosen = view.chosen;
  std::vector<CandidateIndex> oracle_top = top.get<std::vector<CandidateIndex>>();
  std::sort(chosen.begin(), chosen.end());
  std::sort(oracle_top.begin(), oracle_top.end());
  std::vector<CandidateIndex> common;
  std::set_intersection(chosen.begin(), chosen.end(), oracle_top.begin(), oracle_top.end(),
                        std::back_inserter(common));

  json doc;
  doc["version"] = kReportVersion;
  doc["slots"] = view.slots;
  doc["solutions"] = freq.solutions;
  doc["candidates"] = std::move(candidates);
  doc["oracle_top"] = std::move(top);
  doc["heuristic_selection"] = view.chosen;
  doc["overlap"] = common.size();
  emit(a.output, canonical_dump(doc));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct discrete datasets from their bivariate projections"};
  app.require_subcommand(1);

  ProjectArgs project_args;
  auto* project_cmd = app.add_subcommand("project", "Write the bivariate projections of a CSV");
  project_cmd->add_option("csv", project_args.csv, "Input CSV")->required();
  project_cmd->add_option("--columns", project_args.columns,
                          "Columns by name, 1-based number or range (e.g. 3-8)")
      ->delimiter(',');
  project_cmd->add_flag("--no-header", project_args.no_header, "First line is data");
  project_cmd->add_option("-o,--output", project_args.output, "Output projection file");

  ReconstructArgs rec_args;
  auto* rec_cmd = app.add_subcommand("reconstruct", "Reconstruct rows from a projection file");
  rec_cmd->add_option("projections", rec_args.projections, "Projection file")->required();
  rec_cmd->add_option("--distinct-count", rec_args.distinct_count, "Known distinct row count")
      ->required()
      ->check(CLI::PositiveNumber);
  rec_cmd->add_option("--weight-mode", rec_args.weight_mode, "reciprocal | ratio")
      ->check(CLI::IsMember({"reciprocal", "ratio"}));
  rec_cmd->add_option("--truth", rec_args.truth, "Ground-truth CSV for evaluation");
  rec_cmd->add_flag("--truth-no-header", rec_args.truth_no_header, "Truth CSV has no header");
  rec_cmd->add_option("--cap", rec_args.cap, "Candidate cap");
  rec_cmd->add_option("--threads", rec_args.threads, "Worker threads")->check(CLI::PositiveNumber);
  rec_cmd->add_option("-o,--output", rec_args.output, "Output report file");

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo trials on random datasets");
  sim_cmd->add_option("--dim", sim_args.dim, "Dimension D")->check(CLI::Range(2, 64));
  sim_cmd->add_option("--n", sim_args.n, "Rows per dataset")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--interval", sim_args.interval, "Interval I, or one per column")
      ->delimiter(',');
  sim_cmd->add_option("--trials", sim_args.trials, "Trial count")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim_args.seed, "Master seed (default: $BIRECO_SEED or 0)");
  sim_cmd->add_option("--stage", sim_args.stage, "cliques | tuples | likelihood")
      ->check(CLI::IsMember({"cliques", "cliques_only", "tuples", "likelihood",
                             "tuples_plus_likelihood"}));
  sim_cmd->add_option("--weight-mode", sim_args.weight_mode, "reciprocal | ratio")
      ->check(CLI::IsMember({"reciprocal", "ratio"}));
  sim_cmd->add_option("--cap", sim_args.cap, "Per-trial candidate cap");
  sim_cmd->add_option("--threads", sim_args.threads, "Worker threads")->check(CLI::PositiveNumber);
  sim_cmd->add_flag("--per-trial", sim_args.per_trial, "Include per-trial records");
  sim_cmd->add_option("-o,--output", sim_args.output, "Output report file");

  EmbedArgs embed_args;
  auto* embed_cmd = app.add_subcommand("embed", "Plot a report's candidates as SVG");
  embed_cmd->add_option("report", embed_args.report, "Report file")->required();
  embed_cmd->add_option("--method", embed_args.method, "pca | mds")
      ->check(CLI::IsMember({"pca", "mds"}));
  embed_cmd->add_option("--color", embed_args.color, "likelihood | accuracy")
      ->check(CLI::IsMember({"likelihood", "accuracy"}));
  embed_cmd->add_option("-o,--output", embed_args.output, "Output SVG file");

  OracleArgs oracle_args;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Exact size-s cover frequencies for a report's statements");
  oracle_cmd->add_option("report", oracle_args.report, "Report file")->required();
  oracle_cmd->add_option("--cap", oracle_args.cap, "Maximum subsets to enumerate");
  oracle_cmd->add_option("--threads", oracle_args.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("-o,--output", oracle_args.output, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*project_cmd) return run_project(project_args);
    if (*rec_cmd) return run_reconstruct(rec_args);
    if (*sim_cmd) return run_simulate(sim_args);
    if (*embed_cmd) return run_embed(embed_args);
    if (*oracle_cmd) return run_oracle(oracle_args);
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidOptions ? kExitUsage : kExitDataError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error [ParseError]: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bireco/deduction.hpp"
#include "bireco/evaluation.hpp"
#include "bireco/graph.hpp"
#include "bireco/likelihood.hpp"
#include "bireco/model.hpp"

namespace bireco {

inline constexpr int kReportVersion = 1;

struct PipelineOptions {
  WeightMode weight_mode = WeightMode::kReciprocal;
  std::uint64_t candidate_cap = 10'000'000;
  std::size_t exact_score_limit = kExactScoreStatementLimit;
  unsigned threads = 1;
};

struct TruthEvaluation {
  std::vector<Confusion> labels;
  ReconstructionMetrics metrics;
};

struct PipelineResult {
  PipelineOptions options;
  std::size_t distinct_count = 0;
  std::uint64_t row_count = 0;
  std::shared_ptr<const ReconstructionGraph> graph;
  std::optional<CandidateSet> candidates;
  DeductionResult deduction;
  std::vector<EdgeStatement> statements;
  std::vector<CandidateIndex> undeduced;
  ScoredCandidates scores;
  Selection selection;
  std::optional<TruthEvaluation> truth;
  std::vector<std::string> notes;
};

// enumerate -> doubles deduction -> statements -> scores -> top-s selection,
// with s = distinct_count - deduced. Stage errors are rethrown with the stage
// name prefixed. Throws Error(kContradictoryDistinctCount) when more rows are
// deduced than distinct_count allows.
PipelineResult run_pipeline(const ProjectionSet& projections, std::size_t distinct_count,
                            const PipelineOptions& options = {});

// Labels candidates and computes metrics against the distinct truth rows.
void evaluate_against(PipelineResult& result, const TruthSet& truth);

nlohmann::json report_to_json(const PipelineResult& result);
std::string serialize_report(const PipelineResult& result);

// The parts of a report needed to plot it or re-run the exact oracle.
struct ReportView {
  std::vector<std::string> columns;
  std::vector<ColumnDomain> domains;
  std::vector<ValueVector> candidates;
  std::vector<bool> deduced;
  std::vector<double> scores;  // per candidate; 0 for deduced ones
  std::vector<CandidateIndex> undeduced;
  // Statement edges are renumbered in report order.
  std::vector<EdgeStatement> statements;
  std::vector<CandidateIndex> chosen;
  std::size_t slots = 0;
  std::optional<std::vector<Confusion>> labels;
};

// Throws Error(kParseError) on malformed or unsupported reports.
ReportView report_from_json(const nlohmann::json& doc);

std::string_view weight_mode_name(WeightMode mode);
// Throws Error(kInvalidOptions) for unknown names.
WeightMode parse_weight_mode(std::string_view name);

}  // namespace bireco

#include "bireco/pipeline.hpp"

#include "bireco/error.hpp"
#include "bireco/io.hpp"

namespace bireco {

std::string_view weight_mode_name(WeightMode mode) {
  return mode == WeightMode::kReciprocal ? "reciprocal" : "ratio";
}

WeightMode parse_weight_mode(std::string_view name) {
  if (name == "reciprocal") return WeightMode::kReciprocal;
  if (name == "ratio") return WeightMode::kRatio;
  throw Error(ErrorCode::kInvalidOptions, "unknown weight mode '" + std::string(name) + "'");
}

namespace {

template <typename F>
auto stage(std::string_view name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_stage(name);
  }
}

}  // namespace

PipelineResult run_pipeline(const ProjectionSet& projections, std::size_t distinct_count,
                            const PipelineOptions& options) {
  if (distinct_count < 1) {
    throw Error(ErrorCode::kInvalidOptions, "distinct count must be at least 1");
  }
  PipelineResult r;
  r.options = options;
  r.distinct_count = distinct_count;
  r.row_count = projections.row_count();

  r.graph = stage("build_graph", [&] {
    return std::make_shared<const ReconstructionGraph>(build_graph(projections));
  });
  r.candidates.emplace(stage("enumerate", [&] {
    return enumerate_candidates(r.graph, {options.candidate_cap, options.threads});
  }));
  const CandidateSet& cands = *r.candidates;
  r.deduction = stage("deduce", [&] { return deduce_doubles(cands); });

  if (r.deduction.count() > distinct_count) {
    throw Error(ErrorCode::kContradictoryDistinctCount,
                "select: " + std::to_string(r.deduction.count()) +
                    " rows were deduced but the distinct count is " +
                    std::to_string(distinct_count),
                r.deduction.count());
  }
  const std::size_t slots = distinct_count - r.deduction.count();

  r.statements = stage("statements", [&] {
    return build_statements(projections, cands, r.deduction);
  });
  for (std::size_t c = 0; c < cands.size(); ++c) {
    if (!r.deduction.is_deduced[c]) r.undeduced.push_back(static_cast<CandidateIndex>(c));
  }
  r.scores = stage("score", [&] {
    return score_candidates(r.statements, r.undeduced, options.weight_mode,
                            options.exact_score_limit);
  });
  r.selection = stage("select", [&] { return select_rows(r.scores, slots); });

  r.notes.push_back("slots = distinct_count - deduced; candidates are distinct rows, "
                    "duplicate multiplicities are not reconstructed");
  std::size_t clamped = 0;
  for (const auto& s : r.statements) clamped += s.required < s.demand ? 1 : 0;
  if (clamped > 0) {
    r.notes.push_back(std::to_string(clamped) +
                      " statement(s) demand more rows than their undeduced candidates; "
                      "the source data likely holds duplicate rows");
  }
  if (r.selection.clamped) {
    r.notes.push_back("requested " + std::to_string(r.selection.requested) +
                      " slots but only " + std::to_string(r.undeduced.size()) +
                      " undeduced candidates exist");
  }
  if (r.selection.tie.ambiguous()) {
    r.notes.push_back(std::to_string(r.selection.tie.tied_total) +
                      "-way score tie at the selection boundary, broken lexicographically");
  }
  return r;
}

void evaluate_against(PipelineResult& result, const TruthSet& truth) {
  const CandidateSet& cands = *result.candidates;
  TruthEvaluation eval;
  eval.labels = classify(cands, result.deduction, result.selection, truth);
  eval.metrics = compute_metrics(cands, result.deduction, result.selection, truth);
  result.truth = std::move(eval);
}

nlohmann::json report_to_json(const PipelineResult& r) {
  using nlohmann::json;
  const CandidateSet& cands = *r.candidates;
  const auto& g = *r.graph;
  json doc;
  doc["version"] = kReportVersion;
  doc["config"] = {
      {"distinct_count", r.distinct_count},
      {"weight_mode", weight_mode_name(r.options.weight_mode)},
      {"candidate_cap", r.options.candidate_cap},
      {"exact_score_limit", r.options.exact_score_limit},
  };
  doc["dimension"] = g.dimension();
  doc["columns"] = g.column_names();
  auto domains = json::array();
  for (const auto& d : g.domains()) domains.push_back(d.tokens());
  doc["domains"] = std::move(domains);
  doc["row_count"] = r.row_count;

  doc["candidate_count"] = cands.size();
  auto rows = json::array();
  for (std::size_t c = 0; c < cands.size(); ++c) rows.push_back(cands.row(static_cast<CandidateIndex>(c)));
  doc["candidates"] = std::move(rows);

  doc["deduced_count"] = r.deduction.count();
  auto deduced = json::array();
  for (std::size_t k = 0; k < r.deduction.deduced.size(); ++k) {
    deduced.push_back({{"index", r.deduction.deduced[k]},
                       {"rule", r.deduction.attribution[k] == DeductionRule::kSingle ? "single"
                                                                                     : "double"}});
  }
  doc["deduced"] = std::move(deduced);

  auto statements = json::array();
  for (const auto& s : r.statements) {
    const auto& e = g.edges()[s.edge];
    statements.push_back({
        {"edge",
         {{"column_a", e.col_a},
          {"token_a", g.domain(e.col_a).token(e.val_a)},
          {"column_b", e.col_b},
          {"token_b", g.domain(e.col_b).token(e.val_b)},
          {"multiplicity", e.multiplicity}}},
        {"demand", s.demand},
        {"required", s.required},
        {"members", s.members},
    });
  }
  doc["statements"] = std::move(statements);

  auto scores = json::array();
  for (std::size_t k = 0; k < r.scores.universe.size(); ++k) {
    json entry = {{"index", r.scores.universe[k]}, {"score", r.scores.score[k]}};
    if (r.scores.exact) entry["exact"] = (*r.scores.exact)[k].str();
    scores.push_back(std::move(entry));
  }
  doc["scores"] = std::move(scores);

  const auto& sel = r.selection;
  json tie = {{"tied_total", sel.tie.tied_total},
              {"tied_chosen", sel.tie.tied_chosen},
              {"boundary_score", sel.tie.boundary_score},
              {"ambiguous", sel.tie.ambiguous()}};
  if (!sel.tie.boundary_exact.empty()) tie["boundary_exact"] = sel.tie.boundary_exact;
  doc["selection"] = {{"chosen", sel.chosen},
                      {"requested", sel.requested},
                      {"slots", sel.slots},
                      {"clamped", sel.clamped},
                      {"tie", std::move(tie)}};

  if (r.truth) {
    auto labels = json::array();
    for (auto l : r.truth->labels) labels.push_back(confusion_name(l));
    doc["labels"] = std::move(labels);
    const auto& m = r.truth->metrics;
    doc["metrics"] = {
        {"truth_count", m.truth_count},
        {"candidate_count", m.candidate_count},
        {"deduced_count", m.deduced_count},
        {"deduced_correct", m.deduced_correct},
        {"slots", m.slots},
        {"actual_selected_correct", m.actual_selected_correct},
        {"full_recovery", m.full_recovery},
        {"proportion_recovered", m.proportion_recovered},
        {"expected_random_additional", m.expected_random_additional},
        {"expected_random", m.expected_random},
    };
  }
  doc["notes"] = r.notes;
  return doc;
}

ReportView report_from_json(const nlohmann::json& doc) {
  ReportView v;
  try {
    if (doc.at("version").get<int>() != kReportVersion) {
      throw Error(ErrorCode::kParseError, "unsupported report version");
    }
    v.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& d : doc.at("domains")) {
      v.domains.emplace_back(d.get<std::vector<std::string>>());
    }
    v.candidates = doc.at("candidates").get<std::vector<ValueVector>>();
    const std::size_t n = v.candidates.size();
    for (const auto& row : v.candidates) {
      if (row.size() != v.columns.size()) {
        throw Error(ErrorCode::kParseError, "report candidate has the wrong width");
      }
    }
    auto index = [n](const nlohmann::json& j) {
      const auto c = j.get<CandidateIndex>();
      if (c >= n) throw Error(ErrorCode::kParseError, "report index out of range");
      return c;
    };
    v.deduced.assign(n, false);
    for (const auto& d : doc.at("deduced")) v.deduced[index(d.at("index"))] = true;
    for (std::size_t c = 0; c < n; ++c) {
      if (!v.deduced[c]) v.undeduced.push_back(static_cast<CandidateIndex>(c));
    }
    v.scores.assign(n, 0.0);
    for (const auto& s : doc.at("scores")) v.scores[index(s.at("index"))] = s.at("score").get<double>();
    EdgeId next = 0;
    for (const auto& s : doc.at("statements")) {
      EdgeStatement st;
      st.edge = next++;
      st.demand = s.at("demand").get<std::uint64_t>();
      st.required = s.at("required").get<std::uint64_t>();
      for (const auto& m : s.at("members")) st.members.push_back(index(m));
      v.statements.push_back(std::move(st));
    }
    for (const auto& c : doc.at("selection").at("chosen")) v.chosen.push_back(index(c));
    v.slots = doc.at("selection").at("slots").get<std::size_t>();
    if (doc.contains("labels")) {
      std::vector<Confusion> labels;
      for (const auto& l : doc.at("labels")) {
        const auto name = l.get<std::string>();
        bool found = false;
        for (auto c : {Confusion::kDeduced, Confusion::kTruePositive, Confusion::kFalsePositive,
                       Confusion::kFalseNegative, Confusion::kTrueNegative}) {
          if (confusion_name(c) == name) {
            labels.push_back(c);
            found = true;
          }
        }
        if (!found) throw Error(ErrorCode::kParseError, "unknown label '" + name + "'");
      }
      if (labels.size() != n) throw Error(ErrorCode::kParseError, "label count mismatch");
      v.labels = std::move(labels);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("report: ") + e.what());
  }
  return v;
}

std::string serialize_report(const PipelineResult& result) {
  return canonical_dump(report_to_json(result));
}

}  // namespace bireco

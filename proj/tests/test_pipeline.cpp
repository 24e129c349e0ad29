#include <doctest.h>

#include "bireco/error.hpp"
#include "bireco/io.hpp"
#include "bireco/pipeline.hpp"
#include "test_support.hpp"

using namespace bireco;

TEST_CASE("XOR parity pipeline") {
  const auto r = run_pipeline(project(bireco::testing::xor_even()), 4);
  CHECK(r.candidates->size() == 8);
  CHECK(r.deduction.count() == 0);
  CHECK(r.selection.chosen == std::vector<CandidateIndex>{0, 1, 2, 3});
  CHECK(r.selection.tie.tied_total == 8);
  const auto doc = report_to_json(r);
  CHECK(doc["selection"]["tie"]["tied_total"] == 8);
  CHECK(doc["selection"]["tie"]["ambiguous"] == true);
  CHECK(doc["selection"]["tie"]["boundary_exact"] == "3/2");
  bool noted = false;
  for (const auto& n : r.notes) noted = noted || n.find("8-way") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("all-distinct column: everything deduced, nothing selected") {
  const auto data = bireco::testing::three_rows();
  auto r = run_pipeline(project(data), 3);
  CHECK(r.deduction.count() == 3);
  CHECK(r.selection.slots == 0);
  CHECK(r.selection.chosen.empty());
  TruthSet truth(data.rows().begin(), data.rows().end());
  evaluate_against(r, truth);
  CHECK(r.truth->metrics.full_recovery);
  std::set<ValueVector> recovered;
  for (auto c : r.deduction.deduced) recovered.insert(r.candidates->row(c));
  CHECK(recovered == truth);
}

TEST_CASE("distinct count below the deduced count") {
  try {
    run_pipeline(project(bireco::testing::three_rows()), 2);
    FAIL("expected ContradictoryDistinctCount");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kContradictoryDistinctCount);
    CHECK(std::string(e.what()).find("select") != std::string::npos);
  }
  CHECK_THROWS_AS(run_pipeline(project(bireco::testing::three_rows()), 0), Error);
}

TEST_CASE("stage errors carry the stage name") {
  PipelineOptions opts;
  opts.candidate_cap = 2;
  try {
    run_pipeline(project(bireco::testing::xor_even()), 4, opts);
    FAIL("expected CandidateExplosion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCandidateExplosion);
    CHECK(std::string(e.what()).rfind("enumerate", 0) == 0);
  }
}

TEST_CASE("reports round-trip through their view") {
  const auto data = bireco::testing::ints(
      3, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {2, 2, 0}, {2, 0, 2}});
  auto r = run_pipeline(project(data), 6);
  evaluate_against(r, TruthSet(data.rows().begin(), data.rows().end()));
  const auto text = serialize_report(r);
  CHECK(serialize_report(r) == text);
  const auto view = report_from_json(nlohmann::json::parse(text));
  CHECK(view.candidates == r.candidates->rows());
  CHECK(view.chosen == r.selection.chosen);
  CHECK(view.slots == r.selection.slots);
  CHECK(view.statements.size() == r.statements.size());
  CHECK(view.labels == r.truth->labels);
  for (std::size_t k = 0; k < r.scores.universe.size(); ++k) {
    CHECK(view.scores[r.scores.universe[k]] == r.scores.score[k]);
  }
  auto bad = nlohmann::json::parse(text);
  bad["version"] = 99;
  CHECK_THROWS_AS(report_from_json(bad), Error);
}

TEST_CASE("weight mode names") {
  CHECK(parse_weight_mode("ratio") == WeightMode::kRatio);
  CHECK(weight_mode_name(WeightMode::kReciprocal) == "reciprocal");
  CHECK_THROWS_AS(parse_weight_mode("bogus"), Error);
}

#include <random>

#include <doctest.h>

#include "bireco/deduction.hpp"
#include "test_support.hpp"

using namespace bireco;

namespace {

CandidateSet candidates_of(const Dataset& d) { return enumerate_candidates(build_graph(project(d))); }

}  // namespace

TEST_CASE("XOR parity: nothing is deduced") {
  const auto cands = candidates_of(bireco::testing::xor_even());
  for (VertexId v = 0; v < cands.graph().vertex_count(); ++v) CHECK(cands.with_vertex(v).size() == 4);
  for (EdgeId e = 0; e < cands.graph().edge_count(); ++e) CHECK(cands.with_edge(e).size() == 2);
  CHECK(deduce_singles(cands).count() == 0);
  CHECK(deduce_doubles(cands).count() == 0);
}

TEST_CASE("single candidate is deduced") {
  const auto cands = candidates_of(Dataset::from_rows(3, {{"a", "b", "c"}}));
  const auto s = deduce_singles(cands);
  const auto d = deduce_doubles(cands);
  CHECK(s.deduced == std::vector<CandidateIndex>{0});
  CHECK(d.deduced == std::vector<CandidateIndex>{0});
  CHECK(d.rule_of(0) == DeductionRule::kSingle);
}

TEST_CASE("three rows with a unique first column are all singles") {
  const auto cands = candidates_of(bireco::testing::three_rows());
  REQUIRE(cands.size() == 3);
  const auto s = deduce_singles(cands);
  CHECK(s.count() == 3);
  for (auto coverage : s.edge_coverage) CHECK(coverage == 1);
}

TEST_CASE("doubles match a brute-force unique-edge oracle") {
  std::mt19937_64 rng(17);
  std::size_t double_only = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto cands = candidates_of(bireco::testing::random_dataset(rng, 4, 12, 4));
    const auto singles = deduce_singles(cands);
    const auto doubles = deduce_doubles(cands);
    std::vector<bool> expected(cands.size(), false);
    for (EdgeId e = 0; e < cands.graph().edge_count(); ++e) {
      if (cands.with_edge(e).size() == 1) expected[cands.with_edge(e)[0]] = true;
    }
    for (CandidateIndex c = 0; c < cands.size(); ++c) {
      CHECK(doubles.is_deduced[c] == expected[c]);
      if (!doubles.is_deduced[c]) continue;
      const auto rule = singles.is_deduced[c] ? DeductionRule::kSingle : DeductionRule::kDouble;
      CHECK(doubles.rule_of(c) == rule);
      double_only += rule == DeductionRule::kDouble ? 1 : 0;
    }
  }
  CHECK(double_only > 0);
}

TEST_CASE("singles are a subset of doubles and doubles are sound") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = bireco::testing::random_dataset(rng, 3 + trial % 4, 5 + trial % 40, 3 + trial % 10);
    const auto cands = candidates_of(d);
    const auto truth = distinct_rows(d);
    const auto singles = deduce_singles(cands);
    const auto doubles = deduce_doubles(cands);
    for (CandidateIndex c : singles.deduced) CHECK(doubles.is_deduced[c]);
    for (CandidateIndex c : doubles.deduced) CHECK(truth.count(cands.row(c)) == 1);
    CHECK(doubles.attribution.size() == doubles.deduced.size());
    std::vector<std::uint64_t> coverage(cands.graph().edge_count(), 0);
    for (CandidateIndex c : doubles.deduced) {
      for (EdgeId e : cands.edges_of(c)) ++coverage[e];
    }
    CHECK(coverage == doubles.edge_coverage);
  }
}

#include <random>
#include <set>

#include <doctest.h>

#include "bireco/error.hpp"
#include "bireco/graph.hpp"
#include "test_support.hpp"

using namespace bireco;
using bireco::testing::ints;

TEST_CASE("XOR parity graph is complete tripartite K(2,2,2)") {
  const auto g = build_graph(project(bireco::testing::xor_even()));
  CHECK(g.vertex_count() == 6);
  CHECK(g.edge_count() == 12);
  for (const auto& e : g.edges()) {
    CHECK(e.multiplicity == 1);
    CHECK(e.col_a < e.col_b);
  }
}

TEST_CASE("single row and duplicate rows") {
  const auto one = build_graph(project(Dataset::from_rows(3, {{"a", "b", "c"}})));
  CHECK(one.vertex_count() == 3);
  CHECK(one.edge_count() == 3);
  const auto dup = build_graph(project(ints(2, {{0, 0}, {0, 0}})));
  CHECK(dup.vertex_count() == 2);
  REQUIRE(dup.edge_count() == 1);
  CHECK(dup.edges()[0].multiplicity == 2);
  CHECK(enumerate_candidates(one).size() == 1);
}

TEST_CASE("build_graph rejects invalid projections") {
  std::vector<ColumnDomain> domains{ColumnDomain({"0"}), ColumnDomain({"0"}), ColumnDomain({"0"})};
  const ProjectionSet bad({"a", "b", "c"}, domains, {PairProjection{0, 1, {{{0, 0}, 1}}}});
  try {
    build_graph(bad);
    FAIL("expected InvalidProjections");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidProjections);
  }
}

TEST_CASE("XOR parity candidates: all 8 of {0,1}^3 with 4 phantoms") {
  const auto data = bireco::testing::xor_even();
  const auto cands = enumerate_candidates(build_graph(project(data)));
  REQUIRE(cands.size() == 8);
  const auto rows = cands.rows();
  for (std::size_t k = 0; k < 8; ++k) {
    const ValueVector expected{std::to_string(k >> 2 & 1), std::to_string(k >> 1 & 1),
                               std::to_string(k & 1)};
    CHECK(rows[k] == expected);
  }
  std::size_t phantoms = 0;
  const auto truth = distinct_rows(data);
  for (const auto& r : rows) phantoms += truth.count(r) ? 0 : 1;
  CHECK(phantoms == 4);
}

TEST_CASE("inverted indexes match the candidate list") {
  std::mt19937_64 rng(3);
  const auto data = bireco::testing::random_dataset(rng, 4, 30, 4);
  const auto cands = enumerate_candidates(build_graph(project(data)));
  const auto& g = cands.graph();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::set<CandidateIndex> expected;
    for (CandidateIndex c = 0; c < cands.size(); ++c) {
      for (EdgeId x : cands.edges_of(c)) {
        if (x == e) expected.insert(c);
      }
    }
    const auto got = cands.with_edge(e);
    CHECK(std::set<CandidateIndex>(got.begin(), got.end()) == expected);
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::size_t expected = 0;
    for (CandidateIndex c = 0; c < cands.size(); ++c) {
      for (std::size_t d = 0; d < g.dimension(); ++d) {
        if (g.vertex_id(d, cands.codes(c)[d]) == v) ++expected;
      }
    }
    CHECK(cands.with_vertex(v).size() == expected);
  }
}

TEST_CASE("enumeration matches brute force over the full product") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 3 + trial % 3;
    const auto data = bireco::testing::random_dataset(rng, dim, 6 + trial % 10, 3);
    const auto g = build_graph(project(data));
    // Brute force: every code vector, keep those whose pairs are all edges.
    std::vector<std::vector<Code>> expected;
    std::vector<Code> cur(dim, 0);
    while (true) {
      bool ok = true;
      for (std::size_t i = 0; i < dim && ok; ++i) {
        for (std::size_t j = i + 1; j < dim && ok; ++j) ok = g.adjacent(i, cur[i], j, cur[j]);
      }
      if (ok) expected.push_back(cur);
      std::size_t d = dim;
      while (d > 0 && ++cur[d - 1] == g.part_size(d - 1)) cur[--d] = 0;
      if (d == 0) break;
    }
    const auto cands = enumerate_candidates(g);
    REQUIRE(cands.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      const auto got = cands.codes(static_cast<CandidateIndex>(k));
      CHECK(std::vector<Code>(got.begin(), got.end()) == expected[k]);
    }
  }
}

TEST_CASE("enumeration is deterministic across thread counts") {
  std::mt19937_64 rng(9);
  const auto data = bireco::testing::random_dataset(rng, 5, 60, 4);
  auto g = std::make_shared<const ReconstructionGraph>(build_graph(project(data)));
  const auto a = enumerate_candidates(g, {10'000'000, 1});
  const auto b = enumerate_candidates(g, {10'000'000, 4});
  REQUIRE(a.size() == b.size());
  CHECK(a.rows() == b.rows());
}

TEST_CASE("candidate cap raises CandidateExplosion with the partial count") {
  const auto g = build_graph(project(bireco::testing::xor_even()));
  try {
    enumerate_candidates(g, {5, 1});
    FAIL("expected CandidateExplosion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCandidateExplosion);
    CHECK(e.detail() == 6);
  }
}

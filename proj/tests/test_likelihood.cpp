#include <bit>
#include <numeric>
#include <random>

#include <doctest.h>

#include "bireco/deduction.hpp"
#include "bireco/error.hpp"
#include "bireco/likelihood.hpp"
#include "test_support.hpp"

using namespace bireco;
using bireco::testing::worked_example_statements;

namespace {

enum { A, B, C, D, E, F, G, H };

std::vector<CandidateIndex> range(CandidateIndex n) {
  std::vector<CandidateIndex> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Subset-mask enumeration over a universe of at most 20 elements.
struct Brute {
  std::uint64_t solutions = 0;
  std::vector<std::uint64_t> appearances;
};

Brute brute_cover(const std::vector<EdgeStatement>& stmts, std::size_t u, std::size_t s) {
  Brute out;
  out.appearances.assign(u, 0);
  for (std::uint32_t mask = 0; mask < (1u << u); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != s) continue;
    bool ok = true;
    for (const auto& st : stmts) {
      std::uint64_t hits = 0;
      for (auto m : st.members) hits += (mask >> m) & 1u;
      ok = ok && hits >= st.required;
    }
    if (!ok) continue;
    ++out.solutions;
    for (std::size_t k = 0; k < u; ++k) out.appearances[k] += (mask >> k) & 1u;
  }
  return out;
}

struct Xor {
  CandidateSet cands;
  DeductionResult ded;
  std::vector<EdgeStatement> stmts;
};

Xor xor_instance() {
  const auto proj = project(bireco::testing::xor_even());
  auto cands = enumerate_candidates(build_graph(proj));
  auto ded = deduce_doubles(cands);
  auto stmts = build_statements(proj, cands, ded);
  return {std::move(cands), std::move(ded), std::move(stmts)};
}

}  // namespace

TEST_CASE("worked example reciprocal scores are exact") {
  const auto stmts = worked_example_statements();
  const auto universe = range(8);
  const auto sc = score_candidates(stmts, universe, WeightMode::kReciprocal);
  REQUIRE(sc.exact.has_value());
  const auto& x = *sc.exact;
  CHECK(x[H] == Rational(5, 6));
  CHECK(x[F] == Rational(2, 3));
  CHECK(x[D] == Rational(1, 2));
  CHECK(x[A] == Rational(1, 3));
  CHECK(x[E] == Rational(1, 3));
  CHECK(x[G] == Rational(1, 3));
  CHECK(x[B] == 0);
  CHECK(x[C] == 0);
  CHECK(sc.score[H] == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("worked example selection and oracle") {
  const auto stmts = worked_example_statements();
  const auto universe = range(8);
  const auto sel = select_rows(score_candidates(stmts, universe, WeightMode::kReciprocal), 3);
  CHECK(sel.chosen == std::vector<CandidateIndex>{H, F, D});
  CHECK_FALSE(sel.tie.ambiguous());

  const auto freq = exact_cover_frequencies(stmts, universe, 3);
  CHECK(freq.solutions == 22);
  CHECK(freq.appearances == std::vector<std::uint64_t>{6, 4, 4, 10, 8, 11, 8, 15});
  const auto brute = brute_cover(stmts, 8, 3);
  CHECK(brute.solutions == freq.solutions);
  CHECK(brute.appearances == freq.appearances);

  // The oracle ranks the same three rows in the same order.
  std::vector<CandidateIndex> order = universe;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return freq.appearances[a] > freq.appearances[b];
  });
  CHECK(std::vector<CandidateIndex>(order.begin(), order.begin() + 3) == sel.chosen);
}

TEST_CASE("ratio weights scale by the required count") {
  auto stmts = worked_example_statements();
  stmts[0].demand = stmts[0].required = 2;
  const auto sc = score_candidates(stmts, range(8), WeightMode::kRatio);
  CHECK((*sc.exact)[A] == Rational(2, 3));
  CHECK((*sc.exact)[H] == Rational(2, 3) + Rational(1, 2));
  const auto rec = score_candidates(stmts, range(8), WeightMode::kReciprocal);
  CHECK((*rec.exact)[A] == Rational(1, 3));
}

TEST_CASE("double-only scoring agrees with exact scoring") {
  const auto stmts = worked_example_statements();
  const auto exact = score_candidates(stmts, range(8), WeightMode::kReciprocal);
  const auto approx = score_candidates(stmts, range(8), WeightMode::kReciprocal, 0);
  CHECK_FALSE(approx.exact.has_value());
  for (std::size_t k = 0; k < 8; ++k) CHECK(approx.score[k] == doctest::Approx(exact.score[k]));
  CHECK(select_rows(approx, 3).chosen == select_rows(exact, 3).chosen);
}

TEST_CASE("empty statements score zero; members outside the universe are rejected") {
  const auto sc = score_candidates({}, range(4), WeightMode::kReciprocal);
  for (double s : sc.score) CHECK(s == 0.0);
  const std::vector<CandidateIndex> small{0, 1};
  CHECK_THROWS_AS(score_candidates(worked_example_statements(), small, WeightMode::kReciprocal),
                  Error);
}

TEST_CASE("selection edge cases") {
  const auto sc = score_candidates(worked_example_statements(), range(8), WeightMode::kReciprocal);
  const auto none = select_rows(sc, 0);
  CHECK(none.chosen.empty());
  CHECK_FALSE(none.clamped);
  const auto all = select_rows(sc, 12);
  CHECK(all.clamped);
  CHECK(all.requested == 12);
  CHECK(all.slots == 8);
  CHECK(all.chosen.size() == 8);
  // A, E, G tie at 1/3; with s = 4 the first of them wins.
  const auto four = select_rows(sc, 4);
  CHECK(four.chosen.back() == CandidateIndex{A});
  CHECK(four.tie.tied_total == 3);
  CHECK(four.tie.tied_chosen == 1);
  CHECK(four.tie.boundary_exact == "1/3");
  CHECK(four.tie.ambiguous());
}

TEST_CASE("XOR parity statements and total tie") {
  const auto x = xor_instance();
  REQUIRE(x.stmts.size() == 12);
  for (const auto& s : x.stmts) {
    CHECK(s.demand == 1);
    CHECK(s.required == 1);
    CHECK(s.members.size() == 2);
  }
  const auto universe = range(8);
  const auto sc = score_candidates(x.stmts, universe, WeightMode::kReciprocal);
  for (const auto& v : *sc.exact) CHECK(v == Rational(3, 2));
  const auto sel = select_rows(sc, 4);
  CHECK(sel.chosen == std::vector<CandidateIndex>{0, 1, 2, 3});
  CHECK(sel.tie.tied_total == 8);
  CHECK(sel.tie.tied_chosen == 4);

  const auto freq = exact_cover_frequencies(x.stmts, universe, 4);
  const auto brute = brute_cover(x.stmts, 8, 4);
  CHECK(freq.solutions == brute.solutions);
  CHECK(freq.appearances == brute.appearances);
  CHECK(freq.solutions == 2);
  for (double p : freq.proportion) CHECK(p == 0.5);
}

TEST_CASE("unconstrained oracle counts every subset") {
  const auto freq = exact_cover_frequencies({}, range(4), 2);
  CHECK(freq.solutions == 6);
  for (double p : freq.proportion) CHECK(p == 0.5);
}

TEST_CASE("oracle errors") {
  try {
    exact_cover_frequencies({}, range(30), 15, {1000, 1});
    FAIL("expected OracleTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOracleTooLarge);
    CHECK(e.detail() == binomial_saturating(30, 15));
  }
  CHECK_THROWS_AS(exact_cover_frequencies({}, range(3), 4), Error);
  try {
    exact_cover_frequencies(worked_example_statements(), range(8), 1);
    FAIL("expected InfeasibleStatements");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasibleStatements);
  }
}

TEST_CASE("oracle is independent of thread count and matches brute force") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<EdgeStatement> stmts;
    const std::size_t u = 10;
    for (int k = 0; k < 4; ++k) {
      EdgeStatement st;
      for (CandidateIndex c = 0; c < u; ++c) {
        if (rng() % 3 == 0) st.members.push_back(c);
      }
      if (st.members.empty()) continue;
      st.demand = st.required = 1;
      stmts.push_back(st);
    }
    const std::size_t s = 4;
    const auto brute = brute_cover(stmts, u, s);
    if (brute.solutions == 0) continue;
    const auto one = exact_cover_frequencies(stmts, range(u), s, {10'000'000, 1});
    const auto three = exact_cover_frequencies(stmts, range(u), s, {10'000'000, 3});
    CHECK(one.solutions == brute.solutions);
    CHECK(one.appearances == brute.appearances);
    CHECK(three.appearances == one.appearances);
  }
}

TEST_CASE("statements net out deduced rows") {
  const auto proj = project(bireco::testing::three_rows());
  const auto cands = enumerate_candidates(build_graph(proj));
  const auto ded = deduce_doubles(cands);
  CHECK(build_statements(proj, cands, ded).empty());
  CHECK(build_statements(cands, ded).empty());
}

TEST_CASE("duplicate rows raise demand above the member count") {
  // Three copies of (0,0,0) plus the rest of the XOR set: the (0,0) edges
  // carry multiplicity 3 but lie in only two candidates.
  const auto data = bireco::testing::ints(
      3, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const auto proj = project(data);
  const auto cands = enumerate_candidates(build_graph(proj));
  const auto ded = deduce_doubles(cands);
  const auto stmts = build_statements(proj, cands, ded);
  bool clamped = false;
  for (const auto& s : stmts) {
    CHECK(s.required == std::min<std::uint64_t>(s.demand, s.members.size()));
    clamped = clamped || s.required < s.demand;
  }
  CHECK(clamped);
}

TEST_CASE("edges in no candidate are inconsistent") {
  // Consistent marginals but no triangle: a-x, b-y; a-p, b-q; x-q, y-p.
  std::vector<ColumnDomain> domains{ColumnDomain({"a", "b"}), ColumnDomain({"x", "y"}),
                                    ColumnDomain({"p", "q"})};
  const ProjectionSet proj({"c0", "c1", "c2"}, domains,
                           {PairProjection{0, 1, {{{0, 0}, 1}, {{1, 1}, 1}}},
                            PairProjection{0, 2, {{{0, 0}, 1}, {{1, 1}, 1}}},
                            PairProjection{1, 2, {{{0, 1}, 1}, {{1, 0}, 1}}}});
  const auto cands = enumerate_candidates(build_graph(proj));
  CHECK(cands.size() == 0);
  try {
    build_statements(proj, cands, deduce_doubles(cands));
    FAIL("expected InconsistentInstance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInconsistentInstance);
  }
}

TEST_CASE("score additivity and argmax stability") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<EdgeStatement> stmts;
    for (int k = 0; k < 6; ++k) {
      EdgeStatement st;
      for (CandidateIndex c = 0; c < 12; ++c) {
        if (rng() % 4 == 0) st.members.push_back(c);
      }
      if (st.members.empty()) continue;
      st.demand = st.required = 1 + rng() % st.members.size();
      stmts.push_back(st);
    }
    if (stmts.empty()) continue;
    for (auto mode : {WeightMode::kReciprocal, WeightMode::kRatio}) {
      const auto full = score_candidates(stmts, range(12), mode);
      const std::vector<EdgeStatement> head(stmts.begin(), stmts.end() - 1);
      const auto part = score_candidates(head, range(12), mode);
      const auto& last = stmts.back();
      const Rational w(mode == WeightMode::kRatio ? static_cast<long long>(last.required) : 1,
                       static_cast<long long>(last.members.size()));
      for (CandidateIndex c = 0; c < 12; ++c) {
        const bool member = std::find(last.members.begin(), last.members.end(), c) != last.members.end();
        CHECK((*full.exact)[c] - (*part.exact)[c] == (member ? w : Rational(0)));
      }
      ScoredCandidates scaled = full;
      for (auto& v : *scaled.exact) v *= 7;
      for (auto& v : scaled.score) v *= 7.0;
      CHECK(select_rows(scaled, 5).chosen == select_rows(full, 5).chosen);
    }
  }
}

#include <algorithm>
#include <random>

#include <doctest.h>

#include "bireco/lookup.hpp"
#include "test_support.hpp"

using namespace bireco;

namespace {

std::vector<ValueVector> sorted(std::vector<ValueVector> rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

// Fraction of all I^N sequences whose entries are pairwise distinct.
Rational enumerate_distinct(std::uint64_t interval, std::uint64_t n) {
  std::uint64_t total = 1;
  for (std::uint64_t k = 0; k < n; ++k) total *= interval;
  std::uint64_t good = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::uint64_t> seq;
    std::uint64_t x = code;
    for (std::uint64_t k = 0; k < n; ++k) {
      seq.push_back(x % interval);
      x /= interval;
    }
    std::sort(seq.begin(), seq.end());
    if (std::adjacent_find(seq.begin(), seq.end()) == seq.end()) ++good;
  }
  return Rational(good, total);
}

}  // namespace

TEST_CASE("lookup reconstructs from an all-distinct first column") {
  const auto d = bireco::testing::three_rows();
  const auto out = lookup_reconstruct(project(d));
  REQUIRE(out.reconstructed());
  CHECK(out.anchor == 0u);
  CHECK(sorted(out.rows) == sorted(d.rows()));
}

TEST_CASE("lookup picks the lowest all-distinct column") {
  const auto d = bireco::testing::ints(3, {{0, 1, 7}, {0, 2, 8}, {1, 3, 9}});
  const auto out = lookup_reconstruct(project(d));
  REQUIRE(out.reconstructed());
  CHECK(out.anchor == 1u);
  CHECK(sorted(out.rows) == sorted(d.rows()));
}

TEST_CASE("lookup is infeasible on XOR parity data") {
  const auto out = lookup_reconstruct(project(bireco::testing::xor_even()));
  CHECK_FALSE(out.reconstructed());
  CHECK_FALSE(out.anchor.has_value());
  CHECK(out.rows.empty());
}

TEST_CASE("column_distinct_probability closed forms") {
  CHECK(column_distinct_probability(10, 12, ProbabilityMode::kAsPublished) == 0.0);
  CHECK(column_distinct_probability(10, 12, ProbabilityMode::kCorrected) == 0.0);
  CHECK(column_distinct_probability_exact(2, 2, ProbabilityMode::kAsPublished) == Rational(1, 4));
  CHECK(column_distinct_probability_exact(2, 2, ProbabilityMode::kCorrected) == Rational(1, 2));
  CHECK(column_distinct_probability(2, 2, ProbabilityMode::kCorrected) == 0.5);
  CHECK(column_distinct_probability(1, 1, ProbabilityMode::kCorrected) == 1.0);
}

TEST_CASE("corrected probability matches exhaustive enumeration") {
  for (std::uint64_t i = 1; i <= 6; ++i) {
    for (std::uint64_t n = 1; n <= 4; ++n) {
      CAPTURE(i);
      CAPTURE(n);
      CHECK(column_distinct_probability_exact(i, n, ProbabilityMode::kCorrected) ==
            enumerate_distinct(i, n));
    }
  }
}

TEST_CASE("published form differs from the corrected one by N!") {
  for (std::uint64_t i = 1; i <= 12; ++i) {
    for (std::uint64_t n = 1; n <= i; ++n) {
      Rational factorial = 1;
      for (std::uint64_t k = 2; k <= n; ++k) factorial *= k;
      CHECK(column_distinct_probability_exact(i, n, ProbabilityMode::kAsPublished) * factorial ==
            column_distinct_probability_exact(i, n, ProbabilityMode::kCorrected));
    }
  }
}

TEST_CASE("log-space branch agrees with exact values near the switch-over") {
  for (std::uint64_t n : {2u, 5u, 20u}) {
    // 257 uses lgamma; compare against a direct product.
    double p = 1.0;
    for (std::uint64_t k = 0; k < n; ++k) p *= (257.0 - k) / 257.0;
    CHECK(column_distinct_probability(257, n, ProbabilityMode::kCorrected) ==
          doctest::Approx(p).epsilon(1e-10));
  }
  CHECK(column_distinct_probability(1'000'000, 2000, ProbabilityMode::kCorrected) > 0.0);
}

TEST_CASE("lookup_failure_probability") {
  const std::vector<std::uint64_t> tens(6, 10);
  CHECK(lookup_failure_probability(tens, 12, ProbabilityMode::kCorrected) == 1.0);
  const std::vector<std::uint64_t> one{5};
  CHECK(lookup_failure_probability(one, 3, ProbabilityMode::kCorrected) ==
        doctest::Approx(1.0 - column_distinct_probability(5, 3, ProbabilityMode::kCorrected)));
  const std::vector<std::uint64_t> twos{2, 2};
  CHECK(lookup_failure_probability(twos, 2, ProbabilityMode::kCorrected) == 0.25);

  // All 16 two-column datasets of 2 rows over {0,1}: failure means both
  // columns hold a duplicate.
  int failures = 0;
  for (int code = 0; code < 16; ++code) {
    const bool col0_dup = (code & 1) == ((code >> 1) & 1);
    const bool col1_dup = ((code >> 2) & 1) == ((code >> 3) & 1);
    failures += col0_dup && col1_dup ? 1 : 0;
  }
  CHECK(failures == 4);
}

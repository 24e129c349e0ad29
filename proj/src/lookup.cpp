#include "bireco/lookup.hpp"

#include <cmath>
#include <map>

#include "bireco/error.hpp"

namespace bireco {

namespace {

constexpr std::uint64_t kExactIntervalLimit = 256;

}  // namespace

LookupOutcome lookup_reconstruct(const ProjectionSet& projections) {
  LookupOutcome outcome;
  const std::size_t dim = projections.dimension();
  const std::uint64_t n = projections.row_count();
  if (dim < 2 || n == 0) return outcome;

  std::optional<std::size_t> anchor;
  for (std::size_t c = 0; c < dim && !anchor; ++c) {
    if (projections.domain(c).size() != n) continue;
    // Every token of an n-token column with n rows has multiplicity 1.
    anchor = c;
  }
  if (!anchor) return outcome;

  const std::size_t a = *anchor;
  std::vector<ValueVector> rows(n, ValueVector(dim));
  for (Code v = 0; v < n; ++v) rows[v][a] = projections.domain(a).token(v);
  for (std::size_t other = 0; other < dim; ++other) {
    if (other == a) continue;
    const bool anchor_first = a < other;
    const PairProjection* pair =
        anchor_first ? projections.find_pair(a, other) : projections.find_pair(other, a);
    if (pair == nullptr) {
      throw Error(ErrorCode::kInvalidProjections, "projection set is missing a pair");
    }
    for (const auto& [key, count] : pair->counts) {
      const Code anchor_value = anchor_first ? key.first : key.second;
      const Code other_value = anchor_first ? key.second : key.first;
      rows[anchor_value][other] = projections.domain(other).token(other_value);
    }
  }

  outcome.status = LookupOutcome::Status::kReconstructed;
  outcome.anchor = a;
  outcome.rows = std::move(rows);
  return outcome;
}

Rational column_distinct_probability_exact(std::uint64_t interval, std::uint64_t n,
                                           ProbabilityMode mode) {
  if (n > interval) return Rational(0);
  using boost::multiprecision::cpp_int;
  cpp_int numerator = 1;
  for (std::uint64_t k = 0; k < n; ++k) numerator *= cpp_int(interval - k);
  if (mode == ProbabilityMode::kAsPublished) {
    cpp_int n_factorial = 1;
    for (std::uint64_t k = 2; k <= n; ++k) n_factorial *= k;
    numerator /= n_factorial;
  }
  cpp_int denominator = boost::multiprecision::pow(cpp_int(interval), static_cast<unsigned>(n));
  return Rational(numerator, denominator);
}

double column_distinct_probability(std::uint64_t interval, std::uint64_t n,
                                   ProbabilityMode mode) {
  if (n > interval) return 0.0;
  if (interval <= kExactIntervalLimit) {
    return column_distinct_probability_exact(interval, n, mode).convert_to<double>();
  }
  const double i = static_cast<double>(interval);
  const double m = static_cast<double>(n);
  double log_p = std::lgamma(i + 1.0) - std::lgamma(i - m + 1.0) - m * std::log(i);
  if (mode == ProbabilityMode::kAsPublished) log_p -= std::lgamma(m + 1.0);
  return std::exp(log_p);
}

double lookup_failure_probability(std::span<const std::uint64_t> intervals,
                                  std::uint64_t n, ProbabilityMode mode) {
  double product = 1.0;
  for (std::uint64_t interval : intervals) {
    product *= 1.0 - column_distinct_probability(interval, n, mode);
  }
  return product;
}

}  // namespace bireco

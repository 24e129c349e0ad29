#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bireco/model.hpp"

namespace bireco {

using Rational = boost::multiprecision::cpp_rational;

struct LookupOutcome {
  enum class Status { kReconstructed, kInfeasible };

  Status status = Status::kInfeasible;
  std::optional<std::size_t> anchor;
  std::vector<ValueVector> rows;

  bool reconstructed() const { return status == Status::kReconstructed; }
};

// Rebuilds the dataset from the projections pairing an all-distinct column
// with every other column. Infeasible when no column has n distinct tokens.
LookupOutcome lookup_reconstruct(const ProjectionSet& projections);

// kAsPublished evaluates C(I,N) / I^N. kCorrected evaluates the probability
// that N iid uniform draws over I values are pairwise distinct,
// I! / ((I-N)! I^N).
enum class ProbabilityMode { kAsPublished, kCorrected };

// Exact value; intended for small I and N.
Rational column_distinct_probability_exact(std::uint64_t interval, std::uint64_t n,
                                           ProbabilityMode mode);

// Exact rationals when I <= 256, log-space doubles beyond.
double column_distinct_probability(std::uint64_t interval, std::uint64_t n,
                                   ProbabilityMode mode);

// Probability that no column is all-distinct, treating columns as independent.
double lookup_failure_probability(std::span<const std::uint64_t> intervals,
                                  std::uint64_t n, ProbabilityMode mode);

}  // namespace bireco

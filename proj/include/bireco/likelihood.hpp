#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bireco/deduction.hpp"
#include "bireco/graph.hpp"
#include "bireco/lookup.hpp"

namespace bireco {

// "At least `required` of `members` are original rows."
struct EdgeStatement {
  EdgeId edge = 0;
  // Projection multiplicity minus coverage by deduced rows.
  std::uint64_t demand = 0;
  // demand clamped to members.size(); differs from demand only when the
  // source data held duplicate rows.
  std::uint64_t required = 0;
  std::vector<CandidateIndex> members;  // undeduced candidates holding the edge
};

// One statement per edge whose multiplicity is not yet covered by deduced
// rows, sorted by edge. Throws Error(kInconsistentInstance) when an edge of
// the projections lies in no candidate at all.
std::vector<EdgeStatement> build_statements(const ProjectionSet& projections,
                                            const CandidateSet& candidates,
                                            const DeductionResult& deduction);
// Same, reading multiplicities from the candidate set's graph.
std::vector<EdgeStatement> build_statements(const CandidateSet& candidates,
                                            const DeductionResult& deduction);

enum class WeightMode { kReciprocal, kRatio };

struct ScoredCandidates {
  WeightMode mode = WeightMode::kReciprocal;
  std::vector<CandidateIndex> universe;  // ascending
  std::vector<double> score;             // parallel to universe
  // Exact running totals, kept when the statement count is within the limit.
  std::optional<std::vector<Rational>> exact;

  std::optional<std::size_t> position_of(CandidateIndex c) const;
};

inline constexpr std::size_t kExactScoreStatementLimit = 10'000;

// Adds w = 1/|S| (reciprocal) or x/|S| (ratio) to every member of every
// statement. Members must lie in `universe`.
ScoredCandidates score_candidates(std::span<const EdgeStatement> statements,
                                  std::span<const CandidateIndex> universe,
                                  WeightMode mode,
                                  std::size_t exact_limit = kExactScoreStatementLimit);

struct TieReport {
  std::size_t tied_total = 0;   // universe members scoring the boundary score
  std::size_t tied_chosen = 0;  // of which were chosen
  double boundary_score = 0.0;
  std::string boundary_exact;   // empty when exact scores are unavailable

  bool ambiguous() const { return tied_total > tied_chosen; }
};

struct Selection {
  std::vector<CandidateIndex> chosen;  // in rank order
  std::size_t requested = 0;
  std::size_t slots = 0;
  bool clamped = false;
  TieReport tie;
};

// Top `slots` by score; equal scores rank by candidate index, which is the
// lexicographic row order.
Selection select_rows(const ScoredCandidates& scores, std::size_t slots);

struct OracleOptions {
  std::uint64_t cap = 10'000'000;
  unsigned threads = 1;
};

struct CoverFrequencies {
  std::uint64_t solutions = 0;
  std::vector<CandidateIndex> universe;
  std::vector<std::uint64_t> appearances;  // parallel to universe
  std::vector<double> proportion;          // appearances / solutions
};

// Enumerates every size-`slots` subset of `universe` meeting all statements.
// Throws Error(kOracleTooLarge) when C(|universe|, slots) exceeds the cap and
// Error(kInfeasibleStatements) when nothing qualifies.
CoverFrequencies exact_cover_frequencies(std::span<const EdgeStatement> statements,
                                         std::span<const CandidateIndex> universe,
                                         std::size_t slots,
                                         const OracleOptions& options = {});

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k);

}  // namespace bireco

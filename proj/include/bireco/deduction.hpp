#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bireco/graph.hpp"

namespace bireco {

enum class DeductionRule { kSingle, kDouble };

// Candidates proven to be original rows.
struct DeductionResult {
  std::vector<CandidateIndex> deduced;     // ascending
  std::vector<DeductionRule> attribution;  // parallel to `deduced`
  std::vector<bool> is_deduced;            // per candidate
  // Per graph edge: number of deduced candidates containing it. Each deduced
  // distinct row counts once regardless of duplicates in the source data.
  std::vector<std::uint64_t> edge_coverage;

  std::size_t count() const { return deduced.size(); }
  std::optional<DeductionRule> rule_of(CandidateIndex c) const;
};

// Candidates holding a vertex that no other candidate holds.
DeductionResult deduce_singles(const CandidateSet& candidates);

// Candidates holding an edge that no other candidate holds. Attribution is
// kSingle when a unique vertex also applies.
DeductionResult deduce_doubles(const CandidateSet& candidates);

}  // namespace bireco

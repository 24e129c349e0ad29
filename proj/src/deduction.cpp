#include "bireco/deduction.hpp"

#include <algorithm>

namespace bireco {

namespace {

bool has_unique_vertex(const CandidateSet& candidates, CandidateIndex c) {
  const auto& graph = candidates.graph();
  const auto row = candidates.codes(c);
  for (std::size_t d = 0; d < row.size(); ++d) {
    if (candidates.with_vertex(graph.vertex_id(d, row[d])).size() == 1) return true;
  }
  return false;
}

bool has_unique_edge(const CandidateSet& candidates, CandidateIndex c) {
  for (EdgeId e : candidates.edges_of(c)) {
    if (candidates.with_edge(e).size() == 1) return true;
  }
  return false;
}

DeductionResult finish(const CandidateSet& candidates, std::vector<CandidateIndex> deduced,
                       std::vector<DeductionRule> attribution) {
  DeductionResult result;
  result.deduced = std::move(deduced);
  result.attribution = std::move(attribution);
  result.is_deduced.assign(candidates.size(), false);
  result.edge_coverage.assign(candidates.graph().edge_count(), 0);
  for (CandidateIndex c : result.deduced) {
    result.is_deduced[c] = true;
    for (EdgeId e : candidates.edges_of(c)) ++result.edge_coverage[e];
  }
  return result;
}

}  // namespace

std::optional<DeductionRule> DeductionResult::rule_of(CandidateIndex c) const {
  auto it = std::lower_bound(deduced.begin(), deduced.end(), c);
  if (it == deduced.end() || *it != c) return std::nullopt;
  return attribution[static_cast<std::size_t>(it - deduced.begin())];
}

DeductionResult deduce_singles(const CandidateSet& candidates) {
  std::vector<CandidateIndex> deduced;
  std::vector<DeductionRule> rules;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto c = static_cast<CandidateIndex>(k);
    if (has_unique_vertex(candidates, c)) {
      deduced.push_back(c);
      rules.push_back(DeductionRule::kSingle);
    }
  }
  return finish(candidates, std::move(deduced), std::move(rules));
}

DeductionResult deduce_doubles(const CandidateSet& candidates) {
  std::vector<CandidateIndex> deduced;
  std::vector<DeductionRule> rules;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto c = static_cast<CandidateIndex>(k);
    // A unique vertex makes every edge through it unique as well.
    if (!has_unique_edge(candidates, c)) continue;
    deduced.push_back(c);
    rules.push_back(has_unique_vertex(candidates, c) ? DeductionRule::kSingle
                                                     : DeductionRule::kDouble);
  }
  return finish(candidates, std::move(deduced), std::move(rules));
}

}  // namespace bireco

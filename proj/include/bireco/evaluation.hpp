#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "bireco/deduction.hpp"
#include "bireco/graph.hpp"
#include "bireco/likelihood.hpp"

namespace bireco {

enum class Confusion {
  kDeduced,
  kTruePositive,
  kFalsePositive,
  kFalseNegative,
  kTrueNegative,
};

std::string_view confusion_name(Confusion label);

using TruthSet = std::set<ValueVector>;

// Per candidate: is it one of the truth rows?
std::vector<bool> truth_flags(const CandidateSet& candidates, const TruthSet& truth);

// Throws Error(kInvalidSelection) when a selected index is deduced or out of
// range.
std::vector<Confusion> classify(std::size_t candidate_count,
                                std::span<const CandidateIndex> deduced,
                                std::span<const CandidateIndex> selected,
                                const std::vector<bool>& is_true);
std::vector<Confusion> classify(const CandidateSet& candidates,
                                const DeductionResult& deduction,
                                const Selection& selection, const TruthSet& truth);

struct ReconstructionMetrics {
  std::size_t truth_count = 0;
  std::size_t candidate_count = 0;
  std::size_t deduced_count = 0;
  std::size_t deduced_correct = 0;
  std::size_t slots = 0;
  std::size_t actual_selected_correct = 0;
  bool full_recovery = false;
  double proportion_recovered = 0.0;
  // Expected correct picks when the slots are filled uniformly at random from
  // the undeduced candidates: slots * t / u.
  double expected_random_additional = 0.0;
  double expected_random = 0.0;
};

ReconstructionMetrics compute_metrics(std::size_t candidate_count,
                                      std::span<const CandidateIndex> deduced,
                                      std::span<const CandidateIndex> selected,
                                      std::size_t slots,
                                      const std::vector<bool>& is_true,
                                      std::size_t truth_count);
ReconstructionMetrics compute_metrics(const CandidateSet& candidates,
                                      const DeductionResult& deduction,
                                      const Selection& selection, const TruthSet& truth);

}  // namespace bireco

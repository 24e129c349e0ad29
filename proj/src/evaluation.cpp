#include "bireco/evaluation.hpp"

#include "bireco/error.hpp"

namespace bireco {

std::string_view confusion_name(Confusion label) {
  switch (label) {
    case Confusion::kDeduced: return "deduced";
    case Confusion::kTruePositive: return "true_positive";
    case Confusion::kFalsePositive: return "false_positive";
    case Confusion::kFalseNegative: return "false_negative";
    case Confusion::kTrueNegative: return "true_negative";
  }
  return "unknown";
}

std::vector<bool> truth_flags(const CandidateSet& candidates, const TruthSet& truth) {
  std::vector<bool> flags(candidates.size(), false);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    flags[c] = truth.count(candidates.row(static_cast<CandidateIndex>(c))) > 0;
  }
  return flags;
}

std::vector<Confusion> classify(std::size_t candidate_count,
                                std::span<const CandidateIndex> deduced,
                                std::span<const CandidateIndex> selected,
                                const std::vector<bool>& is_true) {
  std::vector<Confusion> labels(candidate_count, Confusion::kTrueNegative);
  std::vector<bool> taken(candidate_count, false);
  for (CandidateIndex c : deduced) {
    if (c >= candidate_count) throw Error(ErrorCode::kInvalidSelection, "deduced index out of range");
    labels[c] = Confusion::kDeduced;
    taken[c] = true;
  }
  for (CandidateIndex c : selected) {
    if (c >= candidate_count) throw Error(ErrorCode::kInvalidSelection, "selected index out of range");
    if (taken[c]) {
      throw Error(ErrorCode::kInvalidSelection,
                  "candidate " + std::to_string(c) + " is both deduced and selected", c);
    }
    labels[c] = is_true[c] ? Confusion::kTruePositive : Confusion::kFalsePositive;
    taken[c] = true;
  }
  for (std::size_t c = 0; c < candidate_count; ++c) {
    if (!taken[c]) labels[c] = is_true[c] ? Confusion::kFalseNegative : Confusion::kTrueNegative;
  }
  return labels;
}

std::vector<Confusion> classify(const CandidateSet& candidates,
                                const DeductionResult& deduction,
                                const Selection& selection, const TruthSet& truth) {
  return classify(candidates.size(), deduction.deduced, selection.chosen,
                  truth_flags(candidates, truth));
}

ReconstructionMetrics compute_metrics(std::size_t candidate_count,
                                      std::span<const CandidateIndex> deduced,
                                      std::span<const CandidateIndex> selected,
                                      std::size_t slots,
                                      const std::vector<bool>& is_true,
                                      std::size_t truth_count) {
  ReconstructionMetrics m;
  m.truth_count = truth_count;
  m.candidate_count = candidate_count;
  m.deduced_count = deduced.size();
  m.slots = slots;

  std::vector<bool> is_deduced(candidate_count, false);
  for (CandidateIndex c : deduced) {
    is_deduced[c] = true;
    if (is_true[c]) ++m.deduced_correct;
  }
  for (CandidateIndex c : selected) {
    if (is_true[c]) ++m.actual_selected_correct;
  }
  std::size_t undeduced = 0;
  std::size_t undeduced_true = 0;
  for (std::size_t c = 0; c < candidate_count; ++c) {
    if (is_deduced[c]) continue;
    ++undeduced;
    if (is_true[c]) ++undeduced_true;
  }
  if (undeduced > 0) {
    m.expected_random_additional = static_cast<double>(slots) *
                                   static_cast<double>(undeduced_true) /
                                   static_cast<double>(undeduced);
  }
  if (truth_count > 0) {
    const double t = static_cast<double>(truth_count);
    m.proportion_recovered =
        static_cast<double>(m.deduced_correct + m.actual_selected_correct) / t;
    m.expected_random =
        (static_cast<double>(m.deduced_count) + m.expected_random_additional) / t;
  }
  m.full_recovery = truth_count > 0 && m.deduced_correct + m.actual_selected_correct == truth_count;
  return m;
}

ReconstructionMetrics compute_metrics(const CandidateSet& candidates,
                                      const DeductionResult& deduction,
                                      const Selection& selection, const TruthSet& truth) {
  return compute_metrics(candidates.size(), deduction.deduced, selection.chosen,
                         selection.slots, truth_flags(candidates, truth), truth.size());
}

}  // namespace bireco

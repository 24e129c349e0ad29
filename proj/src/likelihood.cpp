#include "bireco/likelihood.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <thread>

#include "bireco/error.hpp"

namespace bireco {

namespace {

std::vector<EdgeStatement> statements_from(
    const CandidateSet& candidates, const DeductionResult& deduction,
    const std::vector<std::uint64_t>& multiplicity) {
  const auto& graph = candidates.graph();
  std::vector<EdgeStatement> out;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const auto holders = candidates.with_edge(e);
    if (holders.empty()) {
      const auto& edge = graph.edges()[e];
      throw Error(ErrorCode::kInconsistentInstance,
                  "edge (" + std::to_string(edge.col_a) + ":" +
                      graph.domain(edge.col_a).token(edge.val_a) + ", " +
                      std::to_string(edge.col_b) + ":" +
                      graph.domain(edge.col_b).token(edge.val_b) +
                      ") lies in no candidate row",
                  e);
    }
    const std::uint64_t covered = deduction.edge_coverage[e];
    if (multiplicity[e] <= covered) continue;
    EdgeStatement stmt;
    stmt.edge = e;
    stmt.demand = multiplicity[e] - covered;
    for (CandidateIndex c : holders) {
      if (!deduction.is_deduced[c]) stmt.members.push_back(c);
    }
    stmt.required = std::min<std::uint64_t>(stmt.demand, stmt.members.size());
    if (stmt.required == 0) continue;
    out.push_back(std::move(stmt));
  }
  return out;
}

}  // namespace

std::vector<EdgeStatement> build_statements(const ProjectionSet& projections,
                                            const CandidateSet& candidates,
                                            const DeductionResult& deduction) {
  const auto& graph = candidates.graph();
  std::vector<std::uint64_t> multiplicity(graph.edge_count(), 0);
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edges()[e];
    const PairProjection* pair = projections.find_pair(edge.col_a, edge.col_b);
    if (pair == nullptr) {
      throw Error(ErrorCode::kInconsistentInstance, "projection pair missing for edge");
    }
    auto it = pair->counts.find({edge.val_a, edge.val_b});
    if (it == pair->counts.end()) {
      throw Error(ErrorCode::kInconsistentInstance,
                  "graph edge missing from projections");
    }
    multiplicity[e] = it->second;
  }
  return statements_from(candidates, deduction, multiplicity);
}

std::vector<EdgeStatement> build_statements(const CandidateSet& candidates,
                                            const DeductionResult& deduction) {
  const auto& graph = candidates.graph();
  std::vector<std::uint64_t> multiplicity(graph.edge_count());
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    multiplicity[e] = graph.edges()[e].multiplicity;
  }
  return statements_from(candidates, deduction, multiplicity);
}

std::optional<std::size_t> ScoredCandidates::position_of(CandidateIndex c) const {
  auto it = std::lower_bound(universe.begin(), universe.end(), c);
  if (it == universe.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - universe.begin());
}

ScoredCandidates score_candidates(std::span<const EdgeStatement> statements,
                                  std::span<const CandidateIndex> universe,
                                  WeightMode mode, std::size_t exact_limit) {
  ScoredCandidates out;
  out.mode = mode;
  out.universe.assign(universe.begin(), universe.end());
  std::sort(out.universe.begin(), out.universe.end());
  out.universe.erase(std::unique(out.universe.begin(), out.universe.end()),
                     out.universe.end());
  out.score.assign(out.universe.size(), 0.0);
  const bool exact = statements.size() <= exact_limit;
  if (exact) out.exact.emplace(out.universe.size(), Rational(0));

  for (const auto& stmt : statements) {
    if (stmt.members.empty()) continue;
    const auto size = static_cast<std::int64_t>(stmt.members.size());
    const auto numerator =
        mode == WeightMode::kRatio ? static_cast<std::int64_t>(stmt.required) : 1;
    const Rational weight(numerator, size);
    const double weight_d = static_cast<double>(numerator) / static_cast<double>(size);
    for (CandidateIndex c : stmt.members) {
      const auto pos = out.position_of(c);
      if (!pos) {
        throw Error(ErrorCode::kInvalidOptions,
                    "statement member " + std::to_string(c) + " is outside the universe");
      }
      if (exact) {
        (*out.exact)[*pos] += weight;
      } else {
        out.score[*pos] += weight_d;
      }
    }
  }
  if (exact) {
    for (std::size_t k = 0; k < out.score.size(); ++k) {
      out.score[k] = (*out.exact)[k].convert_to<double>();
    }
  }
  return out;
}

Selection select_rows(const ScoredCandidates& scores, std::size_t slots) {
  const std::size_t u = scores.universe.size();
  Selection sel;
  sel.requested = slots;
  sel.slots = std::min(slots, u);
  sel.clamped = slots > u;

  auto higher = [&](std::size_t a, std::size_t b) {
    if (scores.exact) {
      const auto& x = (*scores.exact)[a];
      const auto& y = (*scores.exact)[b];
      if (x != y) return x > y;
    } else if (scores.score[a] != scores.score[b]) {
      return scores.score[a] > scores.score[b];
    }
    return scores.universe[a] < scores.universe[b];
  };
  auto same = [&](std::size_t a, std::size_t b) {
    return scores.exact ? (*scores.exact)[a] == (*scores.exact)[b]
                        : scores.score[a] == scores.score[b];
  };

  std::vector<std::size_t> rank(u);
  std::iota(rank.begin(), rank.end(), 0);
  std::sort(rank.begin(), rank.end(), higher);
  for (std::size_t k = 0; k < sel.slots; ++k) sel.chosen.push_back(scores.universe[rank[k]]);

  if (sel.slots > 0) {
    const std::size_t boundary = rank[sel.slots - 1];
    sel.tie.boundary_score = scores.score[boundary];
    if (scores.exact) sel.tie.boundary_exact = (*scores.exact)[boundary].str();
    for (std::size_t k = 0; k < u; ++k) {
      if (!same(rank[k], boundary)) continue;
      ++sel.tie.tied_total;
      if (k < sel.slots) ++sel.tie.tied_chosen;
    }
  }
  return sel;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

namespace {

// Lexicographic enumeration of k-subsets, tracking how many chosen members
// each statement has.
class CoverSearch {
 public:
  CoverSearch(const std::vector<std::vector<std::size_t>>& memberships,
              const std::vector<std::uint64_t>& required, std::size_t slots)
      : memberships_(memberships),
        required_(required),
        hits_(required.size(), 0),
        slots_(slots),
        appearances_(memberships.size(), 0) {
    for (auto r : required_) unsatisfied_ += r > 0 ? 1 : 0;
  }

  void run_root(std::size_t first) {
    if (slots_ == 0) {
      recurse(0, 0);
      return;
    }
    chosen_.push_back(first);
    apply(first);
    recurse(first + 1, slots_ - 1);
    undo(first);
    chosen_.pop_back();
  }

  std::uint64_t solutions() const { return solutions_; }
  const std::vector<std::uint64_t>& appearances() const { return appearances_; }

 private:
  void apply(std::size_t p) {
    for (std::size_t s : memberships_[p]) {
      if (++hits_[s] == required_[s]) --unsatisfied_;
    }
  }
  void undo(std::size_t p) {
    for (std::size_t s : memberships_[p]) {
      if (hits_[s]-- == required_[s]) ++unsatisfied_;
    }
  }

  void recurse(std::size_t start, std::size_t remaining) {
    if (remaining == 0) {
      if (unsatisfied_ == 0) {
        ++solutions_;
        for (std::size_t p : chosen_) ++appearances_[p];
      }
      return;
    }
    const std::size_t u = memberships_.size();
    for (std::size_t p = start; p + remaining <= u; ++p) {
      chosen_.push_back(p);
      apply(p);
      recurse(p + 1, remaining - 1);
      undo(p);
      chosen_.pop_back();
    }
  }

  const std::vector<std::vector<std::size_t>>& memberships_;
  const std::vector<std::uint64_t>& required_;
  std::vector<std::uint64_t> hits_;
  std::size_t slots_;
  std::size_t unsatisfied_ = 0;
  std::vector<std::size_t> chosen_;
  std::uint64_t solutions_ = 0;
  std::vector<std::uint64_t> appearances_;
};

}  // namespace

CoverFrequencies exact_cover_frequencies(std::span<const EdgeStatement> statements,
                                         std::span<const CandidateIndex> universe,
                                         std::size_t slots,
                                         const OracleOptions& options) {
  CoverFrequencies out;
  out.universe.assign(universe.begin(), universe.end());
  std::sort(out.universe.begin(), out.universe.end());
  out.universe.erase(std::unique(out.universe.begin(), out.universe.end()),
                     out.universe.end());
  const std::size_t u = out.universe.size();

  const std::uint64_t subsets = binomial_saturating(u, slots);
  if (slots > u || subsets > options.cap) {
    throw Error(ErrorCode::kOracleTooLarge,
                "C(" + std::to_string(u) + "," + std::to_string(slots) +
                    ") subsets exceed the oracle cap of " + std::to_string(options.cap),
                subsets);
  }

  std::vector<std::vector<std::size_t>> memberships(u);
  std::vector<std::uint64_t> required;
  required.reserve(statements.size());
  for (std::size_t s = 0; s < statements.size(); ++s) {
    required.push_back(statements[s].required);
    for (CandidateIndex c : statements[s].members) {
      auto it = std::lower_bound(out.universe.begin(), out.universe.end(), c);
      if (it == out.universe.end() || *it != c) {
        throw Error(ErrorCode::kInvalidOptions,
                    "statement member " + std::to_string(c) + " is outside the universe");
      }
      memberships[static_cast<std::size_t>(it - out.universe.begin())].push_back(s);
    }
  }

  const std::size_t roots = slots == 0 ? 1 : u - slots + 1;
  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(roots)));
  std::vector<std::uint64_t> solutions(threads, 0);
  std::vector<std::vector<std::uint64_t>> appearances(threads);
  auto work = [&](unsigned worker) {
    CoverSearch search(memberships, required, slots);
    for (std::size_t first = worker; first < roots; first += threads) search.run_root(first);
    solutions[worker] = search.solutions();
    appearances[worker] = search.appearances();
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  out.appearances.assign(u, 0);
  for (unsigned t = 0; t < threads; ++t) {
    out.solutions += solutions[t];
    for (std::size_t k = 0; k < u; ++k) out.appearances[k] += appearances[t][k];
  }
  if (out.solutions == 0) {
    throw Error(ErrorCode::kInfeasibleStatements,
                "no subset of size " + std::to_string(slots) + " satisfies every statement");
  }
  out.proportion.resize(u);
  for (std::size_t k = 0; k < u; ++k) {
    out.proportion[k] =
        static_cast<double>(out.appearances[k]) / static_cast<double>(out.solutions);
  }
  return out;
}

}  // namespace bireco

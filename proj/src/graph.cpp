#include "bireco/graph.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <thread>

#include "bireco/error.hpp"

namespace bireco {

namespace {

std::uint64_t pack(Code a, Code b) {
  return (std::uint64_t{a} << 32) | std::uint64_t{b};
}

}  // namespace

std::size_t ReconstructionGraph::pair_index(std::size_t i, std::size_t j) const {
  const std::size_t d = dimension();
  return i * d - i * (i + 1) / 2 + (j - i - 1);
}

std::optional<EdgeId> ReconstructionGraph::edge_id(std::size_t col_a, Code val_a,
                                                   std::size_t col_b,
                                                   Code val_b) const {
  if (col_a == col_b) return std::nullopt;
  if (col_a > col_b) {
    std::swap(col_a, col_b);
    std::swap(val_a, val_b);
  }
  const auto& lookup = edge_lookup_[pair_index(col_a, col_b)];
  auto it = lookup.find(pack(val_a, val_b));
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

std::span<const std::uint64_t> ReconstructionGraph::neighbours(std::size_t from,
                                                               Code value,
                                                               std::size_t to) const {
  const auto& table = adjacency_[from * dimension() + to];
  const std::size_t w = words(to);
  return {table.data() + std::size_t{value} * w, w};
}

ReconstructionGraph build_graph(const ProjectionSet& projections) {
  const auto validation = validate_projections(projections);
  if (!validation.ok()) {
    throw Error(ErrorCode::kInvalidProjections,
                "invalid projections: " + validation.violations.front().message,
                validation.violations.size());
  }

  ReconstructionGraph g;
  const std::size_t dim = projections.dimension();
  g.column_names_ = projections.column_names();
  g.domains_ = projections.domains();
  g.vertex_offset_.assign(dim + 1, 0);
  for (std::size_t d = 0; d < dim; ++d) {
    g.vertex_offset_[d + 1] = g.vertex_offset_[d] + g.domains_[d].size();
  }

  g.adjacency_.resize(dim * dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if (a != b) g.adjacency_[a * dim + b].assign(g.part_size(a) * g.words(b), 0);
    }
  }

  g.edge_lookup_.resize(dim * (dim - 1) / 2);
  // Pairs are sorted by (i, j) and point maps by (val_a, val_b), so edges come
  // out in EdgeId order.
  for (const auto& pair : projections.pairs()) {
    auto& lookup = g.edge_lookup_[g.pair_index(pair.i, pair.j)];
    lookup.reserve(pair.counts.size());
    auto& forward = g.adjacency_[pair.i * dim + pair.j];
    auto& backward = g.adjacency_[pair.j * dim + pair.i];
    const std::size_t wj = g.words(pair.j);
    const std::size_t wi = g.words(pair.i);
    for (const auto& [key, count] : pair.counts) {
      const auto [va, vb] = key;
      lookup.emplace(pack(va, vb), static_cast<EdgeId>(g.edges_.size()));
      g.edges_.push_back({static_cast<std::uint32_t>(pair.i), va,
                          static_cast<std::uint32_t>(pair.j), vb, count});
      forward[std::size_t{va} * wj + vb / 64] |= std::uint64_t{1} << (vb % 64);
      backward[std::size_t{vb} * wi + va / 64] |= std::uint64_t{1} << (va % 64);
    }
  }
  return g;
}

CandidateSet::CandidateSet(std::shared_ptr<const ReconstructionGraph> graph,
                           std::vector<Code> flat_codes)
    : graph_(std::move(graph)) {
  const std::size_t dim = graph_->dimension();
  const std::size_t n = flat_codes.size() / dim;

  // Sort and dedupe rows.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row_at = [&](std::size_t r) {
    return std::span<const Code>(flat_codes.data() + r * dim, dim);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return codes_less(row_at(a), row_at(b));
  });
  codes_.reserve(flat_codes.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && !codes_less(row_at(order[k - 1]), row_at(order[k]))) continue;
    const auto r = row_at(order[k]);
    codes_.insert(codes_.end(), r.begin(), r.end());
  }
  count_ = codes_.size() / dim;
  pairs_per_row_ = dim * (dim - 1) / 2;

  candidate_edges_.resize(count_ * pairs_per_row_);
  std::vector<std::size_t> edge_degree(graph_->edge_count() + 1, 0);
  std::vector<std::size_t> vertex_degree(graph_->vertex_count() + 1, 0);
  for (std::size_t c = 0; c < count_; ++c) {
    const auto row = codes(static_cast<CandidateIndex>(c));
    std::size_t p = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      ++vertex_degree[graph_->vertex_id(i, row[i]) + 1];
      for (std::size_t j = i + 1; j < dim; ++j, ++p) {
        const auto e = graph_->edge_id(i, row[i], j, row[j]);
        if (!e) {
          throw Error(ErrorCode::kInvalidProjections,
                      "candidate contains a pair that is not an edge of the graph");
        }
        candidate_edges_[c * pairs_per_row_ + p] = *e;
        ++edge_degree[*e + 1];
      }
    }
  }

  edge_offsets_.resize(edge_degree.size());
  std::partial_sum(edge_degree.begin(), edge_degree.end(), edge_offsets_.begin());
  vertex_offsets_.resize(vertex_degree.size());
  std::partial_sum(vertex_degree.begin(), vertex_degree.end(), vertex_offsets_.begin());

  edge_members_.resize(edge_offsets_.back());
  vertex_members_.resize(vertex_offsets_.back());
  std::vector<std::size_t> edge_fill(edge_offsets_.begin(), edge_offsets_.end() - 1);
  std::vector<std::size_t> vertex_fill(vertex_offsets_.begin(), vertex_offsets_.end() - 1);
  for (std::size_t c = 0; c < count_; ++c) {
    const auto idx = static_cast<CandidateIndex>(c);
    for (EdgeId e : edges_of(idx)) edge_members_[edge_fill[e]++] = idx;
    const auto row = codes(idx);
    for (std::size_t i = 0; i < dim; ++i) {
      vertex_members_[vertex_fill[graph_->vertex_id(i, row[i])]++] = idx;
    }
  }
}

ValueVector CandidateSet::row(CandidateIndex c) const {
  const auto cs = codes(c);
  ValueVector out;
  out.reserve(cs.size());
  for (std::size_t d = 0; d < cs.size(); ++d) out.push_back(graph_->domain(d).token(cs[d]));
  return out;
}

std::vector<ValueVector> CandidateSet::rows() const {
  std::vector<ValueVector> out;
  out.reserve(count_);
  for (std::size_t c = 0; c < count_; ++c) out.push_back(row(static_cast<CandidateIndex>(c)));
  return out;
}

std::optional<CandidateIndex> CandidateSet::find(std::span<const Code> target) const {
  std::size_t lo = 0;
  std::size_t hi = count_;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (codes_less(codes(static_cast<CandidateIndex>(mid)), target)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count_ && !codes_less(target, codes(static_cast<CandidateIndex>(lo)))) {
    return static_cast<CandidateIndex>(lo);
  }
  return std::nullopt;
}

namespace {

// Ordered backtracking over parts: pick a vertex in the next part, then narrow
// the admissible vertices of every later part by adjacency.
class CliqueSearch {
 public:
  CliqueSearch(const ReconstructionGraph& graph, std::vector<std::size_t> order,
               std::atomic<std::uint64_t>& found, std::uint64_t cap,
               std::atomic<bool>& abort)
      : graph_(graph),
        order_(std::move(order)),
        found_(found),
        cap_(cap),
        abort_(abort),
        chosen_(graph.dimension(), 0) {
    const std::size_t dim = graph.dimension();
    offset_.assign(dim + 1, 0);
    for (std::size_t d = 0; d < dim; ++d) offset_[d + 1] = offset_[d] + graph.words(d);
    levels_.assign(dim, std::vector<std::uint64_t>(offset_.back(), 0));
    for (std::size_t d = 0; d < dim; ++d) {
      const std::size_t size = graph.part_size(d);
      for (std::size_t v = 0; v < size; ++v) {
        levels_[0][offset_[d] + v / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
  }

  void run_root(Code root) {
    const std::size_t p = order_[0];
    chosen_[p] = root;
    if (graph_.dimension() == 1) {
      emit();
      return;
    }
    if (narrow(0, p, root)) descend(1);
  }

  std::vector<Code> take_results() { return std::move(results_); }

 private:
  bool narrow(std::size_t depth, std::size_t part, Code value) {
    auto& src = levels_[depth];
    auto& dst = levels_[depth + 1];
    for (std::size_t m = depth + 1; m < order_.size(); ++m) {
      const std::size_t q = order_[m];
      const auto nb = graph_.neighbours(part, value, q);
      std::uint64_t any = 0;
      for (std::size_t w = 0; w < nb.size(); ++w) {
        dst[offset_[q] + w] = src[offset_[q] + w] & nb[w];
        any |= dst[offset_[q] + w];
      }
      if (any == 0) return false;
    }
    return true;
  }

  void descend(std::size_t depth) {
    const std::size_t p = order_[depth];
    const auto& bits = levels_[depth];
    for (std::size_t w = 0; w < graph_.words(p); ++w) {
      std::uint64_t word = bits[offset_[p] + w];
      while (word != 0) {
        if (abort_.load(std::memory_order_relaxed)) return;
        const auto bit = static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        const auto value = static_cast<Code>(w * 64 + bit);
        chosen_[p] = value;
        if (depth + 1 == order_.size()) {
          emit();
        } else if (narrow(depth, p, value)) {
          descend(depth + 1);
        }
      }
    }
  }

  void emit() {
    results_.insert(results_.end(), chosen_.begin(), chosen_.end());
    if (found_.fetch_add(1, std::memory_order_relaxed) + 1 > cap_) {
      abort_.store(true, std::memory_order_relaxed);
    }
  }

  const ReconstructionGraph& graph_;
  std::vector<std::size_t> order_;
  std::atomic<std::uint64_t>& found_;
  std::uint64_t cap_;
  std::atomic<bool>& abort_;
  std::vector<Code> chosen_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<std::uint64_t>> levels_;
  std::vector<Code> results_;
};

}  // namespace

CandidateSet enumerate_candidates(std::shared_ptr<const ReconstructionGraph> graph,
                                  const EnumerateOptions& options) {
  const auto& g = *graph;
  const std::size_t dim = g.dimension();
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.part_size(a) < g.part_size(b);
  });

  const std::size_t roots = g.part_size(order[0]);
  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(roots)));
  std::atomic<std::uint64_t> found{0};
  std::atomic<bool> abort{false};

  std::vector<std::vector<Code>> partial(threads);
  auto work = [&](unsigned worker) {
    CliqueSearch search(g, order, found, options.candidate_cap, abort);
    for (std::size_t v = worker; v < roots; v += threads) {
      if (abort.load(std::memory_order_relaxed)) break;
      search.run_root(static_cast<Code>(v));
    }
    partial[worker] = search.take_results();
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  if (abort.load()) {
    const std::uint64_t partial_count = found.load();
    throw Error(ErrorCode::kCandidateExplosion,
                "candidate count exceeded cap of " + std::to_string(options.candidate_cap) +
                    " (stopped after " + std::to_string(partial_count) + ")",
                partial_count);
  }

  std::vector<Code> flat;
  for (auto& p : partial) flat.insert(flat.end(), p.begin(), p.end());
  return CandidateSet(std::move(graph), std::move(flat));
}

CandidateSet enumerate_candidates(const ReconstructionGraph& graph,
                                  const EnumerateOptions& options) {
  return enumerate_candidates(std::make_shared<const ReconstructionGraph>(graph), options);
}

}  // namespace bireco

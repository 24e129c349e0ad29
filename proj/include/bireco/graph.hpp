#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bireco/model.hpp"

namespace bireco {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using CandidateIndex = std::uint32_t;

// One coordinate pair of one projection. Always stored with col_a < col_b.
struct Edge {
  std::uint32_t col_a = 0;
  Code val_a = 0;
  std::uint32_t col_b = 0;
  Code val_b = 0;
  std::uint64_t multiplicity = 0;
};

// D-partite graph: one part per column, one vertex per distinct token of that
// column, and one edge per coordinate pair of every projection. No edge ever
// joins two vertices of the same part.
class ReconstructionGraph {
 public:
  std::size_t dimension() const { return domains_.size(); }
  const std::vector<std::string>& column_names() const { return column_names_; }
  const std::vector<ColumnDomain>& domains() const { return domains_; }
  const ColumnDomain& domain(std::size_t column) const { return domains_[column]; }
  std::size_t part_size(std::size_t column) const { return domains_[column].size(); }

  std::size_t vertex_count() const { return vertex_offset_.back(); }
  VertexId vertex_id(std::size_t column, Code value) const {
    return static_cast<VertexId>(vertex_offset_[column] + value);
  }

  // Edges sorted by (col_a, col_b, val_a, val_b); the position is the EdgeId.
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Index of the pair (i, j), i < j, in row-major upper-triangular order.
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  // Either column order is accepted.
  std::optional<EdgeId> edge_id(std::size_t col_a, Code val_a, std::size_t col_b,
                                Code val_b) const;
  bool adjacent(std::size_t col_a, Code val_a, std::size_t col_b, Code val_b) const {
    return edge_id(col_a, val_a, col_b, val_b).has_value();
  }

  // Bitset (64-bit words) over part `to` of the neighbours of vertex `value`
  // in part `from`.
  std::span<const std::uint64_t> neighbours(std::size_t from, Code value,
                                            std::size_t to) const;
  std::size_t words(std::size_t column) const { return (part_size(column) + 63) / 64; }

 private:
  friend ReconstructionGraph build_graph(const ProjectionSet& projections);

  std::vector<std::string> column_names_;
  std::vector<ColumnDomain> domains_;
  std::vector<std::size_t> vertex_offset_;
  std::vector<Edge> edges_;
  std::vector<std::unordered_map<std::uint64_t, EdgeId>> edge_lookup_;
  // adjacency_[from * D + to] holds part_size(from) bitsets of words(to) words.
  std::vector<std::vector<std::uint64_t>> adjacency_;
};

// Throws Error(kInvalidProjections) when validate_projections() fails.
ReconstructionGraph build_graph(const ProjectionSet& projections);

// The D-cliques of a graph, sorted lexicographically by code (equivalently by
// each column's token order), with inverted indexes from edges and vertices
// back to the candidates containing them.
class CandidateSet {
 public:
  CandidateSet(std::shared_ptr<const ReconstructionGraph> graph,
               std::vector<Code> flat_codes);

  std::size_t size() const { return count_; }
  std::size_t dimension() const { return graph_->dimension(); }
  const ReconstructionGraph& graph() const { return *graph_; }
  std::shared_ptr<const ReconstructionGraph> graph_ptr() const { return graph_; }

  std::span<const Code> codes(CandidateIndex c) const {
    return {codes_.data() + std::size_t{c} * dimension(), dimension()};
  }
  ValueVector row(CandidateIndex c) const;
  std::vector<ValueVector> rows() const;

  // The C(D,2) edge ids of candidate c, in pair_index order.
  std::span<const EdgeId> edges_of(CandidateIndex c) const {
    return {candidate_edges_.data() + std::size_t{c} * pairs_per_row_, pairs_per_row_};
  }
  std::span<const CandidateIndex> with_edge(EdgeId e) const {
    return {edge_members_.data() + edge_offsets_[e],
            edge_offsets_[e + 1] - edge_offsets_[e]};
  }
  std::span<const CandidateIndex> with_vertex(VertexId v) const {
    return {vertex_members_.data() + vertex_offsets_[v],
            vertex_offsets_[v + 1] - vertex_offsets_[v]};
  }

  std::optional<CandidateIndex> find(std::span<const Code> codes) const;

 private:
  std::shared_ptr<const ReconstructionGraph> graph_;
  std::size_t count_ = 0;
  std::size_t pairs_per_row_ = 0;
  std::vector<Code> codes_;
  std::vector<EdgeId> candidate_edges_;
  std::vector<std::size_t> edge_offsets_;
  std::vector<CandidateIndex> edge_members_;
  std::vector<std::size_t> vertex_offsets_;
  std::vector<CandidateIndex> vertex_members_;
};

struct EnumerateOptions {
  std::uint64_t candidate_cap = 10'000'000;
  unsigned threads = 1;
};

// Every assignment of one vertex per part whose pairs are all edges.
// Throws Error(kCandidateExplosion) with the partial count as detail when the
// cap is exceeded.
CandidateSet enumerate_candidates(std::shared_ptr<const ReconstructionGraph> graph,
                                  const EnumerateOptions& options = {});
CandidateSet enumerate_candidates(const ReconstructionGraph& graph,
                                  const EnumerateOptions& options = {});

}  // namespace bireco

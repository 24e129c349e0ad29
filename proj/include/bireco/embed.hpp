#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bireco/evaluation.hpp"
#include "bireco/graph.hpp"
#include "bireco/jacobi.hpp"

namespace bireco {

enum class EmbedMethod { kPca, kMds };

std::string_view embed_method_name(EmbedMethod method);

// How a column's tokens were turned into numbers.
struct ColumnCoding {
  std::string name;
  bool numeric = true;  // false: ordinal code in token order
};

struct EmbeddingResult {
  EmbedMethod method = EmbedMethod::kPca;
  std::vector<std::array<double, 2>> coords;
  std::vector<double> eigenvalues;  // descending
  std::vector<ColumnCoding> coding;
  std::vector<std::string> warnings;
};

// Numeric matrix (row-major, rows x D) used for embedding, plus its coding.
struct CodedRows {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<ColumnCoding> coding;
};

CodedRows code_rows(const std::vector<ValueVector>& rows,
                    const std::vector<ColumnDomain>& domains,
                    const std::vector<std::string>& column_names);
CodedRows code_candidates(const CandidateSet& candidates);

EmbeddingResult pca_2d(const CodedRows& data);
EmbeddingResult pca_2d(const CandidateSet& candidates);

// Classical MDS from a matrix of squared distances via the double-centered
// Gram matrix.
EmbeddingResult classical_mds(const SquareMatrix& squared_distances);

inline constexpr std::size_t kMdsDenseLimit = 400;
inline constexpr std::size_t kMdsCandidateCap = 20'000;

// Classical MDS on Euclidean distances between rows. Up to kMdsDenseLimit rows
// the k x k Gram matrix is decomposed directly; larger inputs use the
// equivalent D x D factorisation of the same Gram matrix. Throws
// Error(kEmbeddingTooLarge) beyond kMdsCandidateCap rows.
EmbeddingResult mds_2d(const CodedRows& data);
EmbeddingResult mds_2d(const CandidateSet& candidates);

enum class ColorMode { kLikelihood, kAccuracy };

std::string_view color_mode_name(ColorMode mode);

struct PlotSpec {
  ColorMode mode = ColorMode::kLikelihood;
  std::vector<std::string> fills;           // one per point, "#rrggbb"
  std::vector<std::string> metadata;        // extra lines for the comment block
};

// Deduced points black; the rest on a grey ramp where darker means a higher
// score. `scores` is indexed by point; entries for deduced points are ignored.
PlotSpec likelihood_style(const std::vector<bool>& deduced, const std::vector<double>& scores);

// Deduced and true positives black, false positives red, false negatives
// yellow, true negatives white.
PlotSpec accuracy_style(const std::vector<Confusion>& labels);

std::string render_plot(const EmbeddingResult& embedding, const PlotSpec& spec);

}  // namespace bireco

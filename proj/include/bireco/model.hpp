#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bireco {

// A value token is an opaque discrete symbol. Integer-looking tokens are only
// ever interpreted numerically for ordering and embedding.
using Token = std::string;

// One row: position d holds the token of column d.
using ValueVector = std::vector<Token>;

// Dense per-column code of a token (its rank in the column's token order).
using Code = std::uint32_t;

// Returns true when `token` is a plain decimal number such as "12", "-0.5"
// or "1e3". Hex, inf and nan spellings are rejected.
bool is_decimal_token(const Token& token);

// Total order used for tokens of one column: numeric when every token in the
// column is decimal, bytewise otherwise. Numeric ties fall back to bytes.
enum class TokenOrder { kBytewise, kNumeric };

TokenOrder detect_token_order(std::span<const Token> tokens);
bool token_less(const Token& a, const Token& b, TokenOrder order);

// The sorted set of distinct tokens observed in one column.
class ColumnDomain {
 public:
  ColumnDomain() = default;
  explicit ColumnDomain(std::vector<Token> tokens);

  std::size_t size() const { return tokens_.size(); }
  TokenOrder order() const { return order_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  const Token& token(Code code) const { return tokens_[code]; }
  std::optional<Code> code_of(const Token& token) const;

  bool operator==(const ColumnDomain& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  std::vector<Token> tokens_;
  TokenOrder order_ = TokenOrder::kBytewise;
  std::unordered_map<Token, Code> codes_;
};

class Dataset {
 public:
  Dataset() = default;
  // Throws Error(kInvalidDataset) on ragged rows, D < 2 or a name count that
  // does not match the row width.
  Dataset(std::vector<std::string> column_names, std::vector<ValueVector> rows);

  // Column names default to "c0", "c1", ...
  static Dataset from_rows(std::size_t dimension, std::vector<ValueVector> rows);

  std::size_t dimension() const { return column_names_.size(); }
  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& column_names() const { return column_names_; }
  const std::vector<ValueVector>& rows() const { return rows_; }

 private:
  std::vector<std::string> column_names_;
  std::vector<ValueVector> rows_;
};

// Multiset of coordinate pairs for the column pair (i, j), i < j. Keys are
// codes into the owning ProjectionSet's column domains.
struct PairProjection {
  std::size_t i = 0;
  std::size_t j = 0;
  std::map<std::pair<Code, Code>, std::uint64_t> counts;

  std::uint64_t total() const;
  bool operator==(const PairProjection&) const = default;
};

// Every bivariate projection of a dataset. May hold inconsistent data when
// parsed from an external file; see validate_projections().
class ProjectionSet {
 public:
  ProjectionSet() = default;
  ProjectionSet(std::vector<std::string> column_names,
                std::vector<ColumnDomain> domains,
                std::vector<PairProjection> pairs);

  std::size_t dimension() const { return column_names_.size(); }
  const std::vector<std::string>& column_names() const { return column_names_; }
  const std::vector<ColumnDomain>& domains() const { return domains_; }
  const ColumnDomain& domain(std::size_t column) const { return domains_[column]; }
  const std::vector<PairProjection>& pairs() const { return pairs_; }

  // nullptr when the pair is absent. Accepts either argument order only as
  // i < j.
  const PairProjection* find_pair(std::size_t i, std::size_t j) const;

  // Total row count n, taken from the first pair (0 when there are none).
  std::uint64_t row_count() const;

  bool operator==(const ProjectionSet&) const = default;

 private:
  std::vector<std::string> column_names_;
  std::vector<ColumnDomain> domains_;
  std::vector<PairProjection> pairs_;
};

ProjectionSet project(const Dataset& dataset);

std::map<ValueVector, std::uint64_t> distinct_rows(const Dataset& dataset);

struct Violation {
  std::string kind;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationResult validate_projections(const ProjectionSet& projections);

// Lexicographic comparison of coded rows.
inline bool codes_less(std::span<const Code> a, std::span<const Code> b) {
  for (std::size_t d = 0; d < a.size(); ++d) {
    if (a[d] != b[d]) return a[d] < b[d];
  }
  return false;
}

}  // namespace bireco

#include "bireco/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "bireco/error.hpp"

namespace bireco {

namespace {

std::optional<double> parse_decimal(const Token& token) {
  if (token.empty()) return std::nullopt;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const char* start = first;
  if (*start == '-' || *start == '+') ++start;
  if (start == last) return std::nullopt;
  if (!std::isdigit(static_cast<unsigned char>(*start)) && *start != '.') {
    return std::nullopt;
  }
  double value = 0.0;
  // from_chars rejects a leading '+'.
  const char* parse_from = (*first == '+') ? first + 1 : first;
  auto [ptr, ec] =
      std::from_chars(parse_from, last, value, std::chars_format::general);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

bool is_decimal_token(const Token& token) {
  return parse_decimal(token).has_value();
}

TokenOrder detect_token_order(std::span<const Token> tokens) {
  if (tokens.empty()) return TokenOrder::kBytewise;
  for (const auto& t : tokens) {
    if (!is_decimal_token(t)) return TokenOrder::kBytewise;
  }
  return TokenOrder::kNumeric;
}

bool token_less(const Token& a, const Token& b, TokenOrder order) {
  if (order == TokenOrder::kNumeric) {
    const double x = *parse_decimal(a);
    const double y = *parse_decimal(b);
    if (x != y) return x < y;
  }
  return a < b;
}

ColumnDomain::ColumnDomain(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  std::sort(tokens_.begin(), tokens_.end());
  tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());
  order_ = detect_token_order(tokens_);
  if (order_ == TokenOrder::kNumeric) {
    std::stable_sort(tokens_.begin(), tokens_.end(),
                     [](const Token& a, const Token& b) {
                       return token_less(a, b, TokenOrder::kNumeric);
                     });
  }
  codes_.reserve(tokens_.size());
  for (std::size_t k = 0; k < tokens_.size(); ++k) {
    codes_.emplace(tokens_[k], static_cast<Code>(k));
  }
}

std::optional<Code> ColumnDomain::code_of(const Token& token) const {
  auto it = codes_.find(token);
  if (it == codes_.end()) return std::nullopt;
  return it->second;
}

Dataset::Dataset(std::vector<std::string> column_names, std::vector<ValueVector> rows)
    : column_names_(std::move(column_names)), rows_(std::move(rows)) {
  if (column_names_.size() < 2) {
    throw Error(ErrorCode::kInvalidDataset,
                "dataset needs at least 2 columns, got " +
                    std::to_string(column_names_.size()));
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != column_names_.size()) {
      throw Error(ErrorCode::kInvalidDataset,
                  "row " + std::to_string(r) + " has " +
                      std::to_string(rows_[r].size()) + " entries, expected " +
                      std::to_string(column_names_.size()),
                  r);
    }
  }
}

Dataset Dataset::from_rows(std::size_t dimension, std::vector<ValueVector> rows) {
  std::vector<std::string> names;
  names.reserve(dimension);
  for (std::size_t d = 0; d < dimension; ++d) names.push_back("c" + std::to_string(d));
  return Dataset(std::move(names), std::move(rows));
}

std::uint64_t PairProjection::total() const {
  std::uint64_t sum = 0;
  for (const auto& [key, count] : counts) sum += count;
  return sum;
}

ProjectionSet::ProjectionSet(std::vector<std::string> column_names,
                             std::vector<ColumnDomain> domains,
                             std::vector<PairProjection> pairs)
    : column_names_(std::move(column_names)),
      domains_(std::move(domains)),
      pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
}

const PairProjection* ProjectionSet::find_pair(std::size_t i, std::size_t j) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(i, j),
                             [](const PairProjection& p, const auto& key) {
                               return std::tie(p.i, p.j) < std::tie(key.first, key.second);
                             });
  if (it == pairs_.end() || it->i != i || it->j != j) return nullptr;
  return &*it;
}

std::uint64_t ProjectionSet::row_count() const {
  return pairs_.empty() ? 0 : pairs_.front().total();
}

ProjectionSet project(const Dataset& dataset) {
  const std::size_t dim = dataset.dimension();
  if (dim < 2) throw Error(ErrorCode::kInvalidDataset, "dataset has fewer than 2 columns");
  if (dataset.size() == 0) throw Error(ErrorCode::kInvalidDataset, "dataset has no rows");

  std::vector<ColumnDomain> domains;
  domains.reserve(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<Token> column;
    column.reserve(dataset.size());
    for (const auto& row : dataset.rows()) column.push_back(row[d]);
    domains.emplace_back(std::move(column));
  }

  std::vector<std::vector<Code>> coded(dataset.size(), std::vector<Code>(dim));
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    for (std::size_t d = 0; d < dim; ++d) {
      coded[r][d] = *domains[d].code_of(dataset.rows()[r][d]);
    }
  }

  std::vector<PairProjection> pairs;
  pairs.reserve(dim * (dim - 1) / 2);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      PairProjection pair{i, j, {}};
      for (const auto& row : coded) ++pair.counts[{row[i], row[j]}];
      pairs.push_back(std::move(pair));
    }
  }
  return ProjectionSet(dataset.column_names(), std::move(domains), std::move(pairs));
}

std::map<ValueVector, std::uint64_t> distinct_rows(const Dataset& dataset) {
  std::map<ValueVector, std::uint64_t> out;
  for (const auto& row : dataset.rows()) ++out[row];
  return out;
}

ValidationResult validate_projections(const ProjectionSet& projections) {
  ValidationResult result;
  auto report = [&](std::string kind, std::string message) {
    result.violations.push_back({std::move(kind), std::move(message)});
  };

  const std::size_t dim = projections.dimension();
  if (dim < 2) {
    report("dimension", "dimension must be at least 2");
    return result;
  }
  if (projections.domains().size() != dim) {
    report("dimension", "domain count does not match dimension");
    return result;
  }

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& pair : projections.pairs()) {
    const std::string where =
        "pair(" + std::to_string(pair.i) + "," + std::to_string(pair.j) + ")";
    if (pair.i >= pair.j || pair.j >= dim) {
      report("bad pair index", where + " is not a valid column pair");
      continue;
    }
    if (!seen.insert({pair.i, pair.j}).second) {
      report("duplicate pair", where + " appears more than once");
    }
    for (const auto& [key, count] : pair.counts) {
      if (count == 0) {
        report("zero multiplicity", where + " has a point with multiplicity 0");
      }
      if (key.first >= projections.domain(pair.i).size() ||
          key.second >= projections.domain(pair.j).size()) {
        report("unknown token", where + " refers to a token outside its column domain");
      }
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      if (!seen.count({i, j})) {
        report("missing pair", "pair(" + std::to_string(i) + "," + std::to_string(j) +
                                   ") is missing");
      }
    }
  }
  if (!result.ok()) return result;

  const std::uint64_t expected_total = projections.pairs().front().total();
  for (const auto& pair : projections.pairs()) {
    if (pair.total() != expected_total) {
      std::ostringstream msg;
      msg << "pair-total mismatch: pair(" << pair.i << "," << pair.j << ") totals "
          << pair.total() << " rows but pair(" << projections.pairs().front().i << ","
          << projections.pairs().front().j << ") totals " << expected_total;
      report("pair-total mismatch", msg.str());
    }
  }

  // Marginal counts of each column must agree across every pair containing it.
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<std::vector<std::uint64_t>> marginals;
    std::vector<std::pair<std::size_t, std::size_t>> sources;
    for (const auto& pair : projections.pairs()) {
      if (pair.i != c && pair.j != c) continue;
      std::vector<std::uint64_t> marginal(projections.domain(c).size(), 0);
      for (const auto& [key, count] : pair.counts) {
        marginal[pair.i == c ? key.first : key.second] += count;
      }
      marginals.push_back(std::move(marginal));
      sources.emplace_back(pair.i, pair.j);
    }
    for (Code v = 0; v < projections.domain(c).size(); ++v) {
      bool consistent = true;
      for (const auto& m : marginals) consistent = consistent && m[v] == marginals[0][v];
      if (!consistent) {
        std::ostringstream msg;
        msg << "marginal inconsistency at column " << c << ", token "
            << projections.domain(c).token(v) << ":";
        for (std::size_t k = 0; k < marginals.size(); ++k) {
          msg << " pair(" << sources[k].first << "," << sources[k].second
              << ")=" << marginals[k][v];
        }
        report("marginal inconsistency", msg.str());
      }
    }
  }
  return result;
}

}  // namespace bireco

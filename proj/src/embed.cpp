#include "bireco/embed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bireco/error.hpp"

namespace bireco {

std::string_view embed_method_name(EmbedMethod method) {
  return method == EmbedMethod::kPca ? "pca" : "mds";
}

std::string_view color_mode_name(ColorMode mode) {
  return mode == ColorMode::kLikelihood ? "likelihood" : "accuracy";
}

namespace {

double token_value(const Token& token) {
  double value = 0.0;
  const char* first = token.data();
  if (!token.empty() && *first == '+') ++first;
  std::from_chars(first, token.data() + token.size(), value);
  return value;
}

std::vector<double> column_means(const CodedRows& data) {
  std::vector<double> mean(data.cols, 0.0);
  if (data.rows == 0) return mean;
  for (std::size_t r = 0; r < data.rows; ++r) {
    for (std::size_t c = 0; c < data.cols; ++c) mean[c] += data.values[r * data.cols + c];
  }
  for (auto& m : mean) m /= static_cast<double>(data.rows);
  return mean;
}

std::vector<double> centered(const CodedRows& data) {
  const auto mean = column_means(data);
  std::vector<double> out(data.values);
  for (std::size_t r = 0; r < data.rows; ++r) {
    for (std::size_t c = 0; c < data.cols; ++c) out[r * data.cols + c] -= mean[c];
  }
  return out;
}

SquareMatrix cross_product(const std::vector<double>& x, std::size_t rows, std::size_t cols) {
  SquareMatrix g(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < cols; ++i) {
      const double xi = x[r * cols + i];
      for (std::size_t j = i; j < cols; ++j) g(i, j) += xi * x[r * cols + j];
    }
  }
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  }
  return g;
}

// Projects centered rows onto eigenvectors 0 and 1 of `eig`.
std::vector<std::array<double, 2>> project_rows(const std::vector<double>& xc,
                                                std::size_t rows, std::size_t cols,
                                                const SymmetricEigen& eig) {
  std::vector<std::array<double, 2>> coords(rows, {0.0, 0.0});
  for (std::size_t axis = 0; axis < 2 && axis < cols; ++axis) {
    for (std::size_t r = 0; r < rows; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < cols; ++c) s += xc[r * cols + c] * eig.vectors(c, axis);
      coords[r][axis] = s;
    }
  }
  return coords;
}

}  // namespace

CodedRows code_rows(const std::vector<ValueVector>& rows,
                    const std::vector<ColumnDomain>& domains,
                    const std::vector<std::string>& column_names) {
  CodedRows out;
  out.rows = rows.size();
  out.cols = domains.size();
  out.values.resize(out.rows * out.cols);
  for (std::size_t c = 0; c < out.cols; ++c) {
    const bool numeric = domains[c].order() == TokenOrder::kNumeric;
    out.coding.push_back({c < column_names.size() ? column_names[c] : "c" + std::to_string(c),
                          numeric});
    for (std::size_t r = 0; r < out.rows; ++r) {
      const Token& t = rows[r][c];
      double v = 0.0;
      if (numeric) {
        v = token_value(t);
      } else {
        const auto code = domains[c].code_of(t);
        v = code ? static_cast<double>(*code) : -1.0;
      }
      out.values[r * out.cols + c] = v;
    }
  }
  return out;
}

CodedRows code_candidates(const CandidateSet& candidates) {
  const auto& g = candidates.graph();
  CodedRows out;
  out.rows = candidates.size();
  out.cols = g.dimension();
  out.values.resize(out.rows * out.cols);
  for (std::size_t c = 0; c < out.cols; ++c) {
    const bool numeric = g.domain(c).order() == TokenOrder::kNumeric;
    out.coding.push_back({g.column_names()[c], numeric});
    for (std::size_t r = 0; r < out.rows; ++r) {
      const Code code = candidates.codes(static_cast<CandidateIndex>(r))[c];
      out.values[r * out.cols + c] =
          numeric ? token_value(g.domain(c).token(code)) : static_cast<double>(code);
    }
  }
  return out;
}

EmbeddingResult pca_2d(const CodedRows& data) {
  EmbeddingResult out;
  out.method = EmbedMethod::kPca;
  out.coding = data.coding;
  const auto xc = centered(data);
  SquareMatrix cov = cross_product(xc, data.rows, data.cols);
  const double scale = data.rows > 1 ? 1.0 / static_cast<double>(data.rows - 1) : 1.0;
  for (auto& x : cov.data) x *= scale;
  const auto eig = jacobi_eigen(std::move(cov));
  out.eigenvalues = eig.values;
  out.coords = project_rows(xc, data.rows, data.cols, eig);
  return out;
}

EmbeddingResult pca_2d(const CandidateSet& candidates) {
  return pca_2d(code_candidates(candidates));
}

EmbeddingResult classical_mds(const SquareMatrix& squared_distances) {
  EmbeddingResult out;
  out.method = EmbedMethod::kMds;
  const std::size_t k = squared_distances.n;
  out.coords.assign(k, {0.0, 0.0});
  if (k == 0) return out;

  std::vector<double> row_mean(k, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) row_mean[i] += squared_distances(i, j);
    grand += row_mean[i];
    row_mean[i] /= static_cast<double>(k);
  }
  grand /= static_cast<double>(k * k);
  SquareMatrix gram(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      gram(i, j) = -0.5 * (squared_distances(i, j) - row_mean[i] - row_mean[j] + grand);
    }
  }
  const auto eig = jacobi_eigen(std::move(gram));
  out.eigenvalues = eig.values;
  const double largest = eig.values.front();
  if (largest > 0 && eig.values.back() < -1e-6 * largest) {
    std::ostringstream msg;
    msg << "negative Gram eigenvalue " << eig.values.back() << " exceeds tolerance";
    out.warnings.push_back(msg.str());
  }
  for (std::size_t axis = 0; axis < 2 && axis < k; ++axis) {
    const double scale = std::sqrt(std::max(eig.values[axis], 0.0));
    for (std::size_t i = 0; i < k; ++i) out.coords[i][axis] = eig.vectors(i, axis) * scale;
  }
  return out;
}

EmbeddingResult mds_2d(const CodedRows& data) {
  if (data.rows > kMdsCandidateCap) {
    throw Error(ErrorCode::kEmbeddingTooLarge,
                "MDS is limited to " + std::to_string(kMdsCandidateCap) + " rows, got " +
                    std::to_string(data.rows),
                data.rows);
  }
  if (data.rows <= kMdsDenseLimit) {
    SquareMatrix d2(data.rows);
    for (std::size_t i = 0; i < data.rows; ++i) {
      for (std::size_t j = i + 1; j < data.rows; ++j) {
        double s = 0.0;
        for (std::size_t c = 0; c < data.cols; ++c) {
          const double diff = data.values[i * data.cols + c] - data.values[j * data.cols + c];
          s += diff * diff;
        }
        d2(i, j) = s;
        d2(j, i) = s;
      }
    }
    auto out = classical_mds(d2);
    out.coding = data.coding;
    return out;
  }

  // The Gram matrix Xc Xc^T shares its nonzero spectrum with Xc^T Xc; its
  // eigenvectors are Xc u / sqrt(lambda).
  EmbeddingResult out;
  out.method = EmbedMethod::kMds;
  out.coding = data.coding;
  const auto xc = centered(data);
  const auto eig = jacobi_eigen(cross_product(xc, data.rows, data.cols));
  out.eigenvalues = eig.values;
  out.coords = project_rows(xc, data.rows, data.cols, eig);
  for (std::size_t axis = 0; axis < 2; ++axis) {
    std::size_t largest = 0;
    for (std::size_t r = 1; r < data.rows; ++r) {
      if (std::abs(out.coords[r][axis]) >
          std::abs(out.coords[largest][axis]) * (1.0 + 1e-12)) {
        largest = r;
      }
    }
    if (out.coords[largest][axis] < 0) {
      for (auto& p : out.coords) p[axis] = -p[axis];
    }
  }
  return out;
}

EmbeddingResult mds_2d(const CandidateSet& candidates) {
  return mds_2d(code_candidates(candidates));
}

namespace {

std::string grey(int level) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", level, level, level);
  return buf;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string comment_safe(std::string line) {
  std::size_t pos = 0;
  while ((pos = line.find("--", pos)) != std::string::npos) line.replace(pos, 2, "- ");
  return line;
}

}  // namespace

PlotSpec likelihood_style(const std::vector<bool>& deduced, const std::vector<double>& scores) {
  PlotSpec spec;
  spec.mode = ColorMode::kLikelihood;
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < deduced.size(); ++k) {
    if (deduced[k]) continue;
    lo = any ? std::min(lo, scores[k]) : scores[k];
    hi = any ? std::max(hi, scores[k]) : scores[k];
    any = true;
  }
  for (std::size_t k = 0; k < deduced.size(); ++k) {
    if (deduced[k]) {
      spec.fills.push_back("#000000");
      continue;
    }
    const double t = hi > lo ? (scores[k] - lo) / (hi - lo) : 0.5;
    // 225 (lowest score) down to 50 (highest score).
    spec.fills.push_back(grey(static_cast<int>(std::lround(225.0 - 175.0 * t))));
  }
  spec.metadata.push_back("legend: black = deduced; grey ramp = score, darker is higher");
  return spec;
}

PlotSpec accuracy_style(const std::vector<Confusion>& labels) {
  PlotSpec spec;
  spec.mode = ColorMode::kAccuracy;
  for (Confusion label : labels) {
    switch (label) {
      case Confusion::kDeduced:
      case Confusion::kTruePositive: spec.fills.push_back("#000000"); break;
      case Confusion::kFalsePositive: spec.fills.push_back("#ff0000"); break;
      case Confusion::kFalseNegative: spec.fills.push_back("#ffff00"); break;
      case Confusion::kTrueNegative: spec.fills.push_back("#ffffff"); break;
    }
  }
  spec.metadata.push_back(
      "legend: black = deduced or true positive; red = false positive; "
      "yellow = false negative; white = true negative");
  return spec;
}

std::string render_plot(const EmbeddingResult& embedding, const PlotSpec& spec) {
  if (spec.fills.size() != embedding.coords.size()) {
    throw Error(ErrorCode::kInvalidOptions, "plot style count does not match point count");
  }
  constexpr double kSize = 640.0;
  constexpr double kMargin = 24.0;
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  for (std::size_t k = 0; k < embedding.coords.size(); ++k) {
    const auto [x, y] = embedding.coords[k];
    min_x = k == 0 ? x : std::min(min_x, x);
    max_x = k == 0 ? x : std::max(max_x, x);
    min_y = k == 0 ? y : std::min(min_y, y);
    max_y = k == 0 ? y : std::max(max_y, y);
  }
  // One scale for both axes keeps distances undistorted.
  const double span = std::max(max_x - min_x, max_y - min_y);
  const double scale = span > 0 ? (kSize - 2 * kMargin) / span : 0.0;
  const double cx0 = (min_x + max_x) / 2.0;
  const double cy0 = (min_y + max_y) / 2.0;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
         "height=\"640\" viewBox=\"0 0 640 640\">\n";
  svg << "<!--\n";
  svg << "method: " << embed_method_name(embedding.method) << "\n";
  svg << "color: " << color_mode_name(spec.mode) << "\n";
  svg << "points: " << embedding.coords.size() << "\n";
  for (const auto& c : embedding.coding) {
    svg << comment_safe("column " + c.name + ": " + (c.numeric ? "numeric" : "ordinal")) << "\n";
  }
  for (const auto& line : spec.metadata) svg << comment_safe(line) << "\n";
  svg << "-->\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"#f2f2f2\"/>\n";
  svg << "<g stroke=\"#404040\" stroke-width=\"0.6\">\n";
  for (std::size_t k = 0; k < embedding.coords.size(); ++k) {
    const double x = kSize / 2 + (embedding.coords[k][0] - cx0) * scale;
    const double y = kSize / 2 - (embedding.coords[k][1] - cy0) * scale;
    svg << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(y) << "\" r=\"4\" fill=\""
        << spec.fills[k] << "\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace bireco

#pragma once

#include <cstddef>
#include <vector>

namespace bireco {

// Row-major square matrix.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  explicit SquareMatrix(std::size_t size = 0) : n(size), data(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

struct SymmetricEigen {
  std::vector<double> values;  // descending
  SquareMatrix vectors;        // column k pairs with values[k]
  int sweeps = 0;
};

// Cyclic Jacobi rotations on a symmetric matrix. Each eigenvector is signed so
// its largest-magnitude component (first on ties) is positive.
SymmetricEigen jacobi_eigen(SquareMatrix matrix, int max_sweeps = 100);

}  // namespace bireco

#include "bireco/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bireco {

SymmetricEigen jacobi_eigen(SquareMatrix a, int max_sweeps) {
  const std::size_t n = a.n;
  SquareMatrix v(n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  double norm2 = 0.0;
  for (double x : a.data) norm2 += x * x;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= 1e-30 * norm2 || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double x = a(k, p);
          const double y = a(k, q);
          a(k, p) = c * x - s * y;
          a(k, q) = s * x + c * y;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double x = a(p, k);
          const double y = a(q, k);
          a(p, k) = c * x - s * y;
          a(q, k) = s * x + c * y;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double x = v(k, p);
          const double y = v(k, q);
          v(k, p) = c * x - s * y;
          v(k, q) = s * x + c * y;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = SquareMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src);
    std::size_t largest = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(v(i, src)) > std::abs(v(largest, src)) * (1.0 + 1e-12)) largest = i;
    }
    const double sign = v(largest, src) < 0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
  }
  return out;
}

}  // namespace bireco

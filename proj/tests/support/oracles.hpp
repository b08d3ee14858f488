#pragma once

// Reference computations used only by tests. Each one is written without
// reusing the library code path it checks.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracles {

// X_1..X_N from explicit innovations by the moving-average representation
// X_n = sum_{k=1}^n c_{n-k} Y_k, with c computed by its own loop.
inline std::vector<double> ma_path(const std::vector<double>& a, const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> c(n, 0.0);
  if (n > 0) c[0] = 1.0;
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t k = 1; k <= a.size() && k <= m; ++k) c[m] += a[k - 1] * c[m - k];
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k <= m; ++k) x[m] += c[m - k] * y[k];
  }
  return x;
}

// Exact survival for +-y innovations by brute force over all 2^N sign
// vectors, without pruning. Paths are integer-valued for integer a and y,
// so the moving-average form gives exact comparisons there.
inline double brute_force_two_point(const std::vector<double>& a, double y, double x, int N) {
  const std::uint64_t total = std::uint64_t{1} << N;
  std::uint64_t survive = 0;
  std::vector<double> ys(static_cast<std::size_t>(N));
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < N; ++i) ys[static_cast<std::size_t>(i)] = (mask >> i & 1) ? y : -y;
    const auto path = ma_path(a, ys);
    bool ok = true;
    for (double v : path) ok = ok && v <= x;
    if (ok) ++survive;
  }
  return static_cast<double>(survive) / static_cast<double>(total);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Dense uniform grid maximum of f over [lo, hi].
inline std::pair<double, double> grid_max(const std::function<double(double)>& f, double lo,
                                          double hi, int points) {
  double best = -1.0, arg = lo;
  for (int i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * i / (points - 1);
    const double v = f(t);
    if (v > best) {
      best = v;
      arg = t;
    }
  }
  return {best, arg};
}

}  // namespace oracles

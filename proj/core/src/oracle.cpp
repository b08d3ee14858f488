#include "arsurv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arsurv/coeffs.hpp"
#include "arsurv/errors.hpp"

namespace arsurv {
namespace {

constexpr std::uint64_t kBudget = std::uint64_t{1} << 22;

struct Enumerator {
  std::span<const double> a;
  const std::vector<SupportPoint>& support;
  double x;
  int N;
  std::vector<double> path;  // path[n] = X_n, path[0] unused
  std::vector<double> survived;

  void visit(int n, double prob) {
    if (n > N) {
      survived.push_back(prob);
      return;
    }
    // Same accumulation order as the simulation kernel.
    double s = 0.0;
    for (std::size_t k = 1; k <= a.size(); ++k) {
      const int lag = n - static_cast<int>(k);
      s += a[k - 1] * (lag >= 1 ? path[static_cast<std::size_t>(lag)] : 0.0);
    }
    for (const auto& [y, q] : support) {
      if (q == 0.0) continue;
      const double xn = s + y;
      if (xn > x) continue;
      path[static_cast<std::size_t>(n)] = xn;
      visit(n + 1, prob * q);
    }
  }
};

}  // namespace

double enumerate_survival(const ARParams& params, const std::vector<SupportPoint>& support,
                          double x, int N) {
  if (N < 1) throw PreconditionError("enumerate_survival: N must be >= 1");
  if (support.empty()) throw PreconditionError("enumerate_survival: empty support");
  double total = 0.0;
  for (const auto& [y, q] : support) {
    if (!std::isfinite(y) || !(q >= 0.0)) {
      throw PreconditionError("enumerate_survival: invalid support point");
    }
    total += q;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw PreconditionError("enumerate_survival: probabilities must sum to 1");
  }
  std::uint64_t work = 1;
  for (int i = 0; i < N; ++i) {
    work *= support.size();
    if (work > kBudget) {
      throw BudgetExceeded("enumerate_survival: |support|^N exceeds 2^22");
    }
  }

  Enumerator e{params.coeffs(), support, x, N, std::vector<double>(static_cast<std::size_t>(N) + 1, 0.0), {}};
  e.visit(1, 1.0);
  std::sort(e.survived.begin(), e.survived.end());
  double sum = 0.0;
  for (double p : e.survived) sum += p;
  return sum;
}

double gaussian_orthant_probability(double rho) {
  return (std::numbers::pi / 2.0 + std::asin(rho)) / (2.0 * std::numbers::pi);
}

double lag_one_correlation(const ARParams& params, int n) {
  if (n < 2) throw PreconditionError("lag_one_correlation: n must be >= 2");
  const auto c = coeff_recursion(params, n - 1).values;
  // X_n = sum_{j=0}^{n-1} c_j Y_{n-j}.
  double var_prev = 0.0;
  double cov = 0.0;
  for (int j = 0; j <= n - 2; ++j) {
    var_prev += c[j] * c[j];
    cov += c[j] * c[j + 1];
  }
  const double var_n = var_prev + c[n - 1] * c[n - 1];
  if (!std::isfinite(cov) || !std::isfinite(var_n)) {
    throw OverflowError("lag_one_correlation: moments overflow");
  }
  return cov / std::sqrt(var_prev * var_n);
}

double gaussian_pair_probability(const ARParams& params, int n) {
  double rho = lag_one_correlation(params, n);
  if (!(std::fabs(rho) <= 1.0 + 1e-10)) {
    throw ConvergenceError("gaussian_pair_probability: correlation outside [-1, 1]");
  }
  rho = std::clamp(rho, -1.0, 1.0);
  return gaussian_orthant_probability(rho);
}

}  // namespace arsurv

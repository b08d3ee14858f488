#include "arsurv/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "arsurv/errors.hpp"

namespace arsurv {
namespace {

using cd = std::complex<double>;

constexpr double kDoubleRootTol = 1e-12;
constexpr double kRootResidualTol = 1e-10;
// Eigenvalues of a companion matrix with a multiple root scatter by about
// sqrt(eps). Roots closer than this (relative) are merged to their mean,
// which matches the closed form's double-root threshold on the discriminant.
constexpr double kClusterTol = 1e-6;

cd ipow(cd base, int n) {
  cd result = 1.0;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

// f(z) = z^p - a_1 z^{p-1} - ... - a_p and f'(z), by Horner.
std::pair<cd, cd> charpoly_eval(const ARParams& params, cd z) {
  cd f = 1.0;
  cd df = 0.0;
  for (double a : params.coeffs()) {
    df = df * z + f;
    f = f * z - a;
  }
  return {f, df};
}

}  // namespace

CoeffSequence coeff_recursion(const ARParams& params, int n_max) {
  if (n_max < 0) throw PreconditionError("coeff_recursion: n_max must be >= 0");
  const auto a = params.coeffs();
  const int p = params.order();
  CoeffSequence seq;
  seq.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  auto& c = seq.values;
  c[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    double s = 0.0;
    for (int k = 1; k <= std::min(p, n); ++k) {
      s += a[k - 1] * c[n - k];
    }
    c[n] = s;
  }
  return seq;
}

CoeffSolution ar2_closed_form(double a1, double a2) {
  CoeffSolution sol;
  sol.a1 = a1;
  sol.a2 = a2;
  const double disc = a1 * a1 + 4.0 * a2;
  if (std::fabs(disc) <= kDoubleRootTol * std::max(1.0, a1 * a1)) {
    sol.branch = RootBranch::DoubleRoot;
    sol.s1 = sol.s2 = a1 / 2.0;
    sol.h = 0.0;
  } else if (disc > 0.0) {
    sol.branch = RootBranch::DistinctReal;
    const double h = std::sqrt(disc);
    sol.h = h;
    // The root without cancellation first, the other from s1 s2 = -a2.
    if (a1 >= 0.0) {
      const double s1 = (a1 + h) / 2.0;
      sol.s1 = s1;
      sol.s2 = -a2 / s1;
    } else {
      const double s2 = (a1 - h) / 2.0;
      sol.s2 = s2;
      sol.s1 = -a2 / s2;
    }
  } else {
    sol.branch = RootBranch::ComplexPair;
    const double ht = std::sqrt(-disc);
    sol.h_tilde = ht;
    sol.h = cd(0.0, ht);
    sol.s1 = cd(a1 / 2.0, ht / 2.0);
    sol.s2 = cd(a1 / 2.0, -ht / 2.0);
    sol.modulus = std::sqrt(std::fabs(a2));
    if (a1 > 0.0) {
      sol.phi = std::atan(ht / a1);
    } else if (a1 == 0.0) {
      sol.phi = std::numbers::pi / 2.0;
    } else {
      sol.phi = std::numbers::pi + std::atan(ht / a1);
    }
  }
  return sol;
}

double ar2_coeff_at(const CoeffSolution& sol, int n) {
  if (n < 0) throw PreconditionError("ar2_coeff_at: n must be >= 0");
  double value = 0.0;
  switch (sol.branch) {
    case RootBranch::DoubleRoot:
      value = std::pow(sol.a1 / 2.0, n) * (n + 1.0);
      break;
    case RootBranch::DistinctReal: {
      const double s1 = sol.s1.real();
      const double s2 = sol.s2.real();
      const double h = sol.h.real();
      value = std::pow(s1, n) * (s1 / h) - std::pow(s2, n) * (s2 / h);
      break;
    }
    case RootBranch::ComplexPair: {
      const double amp = std::pow(std::fabs(sol.a2), n / 2.0);
      const double angle = n * sol.phi;
      value = amp * (std::cos(angle) + sol.a1 / sol.h_tilde * std::sin(angle));
      break;
    }
  }
  if (!std::isfinite(value)) {
    throw OverflowError("c_" + std::to_string(n) + " exceeds the double range");
  }
  return value;
}

std::complex<double> ar2_coeff_complex(const CoeffSolution& sol, int n) {
  if (n < 0) throw PreconditionError("ar2_coeff_complex: n must be >= 0");
  if (sol.branch == RootBranch::DoubleRoot) {
    return std::pow(sol.a1 / 2.0, n) * (n + 1.0);
  }
  return (ipow(sol.s1, n + 1) - ipow(sol.s2, n + 1)) / sol.h;
}

double charpoly_relative_residual(const ARParams& params, std::complex<double> z) {
  const auto [f, df] = charpoly_eval(params, z);
  const int p = params.order();
  double scale = std::pow(std::abs(z), p);
  for (int k = 1; k <= p; ++k) {
    scale += std::fabs(params.a(k)) * std::pow(std::abs(z), p - k);
  }
  return std::abs(f) / std::max(1.0, scale);
}

std::vector<std::complex<double>> charpoly_roots(const ARParams& params) {
  const int p = params.order();
  std::vector<cd> roots;
  if (p == 1) {
    roots.emplace_back(params.a(1));
    return roots;
  }

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (int k = 0; k < p; ++k) companion(0, k) = params.a(k + 1);
  for (int k = 1; k < p; ++k) companion(k, k - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("charpoly_roots: eigenvalue iteration did not converge for " +
                           params.to_string());
  }
  const auto& ev = solver.eigenvalues();
  for (int k = 0; k < p; ++k) roots.push_back(ev(k));

  // Newton polishing; a step is kept only if it lowers the residual.
  for (auto& r : roots) {
    for (int it = 0; it < 8; ++it) {
      const auto [f, df] = charpoly_eval(params, r);
      if (f == 0.0 || df == 0.0) break;
      const cd next = r - f / df;
      if (std::abs(charpoly_eval(params, next).first) >= std::abs(f)) break;
      r = next;
    }
  }

  // Merge clusters (numerical multiple roots) to their centroid.
  std::vector<bool> used(roots.size(), false);
  std::vector<cd> merged;
  merged.reserve(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> group{i};
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] &&
          std::abs(roots[j] - roots[i]) <= kClusterTol * std::max(1.0, std::abs(roots[i]))) {
        group.push_back(j);
        used[j] = true;
      }
    }
    cd centroid = 0.0;
    for (auto g : group) centroid += roots[g];
    centroid /= static_cast<double>(group.size());
    if (group.size() > 1 && std::fabs(centroid.imag()) <=
                                kClusterTol * std::max(1.0, std::abs(centroid))) {
      centroid.imag(0.0);
    }
    for (std::size_t g = 0; g < group.size(); ++g) merged.push_back(centroid);
  }

  for (const auto& r : merged) {
    if (!(charpoly_relative_residual(params, r) <= kRootResidualTol)) {
      throw ConvergenceError("charpoly_roots: residual above tolerance for " +
                             params.to_string());
    }
  }

  std::sort(merged.begin(), merged.end(), [](cd x, cd y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return merged;
}

LimitClass coeff_limit_class(double a1, double a2) {
  if (a1 + a2 < 1.0 && a2 < 1.0 + a1 && a2 > -1.0) {
    return {LimitKind::ToZero, 0.0};
  }
  if (a1 + a2 == 1.0 && std::fabs(a2) < 1.0) {
    return {LimitKind::ConvergesNonzero, 1.0 / (1.0 + a2)};
  }
  return {LimitKind::Diverges, 0.0};
}

const char* to_string(RootBranch branch) {
  switch (branch) {
    case RootBranch::DistinctReal: return "distinct_real";
    case RootBranch::DoubleRoot: return "double_root";
    case RootBranch::ComplexPair: return "complex_pair";
  }
  return "unknown";
}

const char* to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::ToZero: return "to_zero";
    case LimitKind::ConvergesNonzero: return "converges_nonzero";
    case LimitKind::Diverges: return "diverges";
  }
  return "unknown";
}

}  // namespace arsurv

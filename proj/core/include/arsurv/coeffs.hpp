#pragma once

#include <complex>
#include <vector>

#include "arsurv/ar_params.hpp"

namespace arsurv {

// Weights of the moving-average representation X_n = sum_k c_{n-k} Y_k.
// values[0] = 1 and values[n] = sum_k a_k values[n-k] for n >= 1.
struct CoeffSequence {
  std::vector<double> values;
};

enum class RootBranch { DistinctReal, DoubleRoot, ComplexPair };

// Closed-form description of the order-2 coefficient sequence.
struct CoeffSolution {
  double a1 = 0.0;
  double a2 = 0.0;
  RootBranch branch = RootBranch::DistinctReal;
  std::complex<double> s1;
  std::complex<double> s2;
  std::complex<double> h;  // sqrt(a1^2 + 4 a2), principal branch
  // Only meaningful for ComplexPair.
  double h_tilde = 0.0;  // sqrt(-(a1^2 + 4 a2))
  double phi = 0.0;      // argument of s1, in (0, pi)
  double modulus = 0.0;  // |s1| = |a2|^{1/2}
};

enum class LimitKind { ToZero, ConvergesNonzero, Diverges };

struct LimitClass {
  LimitKind kind = LimitKind::Diverges;
  double limit = 0.0;  // 1 / (1 + a2) when kind == ConvergesNonzero
};

CoeffSequence coeff_recursion(const ARParams& params, int n_max);

// Discriminants with |a1^2 + 4 a2| <= 1e-12 * max(1, a1^2) are treated as
// a double root.
CoeffSolution ar2_closed_form(double a1, double a2);

// Evaluates the closed form for c_n. Throws OverflowError if |c_n| does not
// fit in a double.
double ar2_coeff_at(const CoeffSolution& sol, int n);

// h^{-1} (s1^{n+1} - s2^{n+1}) evaluated in complex arithmetic, without the
// real-valued sin/cos rewrite. For a double root returns the real formula.
std::complex<double> ar2_coeff_complex(const CoeffSolution& sol, int n);

// Roots (with multiplicity) of x^p - a_1 x^{p-1} - ... - a_p, from the
// eigenvalues of the companion matrix, polished by Newton's method.
// Throws ConvergenceError if the eigen-solver fails or a residual exceeds
// 1e-10 relative to the polynomial's term magnitudes.
std::vector<std::complex<double>> charpoly_roots(const ARParams& params);

// |f_p(z)| / max(1, sum of |terms|); the scale-free residual charpoly_roots
// checks against.
double charpoly_relative_residual(const ARParams& params, std::complex<double> z);

LimitClass coeff_limit_class(double a1, double a2);

const char* to_string(RootBranch branch);
const char* to_string(LimitKind kind);

}  // namespace arsurv

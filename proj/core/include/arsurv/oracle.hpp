#pragma once

#include <vector>

#include "arsurv/ar_params.hpp"
#include "arsurv/innovations.hpp"

namespace arsurv {

// Exact p_N(x) for a finitely supported innovation law, by depth-first
// enumeration of all |support|^N innovation sequences with pruning at the
// first crossing. Surviving sequence probabilities are summed smallest
// first.
//
// Throws BudgetExceeded if |support|^N > 2^22, PreconditionError if the
// probabilities do not sum to 1 within 1e-12 or N < 1.
double enumerate_survival(const ARParams& params, const std::vector<SupportPoint>& support,
                          double x, int N);

// P(U <= 0, V <= 0) for a centred bivariate Gaussian with correlation rho.
double gaussian_orthant_probability(double rho);

// Correlation of X_{n-1} and X_n for centred i.i.d. innovations,
// computed from E[X_n X_m] = sigma^2 sum_k c_{n-k} c_{m-k}.
double lag_one_correlation(const ARParams& params, int n);

// P(X_{n-1} <= 0, X_n <= 0) for centred Gaussian innovations (any sigma).
// An upper bound on p_n. Requires n >= 2; throws ConvergenceError if the
// computed correlation leaves [-1, 1] by more than 1e-10.
double gaussian_pair_probability(const ARParams& params, int n);

}  // namespace arsurv

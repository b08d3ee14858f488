#pragma once

#include <optional>

#include "arsurv/ar_params.hpp"
#include "arsurv/innovations.hpp"

namespace arsurv {

enum class BoundMethod { GaussianClosedForm, NumericScan };

// Exponential lower bound p_N >= c^N for processes with sum |a_k| < 1, where
//   c = sup_{alpha < 0} P(alpha (1 - a_plus) <= Y <= alpha |a_minus|).
struct LowerBoundResult {
  double c = 0.0;
  double alpha_star = 0.0;  // maximiser (the scan's best point for NumericScan)
  double a_plus = 0.0;      // sum of positive coefficients
  double a_minus = 0.0;     // sum of negative coefficients
  double A = 0.0;           // |a_minus| / (1 - a_plus)
  BoundMethod method = BoundMethod::NumericScan;
};

// Centred Gaussian innovations with a_minus < 0 use the closed-form maximiser
//   alpha* = -sigma sqrt((log (1-a_plus)^2 - log a_minus^2) / ((1-a_plus)^2 - a_minus^2)).
// Everything else maximises over alpha in [-1e6, -1e-6]: 1000 log-spaced seed
// points, then golden-section refinement around the best seed. The returned c
// is the value at an evaluated point, so it never overstates the supremum.
// When a_minus = 0 the supremum is approached as alpha -> -inf and the scan
// reports the value at the far end of the bracket.
//
// method forces a strategy; forcing GaussianClosedForm for anything but a
// centred Gaussian with a_minus < 0 throws PreconditionError.
//
// Throws PreconditionError unless sum |a_k| < 1.
LowerBoundResult exp_lower_bound(const ARParams& params, const InnovationSpec& spec,
                                 std::optional<BoundMethod> method = std::nullopt);

// P(Y in [alpha (1 - a_plus), alpha |a_minus|]) for a given alpha.
double lower_bound_interval_prob(const InnovationSpec& spec, double a_plus, double a_minus,
                                 double alpha);

// Lower bound on the exponential decay rate on E1 (requires exponential
// moments of the innovations):
//   log(|s2| / s1)  if a1 + a2 > 1,
//   log |s2|        otherwise.
// Throws RegionError outside E1.
double e1_rate_bound(double a1, double a2);

// q = min{k >= 1 : c_k <= 0}. On E3 the coefficients change sign within
// ceil(pi / phi) steps, phi the argument of the complex roots.
// Throws RegionError outside E3; throws std::logic_error if the cap is
// exceeded (a bug, not an input error).
int e3_sign_change_index(double a1, double a2);

// ceil(pi / phi) for (a1, a2) in E3.
int e3_sign_change_cap(double a1, double a2);

// Coefficients of the running sum of an AR(p) process:
//   T_p(a) = (a1 + 1, a2 - a1, ..., a_p - a_{p-1}, -a_p).
ARParams integrate_params(const ARParams& params);

// Inverse of integrate_params: (b1 - 1, b1 + b2 - 1, ...). Requires order >= 2
// and sum b = 1 within 1e-12 (the image of T_p); throws PreconditionError
// otherwise.
ARParams differentiate_params(const ARParams& params);

const char* to_string(BoundMethod method);

}  // namespace arsurv

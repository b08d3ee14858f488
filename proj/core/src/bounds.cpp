#include "arsurv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "arsurv/coeffs.hpp"
#include "arsurv/errors.hpp"
#include "arsurv/regions.hpp"

namespace arsurv {
namespace {

constexpr double kLogAlphaLo = -6.0;  // |alpha| = 1e-6
constexpr double kLogAlphaHi = 6.0;   // |alpha| = 1e6
constexpr int kSeeds = 1000;
constexpr double kGoldenTol = 1e-8;

struct ScanResult {
  double value = -1.0;
  double alpha = 0.0;
};

// Maximises P(Y in [alpha (1 - a_plus), alpha |a_minus|]) over alpha < 0,
// parametrised by t = log10 |alpha|.
ScanResult scan_alpha(const InnovationSpec& spec, double a_plus, double a_minus) {
  ScanResult best;
  auto eval = [&](double t) {
    const double alpha = -std::pow(10.0, t);
    const double v = lower_bound_interval_prob(spec, a_plus, a_minus, alpha);
    if (v > best.value) best = {v, alpha};
    return v;
  };

  const double step = (kLogAlphaHi - kLogAlphaLo) / (kSeeds - 1);
  int best_i = 0;
  double best_v = -1.0;
  for (int i = 0; i < kSeeds; ++i) {
    const double v = eval(kLogAlphaLo + i * step);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }

  double lo = kLogAlphaLo + std::max(best_i - 1, 0) * step;
  double hi = kLogAlphaLo + std::min(best_i + 1, kSeeds - 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double m1 = hi - inv_phi * (hi - lo);
  double m2 = lo + inv_phi * (hi - lo);
  double f1 = eval(m1);
  double f2 = eval(m2);
  while (hi - lo > kGoldenTol) {
    if (f1 < f2) {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + inv_phi * (hi - lo);
      f2 = eval(m2);
    } else {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - inv_phi * (hi - lo);
      f1 = eval(m1);
    }
  }
  return best;
}

}  // namespace

double lower_bound_interval_prob(const InnovationSpec& spec, double a_plus, double a_minus,
                                 double alpha) {
  return spec.prob_closed_interval(alpha * (1.0 - a_plus), alpha * std::fabs(a_minus));
}

LowerBoundResult exp_lower_bound(const ARParams& params, const InnovationSpec& spec,
                                 std::optional<BoundMethod> method) {
  if (!(params.abs_sum() < 1.0)) {
    throw PreconditionError("exp_lower_bound: requires sum |a_k| < 1");
  }
  LowerBoundResult r;
  for (double a : params.coeffs()) {
    if (a > 0.0) r.a_plus += a;
    if (a < 0.0) r.a_minus += a;
  }
  const double w_plus = 1.0 - r.a_plus;
  const double w_minus = std::fabs(r.a_minus);
  r.A = w_minus / w_plus;

  const bool closed_form_ok = spec.is_centered_gaussian() && r.a_minus < 0.0;
  if (method == BoundMethod::GaussianClosedForm && !closed_form_ok) {
    throw PreconditionError(
        "exp_lower_bound: closed form needs centred Gaussian innovations and a negative "
        "coefficient");
  }
  if (closed_form_ok && method != BoundMethod::NumericScan) {
    const double sigma = std::get<Gaussian>(spec.kind()).sigma;
    const double num = std::log(w_plus * w_plus) - std::log(w_minus * w_minus);
    const double den = w_plus * w_plus - w_minus * w_minus;
    r.alpha_star = -sigma * std::sqrt(num / den);
    r.c = lower_bound_interval_prob(spec, r.a_plus, r.a_minus, r.alpha_star);
    r.method = BoundMethod::GaussianClosedForm;
    return r;
  }

  const ScanResult s = scan_alpha(spec, r.a_plus, r.a_minus);
  r.c = s.value;
  r.alpha_star = s.alpha;
  r.method = BoundMethod::NumericScan;
  return r;
}

double e1_rate_bound(double a1, double a2) {
  if (!in_region_e1(a1, a2)) {
    throw RegionError("e1_rate_bound: (" + std::to_string(a1) + ", " + std::to_string(a2) +
                      ") is not in E1");
  }
  // On E1 a1 < 0 < a2, so the roots are real with s2 < 0 < s1.
  const double h = std::sqrt(a1 * a1 + 4.0 * a2);
  const double s2 = (a1 - h) / 2.0;
  const double s1 = -a2 / s2;
  if (a1 + a2 > 1.0) return std::log(std::fabs(s2) / s1);
  return std::log(std::fabs(s2));
}

int e3_sign_change_cap(double a1, double a2) {
  if (!in_region_e3(a1, a2)) {
    throw RegionError("e3_sign_change_cap: point is not in E3");
  }
  const CoeffSolution sol = ar2_closed_form(a1, a2);
  return static_cast<int>(std::ceil(std::numbers::pi / sol.phi));
}

int e3_sign_change_index(double a1, double a2) {
  if (!in_region_e3(a1, a2)) {
    throw RegionError("e3_sign_change_index: (" + std::to_string(a1) + ", " +
                      std::to_string(a2) + ") is not in E3");
  }
  const int cap = e3_sign_change_cap(a1, a2);
  double c_prev = 1.0;  // c_{k-2}
  double c_cur = a1;    // c_{k-1}
  if (c_cur <= 0.0) return 1;
  for (int k = 2; k <= cap; ++k) {
    const double c_next = a1 * c_cur + a2 * c_prev;
    if (c_next <= 0.0) return k;
    c_prev = c_cur;
    c_cur = c_next;
  }
  throw std::logic_error("e3_sign_change_index: no sign change within ceil(pi/phi) = " +
                         std::to_string(cap));
}

ARParams integrate_params(const ARParams& params) {
  const auto a = params.coeffs();
  const std::size_t p = a.size();
  std::vector<double> b(p + 1);
  b[0] = a[0] + 1.0;
  for (std::size_t k = 1; k < p; ++k) b[k] = a[k] - a[k - 1];
  b[p] = -a[p - 1];
  return ARParams(std::move(b));
}

ARParams differentiate_params(const ARParams& params) {
  const auto b = params.coeffs();
  if (b.size() < 2) throw PreconditionError("differentiate_params: order must be >= 2");
  double sum = 0.0;
  for (double v : b) sum += v;
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw PreconditionError("differentiate_params: coefficients must sum to 1");
  }
  std::vector<double> a(b.size() - 1);
  double partial = 0.0;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    partial += b[k];
    a[k] = partial - 1.0;
  }
  return ARParams(std::move(a));
}

const char* to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::GaussianClosedForm: return "gaussian_closed_form";
    case BoundMethod::NumericScan: return "numeric_scan";
  }
  return "unknown";
}

}  // namespace arsurv

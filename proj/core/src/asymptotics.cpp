#include "arsurv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "arsurv/bounds.hpp"
#include "arsurv/coeffs.hpp"

namespace arsurv {
namespace {

constexpr std::size_t kMinUsable = 6;
constexpr std::uint64_t kPlateauMinSurvivors = 10;
constexpr double kPlateauSigmas = 2.0;
constexpr double kR2Margin = 0.02;
constexpr double kCiZ = 1.96;

struct Point {
  double n = 0.0;
  double logp = 0.0;
  double w = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double slope_se = 0.0;
  double r2 = 0.0;
};

// Weighted least squares of y on x. The slope's standard error is inflated
// by the reduced chi-square when the scatter exceeds the weights' claim.
template <class X>
LineFit weighted_fit(const std::vector<Point>& pts, X&& xf) {
  LineFit fit;
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (const auto& p : pts) {
    sw += p.w;
    sx += p.w * xf(p);
    sy += p.w * p.logp;
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : pts) {
    const double dx = xf(p) - mx;
    const double dy = p.logp - my;
    sxx += p.w * dx * dx;
    sxy += p.w * dx * dy;
    syy += p.w * dy * dy;
  }
  if (sxx <= 0.0) return fit;
  fit.slope = sxy / sxx;
  double chi2 = 0.0;
  for (const auto& p : pts) {
    const double r = p.logp - (my + fit.slope * (xf(p) - mx));
    chi2 += p.w * r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - chi2 / syy : 1.0;
  const double dof = static_cast<double>(pts.size()) - 2.0;
  const double scale = dof > 0.0 ? std::max(1.0, chi2 / dof) : 1.0;
  fit.slope_se = std::sqrt(scale / sxx);
  return fit;
}

Interval symmetric(double centre, double se) { return {centre - kCiZ * se, centre + kCiZ * se}; }

}  // namespace

DecayFit fit_decay(const SurvivalCurve& curve) {
  DecayFit fit;
  const std::size_t g = curve.grid.size();
  const double paths = static_cast<double>(curve.paths);

  std::vector<Point> usable;
  std::vector<std::size_t> usable_idx;
  for (std::size_t i = 0; i < g; ++i) {
    if (curve.survivors[i] == 0) {
      fit.censored.push_back(curve.grid[i]);
      continue;
    }
    const double p = static_cast<double>(curve.survivors[i]) / paths;
    const double var = std::max(1.0 - p, 1.0 / paths) / (p * paths);
    usable.push_back({static_cast<double>(curve.grid[i]), std::log(p), 1.0 / var});
    usable_idx.push_back(i);
  }
  fit.usable_points = usable.size();
  if (usable.size() < kMinUsable) return fit;

  // Plateau test on the last quarter of the grid.
  const std::size_t tail = std::max<std::size_t>(2, g / 4);
  bool tail_ok = true;
  double stat = 0.0;
  for (std::size_t i = g - tail; i < g; ++i) {
    if (curve.survivors[i] < kPlateauMinSurvivors) tail_ok = false;
    for (std::size_t j = i + 1; j < g; ++j) {
      const double diff = std::fabs(curve.p_hat[i] - curve.p_hat[j]);
      const double se = std::hypot(curve.std_err[i], curve.std_err[j]);
      stat = std::max(stat, se > 0.0 ? diff / se : (diff > 0.0 ? INFINITY : 0.0));
    }
  }
  fit.plateau_stat = stat;
  fit.plateau = tail_ok && stat <= kPlateauSigmas;

  const auto log_n = [](const Point& p) { return std::log(p.n); };
  const auto lin_n = [](const Point& p) { return p.n; };
  const auto n_over_log = [](const Point& p) { return p.n / std::log(p.n); };

  fit.r2_loglog = weighted_fit(usable, log_n).r2;
  fit.r2_semilog = weighted_fit(usable, lin_n).r2;
  std::vector<Point> from_two;
  for (const auto& p : usable) {
    if (p.n >= 2.0) from_two.push_back(p);
  }
  if (from_two.size() >= 3) fit.r2_log_corrected = weighted_fit(from_two, n_over_log).r2;

  const std::size_t half = usable.size() / 2;
  const std::vector<Point> upper(usable.begin() + static_cast<std::ptrdiff_t>(half),
                                 usable.end());
  fit.window_lo = curve.grid[usable_idx[half]];
  fit.window_hi = curve.grid[usable_idx.back()];

  const LineFit poly = weighted_fit(upper, log_n);
  const LineFit expo = weighted_fit(upper, lin_n);
  fit.theta = std::max(0.0, -poly.slope);
  fit.theta_ci = symmetric(fit.theta, poly.slope_se);
  fit.lambda = std::max(0.0, -expo.slope);
  fit.lambda_ci = symmetric(fit.lambda, expo.slope_se);

  const std::size_t last = g - 1;
  fit.p_inf = curve.p_hat[last];
  fit.p_inf_ci = symmetric(fit.p_inf, curve.std_err[last]);

  if (fit.plateau) {
    fit.cls = DecayClass::PositiveLimit;
  } else if (fit.r2_loglog >= fit.r2_semilog + kR2Margin) {
    fit.cls = DecayClass::Polynomial;
  } else if (fit.r2_semilog >= fit.r2_loglog + kR2Margin) {
    fit.cls = DecayClass::Exponential;
    fit.log_corrected_plausible = fit.r2_log_corrected >= fit.r2_semilog - kR2Margin;
  }
  return fit;
}

Prediction predict(double a1, double a2, const InnovationSpec& spec, double x) {
  Prediction pred;
  pred.region = classify_ar2(a1, a2);
  if (x < 0.0) {
    pred.notes.emplace_back("barrier x < 0: the decay results are stated for x >= 0 only");
  }

  std::optional<double> theta;
  DecayClass cls = DecayClass::Inconclusive;
  switch (pred.region.major) {
    case MajorRegion::P:
      pred.theorem = TheoremId::PolynomialDecayP;
      cls = DecayClass::Polynomial;
      if (a2 == -1.0) {
        theta = 0.25;
        pred.notes.emplace_back("integrated random walk: p_N of order N^(-1/4)");
      } else if (a2 == 1.0) {
        theta = 1.0;
        pred.notes.emplace_back("two interleaved random walks: p_N of order N^(-1)");
      } else {
        theta = 0.5;
        pred.notes.emplace_back("p_N = N^(-1/2 + o(1))");
      }
      break;
    case MajorRegion::C:
      pred.theorem = TheoremId::PositiveLimitC;
      cls = DecayClass::PositiveLimit;
      break;
    case MajorRegion::E: {
      pred.theorem = TheoremId::SuperPolynomialDecayE;
      cls = DecayClass::Exponential;
      if (spec.is_centered_gaussian()) {
        pred.notes.emplace_back("Gaussian innovations: p_N decays exponentially on E");
      } else {
        pred.log_corrected = true;
        pred.notes.emplace_back("general innovations: p_N <= exp(-lambda N / log N)");
      }
      const ARParams params{a1, a2};
      if (params.abs_sum() < 1.0) {
        const LowerBoundResult lb = exp_lower_bound(params, spec);
        if (lb.c > 0.0) pred.rate_upper_bound = -std::log(lb.c);
      }
      switch (*pred.region.sub) {
        case SubRegion::E1: {
          const HypothesisReport h = hypothesis_check(spec, TheoremId::NorthWestRate);
          if (h.satisfied) {
            pred.rate_lower_bound = e1_rate_bound(a1, a2);
          } else {
            pred.notes.emplace_back("E1 rate bound not attached: hypotheses not met");
          }
          break;
        }
        case SubRegion::E2:
          if (x == 0.0) {
            const double q = spec.cdf(0.0);
            if (q > 0.0 && q < 1.0) pred.rate_lower_bound = -std::log(q);
            pred.notes.emplace_back("E2: p_N <= P(Y <= 0)^N");
          }
          break;
        case SubRegion::E3: {
          std::ostringstream os;
          os << "E3: coefficients first change sign at q = " << e3_sign_change_index(a1, a2);
          pred.notes.push_back(os.str());
          break;
        }
        case SubRegion::EOther:
          pred.notes.emplace_back("outside E1, E2, E3: no explicit rate bound");
          break;
      }
      break;
    }
  }

  pred.hypotheses = hypothesis_check(spec, *pred.theorem);
  if (pred.hypotheses.satisfied) {
    pred.cls = cls;
    pred.theta = theta;
  } else {
    pred.cls = DecayClass::Inconclusive;
    pred.notes.emplace_back("hypotheses of the governing result are not satisfied");
  }
  return pred;
}

const char* to_string(DecayClass cls) {
  switch (cls) {
    case DecayClass::Polynomial: return "polynomial";
    case DecayClass::Exponential: return "exponential";
    case DecayClass::PositiveLimit: return "positive_limit";
    case DecayClass::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

}  // namespace arsurv

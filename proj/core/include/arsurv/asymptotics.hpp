#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arsurv/innovations.hpp"
#include "arsurv/mc.hpp"
#include "arsurv/regions.hpp"

namespace arsurv {

enum class DecayClass { Polynomial, Exponential, PositiveLimit, Inconclusive };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Fitted decay of a survival curve.
struct DecayFit {
  DecayClass cls = DecayClass::Inconclusive;
  double theta = 0.0;   // p_N ~ N^{-theta}
  Interval theta_ci;
  double lambda = 0.0;  // p_N ~ exp(-lambda N)
  Interval lambda_ci;
  double p_inf = 0.0;   // plateau level
  Interval p_inf_ci;
  double r2_loglog = 0.0;
  double r2_semilog = 0.0;
  double r2_log_corrected = 0.0;  // log p against N / log N
  double plateau_stat = 0.0;      // max pairwise |diff| / combined stderr
  bool plateau = false;
  bool log_corrected_plausible = false;
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
  std::size_t usable_points = 0;
  std::vector<std::int64_t> censored;  // horizons with no survivors
};

// Decay classification rules:
//   * usable points are entries with survivors > 0; fewer than 6 gives
//     Inconclusive.
//   * plateau test on the last quarter of the grid (at least two entries):
//     every entry has >= 10 survivors and all pairs lie within 2 combined
//     stderr. A pass gives PositiveLimit.
//   * otherwise weighted R^2 of log p against log N and against N over all
//     usable points; log-log ahead by >= 0.02 gives Polynomial, semilog
//     ahead by >= 0.02 gives Exponential, anything closer is Inconclusive.
//   * theta and lambda are weighted least-squares slopes over the upper half
//     of the usable points; weights are inverse squared relative stderr.
DecayFit fit_decay(const SurvivalCurve& curve);

// Class predicted from the region and the innovation hypotheses.
struct Prediction {
  DecayClass cls = DecayClass::Inconclusive;
  RegionLabel region;
  std::optional<double> theta;              // expected polynomial exponent
  std::optional<double> rate_lower_bound;   // lambda >= this
  std::optional<double> rate_upper_bound;   // lambda <= this (from p_N >= c^N)
  bool log_corrected = false;               // exp(-lambda N / log N) only
  std::optional<TheoremId> theorem;         // result the prediction rests on
  HypothesisReport hypotheses;
  std::vector<std::string> notes;
};

Prediction predict(double a1, double a2, const InnovationSpec& spec, double x);

const char* to_string(DecayClass cls);

}  // namespace arsurv

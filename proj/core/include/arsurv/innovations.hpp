#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "arsurv/rng.hpp"

namespace arsurv {

struct Gaussian {
  double mu = 0.0;
  double sigma = 1.0;
};
struct Rademacher {};
struct TwoPoint {  // +y or -y with probability 1/2 each
  double y = 1.0;
};
struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};
struct CenteredExponential {  // Exp(rate) - 1/rate
  double rate = 1.0;
};

using InnovationKind =
    std::variant<Gaussian, Rademacher, TwoPoint, Uniform, CenteredExponential>;

// Distributional facts the theorems' hypotheses are phrased in. Every kind
// populates every field.
struct InnovationFlags {
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> bounded_by;   // M with |Y| <= M almost surely
  double exp_moment_alpha = 0.0;      // E exp(|Y|^alpha) < inf; inf if bounded
  bool cf_decays = false;             // characteristic function -> 0 at infinity
  bool pos_mass = false;              // P(Y > 0) > 0
  bool neg_mass = false;              // P(Y < 0) > 0
};

// Atom (value, probability) of a finitely supported law.
using SupportPoint = std::pair<double, double>;

// Distribution of the i.i.d. innovations Y_n. Immutable after construction.
class InnovationSpec {
 public:
  // Throws PreconditionError on invalid parameters (sigma <= 0, y <= 0,
  // lo >= hi, rate <= 0, non-finite values).
  explicit InnovationSpec(InnovationKind kind);

  static InnovationSpec gaussian(double mu = 0.0, double sigma = 1.0) {
    return InnovationSpec(Gaussian{mu, sigma});
  }
  static InnovationSpec rademacher() { return InnovationSpec(Rademacher{}); }
  static InnovationSpec two_point(double y) { return InnovationSpec(TwoPoint{y}); }
  static InnovationSpec uniform(double lo, double hi) {
    return InnovationSpec(Uniform{lo, hi});
  }
  static InnovationSpec centered_exponential(double rate) {
    return InnovationSpec(CenteredExponential{rate});
  }

  const InnovationKind& kind() const { return kind_; }
  const InnovationFlags& flags() const { return flags_; }

  // "gaussian", "rademacher", "two_point", "uniform", "exponential_centered".
  std::string kind_name() const;
  std::string describe() const;

  bool is_centered_gaussian() const;

  double cdf(double y) const;                       // P(Y <= y)
  double prob_closed_interval(double lo, double hi) const;  // P(lo <= Y <= hi)

  // Atoms for Rademacher and TwoPoint; nullopt for continuous kinds.
  std::optional<std::vector<SupportPoint>> finite_support() const;

  // One draw. Gaussian draws consume two uniforms (Box-Muller, cosine branch
  // only) so every draw uses a fixed amount of the stream.
  double draw(RngStream& stream) const;

 private:
  InnovationKind kind_;
  InnovationFlags flags_;
};

std::vector<double> sample(const InnovationSpec& spec, RngStream& stream,
                           std::size_t count);

// Hypothesis bundles of the results this library checks against.
enum class TheoremId {
  PolynomialDecayP,       // polynomial decay on P minus the integrated walk
  SuperPolynomialDecayE,  // decay faster than any polynomial on E
  PositiveLimitC,         // positive limit on C
  SummableCoefficients,   // sqrt(N) and N/log N bounds for summable c_n
  ExponentialLowerBound,  // p_N >= c^N when sum |a_k| < 1
  NorthWestRate,          // exponential rate on E1
  ReductionToAR1,         // exponential bound via Z_n = X_n - s2 X_{n-1}
  SignChangeE3,           // exponential bound on E3
  ReductionToRandomWalk,  // S_n = X_n + a2 X_{n-1} comparison
};

struct HypothesisReport {
  bool satisfied = false;
  std::vector<std::string> violated;
  std::string note;
};

// Evaluates the hypotheses from the declared flags only; never samples.
HypothesisReport hypothesis_check(const InnovationSpec& spec, TheoremId theorem);

const char* to_string(TheoremId theorem);
// Throws PreconditionError for an unknown name.
TheoremId theorem_from_string(const std::string& name);

}  // namespace arsurv

#include "arsurv/innovations.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "arsurv/errors.hpp"
#include "sampling.hpp"

namespace arsurv {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper tail P(Z > z) of a standard normal.
double normal_upper(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

void require(bool ok, const char* what) {
  if (!ok) throw PreconditionError(what);
}

InnovationFlags compute_flags(const InnovationKind& kind) {
  return std::visit(
      overloaded{
          [](const Gaussian& g) {
            require(std::isfinite(g.mu) && std::isfinite(g.sigma) && g.sigma > 0.0,
                    "gaussian: need finite mu and sigma > 0");
            return InnovationFlags{g.mu, g.sigma * g.sigma, std::nullopt, 2.0, true, true, true};
          },
          [](const Rademacher&) {
            return InnovationFlags{0.0, 1.0, 1.0, kInf, false, true, true};
          },
          [](const TwoPoint& t) {
            require(std::isfinite(t.y) && t.y > 0.0, "two_point: need finite y > 0");
            return InnovationFlags{0.0, t.y * t.y, t.y, kInf, false, true, true};
          },
          [](const Uniform& u) {
            require(std::isfinite(u.lo) && std::isfinite(u.hi) && u.lo < u.hi,
                    "uniform: need finite lo < hi");
            const double w = u.hi - u.lo;
            return InnovationFlags{(u.lo + u.hi) / 2.0, w * w / 12.0,
                                   std::max(std::fabs(u.lo), std::fabs(u.hi)), kInf, true,
                                   u.hi > 0.0, u.lo < 0.0};
          },
          [](const CenteredExponential& e) {
            require(std::isfinite(e.rate) && e.rate > 0.0,
                    "exponential_centered: need finite rate > 0");
            return InnovationFlags{0.0, 1.0 / (e.rate * e.rate), std::nullopt, 1.0, true, true,
                                   true};
          },
      },
      kind);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

InnovationSpec::InnovationSpec(InnovationKind kind)
    : kind_(std::move(kind)), flags_(compute_flags(kind_)) {}

std::string InnovationSpec::kind_name() const {
  return std::visit(overloaded{
                        [](const Gaussian&) { return "gaussian"; },
                        [](const Rademacher&) { return "rademacher"; },
                        [](const TwoPoint&) { return "two_point"; },
                        [](const Uniform&) { return "uniform"; },
                        [](const CenteredExponential&) { return "exponential_centered"; },
                    },
                    kind_);
}

std::string InnovationSpec::describe() const {
  return std::visit(
      overloaded{
          [](const Gaussian& g) { return "Gaussian(" + fmt(g.mu) + ", " + fmt(g.sigma) + ")"; },
          [](const Rademacher&) { return std::string("Rademacher"); },
          [](const TwoPoint& t) { return "TwoPoint(" + fmt(t.y) + ")"; },
          [](const Uniform& u) { return "Uniform(" + fmt(u.lo) + ", " + fmt(u.hi) + ")"; },
          [](const CenteredExponential& e) { return "CenteredExponential(" + fmt(e.rate) + ")"; },
      },
      kind_);
}

bool InnovationSpec::is_centered_gaussian() const {
  const auto* g = std::get_if<Gaussian>(&kind_);
  return g != nullptr && g->mu == 0.0;
}

double InnovationSpec::cdf(double y) const {
  return std::visit(
      overloaded{
          [y](const Gaussian& g) { return normal_upper((g.mu - y) / g.sigma); },
          [y](const Rademacher&) { return y < -1.0 ? 0.0 : (y < 1.0 ? 0.5 : 1.0); },
          [y](const TwoPoint& t) { return y < -t.y ? 0.0 : (y < t.y ? 0.5 : 1.0); },
          [y](const Uniform& u) {
            if (y <= u.lo) return 0.0;
            if (y >= u.hi) return 1.0;
            return (y - u.lo) / (u.hi - u.lo);
          },
          [y](const CenteredExponential& e) {
            const double shifted = y + 1.0 / e.rate;
            return shifted <= 0.0 ? 0.0 : -std::expm1(-e.rate * shifted);
          },
      },
      kind_);
}

double InnovationSpec::prob_closed_interval(double lo, double hi) const {
  if (!(lo <= hi)) return 0.0;
  if (auto atoms = finite_support()) {
    double p = 0.0;
    for (const auto& [v, w] : *atoms) {
      if (v >= lo && v <= hi) p += w;
    }
    return p;
  }
  if (const auto* g = std::get_if<Gaussian>(&kind_)) {
    const double zl = (lo - g->mu) / g->sigma;
    const double zh = (hi - g->mu) / g->sigma;
    // Difference of the smaller tails to avoid cancellation.
    if (zl >= 0.0) return normal_upper(zl) - normal_upper(zh);
    if (zh <= 0.0) return normal_upper(-zh) - normal_upper(-zl);
    return 1.0 - normal_upper(zh) - normal_upper(-zl);
  }
  return cdf(hi) - cdf(lo);
}

std::optional<std::vector<SupportPoint>> InnovationSpec::finite_support() const {
  if (std::holds_alternative<Rademacher>(kind_)) {
    return std::vector<SupportPoint>{{-1.0, 0.5}, {1.0, 0.5}};
  }
  if (const auto* t = std::get_if<TwoPoint>(&kind_)) {
    return std::vector<SupportPoint>{{-t->y, 0.5}, {t->y, 0.5}};
  }
  return std::nullopt;
}

double InnovationSpec::draw(RngStream& stream) const {
  return std::visit([&stream](const auto& k) { return detail::draw_kind(k, stream); }, kind_);
}

std::vector<double> sample(const InnovationSpec& spec, RngStream& stream, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(spec.draw(stream));
  return out;
}

HypothesisReport hypothesis_check(const InnovationSpec& spec, TheoremId theorem) {
  const auto& f = spec.flags();
  HypothesisReport report;
  auto need = [&report](bool ok, const char* name) {
    if (!ok) report.violated.emplace_back(name);
  };
  const bool exp_moment = f.exp_moment_alpha > 0.0;
  switch (theorem) {
    case TheoremId::PolynomialDecayP:
      need(f.mean == 0.0, "mean_zero");
      need(exp_moment, "exp_moment");
      break;
    case TheoremId::SuperPolynomialDecayE:
      // P(Y > 0) in (0, 1)
      need(f.pos_mass && spec.cdf(0.0) > 0.0, "sign_mass");
      need(exp_moment, "exp_moment");
      need(f.cf_decays, "cf_decays");
      break;
    case TheoremId::PositiveLimitC:
      need(f.neg_mass, "neg_mass");
      // Every catalogued law has an exponential moment, hence a log tail.
      need(exp_moment, "log_tail");
      break;
    case TheoremId::SummableCoefficients:
      need(f.pos_mass && f.neg_mass, "two_sided_mass");
      need(std::isfinite(f.variance), "finite_variance");
      break;
    case TheoremId::ExponentialLowerBound:
      need(f.neg_mass, "neg_mass");
      break;
    case TheoremId::NorthWestRate:
      need(f.cf_decays, "cf_decays");
      need(exp_moment, "exp_moment");
      report.note =
          "characteristic-function bound checked as cf_decays only; the required level "
          "delta relative to |rho| is ambiguous (|rho| > 1 here, < 1 in the underlying "
          "AR(1) estimate) and is not resolved";
      break;
    case TheoremId::ReductionToAR1:
      need(f.pos_mass, "pos_mass");
      break;
    case TheoremId::SignChangeE3:
      need(f.pos_mass, "pos_mass");
      break;
    case TheoremId::ReductionToRandomWalk:
      need(f.mean == 0.0, "mean_zero");
      need(std::isfinite(f.variance) && f.variance > 0.0, "finite_positive_variance");
      break;
  }
  report.satisfied = report.violated.empty();
  return report;
}

const char* to_string(TheoremId theorem) {
  switch (theorem) {
    case TheoremId::PolynomialDecayP: return "polynomial_decay_p";
    case TheoremId::SuperPolynomialDecayE: return "superpolynomial_decay_e";
    case TheoremId::PositiveLimitC: return "positive_limit_c";
    case TheoremId::SummableCoefficients: return "summable_coefficients";
    case TheoremId::ExponentialLowerBound: return "exponential_lower_bound";
    case TheoremId::NorthWestRate: return "north_west_rate";
    case TheoremId::ReductionToAR1: return "reduction_to_ar1";
    case TheoremId::SignChangeE3: return "sign_change_e3";
    case TheoremId::ReductionToRandomWalk: return "reduction_to_random_walk";
  }
  return "unknown";
}

TheoremId theorem_from_string(const std::string& name) {
  for (auto id : {TheoremId::PolynomialDecayP, TheoremId::SuperPolynomialDecayE,
                  TheoremId::PositiveLimitC, TheoremId::SummableCoefficients,
                  TheoremId::ExponentialLowerBound, TheoremId::NorthWestRate,
                  TheoremId::ReductionToAR1, TheoremId::SignChangeE3,
                  TheoremId::ReductionToRandomWalk}) {
    if (name == to_string(id)) return id;
  }
  throw PreconditionError("unknown theorem id: " + name);
}

}  // namespace arsurv

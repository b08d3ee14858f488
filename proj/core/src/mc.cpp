#include "arsurv/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "arsurv/bounds.hpp"
#include "arsurv/coeffs.hpp"
#include "arsurv/errors.hpp"
#include "sampling.hpp"

namespace arsurv {
namespace {

// Runs the order-p recursion from zero initial conditions until the first
// X_n > x, a non-finite X_n, or n_max steps. next() supplies Y_n.
//
// All orders accumulate sum_k a_k X_{n-k} left to right starting from lag 1
// and add Y_n last, so lattice ties at the barrier resolve identically for
// every order and in the enumeration oracle.
template <class Next>
Crossing run_recursion(std::span<const double> a, double x, std::int64_t n_max, Next&& next) {
  const std::size_t p = a.size();
  if (p == 1) {
    const double a1 = a[0];
    double x1 = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const double xn = a1 * x1 + next();
      if (!std::isfinite(xn)) return {n, false};
      if (xn > x) return {n, true};
      x1 = xn;
    }
    return {n_max + 1, true};
  }
  if (p == 2) {
    const double a1 = a[0];
    const double a2 = a[1];
    double x1 = 0.0;
    double x2 = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const double xn = (a1 * x1 + a2 * x2) + next();
      if (!std::isfinite(xn)) return {n, false};
      if (xn > x) return {n, true};
      x2 = x1;
      x1 = xn;
    }
    return {n_max + 1, true};
  }
  // hist[(head + k - 1) % p] holds X_{n-k}.
  std::vector<double> hist(p, 0.0);
  std::size_t head = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      std::size_t idx = head + k;
      if (idx >= p) idx -= p;
      s += a[k] * hist[idx];
    }
    const double xn = s + next();
    if (!std::isfinite(xn)) return {n, false};
    if (xn > x) return {n, true};
    head = head == 0 ? p - 1 : head - 1;
    hist[head] = xn;
  }
  return {n_max + 1, true};
}

// Single-path recursion state for the reduction checks.
class PathState {
 public:
  explicit PathState(const ARParams& params)
      : a_(params.coeffs().begin(), params.coeffs().end()), hist_(a_.size(), 0.0) {}

  // Advances one step and returns X_n.
  double step(double y) {
    double s = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) s += a_[k] * hist_[k];
    const double xn = s + y;
    std::rotate(hist_.rbegin(), hist_.rbegin() + 1, hist_.rend());
    hist_[0] = xn;
    return xn;
  }

  // X_{n-lag} relative to the last step (lag 0 is the latest value).
  double lagged(std::size_t lag) const { return lag < hist_.size() ? hist_[lag] : 0.0; }

 private:
  std::vector<double> a_;
  std::vector<double> hist_;
};

void validate_grid(const std::vector<std::int64_t>& grid) {
  if (grid.empty()) throw PreconditionError("grid must not be empty");
  if (grid.front() < 1) throw PreconditionError("grid horizons must be >= 1");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw PreconditionError("grid must be strictly increasing");
  }
}

}  // namespace

Crossing simulate_crossing_time(const ARParams& params, const InnovationSpec& spec, double x,
                                std::int64_t n_max, RngStream& stream) {
  if (n_max < 1) throw PreconditionError("simulate_crossing_time: n_max must be >= 1");
  return detail::with_sampler(spec, [&](auto draw) {
    return run_recursion(params.coeffs(), x, n_max, [&] { return draw(stream); });
  });
}

Crossing crossing_time_from(const ARParams& params, std::span<const double> innovations,
                            double x) {
  std::size_t i = 0;
  return run_recursion(params.coeffs(), x, static_cast<std::int64_t>(innovations.size()),
                       [&] { return innovations[i++]; });
}

std::vector<double> simulate_path(const ARParams& params, const InnovationSpec& spec,
                                  std::int64_t n, RngStream& stream) {
  std::vector<double> path;
  path.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
  PathState state(params);
  for (std::int64_t i = 0; i < n; ++i) path.push_back(state.step(spec.draw(stream)));
  return path;
}

void finalize_curve(SurvivalCurve& curve) {
  const std::size_t g = curve.grid.size();
  const double paths = static_cast<double>(curve.paths);
  curve.p_hat.assign(g, 0.0);
  curve.std_err.assign(g, 0.0);
  curve.zero_flag.assign(g, false);
  curve.upper_bound.assign(g, 0.0);
  for (std::size_t i = 0; i < g; ++i) {
    const double p = static_cast<double>(curve.survivors[i]) / paths;
    curve.p_hat[i] = p;
    curve.std_err[i] = std::sqrt(p * (1.0 - p) / paths);
    curve.zero_flag[i] = curve.survivors[i] == 0;
    curve.upper_bound[i] = curve.zero_flag[i] ? 3.0 / paths : p;
  }
  // More than 0.1% non-finite paths invalidates the estimate.
  curve.valid = curve.non_finite * 1000 <= curve.paths;
}

SurvivalCurve estimate_survival(const ARParams& params, const InnovationSpec& spec, double x,
                                std::vector<std::int64_t> grid, std::uint64_t paths,
                                std::uint64_t seed, const EstimateOptions& options) {
  validate_grid(grid);
  if (paths < 1) throw PreconditionError("estimate_survival: paths must be >= 1");
  const std::int64_t n_max = grid.back();
  const std::size_t g = grid.size();
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(options.workers, 1, paths));

  // hist[j] counts paths whose tau falls in (grid[j-1], grid[j]]; hist[g] is
  // the paths that never crossed.
  std::vector<std::vector<std::uint64_t>> hist(workers, std::vector<std::uint64_t>(g + 1, 0));
  std::vector<std::uint64_t> non_finite(workers, 0);

  auto work = [&](unsigned w) {
    const std::uint64_t begin = paths * w / workers;
    const std::uint64_t end = paths * (w + 1) / workers;
    auto& local = hist[w];
    detail::with_sampler(spec, [&](auto draw) {
      for (std::uint64_t i = begin; i < end; ++i) {
        RngStream stream(seed, i);
        const Crossing c =
            run_recursion(params.coeffs(), x, n_max, [&] { return draw(stream); });
        if (!c.finite) ++non_finite[w];
        const auto j = static_cast<std::size_t>(
            std::lower_bound(grid.begin(), grid.end(), c.tau) - grid.begin());
        ++local[j];
      }
      return 0;
    });
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }

  SurvivalCurve curve;
  curve.params = params;
  curve.spec = spec;
  curve.x = x;
  curve.grid = std::move(grid);
  curve.paths = paths;
  curve.seed = seed;
  curve.survivors.assign(g, 0);
  std::vector<std::uint64_t> total(g + 1, 0);
  for (unsigned w = 0; w < workers; ++w) {
    for (std::size_t j = 0; j <= g; ++j) total[j] += hist[w][j];
    curve.non_finite += non_finite[w];
  }
  std::uint64_t above = total[g];
  for (std::size_t i = g; i-- > 0;) {
    curve.survivors[i] = above;
    above += total[i];
  }
  finalize_curve(curve);
  return curve;
}

unsigned default_workers() {
  if (const char* env = std::getenv("ARSURV_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ReductionReport pathwise_reduction_check(const ARParams& params, const InnovationSpec& spec,
                                         ReductionKind kind, std::uint64_t paths,
                                         std::int64_t n_max, std::uint64_t seed) {
  if (paths < 1 || n_max < 1) {
    throw PreconditionError("pathwise_reduction_check: need paths >= 1 and n_max >= 1");
  }
  constexpr double kRelTol = 1e-8;
  ReductionReport report;
  report.kind = kind;

  const bool order2 = params.order() == 2;
  const double a1 = params.a(1);
  const double a2 = order2 ? params.a(2) : 0.0;
  // Coefficients of the transform W_n = X_n + b X_{n-1} and of its AR(1)
  // recursion W_n = rho W_{n-1} + Y_n.
  double b = 0.0;
  double rho = 0.0;
  switch (kind) {
    case ReductionKind::NorthWest:
      if (!order2 || std::fabs(a2 - (a1 + 1.0)) > 1e-12) {
        throw PreconditionError("north-west reduction needs order 2 and a2 = a1 + 1");
      }
      b = 1.0;
      rho = a2;
      break;
    case ReductionKind::AR1: {
      const bool allowed = order2 && a1 * a1 + 4.0 * a2 > 0.0 &&
                           ((a1 < 0.0 && a2 < 0.0) || (a2 > 0.0 && a1 + a2 < 1.0));
      if (!allowed) {
        throw PreconditionError(
            "AR(1) reduction needs order 2, a1^2 + 4 a2 > 0 and either a1, a2 < 0 or "
            "a2 > 0 with a1 + a2 < 1");
      }
      const double s2 = ar2_closed_form(a1, a2).s2.real();
      b = -s2;
      rho = -a2 / s2;
      break;
    }
    case ReductionKind::RandomWalk:
      if (!order2 || std::fabs(a1 + a2 - 1.0) > 1e-12 || !(std::fabs(a2) < 1.0)) {
        throw PreconditionError("random-walk reduction needs order 2, a1 + a2 = 1, |a2| < 1");
      }
      b = a2;
      rho = 1.0;
      break;
    case ReductionKind::Integration:
      break;
  }
  if (kind != ReductionKind::Integration) report.rho = rho;

  const ARParams integrated =
      kind == ReductionKind::Integration ? integrate_params(params) : params;

  for (std::uint64_t i = 0; i < paths; ++i) {
    RngStream stream(seed, i);
    PathState base(params);
    PathState lifted(integrated);
    double w_prev = 0.0;
    double running = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const double y = spec.draw(stream);
      const double xn = base.step(y);
      double lhs = 0.0;
      double rhs = 0.0;
      double scale = 1.0;
      if (kind == ReductionKind::Integration) {
        running += xn;
        lhs = lifted.step(y);
        rhs = running;
        scale = std::max({scale, std::fabs(lhs), std::fabs(rhs)});
      } else {
        const double x_prev = base.lagged(1);
        lhs = xn + b * x_prev;
        rhs = rho * w_prev + y;
        scale = std::max({scale, std::fabs(xn), std::fabs(b * x_prev), std::fabs(rho * w_prev),
                          std::fabs(y)});
        w_prev = lhs;
      }
      const double err = std::fabs(lhs - rhs) / scale;
      report.max_relative_error = std::max(report.max_relative_error, err);
      ++report.checks;
      if (!(err <= kRelTol)) ++report.violations;
    }
  }
  return report;
}

const char* to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::NorthWest: return "north_west";
    case ReductionKind::AR1: return "ar1";
    case ReductionKind::RandomWalk: return "random_walk";
    case ReductionKind::Integration: return "integration";
  }
  return "unknown";
}

ReductionKind reduction_from_string(const std::string& name) {
  for (auto k : {ReductionKind::NorthWest, ReductionKind::AR1, ReductionKind::RandomWalk,
                 ReductionKind::Integration}) {
    if (name == to_string(k)) return k;
  }
  throw PreconditionError("unknown reduction kind: " + name);
}

}  // namespace arsurv

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arsurv/ar_params.hpp"
#include "arsurv/innovations.hpp"
#include "arsurv/rng.hpp"

namespace arsurv {

// First index n >= 1 with X_n > x, or n_max + 1 if the path stays at or below
// the barrier through n_max. A path whose value becomes non-finite stops at
// that step with finite == false; tau is then the step where it happened.
struct Crossing {
  std::int64_t tau = 0;
  bool finite = true;
};

Crossing simulate_crossing_time(const ARParams& params, const InnovationSpec& spec,
                                double x, std::int64_t n_max, RngStream& stream);

// Same recursion, driven by an explicit innovation sequence; n_max is the
// sequence length.
Crossing crossing_time_from(const ARParams& params, std::span<const double> innovations,
                            double x);

// X_1..X_n with innovations drawn from the stream.
std::vector<double> simulate_path(const ARParams& params, const InnovationSpec& spec,
                                  std::int64_t n, RngStream& stream);

// Monte Carlo estimate of p_N(x) = P(max_{n<=N} X_n <= x) on a grid of
// horizons. Immutable once built.
struct SurvivalCurve {
  ARParams params{0.0};
  InnovationSpec spec = InnovationSpec::gaussian();
  double x = 0.0;
  std::vector<std::int64_t> grid;
  std::vector<std::uint64_t> survivors;  // paths with tau > grid[i]
  std::uint64_t paths = 0;
  std::vector<double> p_hat;
  std::vector<double> std_err;  // sqrt(p(1-p)/paths)
  std::vector<bool> zero_flag;  // no survivors observed
  std::vector<double> upper_bound;  // 3/paths where zero_flag, else p_hat
  std::uint64_t seed = 0;
  std::uint64_t non_finite = 0;
  bool valid = true;  // false if more than 0.1% of paths went non-finite
};

// Fills p_hat, std_err, zero_flag and upper_bound from survivors and paths.
void finalize_curve(SurvivalCurve& curve);

struct EstimateOptions {
  unsigned workers = 1;
};

// One crossing time per path (n_max = grid.back()); path i draws from
// RngStream(seed, i), so the result does not depend on the worker count.
// Throws PreconditionError unless the grid is strictly increasing with
// grid[0] >= 1 and paths >= 1.
SurvivalCurve estimate_survival(const ARParams& params, const InnovationSpec& spec,
                                double x, std::vector<std::int64_t> grid,
                                std::uint64_t paths, std::uint64_t seed,
                                const EstimateOptions& options = {});

// Default worker count: $ARSURV_WORKERS if set and positive, else the
// hardware concurrency (at least 1).
unsigned default_workers();

enum class ReductionKind {
  NorthWest,     // Z_n = X_n + X_{n-1} is AR(1) with coefficient a2; needs a2 = a1 + 1
  AR1,           // Z_n = X_n - s2 X_{n-1} is AR(1) with coefficient -a2/s2
  RandomWalk,    // S_n = X_n + a2 X_{n-1} is a random walk; needs a1 + a2 = 1, |a2| < 1
  Integration,   // running sum of AR(p) equals the AR(p+1) process with T_p(a)
};

struct ReductionReport {
  ReductionKind kind = ReductionKind::NorthWest;
  std::uint64_t violations = 0;
  std::uint64_t checks = 0;
  std::optional<double> rho;  // AR(1) coefficient of the reduced process
  double max_relative_error = 0.0;
};

// Simulates X and the transformed process from shared innovations and checks
// the transformed recursion at every step to 1e-8 relative tolerance.
// Throws PreconditionError if the parameters violate the reduction's
// coefficient constraints.
ReductionReport pathwise_reduction_check(const ARParams& params, const InnovationSpec& spec,
                                         ReductionKind kind, std::uint64_t paths,
                                         std::int64_t n_max, std::uint64_t seed);

const char* to_string(ReductionKind kind);
ReductionKind reduction_from_string(const std::string& name);

}  // namespace arsurv

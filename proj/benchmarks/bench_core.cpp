#include <benchmark/benchmark.h>

#include "arsurv/coeffs.hpp"
#include "arsurv/mc.hpp"
#include "arsurv/oracle.hpp"
#include "arsurv/rng.hpp"

namespace {

void BM_Philox(benchmark::State& state) {
  std::array<std::uint32_t, 4> ctr{0, 0, 0, 0};
  for (auto _ : state) {
    auto out = arsurv::philox4x32_10(ctr, {0x1234, 0x5678});
    benchmark::DoNotOptimize(out);
    ++ctr[0];
  }
}
BENCHMARK(BM_Philox);

void BM_GaussianDraw(benchmark::State& state) {
  arsurv::RngStream stream(7, 0);
  const auto spec = arsurv::InnovationSpec::gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(spec.draw(stream));
}
BENCHMARK(BM_GaussianDraw);

// Steps per second of the crossing kernel; barrier far away so no path stops.
void BM_CrossingKernel(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  std::vector<double> a(static_cast<std::size_t>(p), 0.1 / p);
  const arsurv::ARParams params(a);
  const auto spec = arsurv::InnovationSpec::gaussian();
  constexpr std::int64_t kSteps = 4096;
  std::uint64_t path = 0;
  for (auto _ : state) {
    arsurv::RngStream stream(1, path++);
    benchmark::DoNotOptimize(arsurv::simulate_crossing_time(params, spec, 1e300, kSteps, stream));
  }
  state.SetItemsProcessed(state.iterations() * kSteps);
}
BENCHMARK(BM_CrossingKernel)->Arg(1)->Arg(2)->Arg(3)->Arg(8);

void BM_EstimateRandomWalk(benchmark::State& state) {
  const std::vector<std::int64_t> grid{16, 64, 256, 1024};
  for (auto _ : state) {
    auto curve = arsurv::estimate_survival(arsurv::ARParams{1.0}, arsurv::InnovationSpec::gaussian(),
                                           0.0, grid, 10'000, 3);
    benchmark::DoNotOptimize(curve.survivors.data());
  }
}
BENCHMARK(BM_EstimateRandomWalk)->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  const auto support = *arsurv::InnovationSpec::rademacher().finite_support();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(arsurv::enumerate_survival(arsurv::ARParams{2.0, -1.0}, support, 0.0, n));
  }
}
BENCHMARK(BM_Enumerate)->Arg(10)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_CharpolyRoots(benchmark::State& state) {
  const arsurv::ARParams params{0.3, -0.2, 0.1, 0.05, -0.02, 0.01, 0.2, -0.1};
  for (auto _ : state) benchmark::DoNotOptimize(arsurv::charpoly_roots(params));
}
BENCHMARK(BM_CharpolyRoots);

}  // namespace

BENCHMARK_MAIN();

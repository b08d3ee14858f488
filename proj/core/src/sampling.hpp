#pragma once

// Per-kind samplers shared by InnovationSpec::draw and the simulation
// kernels, which dispatch on the kind once per path.

#include <cmath>
#include <numbers>

#include "arsurv/innovations.hpp"
#include "arsurv/rng.hpp"

namespace arsurv::detail {

inline double draw_kind(const Gaussian& g, RngStream& s) {
  const double u1 = s.next_uniform();
  const double u2 = s.next_uniform();
  return g.mu + g.sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}
inline double draw_kind(const Rademacher&, RngStream& s) {
  return (s.next_u64() >> 63) != 0 ? 1.0 : -1.0;
}
inline double draw_kind(const TwoPoint& t, RngStream& s) {
  return (s.next_u64() >> 63) != 0 ? t.y : -t.y;
}
inline double draw_kind(const Uniform& u, RngStream& s) {
  return u.lo + (u.hi - u.lo) * s.next_uniform();
}
inline double draw_kind(const CenteredExponential& e, RngStream& s) {
  return -std::log(s.next_uniform()) / e.rate - 1.0 / e.rate;
}

// Calls f(draw) where draw(RngStream&) samples the spec's kind without a
// per-draw variant dispatch.
template <class F>
decltype(auto) with_sampler(const InnovationSpec& spec, F&& f) {
  return std::visit(
      [&f](const auto& kind) {
        return f([&kind](RngStream& s) { return draw_kind(kind, s); });
      },
      spec.kind());
}

}  // namespace arsurv::detail

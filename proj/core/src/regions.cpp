#include "arsurv/regions.hpp"

#include <algorithm>
#include <cmath>

#include "arsurv/coeffs.hpp"

namespace arsurv {

bool in_region_c(double a1, double a2) {
  const double disc = a1 * a1 + 4.0 * a2;
  return (a1 >= 2.0 && disc > 0.0) ||
         (a1 > 0.0 && a1 < 2.0 && a1 + a2 > 1.0) ||
         (disc == 0.0 && a1 > 2.0) ||
         (a1 == 0.0 && a2 > 1.0);
}

bool in_region_p(double a1, double a2) {
  return a1 + a2 == 1.0 && a2 >= -1.0 && a2 <= 1.0;
}

bool in_region_e1(double a1, double a2) {
  return a1 < 0.0 && a2 > 0.0 && a2 > 1.0 + a1;
}

bool in_region_e2(double a1, double a2) { return a1 <= 0.0 && a2 <= 0.0; }

bool in_region_e3(double a1, double a2) { return a1 > 0.0 && a1 * a1 + 4.0 * a2 < 0.0; }

RegionLabel classify_ar2(double a1, double a2) {
  if (in_region_p(a1, a2)) return {MajorRegion::P, std::nullopt};
  if (in_region_c(a1, a2)) return {MajorRegion::C, std::nullopt};
  SubRegion sub = SubRegion::EOther;
  if (in_region_e1(a1, a2)) {
    sub = SubRegion::E1;
  } else if (in_region_e2(a1, a2)) {
    sub = SubRegion::E2;
  } else if (in_region_e3(a1, a2)) {
    sub = SubRegion::E3;
  }
  return {MajorRegion::E, sub};
}

bool in_delta_p(const ARParams& params) {
  constexpr double kMargin = 1e-9;
  const auto roots = charpoly_roots(params);
  return std::all_of(roots.begin(), roots.end(),
                     [](std::complex<double> r) { return std::abs(r) < 1.0 - kMargin; });
}

bool ar3_integrated_region(double a1, double a2, double a3) {
  return std::fabs(a1 + a2 + a3 - 1.0) <= 1e-12 && a2 < std::min(1.0, 3.0 - 2.0 * a1) &&
         a2 > -a1;
}

const char* to_string(MajorRegion region) {
  switch (region) {
    case MajorRegion::C: return "C";
    case MajorRegion::P: return "P";
    case MajorRegion::E: return "E";
  }
  return "?";
}

const char* to_string(SubRegion sub) {
  switch (sub) {
    case SubRegion::E1: return "E1";
    case SubRegion::E2: return "E2";
    case SubRegion::E3: return "E3";
    case SubRegion::EOther: return "EOther";
  }
  return "?";
}

}  // namespace arsurv

#pragma once

#include <optional>

#include "arsurv/ar_params.hpp"

namespace arsurv {

// Parameter regions of the AR(2) plane:
//   C  positive limit of the survival probability,
//   P  polynomial decay (the segment a1 + a2 = 1, a2 in [-1, 1]),
//   E  everything else (super-polynomial decay).
enum class MajorRegion { C, P, E };

// Sub-regions of E handled by separate arguments. EOther collects points of
// E that fall in none of E1, E2, E3.
enum class SubRegion { E1, E2, E3, EOther };

struct RegionLabel {
  MajorRegion major = MajorRegion::E;
  std::optional<SubRegion> sub;  // engaged iff major == E

  friend bool operator==(const RegionLabel&, const RegionLabel&) = default;
};

// Boundaries are taken literally (exact floating-point comparisons).
bool in_region_c(double a1, double a2);
bool in_region_p(double a1, double a2);
bool in_region_e1(double a1, double a2);
bool in_region_e2(double a1, double a2);
bool in_region_e3(double a1, double a2);

RegionLabel classify_ar2(double a1, double a2);

// True iff every characteristic root has modulus < 1 - 1e-9.
bool in_delta_p(const ARParams& params);

// Conditions under which an AR(3) process is an integrated AR(2) process
// with stable coefficients:
//   a1 + a2 + a3 = 1 (within 1e-12),  a2 < min(1, 3 - 2 a1),  a2 > -a1.
bool ar3_integrated_region(double a1, double a2, double a3);

const char* to_string(MajorRegion region);
const char* to_string(SubRegion sub);

}  // namespace arsurv

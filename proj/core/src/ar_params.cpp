#include "arsurv/ar_params.hpp"

#include <cmath>
#include <sstream>

#include "arsurv/errors.hpp"

namespace arsurv {

ARParams::ARParams(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw PreconditionError("AR order must be at least 1");
  }
  for (double a : coeffs_) {
    if (!std::isfinite(a)) {
      throw PreconditionError("AR coefficients must be finite");
    }
  }
}

double ARParams::abs_sum() const {
  double s = 0.0;
  for (double a : coeffs_) s += std::fabs(a);
  return s;
}

std::string ARParams::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ", ";
    os << coeffs_[i];
  }
  os << ')';
  return os.str();
}

}  // namespace arsurv

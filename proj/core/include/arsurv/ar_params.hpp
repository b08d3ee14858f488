#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace arsurv {

// Coefficients (a_1, ..., a_p) of the recursion
//   X_n = a_1 X_{n-1} + ... + a_p X_{n-p} + Y_n,   X_n = 0 for n <= 0.
//
// Trailing zero coefficients are allowed, so (1, 0) is the random walk
// written as an order-2 process.
class ARParams {
 public:
  explicit ARParams(std::vector<double> coeffs);
  ARParams(std::initializer_list<double> coeffs)
      : ARParams(std::vector<double>(coeffs)) {}

  int order() const { return static_cast<int>(coeffs_.size()); }
  std::span<const double> coeffs() const { return coeffs_; }

  // 1-based access, a(1) is the lag-one coefficient.
  double a(int k) const { return coeffs_[static_cast<std::size_t>(k - 1)]; }

  double abs_sum() const;
  std::string to_string() const;

  friend bool operator==(const ARParams&, const ARParams&) = default;

 private:
  std::vector<double> coeffs_;
};

}  // namespace arsurv

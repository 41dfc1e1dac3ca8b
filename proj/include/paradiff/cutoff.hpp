#pragma once

namespace paradiff {

// Radial cutoff: value 1 for t <= 11/10, 0 for t >= 13/10, and a C^inf
// monotone transition in between, built as the normalized integral of the
// bump exp(-1/(s(1-s))). The quadrature grid is fixed, so values are
// reproducible bit for bit.
struct CutoffProfile {
  static constexpr double kLower = 1.1;
  static constexpr double kUpper = 1.3;

  double operator()(double t) const;
  double deriv(double t) const;   // d/dt
  double deriv2(double t) const;  // d^2/dt^2
};

}  // namespace paradiff

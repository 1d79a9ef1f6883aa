#pragma once

// Independent reference computations for tests. None of these call into the
// code paths they check.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

// E(m) by adaptive Gauss-Kronrod quadrature of its defining integral.
inline double elliptic_e(double m) {
  auto integrand = [m](double theta) {
    const double s = std::sin(theta);
    return std::sqrt(std::max(0.0, 1.0 - m * s * s));
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, std::numbers::pi / 2, 15, 1e-14);
}

// Trapezoidal mean of a periodic function over [0, period).
inline double periodic_mean(const std::function<double(double)>& f,
                            double period, int samples) {
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) sum += f(period * i / samples);
  return sum / samples;
}

}  // namespace oracle

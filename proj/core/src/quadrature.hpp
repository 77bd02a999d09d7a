#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <limits>

namespace ssde::detail {

// Endpoint-singular integrals over [a, b]; double-exponential rules cope with
// the x^(1 - alpha) behaviour of Levy-measure integrands at the origin.
template <class F>
double integrate_finite(F f, double a, double b, double tol = 1e-13) {
  if (!(b > a)) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> rule;
  return rule.integrate(f, a, b, tol);
}

template <class F>
double integrate_to_infinity(F f, double a, double tol = 1e-13) {
  static thread_local boost::math::quadrature::exp_sinh<double> rule;
  return rule.integrate(f, a, std::numeric_limits<double>::infinity(), tol);
}

}  // namespace ssde::detail

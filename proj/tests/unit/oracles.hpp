#pragma once

// Reference computations for the tests. They deliberately avoid the library:
// Boost's extended-precision gamma and Gauss-Kronrod quadrature after
// substitutions that remove the endpoint singularities.
//
// For int_0^inf g(x) c x^(-1-alpha) dx the head (0,1) uses x = s^m with
// m = 1/(2-alpha), which turns it into c m int_0^1 g(x)/x^2 ds, and the tail
// uses x = 1/y, y = s^m' with m' = 1/(alpha-1), which turns it into
// c m' int_0^1 y g(1/y) ds. Callers pass g(x)/x^2 and y g(1/y) directly so
// no cancellation happens near the endpoints.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

namespace oracle {

inline long double gamma(long double x) { return boost::math::tgamma(x); }

inline double c_alpha(double alpha) {
  const long double a = alpha;
  return static_cast<double>(a * (a - 1) / gamma(2 - a));
}

template <class F>
long double gk(F f) {
  return boost::math::quadrature::gauss_kronrod<long double, 31>::integrate(f, 0.0L, 1.0L, 15, 1e-14L);
}

// c int_0^1 g(x) x^(-1-alpha) dx, given h(x) = g(x) / x^2.
template <class H>
long double head_integral(H h, double alpha) {
  const long double m = 1.0L / (2.0L - alpha);
  return c_alpha(alpha) * m * gk([&](long double s) { return h(std::pow(s, m)); });
}

// c int_1^inf g(x) x^(-1-alpha) dx, given k(y) = y g(1/y).
template <class K>
long double tail_integral(K k, double alpha) {
  const long double m = 1.0L / (alpha - 1.0L);
  return c_alpha(alpha) * m * gk([&](long double s) { return k(std::pow(s, m)); });
}

// (log(1+x) - x) / x^2
inline long double log_h(long double x) {
  if (x < 0.01L) {
    long double sum = 0;
    long double p = 1;
    for (int k = 2; k < 14; ++k) {
      sum += ((k % 2 == 0) ? -p : p) / k;
      p *= x;
    }
    return sum;
  }
  return (std::log1p(x) - x) / (x * x);
}

// int_0^inf (log(1+x) - x) c_alpha x^(-1-alpha) dx
inline double xi_jump_drift(double alpha) {
  auto k = [](long double y) { return y <= 0 ? -1.0L : y * (std::log1p(y) - std::log(y)) - 1.0L; };
  return static_cast<double>(head_integral(log_h, alpha) + tail_integral(k, alpha));
}

// int_0^inf ((1+x)^lambda - 1 - lambda x) c_alpha x^(-1-alpha) dx
inline double power_moment_integral(double lambda, double alpha) {
  const long double l = lambda;
  auto h = [l](long double x) {
    if (x < 0.01L) {
      // binomial series from the x^2 term
      long double coef = l * (l - 1) / 2;
      long double sum = 0;
      long double p = 1;
      for (int k = 2; k < 14; ++k) {
        sum += coef * p;
        coef *= (l - k) / (k + 1);
        p *= x;
      }
      return sum;
    }
    return (std::pow(1 + x, l) - 1 - l * x) / (x * x);
  };
  auto k = [l](long double y) { return y <= 0 ? -l : std::pow(y, 1 - l) * std::pow(1 + y, l) - y - l; };
  return static_cast<double>(head_integral(h, alpha) + tail_integral(k, alpha));
}

}  // namespace oracle

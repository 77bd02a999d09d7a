#include "ssde/lamperti.hpp"

#include <algorithm>
#include <cmath>

#include "quadrature.hpp"
#include "ssde/errors.hpp"
#include "ssde/specfun.hpp"
#include "ssde/stable.hpp"

namespace ssde {
namespace {

// (log(1 + x) - x) / x^2, finite at 0
double log1p_minus_x_over_x2(double x) {
  if (std::abs(x) < 1e-3) return -0.5 + x * (1.0 / 3.0 + x * (-0.25 + x * 0.2));
  return (std::log1p(x) - x) / (x * x);
}

// log(1 + x) / x, finite at 0
double log1p_over_x(double x) { return std::abs(x) < 1e-8 ? 1.0 - 0.5 * x : std::log1p(x) / x; }

// int_0^dt exp(r s) ds
double exp_segment(double r, double dt) {
  if (r == 0.0) return dt;
  return std::expm1(r * dt) / r;
}

}  // namespace

void XiConfig::validate() const {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw DomainError("xi cutoff must be finite and > 0");
  if (!(grid_step > 0.0)) throw DomainError("xi grid_step must be > 0");
  if (!(absorption_floor >= 0.0)) throw DomainError("absorption_floor must be >= 0");
}

double xi_jump_drift_integral(double alpha) {
  const double c = c_alpha(alpha);
  // written as (.)/x^2 * x^(1-alpha) so nothing overflows near 0
  auto head = [&](double x) { return x > 0.0 ? log1p_minus_x_over_x2(x) * c * std::pow(x, 1.0 - alpha) : 0.0; };
  // x = 1/y on (1, inf): dx = -dy / y^2, and log(1 + 1/y) = log1p(y) - log(y)
  auto tail = [&](double y) {
    if (!(y > 0.0)) return 0.0;
    return (y * (std::log1p(y) - std::log(y)) - 1.0) * c * std::pow(y, alpha - 2.0);
  };
  return detail::integrate_finite(head, 0.0, 1.0) + detail::integrate_finite(tail, 0.0, 1.0);
}

XiScheme::XiScheme(const Parameters& params, const XiConfig& cfg)
    : params_(params), cfg_(cfg), drift_used_(params.theta + xi_jump_drift_integral(params.alpha)) {
  cfg_.validate();
  const double alpha = params.alpha;
  const double c = params.c_alpha;
  const double eps = cfg_.cutoff;
  auto log_jump = [&](double x) { return std::log1p(x) * c * std::pow(x, -1.0 - alpha); };
  if (eps < 1.0) {
    compensator_rate_ = detail::integrate_finite(log_jump, eps, 1.0) + detail::integrate_to_infinity(log_jump, 1.0);
  } else {
    compensator_rate_ = detail::integrate_to_infinity(log_jump, eps);
  }
  small_var_ = detail::integrate_finite(
      [&](double x) {
        if (!(x > 0.0)) return 0.0;
        const double l = log1p_over_x(x);
        return l * l * c * std::pow(x, 1.0 - alpha);
      },
      0.0, eps);
  jump_rate_ = jump_rate_above(eps, alpha);
}

LevyPathXi XiScheme::simulate(double horizon, RngStream& rng) const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("simulate_xi: horizon must be > 0");
  LevyPathXi out;
  out.drift_used = drift_used_;
  out.cutoff_used = cfg_.cutoff;
  out.compensator_rate = compensator_rate_;
  out.slope = slope();
  out.times.push_back(0.0);
  out.values.push_back(0.0);
  walk(rng, horizon, [&](double, double, double t1, double, double post) {
    out.times.push_back(t1);
    out.values.push_back(post);
    return true;
  });
  return out;
}

double XiScheme::terminal(double horizon, RngStream& rng) const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("simulate_xi: horizon must be > 0");
  double last = 0.0;
  walk(rng, horizon, [&](double, double, double, double, double post) {
    last = post;
    return true;
  });
  return last;
}

LevyPathXi simulate_xi(const Parameters& params, double horizon, double eps, RngStream& rng) {
  XiConfig cfg;
  cfg.cutoff = eps;
  return XiScheme(params, cfg).simulate(horizon, rng);
}

ExponentialFunctional exponential_functional(const LevyPathXi& xi, double exponent) {
  if (!(exponent > 0.0)) throw DomainError("exponential_functional: exponent must be > 0");
  ExponentialFunctional a;
  a.growth = exponent * xi.slope;
  const std::size_t n = xi.times.size();
  a.path.times = xi.times;
  a.path.values.assign(n, 0.0);
  a.log_integrand.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.log_integrand[i] = exponent * xi.values[i];
    if (i + 1 < n) {
      const double dt = xi.times[i + 1] - xi.times[i];
      a.path.values[i + 1] = a.path.values[i] + std::exp(a.log_integrand[i]) * exp_segment(a.growth, dt);
    }
  }
  return a;
}

double time_change_inverse(const ExponentialFunctional& a, double t) {
  const auto& times = a.path.times;
  const auto& values = a.path.values;
  if (times.empty() || !(t >= 0.0)) throw DomainError("time_change_inverse: need t >= 0 and a nonempty path");
  if (t >= values.back()) throw HorizonExhausted("time_change_inverse: clock value beyond simulated range");
  // last node with A <= t
  const auto it = std::upper_bound(values.begin(), values.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - values.begin()) - 1;
  const double rest = (t - values[i]) * std::exp(-a.log_integrand[i]);
  const double s = a.growth == 0.0 ? rest : std::log1p(a.growth * rest) / a.growth;
  return times[i] + s;
}

namespace {

template <class Sink>
void lamperti_run(const Parameters& params, double x0, double horizon, RngStream& rng, const XiConfig& cfg,
                  Sink& sink) {
  if (!(x0 > 0.0)) throw DomainError("lamperti_pssmp: x0 must be > 0");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw DomainError("lamperti_pssmp: horizon must be >= 0");
  const XiScheme scheme(params, cfg);
  const double k = 1.0 - params.eta;
  const double slope = scheme.slope();
  const double growth = k * slope;
  const double scale = std::pow(x0, k);  // x0^(1/gamma)
  const double target = horizon / scale;
  const double floor = cfg.absorption_floor;

  sink.start(0.0, x0);
  if (x0 <= floor) {
    sink.absorb(0.0);
    return;
  }
  if (horizon == 0.0) return;
  double clock = 0.0;
  scheme.walk(rng, std::numeric_limits<double>::infinity(),
              [&](double t0, double xi0, double t1, double pre, double post) {
                const double weight = std::exp(k * xi0);
                const double d_clock = weight * exp_segment(growth, t1 - t0);
                if (clock + d_clock > target) {
                  const double rest = (target - clock) / weight;
                  const double s = growth == 0.0 ? rest : std::log1p(growth * rest) / growth;
                  const double value = x0 * std::exp(xi0 + slope * s);
                  if (value <= floor) {
                    sink.absorb(horizon);
                  } else {
                    sink.node(horizon, value);
                  }
                  return false;
                }
                clock += d_clock;
                const double z_time = scale * clock;
                if (x0 * std::exp(pre) <= floor) {
                  sink.absorb(z_time);
                  return false;
                }
                sink.node(z_time, x0 * std::exp(post));
                return true;
              });
}

struct PssmpPathSink {
  SamplePath path;
  double horizon;
  void start(double t, double v) {
    path.times.push_back(t);
    path.values.push_back(v);
  }
  void node(double t, double v) {
    path.times.push_back(t);
    path.values.push_back(v);
  }
  void absorb(double t) {
    path.absorbed_at = t;
    if (t > path.times.back()) {
      path.times.push_back(t);
      path.values.push_back(0.0);
    } else {
      path.values.back() = 0.0;
    }
    if (t < horizon) {
      path.times.push_back(horizon);
      path.values.push_back(0.0);
    }
  }
};

struct PssmpTerminalSink {
  TerminalState state;
  void start(double, double v) { state.value = v; }
  void node(double, double v) { state.value = v; }
  void absorb(double t) {
    state.value = 0.0;
    state.absorbed_at = t;
  }
};

}  // namespace

SamplePath lamperti_pssmp(const Parameters& params, double x0, double horizon, RngStream& rng,
                          const XiConfig& cfg) {
  PssmpPathSink sink{{}, horizon};
  lamperti_run(params, x0, horizon, rng, cfg, sink);
  return std::move(sink.path);
}

TerminalState lamperti_terminal(const Parameters& params, double x0, double horizon, RngStream& rng,
                                const XiConfig& cfg) {
  PssmpTerminalSink sink;
  lamperti_run(params, x0, horizon, rng, cfg, sink);
  return sink.state;
}

bool cramer_condition_check(const Parameters& params) {
  constexpr int kGrid = 512;
  const double top = 1.0 - params.eta;
  auto positive = [&](double a) { return laplace_exponent_xi(a, params.alpha, params.theta) > 0.0; };
  for (int i = 0; i < kGrid; ++i) {
    // log-spaced over (1e-6 top, top), right end excluded
    const double a = top * std::pow(10.0, -6.0 + 6.0 * i / kGrid);
    if (positive(a)) return true;
  }
  return positive(top - 1e-9);
}

}  // namespace ssde

#include "ssde/sde.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "quadrature.hpp"
#include "ssde/specfun.hpp"
#include "ssde/errors.hpp"
#include "ssde/stable.hpp"

namespace ssde {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Next point of the global grid k * step, snapped onto the horizon when it
// lands within rounding distance of it.
double grid_point(std::size_t k, double step, double horizon) {
  const double t = static_cast<double>(k) * step;
  return (horizon - t < 1e-9 * step) ? horizon : t;
}

struct PathSink {
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

struct TerminalSink {
  TerminalState state;

  void start(double /*t*/, double v) { state.value = v; }
  void node(double /*t*/, double v) { state.value = v; }
  void absorb(double t) {
    state.value = 0.0;
    state.absorbed_at = t;
  }
};

}  // namespace

double SamplePath::value_at(double t) const {
  if (times.empty()) return 0.0;
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return values.front();
  return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

void SchemeConfig::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be > 0");
  if (!(grid_step > 0.0)) throw DomainError("grid_step must be > 0");
  if (grid_step > horizon) throw DomainError("grid_step must not exceed horizon");
  if (!(jump_cutoff > 0.0)) throw DomainError("jump_cutoff must be > 0");
  if (!(absorption_floor >= 0.0)) throw DomainError("absorption_floor must be >= 0");
}

double jump_map_g(double v, double x, const Parameters& params) {
  if (!(v > 0.0) || !(x > 0.0)) return 0.0;
  const double y = x * std::pow(v, -1.0 / params.alpha);
  return v * std::expm1((1.0 - params.eta) * std::log1p(y));
}

double modulus_constant(const Parameters& params) {
  return std::pow(2.0, 1.0 - 1.0 / params.alpha) * (1.0 - params.eta);
}

bool modulus_bound_check(double v1, double v2, double x, const Parameters& params) {
  const double lhs = std::abs(jump_map_g(v2, x, params) - jump_map_g(v1, x, params));
  const double rhs = modulus_constant(params) * std::pow(std::abs(v2 - v1), 1.0 - 1.0 / params.alpha) * x;
  return lhs <= rhs;
}

// ---------------------------------------------------------------------------
// V-scheme compensator tables.
//
// With a = eps v^(-1/alpha) and h(y) = (1+y)^(1-eta) - 1 the scaling
// g(v, x) = v h(v^(-1/alpha) x) gives
//   int_eps^inf g(v,x) nu(dx)   = K(a),   K(a) = int_a^inf h(y) c y^(-1-alpha) dy
//   int_0^eps   g(v,x)^2 nu(dx) = v Q(a), Q(a) = int_0^a h(y)^2 c y^(-1-alpha) dy
// Both are tabulated once as splines of log K, log Q against log a.

struct VScheme::Tables {
  double alpha;
  double lambda;  // 1 - eta
  double c;
  double log_eps;
  double u_min;
  double u_max;
  double k_min, k_max;  // K at a_min, a_max
  double q_min, q_max;
  boost::math::interpolators::cardinal_cubic_b_spline<double> log_k;
  boost::math::interpolators::cardinal_cubic_b_spline<double> log_q;

  [[nodiscard]] double big_k(double u) const {
    if (u < u_min) {
      const double a = std::exp(u);
      const double a_min = std::exp(u_min);
      return k_min + lambda * c * (std::pow(a, 1.0 - alpha) - std::pow(a_min, 1.0 - alpha)) / (alpha - 1.0);
    }
    if (u > u_max) return k_max * std::exp((lambda - alpha) * (u - u_max));
    return std::exp(log_k(u));
  }

  [[nodiscard]] double big_q(double u) const {
    if (u < u_min) return lambda * lambda * c * std::exp((2.0 - alpha) * u) / (2.0 - alpha);
    if (u > u_max) {
      const double p = 2.0 * lambda - alpha;
      if (std::abs(p) < 1e-12) return q_max + c * (u - u_max);
      return q_max + c * (std::exp(p * u) - std::exp(p * u_max)) / p;
    }
    return std::exp(log_q(u));
  }
};

namespace {

using Tables = VScheme::Tables;

std::shared_ptr<const Tables> build_tables(double alpha, double eta, double eps) {
  constexpr double kDecadeLo = -12.0;
  constexpr double kDecadeHi = 12.0;
  constexpr int kPerDecade = 16;
  const double lambda = 1.0 - eta;
  const double c = c_alpha(alpha);
  const double h = std::log(10.0) / kPerDecade;
  const double u_min = kDecadeLo * std::log(10.0);
  const int n = static_cast<int>((kDecadeHi - kDecadeLo) * kPerDecade) + 1;
  const double u_max = u_min + (n - 1) * h;

  auto hfun = [lambda](double y) { return std::expm1(lambda * std::log1p(y)); };
  // integrands in the log variable u = log y
  auto k_integrand = [&](double u) { return hfun(std::exp(u)) * c * std::exp(-alpha * u); };
  auto q_integrand = [&](double u) {
    const double hv = hfun(std::exp(u));
    return hv * hv * c * std::exp(-alpha * u);
  };
  using GL = boost::math::quadrature::gauss<double, 20>;

  std::vector<double> kv(static_cast<std::size_t>(n));
  std::vector<double> qv(static_cast<std::size_t>(n));
  const double a_max = std::exp(u_max);
  kv.back() = detail::integrate_to_infinity([&](double y) { return hfun(y) * c * std::pow(y, -1.0 - alpha); }, a_max);
  for (int j = n - 2; j >= 0; --j) {
    const double lo = u_min + j * h;
    kv[static_cast<std::size_t>(j)] = kv[static_cast<std::size_t>(j) + 1] + GL::integrate(k_integrand, lo, lo + h);
  }
  qv.front() = lambda * lambda * c * std::exp((2.0 - alpha) * u_min) / (2.0 - alpha);
  for (int j = 1; j < n; ++j) {
    const double lo = u_min + (j - 1) * h;
    qv[static_cast<std::size_t>(j)] = qv[static_cast<std::size_t>(j) - 1] + GL::integrate(q_integrand, lo, lo + h);
  }
  const double k_min = kv.front();
  const double k_max = kv.back();
  const double q_min = qv.front();
  const double q_max = qv.back();
  for (auto& x : kv) x = std::log(x);
  for (auto& x : qv) x = std::log(x);

  return std::make_shared<const Tables>(Tables{
      alpha, lambda, c, std::log(eps), u_min, u_max, k_min, k_max, q_min, q_max,
      boost::math::interpolators::cardinal_cubic_b_spline<double>(kv.begin(), kv.end(), u_min, h),
      boost::math::interpolators::cardinal_cubic_b_spline<double>(qv.begin(), qv.end(), u_min, h)});
}

std::shared_ptr<const Tables> cached_tables(double alpha, double eta, double eps) {
  static std::mutex mutex;
  static std::map<std::tuple<double, double, double>, std::shared_ptr<const Tables>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(alpha, eta, eps);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto tables = build_tables(alpha, eta, eps);
  cache.emplace(key, tables);
  return tables;
}

}  // namespace

VScheme::VScheme(const Parameters& params, const SchemeConfig& cfg)
    : params_(params), cfg_(cfg), drift_(params.v_drift()) {
  cfg_.validate();
  if (std::isfinite(cfg_.jump_cutoff)) {
    tables_ = cached_tables(params.alpha, params.eta, cfg_.jump_cutoff);
  }
}

double VScheme::compensator(double v) const {
  if (!tables_ || !(v > 0.0)) return 0.0;
  return tables_->big_k(tables_->log_eps - std::log(v) / params_.alpha);
}

double VScheme::small_jump_variance(double v) const {
  if (!tables_ || !(v > 0.0)) return 0.0;
  return v * tables_->big_q(tables_->log_eps - std::log(v) / params_.alpha);
}

// Drift-implicit step w = v + (c - K(w)) dt. K grows like a power of v below
// one near the origin, which makes the explicit step overshoot to zero
// whenever K(v) dt > v; K is increasing, so the implicit equation has one root
// and it is positive as long as v + c dt > 0.
constexpr double kExplicitDriftFraction = 0.02;

double VScheme::drift_step(double v, double dt) const {
  const double hi = v + drift_ * dt;
  if (!tables_) return std::max(0.0, hi);
  if (!(hi > 0.0)) return 0.0;
  auto f = [&](double w) { return w - hi + compensator(w) * dt; };
  // K is increasing, so the root lies between v and the explicit Euler value
  const double k_v = compensator(v);
  const double explicit_v = hi - k_v * dt;
  // when K moves little over the step the two schemes agree to second order
  if (k_v * dt <= kExplicitDriftFraction * v) return std::max(0.0, explicit_v);
  double a = std::max(0.0, std::min(v, explicit_v));
  double b = std::min(hi, std::max(v, explicit_v));
  double fa = a == v ? f(v) : f(a);
  double fb = b == v ? f(v) : f(b);
  if (!(fa <= 0.0 && fb >= 0.0)) {
    a = 0.0;
    b = hi;
    fa = -hi;
    fb = f(hi);
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  std::uintmax_t iters = 60;
  const auto [r0, r1] = boost::math::tools::toms748_solve(f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(32), iters);
  return 0.5 * (r0 + r1);
}

template <class Sink>
void VScheme::run(double v0, RngStream& rng, Sink& sink) const {
  if (!(v0 >= 0.0)) throw DomainError("simulate_v: v0 must be >= 0");
  const double horizon = cfg_.horizon;
  const double step = cfg_.grid_step;
  std::vector<JumpEvent> jumps;
  if (tables_) jumps = sample_jumps_above(cfg_.jump_cutoff, 0.0, horizon, params_.alpha, rng);
  const bool gaussian = tables_ && cfg_.gaussian_refinement;

  sink.start(0.0, v0);
  double t = 0.0;
  double v = v0;
  std::size_t k = 1;
  std::size_t next = 0;
  while (t < horizon) {
    const double t_grid = grid_point(k, step, horizon);
    const double t_jump = next < jumps.size() ? jumps[next].time : kInf;
    const double t_next = std::min({t_grid, t_jump, horizon});
    const double dt = t_next - t;

    const double var = gaussian ? small_jump_variance(v) : 0.0;
    v = drift_step(v, dt);
    if (var > 0.0) v = std::max(0.0, v + std::sqrt(var * dt) * rng.normal());

    t = t_next;
    if (t_next >= t_grid) ++k;
    if (t_next >= t_jump) {
      v += jump_map_g(v, jumps[next].size, params_);
      ++next;
    }
    sink.node(t, v);
  }
}

SamplePath VScheme::simulate(double v0, RngStream& rng) const {
  PathSink sink{{}, cfg_.horizon};
  run(v0, rng, sink);
  return std::move(sink.path);
}

double VScheme::terminal(double v0, RngStream& rng) const {
  TerminalSink sink;
  run(v0, rng, sink);
  return sink.state.value;
}

// ---------------------------------------------------------------------------

ZScheme::ZScheme(const Parameters& params, const SchemeConfig& cfg) : params_(params), cfg_(cfg) {
  cfg_.validate();
  const double eps = cfg_.jump_cutoff;
  flow_drift_ = params.theta;
  if (std::isfinite(eps)) {
    jump_rate_ = jump_rate_above(eps, params.alpha);
    flow_drift_ -= compensator_above(eps, params.alpha);
    if (cfg_.gaussian_refinement) diffusion_var_ = small_jump_moments(eps, params.alpha).variance_rate;
  }
}

template <class Sink>
void ZScheme::run(double z0, RngStream& rng, Sink& sink) const {
  if (!(z0 > 0.0)) throw DomainError("simulate_z_absorbed: z0 must be > 0");
  const double horizon = cfg_.horizon;
  const double step = cfg_.grid_step;
  const double eps = cfg_.jump_cutoff;
  const double alpha = params_.alpha;
  const double eta = params_.eta;
  const double one_m_eta = 1.0 - eta;
  const double k_flow = one_m_eta * flow_drift_;  // d(z^(1-eta))/dt along the flow
  const double half_diff_exp = 0.5 * (1.0 + eta);
  const double floor = cfg_.absorption_floor;

  sink.start(0.0, z0);
  if (z0 <= floor) {
    sink.absorb(0.0);
    return;
  }
  double t = 0.0;
  double z = z0;
  std::size_t k = 1;
  while (t < horizon) {
    const double t_grid = grid_point(k, step, horizon);
    const double u = eta == 0.0 ? z : std::pow(z, one_m_eta);

    // Intensity along the flow is jump_rate / u(s) with u(s) = u + k_flow s.
    double t_jump = kInf;
    if (jump_rate_ > 0.0) {
      const double e = rng.exponential();
      const double wait = k_flow == 0.0 ? e * u / jump_rate_ : u * std::expm1(e * k_flow / jump_rate_) / k_flow;
      t_jump = t + wait;
    }
    const double t_next = std::min({t_grid, t_jump, horizon});
    const double dt = t_next - t;
    if (k_flow < 0.0 && jump_rate_ == 0.0 && u + k_flow * dt <= 0.0) {
      sink.absorb(t + u / (-k_flow));
      return;
    }
    const double u_new = u + k_flow * dt;
    double z_new = eta == 0.0 ? u_new : std::pow(u_new, 1.0 / one_m_eta);
    if (diffusion_var_ > 0.0) {
      z_new += std::sqrt(diffusion_var_ * dt) * std::pow(z, half_diff_exp) * rng.normal();
    }
    t = t_next;
    if (t_next >= t_grid) ++k;
    if (z_new <= floor) {
      sink.absorb(t);
      return;
    }
    if (t_next >= t_jump) {
      z_new *= 1.0 + sample_jump_size(eps, alpha, rng);
    }
    z = z_new;
    sink.node(t, z);
  }
}

SamplePath ZScheme::simulate(double z0, RngStream& rng) const {
  PathSink sink{{}, cfg_.horizon};
  run(z0, rng, sink);
  return std::move(sink.path);
}

TerminalState ZScheme::terminal(double z0, RngStream& rng) const {
  TerminalSink sink;
  run(z0, rng, sink);
  return sink.state;
}

// ---------------------------------------------------------------------------

SamplePath simulate_v(const Parameters& params, double v0, const SchemeConfig& cfg, RngStream& rng) {
  return VScheme(params, cfg).simulate(v0, rng);
}

SamplePath simulate_z_absorbed(const Parameters& params, double z0, const SchemeConfig& cfg, RngStream& rng) {
  return ZScheme(params, cfg).simulate(z0, rng);
}

SamplePath simulate_z_extended(const Parameters& params, double z0, const SchemeConfig& cfg, RngStream& rng) {
  if (!(params.theta > params.threshold_low)) {
    throw RegimeError("no class-S solution: theta must exceed Gamma(alpha beta)/Gamma(eta)");
  }
  if (!(z0 >= 0.0)) throw DomainError("simulate_z_extended: z0 must be >= 0");
  const double one_m_eta = 1.0 - params.eta;
  const SamplePath v = simulate_v(params, std::pow(z0, one_m_eta), cfg, rng);
  return power_transform(v, 1.0 / one_m_eta);
}

SamplePath power_transform(const SamplePath& path, double exponent) {
  if (!(exponent > 0.0)) throw DomainError("power_transform: exponent must be > 0");
  SamplePath out = path;
  if (exponent != 1.0) {
    for (auto& v : out.values) v = std::pow(v, exponent);
  }
  return out;
}

std::optional<double> hitting_time(const SamplePath& path, double level) {
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    if (path.values[i] <= level) return path.times[i];
  }
  return std::nullopt;
}

double zero_occupation_fraction(const SamplePath& path, double t_end) {
  if (!(t_end > 0.0) || path.times.empty()) return 0.0;
  double at_zero = 0.0;
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    const double lo = path.times[i];
    if (lo >= t_end) break;
    const double hi = i + 1 < path.times.size() ? std::min(path.times[i + 1], t_end) : t_end;
    if (path.values[i] < kZeroValue) at_zero += hi - lo;
  }
  return at_zero / t_end;
}

}  // namespace ssde

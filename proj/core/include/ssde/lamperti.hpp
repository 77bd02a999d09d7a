#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ssde/params.hpp"
#include "ssde/rng.hpp"
#include "ssde/sde.hpp"
#include "ssde/stable.hpp"

namespace ssde {

/// Path of the Lamperti Levy process xi. Between consecutive nodes the path is
/// affine with slope `slope`; values[i] is the value right after node i.
struct LevyPathXi {
  std::vector<double> times;
  std::vector<double> values;
  double drift_used = 0.0;        // theta + int (log(1+x) - x) nu(dx), the mean drift
  double cutoff_used = 0.0;       // eps
  double compensator_rate = 0.0;  // int_eps^inf log(1+x) nu(dx)
  double slope = 0.0;             // drift_used - compensator_rate
};

struct XiConfig {
  double cutoff = 1e-3;
  /// Centred Gaussian with variance int_0^eps log(1+x)^2 nu(dx) per unit time
  /// in place of the jumps below the cutoff, added at the grid nodes.
  bool gaussian_refinement = true;
  double grid_step = 1e-2;
  /// Used by the pssMp construction: x0 exp(xi) at or below this is zero.
  double absorption_floor = 1e-9;

  void validate() const;
};

/// The Lamperti Levy process written as jumps log(1 + x) at the atoms x > eps of
/// a Poisson measure with intensity c_alpha x^(-1-alpha) dx, compensated so
/// that E[xi_t] = drift_used * t.
class XiScheme {
 public:
  XiScheme(const Parameters& params, const XiConfig& cfg);

  [[nodiscard]] LevyPathXi simulate(double horizon, RngStream& rng) const;
  /// xi at `horizon` without storing the path.
  [[nodiscard]] double terminal(double horizon, RngStream& rng) const;

  /// Generates segments until `visit` returns false or `horizon` is reached.
  /// visit(t0, xi0, t1, xi1_pre, xi1): on [t0, t1) xi = xi0 + slope (s - t0);
  /// xi1_pre is the value at t1 after the Gaussian increment and before any
  /// jump, xi1 the value after the jump.
  template <class Visit>
  void walk(RngStream& rng, double horizon, Visit&& visit) const;

  [[nodiscard]] double drift_used() const { return drift_used_; }
  [[nodiscard]] double compensator_rate() const { return compensator_rate_; }
  [[nodiscard]] double slope() const { return drift_used_ - compensator_rate_; }
  [[nodiscard]] double small_jump_variance() const { return small_var_; }
  [[nodiscard]] const Parameters& params() const { return params_; }
  [[nodiscard]] const XiConfig& config() const { return cfg_; }

 private:
  Parameters params_;
  XiConfig cfg_;
  double drift_used_;
  double compensator_rate_ = 0.0;
  double small_var_ = 0.0;
  double jump_rate_ = 0.0;
};

/// xi path on [0, horizon] with the default XiConfig and the given cutoff.
LevyPathXi simulate_xi(const Parameters& params, double horizon, double eps, RngStream& rng);

/// int_0^inf (log(1+x) - x) c_alpha x^(-1-alpha) dx by quadrature (split at
/// x = 1, tail mapped through x = 1/y). Equals -Gamma(alpha).
double xi_jump_drift_integral(double alpha);

/// A_t = int_0^t exp(k xi_s) ds for a piecewise-affine xi, with the
/// per-segment data needed to invert it exactly.
struct ExponentialFunctional {
  SamplePath path;                   // times of xi, values A at those times
  std::vector<double> log_integrand;  // k xi at the left end of each segment
  double growth = 0.0;               // k * slope of xi
};

/// Exact integral over each affine segment. `exponent` is k = 1 - eta.
ExponentialFunctional exponential_functional(const LevyPathXi& xi, double exponent);

/// tau(t) = inf{s : A_s > t}. Throws HorizonExhausted when t >= A at the end
/// of the simulated range.
double time_change_inverse(const ExponentialFunctional& a, double t);

/// Z_t = x0 exp(xi_{tau(t x0^(-1/gamma))}) on [0, horizon], generating xi
/// until the clock passes horizon x0^(-1/gamma) or the path drops to the
/// absorption floor. Nodes are the images of the xi nodes plus the horizon.
SamplePath lamperti_pssmp(const Parameters& params, double x0, double horizon, RngStream& rng,
                          const XiConfig& cfg = {});

/// Terminal value of lamperti_pssmp without storing the path.
TerminalState lamperti_terminal(const Parameters& params, double x0, double horizon, RngStream& rng,
                                const XiConfig& cfg = {});

/// True iff psi(a) > 0 for some a on a 512-point log grid in (0, 1 - eta)
/// plus a = 1 - eta - 1e-9.
bool cramer_condition_check(const Parameters& params);

template <class Visit>
void XiScheme::walk(RngStream& rng, double horizon, Visit&& visit) const {
  const double step = cfg_.grid_step;
  const double slope_v = slope();
  const bool gaussian = cfg_.gaussian_refinement && small_var_ > 0.0;
  double t = 0.0;
  double xi = 0.0;
  std::size_t k = 1;
  double next_jump = jump_rate_ > 0.0 ? rng.exponential() / jump_rate_ : std::numeric_limits<double>::infinity();
  while (t < horizon) {
    double t_grid = static_cast<double>(k) * step;
    if (horizon - t_grid < 1e-9 * step) t_grid = horizon;
    const double t1 = std::min(std::min(t_grid, next_jump), horizon);
    const double dt = t1 - t;
    double pre = xi + slope_v * dt;
    if (gaussian) pre += std::sqrt(small_var_ * dt) * rng.normal();
    double post = pre;
    if (t1 >= next_jump) {
      post += std::log1p(sample_jump_size(cfg_.cutoff, params_.alpha, rng));
      next_jump += rng.exponential() / jump_rate_;
    }
    if (t1 >= t_grid) ++k;
    if (!visit(t, xi, t1, pre, post)) return;
    t = t1;
    xi = post;
  }
}

}  // namespace ssde

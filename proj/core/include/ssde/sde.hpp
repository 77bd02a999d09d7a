#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ssde/params.hpp"
#include "ssde/rng.hpp"

namespace ssde {

/// Cadlag path sampled at its grid and jump times. values[i] is the value on
/// [times[i], times[i+1]) right after any jump at times[i].
struct SamplePath {
  std::vector<double> times;
  std::vector<double> values;
  std::optional<double> absorbed_at;

  [[nodiscard]] std::size_t size() const { return times.size(); }
  [[nodiscard]] double final_time() const { return times.empty() ? 0.0 : times.back(); }
  [[nodiscard]] double final_value() const { return values.empty() ? 0.0 : values.back(); }
  /// Value at time t under the left-continuous-step reading of the nodes.
  [[nodiscard]] double value_at(double t) const;
};

/// Values below this are "at zero" when measuring occupation of the origin.
inline constexpr double kZeroValue = 1e-12;

struct SchemeConfig {
  double grid_step = 1e-3;
  /// Jump cutoff eps. For the V-equation this is an absolute cutoff on the
  /// driver's jump size x. For the Z-equation it applies to the jump size in
  /// the process' own scale, x Z^(beta-1) (see ZScheme). +inf switches the
  /// driver off entirely: no jumps, no compensator, no Gaussian part.
  double jump_cutoff = 1e-3;
  /// Replace the neglected jumps below the cutoff by a centred Gaussian with
  /// matching variance.
  bool gaussian_refinement = true;
  double horizon = 1.0;
  /// Absorbed Z-scheme: a value at or below this level counts as having
  /// reached zero.
  double absorption_floor = 1e-9;

  /// Throws DomainError on grid_step <= 0, grid_step > horizon, cutoff <= 0.
  void validate() const;
};

/// Jump map of the V-equation, g(v, x) = v (1 + v^(-1/alpha) x)^(1-eta) - v,
/// with g(0, x) = 0.
double jump_map_g(double v, double x, const Parameters& params);

/// C = 2^(1-1/alpha) (1 - eta) in |g(v2,x) - g(v1,x)| <= C |v2-v1|^(1-1/alpha) x.
double modulus_constant(const Parameters& params);

/// True iff the Hoelder-type modulus bound holds at (v1, v2, x).
bool modulus_bound_check(double v1, double v2, double x, const Parameters& params);

struct TerminalState {
  double value = 0.0;
  std::optional<double> absorbed_at;
};

/// Jump-adapted Euler scheme for the V-equation
///   V_t = V_0 + (1-eta)(theta - Gamma(alpha beta)/Gamma(eta)) t + int g(V_{s-}, x) (N - N')(ds, dx).
/// Jumps with x > eps arrive at exact Poisson times; between them V moves on a
/// global grid of step grid_step with drift c - K(V), where
/// K(v) = int_eps^inf g(v, x) nu(dx) is the truncated compensator. The drift
/// is taken implicitly (K is stiff near 0). Negative overshoots of the
/// Gaussian part are clamped to 0 and the path continues from there.
class VScheme {
 public:
  VScheme(const Parameters& params, const SchemeConfig& cfg);

  [[nodiscard]] SamplePath simulate(double v0, RngStream& rng) const;
  [[nodiscard]] double terminal(double v0, RngStream& rng) const;

  /// int_eps^inf g(v, x) c_alpha x^(-1-alpha) dx.
  [[nodiscard]] double compensator(double v) const;
  /// int_0^eps g(v, x)^2 c_alpha x^(-1-alpha) dx.
  [[nodiscard]] double small_jump_variance(double v) const;

  [[nodiscard]] const Parameters& params() const { return params_; }
  [[nodiscard]] const SchemeConfig& config() const { return cfg_; }

  struct Tables;

 private:
  template <class Sink>
  void run(double v0, RngStream& rng, Sink& sink) const;
  [[nodiscard]] double drift_step(double v, double dt) const;

  Parameters params_;
  SchemeConfig cfg_;
  double drift_;
  std::shared_ptr<const Tables> tables_;
};

/// Direct scheme for the Z-equation absorbed at zero.
///
/// The cutoff is applied in the state's own scale: at state z only jumps with
/// x > eps z^(1-beta) (relative size y = x z^(beta-1) > eps) are simulated.
/// With that choice the truncated compensator is z^eta c eps^(1-alpha)/(alpha-1),
/// so the deterministic part is b z^eta with b = theta - c eps^(1-alpha)/(alpha-1)
/// and is integrated exactly. Jump times follow the exact intensity along that
/// flow, a jump multiplies z by (1 + y), and the neglected small jumps become
/// sqrt(c eps^(2-alpha)/(2-alpha)) z^((1+eta)/2) dW on the grid. The path is
/// absorbed once it reaches cfg.absorption_floor.
class ZScheme {
 public:
  ZScheme(const Parameters& params, const SchemeConfig& cfg);

  [[nodiscard]] SamplePath simulate(double z0, RngStream& rng) const;
  [[nodiscard]] TerminalState terminal(double z0, RngStream& rng) const;

  [[nodiscard]] const Parameters& params() const { return params_; }
  [[nodiscard]] const SchemeConfig& config() const { return cfg_; }

 private:
  template <class Sink>
  void run(double z0, RngStream& rng, Sink& sink) const;

  Parameters params_;
  SchemeConfig cfg_;
  double jump_rate_ = 0.0;      // relative jumps per unit of intrinsic time
  double flow_drift_ = 0.0;     // b
  double diffusion_var_ = 0.0;  // c eps^(2-alpha)/(2-alpha)
};

/// V-equation path on [0, cfg.horizon].
SamplePath simulate_v(const Parameters& params, double v0, const SchemeConfig& cfg, RngStream& rng);

/// Z-equation path absorbed at zero. Throws DomainError for z0 <= 0.
SamplePath simulate_z_absorbed(const Parameters& params, double z0, const SchemeConfig& cfg, RngStream& rng);

/// Class-S solution obtained as V^(1/(1-eta)) with V from simulate_v started
/// at z0^(1-eta). Throws RegimeError when theta <= threshold_low.
SamplePath simulate_z_extended(const Parameters& params, double z0, const SchemeConfig& cfg, RngStream& rng);

/// Pointwise power of the values; times and absorbed_at are kept.
SamplePath power_transform(const SamplePath& path, double exponent);

/// First node time with value <= level, if any.
std::optional<double> hitting_time(const SamplePath& path, double level);

/// Fraction of [0, t_end] during which the path is at zero (value < kZeroValue).
double zero_occupation_fraction(const SamplePath& path, double t_end);

}  // namespace ssde

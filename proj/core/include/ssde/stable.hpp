#pragma once

#include <vector>

#include "ssde/rng.hpp"

namespace ssde {

/// One atom of the driving Poisson random measure with size above the cutoff.
struct JumpEvent {
  double time = 0.0;
  double size = 0.0;
};

/// Sample of L_dt, where L is spectrally positive alpha-stable with
/// log E[exp(-lambda L_1)] = lambda^alpha (zero mean). Uses the
/// Chambers-Mallows-Stuck map with skewness +1 and the scale that makes the
/// Laplace transform exactly exp(dt lambda^alpha).
double sample_stable_increment(double dt, double alpha, RngStream& rng);

/// Mass of the Levy measure above eps: c_alpha eps^-alpha / alpha.
double jump_rate_above(double eps, double alpha);

/// First moment of the Levy measure above eps, c_alpha eps^(1-alpha) / (alpha-1).
/// This is the drift that compensates jumps larger than eps.
double compensator_above(double eps, double alpha);

/// Pareto draw from the Levy measure conditioned on size > eps: eps U^(-1/alpha).
double sample_jump_size(double eps, double alpha, RngStream& rng);

/// Jumps of size > eps on (t0, t1], times ascending. The count is Poisson
/// with mean (t1 - t0) jump_rate_above(eps); times are generated as
/// exponential gaps, which is the same law as sorted uniforms.
std::vector<JumpEvent> sample_jumps_above(double eps, double t0, double t1, double alpha, RngStream& rng);

struct SmallJumpMoments {
  double mean_rate = 0.0;      // c_alpha eps^(1-alpha)/(alpha-1); enters with a minus sign
  double variance_rate = 0.0;  // int_0^eps x^2 nu(dx) = c_alpha eps^(2-alpha)/(2-alpha)
};

SmallJumpMoments small_jump_moments(double eps, double alpha);

/// Cutoff used when a caller does not choose one: 1e-3 for alpha <= 1.6,
/// 1e-4 above.
double default_cutoff(double alpha);

}  // namespace ssde

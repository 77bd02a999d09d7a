#include "ssde/stable.hpp"

#include <cmath>
#include <numbers>

#include "ssde/errors.hpp"
#include "ssde/specfun.hpp"

namespace ssde {
namespace {

void require_alpha(double alpha, const char* where) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw DomainError(std::string(where) + ": alpha must lie in (1,2)");
  }
}

void require_eps(double eps, const char* where) {
  if (!(eps > 0.0)) {
    throw DomainError(std::string(where) + ": eps must be > 0");
  }
}

}  // namespace

double sample_stable_increment(double dt, double alpha, RngStream& rng) {
  if (!(dt > 0.0)) {
    throw DomainError("sample_stable_increment: dt must be > 0");
  }
  require_alpha(alpha, "sample_stable_increment");
  constexpr double half_pi = 0.5 * std::numbers::pi;
  // Skewness +1 in the (alpha, beta, sigma, mu) parametrisation of
  // Samorodnitsky-Taqqu with sigma^alpha = |cos(pi alpha / 2)|; the CMS scale
  // factor (1 + tan^2)^(1/(2 alpha)) cancels sigma exactly.
  const double shift = half_pi - std::numbers::pi / alpha;  // arctan(tan(pi alpha/2)) / alpha
  const double v = std::numbers::pi * (rng.uniform_open() - 0.5);
  const double w = rng.exponential();
  const double arg = alpha * (v + shift);
  const double x = std::sin(arg) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - arg) / w, (1.0 - alpha) / alpha);
  return std::pow(dt, 1.0 / alpha) * x;
}

double jump_rate_above(double eps, double alpha) {
  require_eps(eps, "jump_rate_above");
  require_alpha(alpha, "jump_rate_above");
  if (std::isinf(eps)) return 0.0;
  return c_alpha(alpha) * std::pow(eps, -alpha) / alpha;
}

double compensator_above(double eps, double alpha) {
  require_eps(eps, "compensator_above");
  require_alpha(alpha, "compensator_above");
  if (std::isinf(eps)) return 0.0;
  return c_alpha(alpha) * std::pow(eps, 1.0 - alpha) / (alpha - 1.0);
}

double sample_jump_size(double eps, double alpha, RngStream& rng) {
  return eps * std::pow(rng.uniform_open(), -1.0 / alpha);
}

std::vector<JumpEvent> sample_jumps_above(double eps, double t0, double t1, double alpha, RngStream& rng) {
  require_eps(eps, "sample_jumps_above");
  require_alpha(alpha, "sample_jumps_above");
  if (!(t1 > t0)) {
    throw DomainError("sample_jumps_above: need t0 < t1");
  }
  std::vector<JumpEvent> out;
  const double rate = jump_rate_above(eps, alpha);
  if (rate <= 0.0) return out;
  out.reserve(static_cast<std::size_t>(rate * (t1 - t0) * 1.1) + 8);
  double t = t0;
  for (;;) {
    t += rng.exponential() / rate;
    if (t > t1) break;
    out.push_back({t, sample_jump_size(eps, alpha, rng)});
  }
  return out;
}

SmallJumpMoments small_jump_moments(double eps, double alpha) {
  require_eps(eps, "small_jump_moments");
  require_alpha(alpha, "small_jump_moments");
  const double c = c_alpha(alpha);
  SmallJumpMoments m;
  if (std::isinf(eps)) {
    m.mean_rate = 0.0;
    m.variance_rate = std::numeric_limits<double>::infinity();
    return m;
  }
  m.mean_rate = c * std::pow(eps, 1.0 - alpha) / (alpha - 1.0);
  m.variance_rate = c * std::pow(eps, 2.0 - alpha) / (2.0 - alpha);
  return m;
}

double default_cutoff(double alpha) {
  require_alpha(alpha, "default_cutoff");
  return alpha <= 1.6 ? 1e-3 : 1e-4;
}

}  // namespace ssde

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ssde {

/// Validated parameter bundle for
///   Z_t = Z_0 + int Z_{s-}^beta dL_s + theta int Z_s^eta ds
/// with eta = 1 - alpha (1 - beta). Construct through Parameters::derive.
struct Parameters {
  double alpha = 0.0;           // stability index, (1, 2)
  double beta = 0.0;            // noise exponent, [1 - 1/alpha, 1)
  double theta = 0.0;           // drift coefficient, >= 0
  double eta = 0.0;             // drift exponent, [0, 1)
  double gamma_index = 0.0;     // self-similarity index 1 / (1 - eta)
  double threshold_low = 0.0;   // Gamma(alpha beta) / Gamma(eta), 0 when eta == 0
  double threshold_high = 0.0;  // Gamma(alpha)
  double c_alpha = 0.0;         // alpha (alpha - 1) / Gamma(2 - alpha)

  /// Validates (alpha, beta, theta) and fills the derived fields. Throws
  /// ValidationError naming the violated constraint. A beta within 1e-12 of
  /// 1 - 1/alpha is placed exactly on that edge (eta == 0).
  static Parameters derive(double alpha, double beta, double theta);

  /// Same shape, different theta.
  [[nodiscard]] Parameters with_theta(double new_theta) const;

  [[nodiscard]] bool beta_at_lower_edge() const { return eta == 0.0; }

  /// Drift of the transformed V-equation, (1 - eta)(theta - threshold_low).
  [[nodiscard]] double v_drift() const { return (1.0 - eta) * (theta - threshold_low); }

  friend bool operator==(const Parameters&, const Parameters&) = default;
};

enum class RegimeTag : std::uint8_t {
  NoClassSSolution,     // theta <= Gamma(alpha beta)/Gamma(eta)
  NonUniqueWithClassS,  // strictly between the thresholds
  NeverHitsZero,        // theta >= Gamma(alpha)
};

enum class BoundaryFlag : std::uint8_t {
  BetaAtLowerEdge = 1U << 0U,
  ThetaAtLowThreshold = 1U << 1U,
  ThetaAtHighThreshold = 1U << 2U,
};

struct Regime {
  RegimeTag tag = RegimeTag::NoClassSSolution;
  std::uint8_t flags = 0;

  [[nodiscard]] bool has(BoundaryFlag f) const { return (flags & static_cast<std::uint8_t>(f)) != 0; }
  [[nodiscard]] std::vector<BoundaryFlag> flag_list() const;

  friend bool operator==(const Regime&, const Regime&) = default;
};

/// Tolerance used only to raise boundary flags; the tag itself comes from
/// strict comparisons of the computed thresholds.
inline constexpr double kBoundaryFlagTolerance = 1e-9;

Regime classify_regime(const Parameters& params);

/// Position of a tag in NoClassSSolution < NonUniqueWithClassS < NeverHitsZero.
int regime_order(RegimeTag tag);

std::string_view to_string(RegimeTag tag);
std::string_view to_string(BoundaryFlag flag);

}  // namespace ssde

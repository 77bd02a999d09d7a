#include "ssde/params.hpp"

#include <cmath>

#include "admissible.hpp"
#include "ssde/errors.hpp"
#include "ssde/specfun.hpp"

namespace ssde {

Parameters Parameters::derive(double alpha, double beta, double theta) {
  std::string why;
  const auto shape = detail::admissible_shape(alpha, beta, why);
  if (!shape) {
    throw ValidationError(why);
  }
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw ValidationError("theta must be >= 0");
  }
  Parameters p;
  p.alpha = alpha;
  p.beta = shape->beta;
  p.theta = theta;
  p.eta = shape->eta;
  p.gamma_index = 1.0 / (1.0 - p.eta);
  p.threshold_low = gamma_ratio_threshold(alpha, p.beta);
  p.threshold_high = gamma_fn(alpha);
  p.c_alpha = ssde::c_alpha(alpha);
  return p;
}

Parameters Parameters::with_theta(double new_theta) const {
  if (!(new_theta >= 0.0) || !std::isfinite(new_theta)) {
    throw ValidationError("theta must be >= 0");
  }
  Parameters p = *this;
  p.theta = new_theta;
  return p;
}

std::vector<BoundaryFlag> Regime::flag_list() const {
  std::vector<BoundaryFlag> out;
  for (auto f : {BoundaryFlag::BetaAtLowerEdge, BoundaryFlag::ThetaAtLowThreshold,
                 BoundaryFlag::ThetaAtHighThreshold}) {
    if (has(f)) out.push_back(f);
  }
  return out;
}

Regime classify_regime(const Parameters& params) {
  Regime r;
  if (params.theta <= params.threshold_low) {
    r.tag = RegimeTag::NoClassSSolution;
  } else if (params.theta < params.threshold_high) {
    r.tag = RegimeTag::NonUniqueWithClassS;
  } else {
    r.tag = RegimeTag::NeverHitsZero;
  }
  auto set = [&r](BoundaryFlag f) { r.flags |= static_cast<std::uint8_t>(f); };
  if (params.beta_at_lower_edge()) set(BoundaryFlag::BetaAtLowerEdge);
  if (std::abs(params.theta - params.threshold_low) <= kBoundaryFlagTolerance) {
    set(BoundaryFlag::ThetaAtLowThreshold);
  }
  if (std::abs(params.theta - params.threshold_high) <= kBoundaryFlagTolerance) {
    set(BoundaryFlag::ThetaAtHighThreshold);
  }
  return r;
}

int regime_order(RegimeTag tag) { return static_cast<int>(tag); }

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::NoClassSSolution: return "NoClassSSolution";
    case RegimeTag::NonUniqueWithClassS: return "NonUniqueWithClassS";
    case RegimeTag::NeverHitsZero: return "NeverHitsZero";
  }
  return "?";
}

std::string_view to_string(BoundaryFlag flag) {
  switch (flag) {
    case BoundaryFlag::BetaAtLowerEdge: return "BetaAtLowerEdge";
    case BoundaryFlag::ThetaAtLowThreshold: return "ThetaAtLowThreshold";
    case BoundaryFlag::ThetaAtHighThreshold: return "ThetaAtHighThreshold";
  }
  return "?";
}

}  // namespace ssde

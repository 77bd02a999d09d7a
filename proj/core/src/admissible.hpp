#pragma once

#include <cmath>
#include <optional>
#include <string>

namespace ssde::detail {

// Parameters within this distance of beta = 1 - 1/alpha are treated as lying
// on the edge, where eta is exactly zero. Without it the literal 1/3 for
// alpha = 1.5 falls one ulp below the edge.
inline constexpr double kEdgeSnap = 1e-12;

struct AdmissibleShape {
  double beta;
  double eta;
  bool at_lower_edge;
};

// Returns std::nullopt with a message in `why` when (alpha, beta) is outside
// alpha in (1,2), beta in [1 - 1/alpha, 1).
inline std::optional<AdmissibleShape> admissible_shape(double alpha, double beta, std::string& why) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    why = "alpha must lie in (1,2)";
    return std::nullopt;
  }
  const double edge = 1.0 - 1.0 / alpha;
  if (!(beta < 1.0)) {
    why = "beta must be < 1";
    return std::nullopt;
  }
  if (!(beta >= edge - kEdgeSnap)) {
    why = "beta must be >= 1 - 1/alpha";
    return std::nullopt;
  }
  if (beta <= edge + kEdgeSnap) {
    return AdmissibleShape{edge, 0.0, true};
  }
  const double eta = 1.0 - alpha * (1.0 - beta);
  return AdmissibleShape{beta, eta, false};
}

}  // namespace ssde::detail

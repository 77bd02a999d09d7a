#pragma once

namespace ssde {

/// Real number extended with +infinity. IEEE doubles already carry the
/// extended-real rules needed here (x / +inf == 0 for finite x > 0), so the
/// alias only documents where +inf is a legitimate value: Gamma(0) = +inf.
using ExtReal = double;

/// Gamma function on [0, inf). Gamma(0) is +inf; relative error is below
/// 1e-12 on [0.05, 10]. Throws DomainError for negative or NaN input.
ExtReal gamma_fn(double x);

/// Jump-measure constant alpha (alpha - 1) / Gamma(2 - alpha) of the
/// spectrally positive alpha-stable law with Laplace exponent lambda^alpha.
double c_alpha(double alpha);

/// Laplace exponent of the Lamperti Levy process,
///   psi(lambda) = lambda (theta - Gamma(alpha - lambda) / Gamma(1 - lambda)),
/// for lambda in [0, 1). It does not depend on beta.
double laplace_exponent_xi(double lambda, double alpha, double theta);

/// E[xi_1] = theta - Gamma(alpha).
double xi_mean_drift(double alpha, double theta);

/// Gamma(alpha beta) / Gamma(eta) with eta = 1 - alpha (1 - beta); zero when
/// eta == 0. Throws DomainError when (alpha, beta) is inadmissible.
double gamma_ratio_threshold(double alpha, double beta);

struct ThresholdCheck {
  double ratio = 0.0;        // Gamma(alpha beta) / Gamma(eta)
  double gamma_alpha = 0.0;  // Gamma(alpha)
  bool holds = false;        // ratio < gamma_alpha
  bool marginal = false;     // |ratio - gamma_alpha| < 1e-9
};

ThresholdCheck check_threshold_inequality(double alpha, double beta);

/// True iff Gamma(alpha beta) / Gamma(eta) < Gamma(alpha).
bool threshold_inequality_holds(double alpha, double beta);

}  // namespace ssde

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "ssde/errors.hpp"
#include "ssde/specfun.hpp"

using namespace ssde;

TEST(GammaFn, KnownValues) {
  EXPECT_DOUBLE_EQ(gamma_fn(1.0), 1.0);
  EXPECT_NEAR(gamma_fn(0.5), 1.7724538509, 1e-10);
  EXPECT_NEAR(gamma_fn(1.5), 0.8862269255, 1e-10);
  EXPECT_NEAR(gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-14);
}

TEST(GammaFn, ZeroIsInfinite) {
  const double g = gamma_fn(0.0);
  EXPECT_TRUE(std::isinf(g));
  EXPECT_GT(g, 0.0);
  EXPECT_EQ(1.5 / g, 0.0);
}

TEST(GammaFn, RejectsNegativeAndNan) {
  EXPECT_THROW(gamma_fn(-0.1), DomainError);
  EXPECT_THROW(gamma_fn(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST(GammaFn, RelativeErrorAgainstExtendedPrecision) {
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = 0.05 + (10.0 - 0.05) * i / 2000.0;
    const long double ref = oracle::gamma(x);
    worst = std::max(worst, static_cast<double>(std::abs((gamma_fn(x) - ref) / ref)));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(GammaFn, Recurrence) {
  for (int i = 0; i <= 500; ++i) {
    const double x = 0.05 + (9.0 - 0.05) * i / 500.0;
    const double lhs = gamma_fn(x + 1.0);
    EXPECT_LE(std::abs(lhs - x * gamma_fn(x)), 1e-11 * lhs) << "x=" << x;
  }
}

TEST(CAlpha, Values) {
  EXPECT_NEAR(c_alpha(1.5), 0.4231421876, 1e-10);
  EXPECT_NEAR(c_alpha(1.5), 0.75 / std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_NEAR(c_alpha(1.9), 1.71 / 9.5135076986687318, 1e-12);
  EXPECT_NEAR(c_alpha(1.9), oracle::c_alpha(1.9), 1e-14);
  EXPECT_LT(c_alpha(1.0 + 1e-8), 1e-7);
  EXPECT_GT(c_alpha(1.0 + 1e-8), 0.0);
}

TEST(CAlpha, DomainErrors) {
  EXPECT_THROW(c_alpha(1.0), DomainError);
  EXPECT_THROW(c_alpha(2.0), DomainError);
  EXPECT_THROW(c_alpha(0.5), DomainError);
}

TEST(LaplaceExponentXi, Examples) {
  EXPECT_EQ(laplace_exponent_xi(0.0, 1.5, 0.7), 0.0);
  EXPECT_NEAR(laplace_exponent_xi(0.5, 1.5, 0.0), -0.2820947918, 1e-10);
  EXPECT_NEAR(laplace_exponent_xi(0.5, 1.5, 0.0), -0.5 / std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_NEAR(laplace_exponent_xi(0.5, 1.5, 1.0), 0.2179052082, 1e-10);
}

TEST(LaplaceExponentXi, DomainErrors) {
  EXPECT_THROW(laplace_exponent_xi(-0.01, 1.5, 0.0), DomainError);
  EXPECT_THROW(laplace_exponent_xi(1.0, 1.5, 0.0), DomainError);
}

TEST(LaplaceExponentXi, FiniteAtOneMinusEta) {
  // alpha = 1.5, beta = 0.5: eta = 0.25
  const double v = laplace_exponent_xi(0.75, 1.5, 0.3);
  const long double ref = 0.75L * (0.3L - oracle::gamma(0.75L) / oracle::gamma(0.25L));
  EXPECT_NEAR(v, static_cast<double>(ref), 1e-13);
}

TEST(LaplaceExponentXi, ConvexOnAdmissibleRange) {
  for (auto [alpha, eta, theta] : {std::tuple{1.5, 0.25, 0.5}, {1.2, 0.4, 0.0}, {1.8, 0.1, 1.0}, {1.5, 0.0, 0.3}}) {
    const double top = eta > 0.0 ? 1.0 - eta : 0.999;
    constexpr int kN = 100;
    std::vector<double> grid(kN);
    for (int i = 0; i < kN; ++i) grid[static_cast<std::size_t>(i)] = top * i / (kN - 1);
    for (double a : grid) {
      for (double b : grid) {
        const double mid = laplace_exponent_xi(0.5 * (a + b), alpha, theta);
        const double chord = 0.5 * (laplace_exponent_xi(a, alpha, theta) + laplace_exponent_xi(b, alpha, theta));
        ASSERT_LE(mid, chord + 1e-10) << alpha << " " << a << " " << b;
      }
    }
  }
}

TEST(LaplaceExponentXi, SlopeAtZeroIsMeanDrift) {
  constexpr double h = 1e-6;
  for (auto [alpha, theta] : {std::pair{1.5, 0.0}, {1.2, 1.0}, {1.8, 0.4}}) {
    // psi is only defined for lambda >= 0; extend it by its formula for the
    // left point of the central difference.
    auto psi = [&](double l) {
      return static_cast<double>(l * (theta - oracle::gamma(alpha - l) / oracle::gamma(1.0L - l)));
    };
    const double central = (psi(h) - psi(-h)) / (2 * h);
    EXPECT_NEAR(central, xi_mean_drift(alpha, theta), 1e-6);
    const double forward = (laplace_exponent_xi(h, alpha, theta) - laplace_exponent_xi(0.0, alpha, theta)) / h;
    EXPECT_NEAR(forward, xi_mean_drift(alpha, theta), 1e-5);
  }
}

TEST(LaplaceExponentXi, MatchesJumpIntegral) {
  for (auto [alpha, beta] : {std::pair{1.5, 0.5}, {1.3, 0.6}, {1.8, 0.7}}) {
    const double eta = 1.0 - alpha * (1.0 - beta);
    for (double lambda : {0.25, 0.5, 1.0 - eta}) {
      const double closed = -lambda * static_cast<double>(oracle::gamma(alpha - lambda) / oracle::gamma(1.0L - lambda));
      EXPECT_NEAR(oracle::power_moment_integral(lambda, alpha), closed, 1e-7);
      // psi(lambda) - lambda theta is the same quantity
      EXPECT_NEAR(laplace_exponent_xi(lambda, alpha, 0.0), closed, 1e-12);
    }
  }
}

TEST(XiMeanDrift, Examples) {
  EXPECT_NEAR(xi_mean_drift(1.5, 0.0), -0.8862269255, 1e-10);
  EXPECT_EQ(xi_mean_drift(1.5, gamma_fn(1.5)), 0.0);
  EXPECT_NEAR(xi_mean_drift(1.2, 1.0), 0.0818313, 1e-7);
  EXPECT_NEAR(xi_mean_drift(1.2, 1.0), static_cast<double>(1.0L - oracle::gamma(1.2L)), 1e-13);
}

TEST(XiMeanDrift, QuadratureOracle) {
  for (double alpha : {1.2, 1.5, 1.8}) {
    EXPECT_NEAR(oracle::xi_jump_drift(alpha), -static_cast<double>(oracle::gamma(alpha)), 1e-8) << alpha;
    EXPECT_NEAR(xi_mean_drift(alpha, 0.0), oracle::xi_jump_drift(alpha), 1e-8) << alpha;
  }
}

TEST(ThresholdInequality, Examples) {
  const auto a = check_threshold_inequality(1.5, 0.5);
  EXPECT_TRUE(a.holds);
  EXPECT_NEAR(a.ratio, static_cast<double>(oracle::gamma(0.75L) / oracle::gamma(0.25L)), 1e-13);
  EXPECT_NEAR(a.ratio, 0.3379887, 1e-6);
  EXPECT_NEAR(a.gamma_alpha, 0.8862269, 1e-7);
  EXPECT_FALSE(a.marginal);

  const auto b = check_threshold_inequality(1.5, 1.0 / 3.0);
  EXPECT_TRUE(b.holds);
  EXPECT_EQ(b.ratio, 0.0);

  EXPECT_TRUE(threshold_inequality_holds(1.9, 0.9));
}

TEST(ThresholdInequality, DomainErrors) {
  EXPECT_THROW(threshold_inequality_holds(1.5, 0.2), DomainError);
  EXPECT_THROW(threshold_inequality_holds(1.5, 1.0), DomainError);
  EXPECT_THROW(threshold_inequality_holds(2.5, 0.8), DomainError);
}

TEST(ThresholdInequality, HoldsOnGrid) {
  for (int i = 0; i < 50; ++i) {
    const double alpha = 1.01 + 0.98 * i / 49.0;
    const double lo = 1.0 - 1.0 / alpha;
    for (int j = 0; j < 50; ++j) {
      const double beta = lo + (0.99 - lo) * j / 49.0;
      ASSERT_TRUE(threshold_inequality_holds(alpha, beta)) << alpha << " " << beta;
    }
  }
}

TEST(ThresholdRatio, MatchesOracle) {
  for (auto [alpha, beta] : {std::pair{1.2, 0.5}, {1.5, 0.5}, {1.8, 0.9}, {1.99, 0.6}}) {
    const double eta = 1.0 - alpha * (1.0 - beta);
    const long double ref = oracle::gamma(alpha * beta) / oracle::gamma(eta);
    EXPECT_NEAR(gamma_ratio_threshold(alpha, beta), static_cast<double>(ref), 1e-12 * static_cast<double>(ref));
  }
}

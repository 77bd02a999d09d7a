#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "ssde/errors.hpp"
#include "ssde/mc.hpp"
#include "ssde/stable.hpp"

using namespace ssde;

namespace {

SchemeConfig scheme(double step, double eps) {
  SchemeConfig c;
  c.grid_step = step;
  c.jump_cutoff = eps;
  return c;
}

}  // namespace

TEST(Summarize, Examples) {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const McSummary s = summarize(xs);
  EXPECT_EQ(s.n, 4U);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  const double se = std::sqrt(5.0 / 3.0) / 2.0;
  EXPECT_NEAR(s.std_error, se, 1e-15);
  EXPECT_NEAR(s.ci95_low, 2.5 - 1.96 * se, 1e-15);
  EXPECT_NEAR(s.ci95_high, 2.5 + 1.96 * se, 1e-15);

  const std::vector<double> constant(10, 0.7);
  const McSummary c = summarize(constant);
  EXPECT_DOUBLE_EQ(c.mean, 0.7);
  EXPECT_EQ(c.std_error, 0.0);
}

TEST(Summarize, CompensatedMean) {
  std::vector<double> xs{1e16};
  xs.insert(xs.end(), 1000, 1.0);
  xs.push_back(-1e16);
  EXPECT_NEAR(summarize(xs).mean, 1000.0 / 1002.0, 1e-12);
}

TEST(Ks, Examples) {
  std::vector<double> u(100);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = (static_cast<double>(i) + 0.5) / 100.0;
  const KsReport same = ks_two_sample(u, u);
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_TRUE(same.pass);

  std::vector<double> shifted(u);
  for (double& x : shifted) x += 2.0;
  const KsReport apart = ks_two_sample(u, shifted);
  EXPECT_EQ(apart.statistic, 1.0);
  EXPECT_FALSE(apart.pass);

  const std::vector<double> a{0.0, 0.0, 1.0, 1.0};
  const std::vector<double> b{0.0, 1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(ks_two_sample(a, b).statistic, 0.25);

  EXPECT_THROW(ks_two_sample(std::vector<double>{}, u), DomainError);
  EXPECT_THROW(ks_two_sample(u, std::vector<double>{}), DomainError);
}

TEST(Ks, CriticalValue) {
  EXPECT_NEAR(ks_critical_value_1pct(10000, 10000), 1.628 * std::sqrt(2e-4), 1e-15);
  EXPECT_NEAR(ks_critical_value_1pct(100, 400), 1.628 * std::sqrt(500.0 / 40000.0), 1e-15);
  const std::vector<double> a{1.0, 2.0};
  const KsReport r = ks_two_sample(a, a);
  EXPECT_EQ(r.pass, r.statistic < r.critical_value_1pct);
}

TEST(Ks, SameStableLawPasses) {
  McOptions opts;
  auto draw = [](std::size_t, RngStream& rng) { return sample_stable_increment(1.0, 1.5, rng); };
  const auto xs = map_paths<double>(10000, opts.sub(1), draw);
  const auto ys = map_paths<double>(10000, opts.sub(2), draw);
  EXPECT_TRUE(ks_two_sample(xs, ys).pass);
}

TEST(Streams, DeriveStream) {
  RngStream a = derive_stream(42, 0);
  RngStream b = derive_stream(42, 0);
  RngStream c = derive_stream(42, 1);
  int same = 0;
  int differ = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    same += x == b.next_u64();
    differ += x != c.next_u64();
  }
  EXPECT_EQ(same, 1000);
  EXPECT_EQ(differ, 1000);

  RngStream u = derive_stream(42, 7);
  RngStream v = derive_stream(42, 8);
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  constexpr int kN = 100000;
  for (int i = 0; i < kN; ++i) {
    const double x = u.uniform();
    const double y = v.uniform();
    sx += x, sy += y, sxx += x * x, syy += y * y, sxy += x * y;
  }
  const double cov = sxy / kN - sx / kN * sy / kN;
  const double rho = cov / std::sqrt((sxx / kN - sx * sx / kN / kN) * (syy / kN - sy * sy / kN / kN));
  EXPECT_LT(std::abs(rho), 0.01);
}

TEST(Streams, MixSeed) {
  EXPECT_NE(mix_seed(1, 1), mix_seed(1, 2));
  EXPECT_NE(mix_seed(1, 1), mix_seed(2, 1));
  EXPECT_EQ(mix_seed(5, 9), mix_seed(5, 9));
  const McOptions o{77, 3};
  EXPECT_EQ(o.sub(4).seed, mix_seed(77, 4));
  EXPECT_EQ(o.sub(4).workers, 3U);
}

TEST(MapPaths, IndependentOfWorkerCount) {
  auto f = [](std::size_t i, RngStream& rng) { return static_cast<double>(i) + rng.normal(); };
  const auto one = map_paths<double>(1001, McOptions{9, 1}, f);
  const auto three = map_paths<double>(1001, McOptions{9, 3}, f);
  EXPECT_EQ(one, three);
  RngStream check = derive_stream(9, 500);
  EXPECT_EQ(one[500], 500.0 + check.normal());
}

TEST(MapPaths, PropagatesExceptions) {
  auto f = [](std::size_t i, RngStream&) -> double {
    if (i == 17) throw DomainError("boom");
    return 0.0;
  };
  EXPECT_THROW(map_paths<double>(40, McOptions{1, 2}, f), DomainError);
}

TEST(Extinction, WorkerCountDoesNotChangeResult) {
  const Parameters p = Parameters::derive(1.5, 0.5, 0.3);
  const McSummary a = estimate_extinction_probability(p, 0.5, 10.0, 300, McOptions{3, 1}, scheme(1e-2, 1e-2));
  const McSummary b = estimate_extinction_probability(p, 0.5, 10.0, 300, McOptions{3, 2}, scheme(1e-2, 1e-2));
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NEAR(a.std_error, std::sqrt(a.mean * (1 - a.mean) / 300.0), 1e-3);
  EXPECT_THROW(estimate_extinction_probability(p, 0.5, 10.0, 99, McOptions{}, scheme(1e-2, 1e-2)), DomainError);
}

TEST(Extinction, NonincreasingInTheta) {
  const Parameters base = Parameters::derive(1.5, 0.5, 0.0);
  std::vector<McSummary> s;
  for (double theta : {0.0, 0.3, 0.6, 0.9, 1.2}) {
    s.push_back(estimate_extinction_probability(base.with_theta(theta), 0.5, 50.0, 1000, McOptions{},
                                                scheme(1e-2, 1e-2)));
  }
  EXPECT_GE(s.front().mean, 0.95);
  EXPECT_LE(s.back().mean, 0.05);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LE(s[i].ci95_low, s[i - 1].ci95_high) << i;
}

TEST(DriftCheck, ZeroTimeAndRegime) {
  const Parameters p = Parameters::derive(1.5, 0.5, 0.5);
  const DriftCheck d = drift_identity_check(p, 1.0, 0.0, 100, McOptions{});
  EXPECT_EQ(d.difference.mean, 0.0);
  EXPECT_EQ(d.difference.std_error, 0.0);
  EXPECT_EQ(d.predicted, 1.0);
  EXPECT_THROW(drift_identity_check(p.with_theta(p.threshold_low), 1.0, 1.0, 100, McOptions{}), RegimeError);
  EXPECT_THROW(drift_identity_check(p.with_theta(0.1), 1.0, 1.0, 100, McOptions{}), RegimeError);
}

TEST(Laplace, LogMeanExp) {
  const std::vector<double> constant(50, 0.3);
  const LaplaceEstimate c = log_mean_exp(constant, 0.5, 0.3);
  EXPECT_NEAR(c.estimate, 0.3, 1e-15);
  EXPECT_EQ(c.std_error, 0.0);
  EXPECT_TRUE(c.within_se(3.0));

  const std::vector<double> xs{0.0, std::log(3.0)};
  const LaplaceEstimate e = log_mean_exp(xs, 1.0, std::log(2.0));
  EXPECT_NEAR(e.estimate, std::log(2.0), 1e-15);
  // delta method: sd(e^X) / (mean sqrt(n)) = sqrt(2) / (2 sqrt(2))
  EXPECT_NEAR(e.std_error, 0.5, 1e-15);

  const std::vector<double> huge{1000.0, 1000.0 + std::log(3.0)};
  EXPECT_NEAR(log_mean_exp(huge, 1.0, 0.0).estimate, 1000.0 + std::log(2.0), 1e-12);
}

TEST(Laplace, Driver) {
  const LaplaceEstimate e = driver_laplace_check(1.5, 0.5, 100000, McOptions{});
  EXPECT_NEAR(e.expected, std::pow(0.5, 1.5), 1e-15);
  EXPECT_TRUE(e.within_relative(0.02)) << e.estimate << " vs " << e.expected;
}

TEST(SelfSimilarity, UnitScaleAndNegativeControl) {
  const Parameters p = Parameters::derive(1.5, 0.5, 0.5);
  const SchemeConfig cfg = scheme(1e-3, 1e-2);
  const KsReport one = self_similarity_test(p, 1.0, 1.0, 0.5, 10000, McOptions{}, cfg);
  EXPECT_TRUE(one.pass) << one.statistic;
  const KsReport two = self_similarity_test(p, 1.0, 2.0, 0.5, 10000, McOptions{}, cfg);
  EXPECT_TRUE(two.pass) << two.statistic;
  SelfSimOptions wrong;
  wrong.index_override = p.gamma_index + 0.5;
  const KsReport bad = self_similarity_test(p, 1.0, 2.0, 0.5, 10000, McOptions{}, cfg, wrong);
  EXPECT_FALSE(bad.pass) << bad.statistic;
  EXPECT_THROW(self_similarity_test(p, 1.0, 2.0, 0.5, 999, McOptions{}, cfg), DomainError);
}

TEST(SelfSimilarity, ExtendedProcess) {
  const Parameters p = Parameters::derive(1.5, 0.5, 0.5);
  SelfSimOptions ss;
  ss.process = SelfSimProcess::ExtendedV;
  const KsReport r = self_similarity_test(p, 1.0, 2.0, 0.5, 10000, McOptions{}, scheme(1e-3, 1e-2), ss);
  EXPECT_TRUE(r.pass) << r.statistic;
}

TEST(LampertiVsSde, ZeroTime) {
  const Parameters p = Parameters::derive(1.5, 0.5, 0.5);
  const KsReport r = lamperti_vs_sde_test(p, 1.3, 0.0, 1000, McOptions{}, scheme(1e-2, 1e-2));
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(lamperti_vs_sde_test(p, 1.3, 0.5, 10, McOptions{}), DomainError);
}

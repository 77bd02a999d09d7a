#include "ssde/mc.hpp"

#include <algorithm>
#include <cmath>

#include "ssde/errors.hpp"
#include "ssde/specfun.hpp"
#include "ssde/stable.hpp"

namespace ssde {
namespace {

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + carry; }
};

McSummary make_summary(std::size_t n, double mean, double se) {
  return {n, mean, se, mean - 1.96 * se, mean + 1.96 * se};
}

}  // namespace

McSummary summarize(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0) return {};
  CompensatedSum s;
  for (double x : samples) s.add(x);
  const double mean = s.value() / static_cast<double>(n);
  CompensatedSum sq;
  for (double x : samples) sq.add((x - mean) * (x - mean));
  const double var = n > 1 ? sq.value() / static_cast<double>(n - 1) : 0.0;
  return make_summary(n, mean, std::sqrt(var / static_cast<double>(n)));
}

double ks_critical_value_1pct(std::size_t n1, std::size_t n2) {
  const auto a = static_cast<double>(n1);
  const auto b = static_cast<double>(n2);
  return 1.628 * std::sqrt((a + b) / (a * b));
}

KsReport ks_two_sample(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty()) throw DomainError("ks_two_sample: samples must be nonempty");
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  // whichever sample is left over only moves its own CDF towards 1
  if (i < a.size()) d = std::max(d, std::abs(static_cast<double>(i) / na - 1.0));
  if (j < b.size()) d = std::max(d, std::abs(1.0 - static_cast<double>(j) / nb));
  KsReport r;
  r.statistic = d;
  r.n1 = a.size();
  r.n2 = b.size();
  r.critical_value_1pct = ks_critical_value_1pct(r.n1, r.n2);
  r.pass = r.statistic < r.critical_value_1pct;
  return r;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

RngStream derive_stream(std::uint64_t seed, std::uint64_t id) { return {seed, id}; }

McSummary estimate_extinction_probability(const Parameters& params, double z0, double horizon, std::size_t n,
                                          const McOptions& opts, SchemeConfig scheme) {
  if (n < 100) throw DomainError("estimate_extinction_probability: n must be >= 100");
  scheme.horizon = horizon;
  scheme.grid_step = std::min(scheme.grid_step, horizon);
  const ZScheme z(params, scheme);
  const auto hits = map_paths<double>(n, opts, [&](std::size_t, RngStream& rng) {
    const auto s = z.terminal(z0, rng);
    return (s.absorbed_at && *s.absorbed_at <= horizon) ? 1.0 : 0.0;
  });
  CompensatedSum total;
  for (double h : hits) total.add(h);
  const double p = total.value() / static_cast<double>(n);
  return make_summary(n, p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)));
}

DriftCheck drift_identity_check(const Parameters& params, double v0, double t, std::size_t n,
                                const McOptions& opts, SchemeConfig scheme) {
  if (!(params.theta > params.threshold_low)) {
    throw RegimeError("drift identity needs theta > Gamma(alpha beta)/Gamma(eta)");
  }
  if (!(t >= 0.0)) throw DomainError("drift_identity_check: t must be >= 0");
  DriftCheck out;
  out.predicted = v0 + params.v_drift() * t;
  if (t == 0.0) {
    const std::vector<double> zeros(n, 0.0);
    out.difference = summarize(zeros);
    return out;
  }
  scheme.horizon = t;
  scheme.grid_step = std::min(scheme.grid_step, t);
  const VScheme v(params, scheme);
  const auto diffs = map_paths<double>(n, opts, [&](std::size_t, RngStream& rng) {
    return v.terminal(v0, rng) - out.predicted;
  });
  out.difference = summarize(diffs);
  return out;
}

LaplaceEstimate log_mean_exp(std::span<const double> exponents, double lambda, double expected) {
  LaplaceEstimate e;
  e.lambda = lambda;
  e.expected = expected;
  e.n = exponents.size();
  if (exponents.empty()) return e;
  const double shift = *std::max_element(exponents.begin(), exponents.end());
  CompensatedSum s;
  for (double x : exponents) s.add(std::exp(x - shift));
  const double n = static_cast<double>(exponents.size());
  const double m = s.value() / n;
  CompensatedSum sq;
  for (double x : exponents) {
    const double d = std::exp(x - shift) - m;
    sq.add(d * d);
  }
  const double sd = std::sqrt(sq.value() / (n - 1.0));
  e.estimate = shift + std::log(m);
  e.std_error = sd / (m * std::sqrt(n));
  return e;
}

LaplaceEstimate xi_laplace_check(const Parameters& params, double lambda, std::size_t n, const McOptions& opts,
                                 const XiConfig& cfg) {
  const double expected = laplace_exponent_xi(lambda, params.alpha, params.theta);
  const XiScheme xi(params, cfg);
  const auto xs = map_paths<double>(n, opts, [&](std::size_t, RngStream& rng) { return lambda * xi.terminal(1.0, rng); });
  return log_mean_exp(xs, lambda, expected);
}

LaplaceEstimate driver_laplace_check(double alpha, double lambda, std::size_t n, const McOptions& opts) {
  const double expected = std::pow(lambda, alpha);
  const auto xs = map_paths<double>(n, opts, [&](std::size_t, RngStream& rng) {
    return -lambda * sample_stable_increment(1.0, alpha, rng);
  });
  return log_mean_exp(xs, lambda, expected);
}

KsReport self_similarity_test(const Parameters& params, double x0, double c, double t, std::size_t n,
                              const McOptions& opts, SchemeConfig scheme, SelfSimOptions ss) {
  if (!(c > 0.0) || !(t > 0.0) || !(x0 > 0.0)) throw DomainError("self_similarity_test: need x0, c, t > 0");
  if (n < 1000) throw DomainError("self_similarity_test: n must be >= 1000");
  const bool extended = ss.process == SelfSimProcess::ExtendedV;
  const double index = ss.index_override.value_or(extended ? 1.0 : params.gamma_index);
  const double t_scaled = std::pow(c, -1.0 / index) * t;

  auto marginal = [&](double start, double horizon, const McOptions& o) {
    SchemeConfig cfg = scheme;
    cfg.horizon = horizon;
    cfg.grid_step = std::min(cfg.grid_step, horizon);
    if (extended) {
      const VScheme v(params, cfg);
      return map_paths<double>(n, o, [&](std::size_t, RngStream& rng) { return v.terminal(start, rng); });
    }
    const ZScheme z(params, cfg);
    return map_paths<double>(n, o, [&](std::size_t, RngStream& rng) { return z.terminal(start, rng).value; });
  };

  auto a = marginal(x0, t_scaled, opts.sub(1));
  for (auto& v : a) v *= c;
  const auto b = marginal(c * x0, t, opts.sub(2));
  return ks_two_sample(a, b);
}

KsReport lamperti_vs_sde_test(const Parameters& params, double x0, double t, std::size_t n, const McOptions& opts,
                              SchemeConfig scheme, XiConfig xi_cfg, std::optional<double> lamperti_theta) {
  if (!(x0 > 0.0) || !(t >= 0.0)) throw DomainError("lamperti_vs_sde_test: need x0 > 0, t >= 0");
  if (n < 1000) throw DomainError("lamperti_vs_sde_test: n must be >= 1000");
  if (t == 0.0) {
    const std::vector<double> same(n, x0);
    return ks_two_sample(same, same);
  }
  const Parameters lp = lamperti_theta ? params.with_theta(*lamperti_theta) : params;
  xi_cfg.absorption_floor = scheme.absorption_floor;
  const auto a = map_paths<double>(n, opts.sub(1), [&](std::size_t, RngStream& rng) {
    return lamperti_terminal(lp, x0, t, rng, xi_cfg).value;
  });
  scheme.horizon = t;
  scheme.grid_step = std::min(scheme.grid_step, t);
  const ZScheme z(params, scheme);
  const auto b = map_paths<double>(n, opts.sub(2), [&](std::size_t, RngStream& rng) { return z.terminal(x0, rng).value; });
  return ks_two_sample(a, b);
}

}  // namespace ssde

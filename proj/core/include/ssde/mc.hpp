#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "ssde/lamperti.hpp"
#include "ssde/params.hpp"
#include "ssde/rng.hpp"
#include "ssde/sde.hpp"

namespace ssde {

struct McSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
};

/// Mean and standard error (sample standard deviation / sqrt(n)) with
/// compensated summation; ci95 = mean -+ 1.96 std_error.
McSummary summarize(std::span<const double> samples);

/// Two-sided level-1% KS test with the asymptotic constant 1.628.
struct KsReport {
  double statistic = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double critical_value_1pct = 0.0;
  bool pass = false;
};

double ks_critical_value_1pct(std::size_t n1, std::size_t n2);

/// sup |F_x - F_y| over the merged sorted sample; tied values are consumed
/// from both samples before the distance is taken. Throws DomainError on
/// empty input.
KsReport ks_two_sample(std::span<const double> xs, std::span<const double> ys);

/// Stream `id` of the family keyed by `seed`.
RngStream derive_stream(std::uint64_t seed, std::uint64_t id);

/// splitmix64 finaliser, used to key independent sample families off one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

struct McOptions {
  std::uint64_t seed = 20240521;
  unsigned workers = 1;

  /// Options for an independent family of streams.
  [[nodiscard]] McOptions sub(std::uint64_t tag) const { return {mix_seed(seed, tag), workers}; }
};

/// Runs f(i, stream_i) for i in [0, n). Worker w handles the indices
/// i = w (mod workers); stream_i = derive_stream(seed, i). Results are placed
/// by index, so the output does not depend on the worker count.
template <class R, class F>
std::vector<R> map_paths(std::size_t n, const McOptions& opts, F&& f) {
  std::vector<R> out(n);
  const unsigned workers = std::max(1U, std::min<unsigned>(opts.workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  auto body = [&](unsigned w, std::exception_ptr& err) {
    try {
      for (std::size_t i = w; i < n; i += workers) {
        RngStream rng = derive_stream(opts.seed, i);
        out[i] = f(i, rng);
      }
    } catch (...) {
      err = std::current_exception();
    }
  };
  std::vector<std::exception_ptr> errors(workers);
  if (workers == 1) {
    body(0, errors[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w, std::ref(errors[w]));
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Fraction of absorbed-Z paths with absorbed_at <= horizon, binomial error.
/// n >= 100.
McSummary estimate_extinction_probability(const Parameters& params, double z0, double horizon, std::size_t n,
                                          const McOptions& opts, SchemeConfig scheme = {});

struct DriftCheck {
  McSummary difference;  // V_t - (v0 + c t)
  double predicted = 0.0;  // v0 + c t
};

/// Throws RegimeError unless theta > threshold_low.
DriftCheck drift_identity_check(const Parameters& params, double v0, double t, std::size_t n,
                                const McOptions& opts, SchemeConfig scheme = {});

/// log of a Monte-Carlo mean of exp(s X) against a closed form.
struct LaplaceEstimate {
  double lambda = 0.0;
  double estimate = 0.0;   // log(mean exp(...))
  double std_error = 0.0;  // delta method: sd / (mean sqrt(n))
  double expected = 0.0;
  std::size_t n = 0;

  [[nodiscard]] double z_score() const { return std_error > 0.0 ? (estimate - expected) / std_error : 0.0; }
  [[nodiscard]] bool within_se(double k) const { return std::abs(estimate - expected) <= k * std_error; }
  [[nodiscard]] bool within_relative(double tol) const {
    return std::abs(estimate - expected) <= tol * std::abs(expected);
  }
};

LaplaceEstimate log_mean_exp(std::span<const double> exponents, double lambda, double expected);

/// log E[exp(lambda xi_1)] from n simulated xi_1 against psi(lambda).
LaplaceEstimate xi_laplace_check(const Parameters& params, double lambda, std::size_t n, const McOptions& opts,
                                 const XiConfig& cfg = {});

/// log E[exp(-lambda L_1)] from n driver samples against lambda^alpha.
LaplaceEstimate driver_laplace_check(double alpha, double lambda, std::size_t n, const McOptions& opts);

enum class SelfSimProcess { AbsorbedZ, ExtendedV };

struct SelfSimOptions {
  SelfSimProcess process = SelfSimProcess::AbsorbedZ;
  /// Replace the index used in the time rescaling (negative controls).
  std::optional<double> index_override;
};

/// KS between c Z_{c^(-1/gamma) t} started at x0 and Z_t started at c x0.
/// For ExtendedV the index is 1 and the V-scheme is used. n >= 1000.
KsReport self_similarity_test(const Parameters& params, double x0, double c, double t, std::size_t n,
                              const McOptions& opts, SchemeConfig scheme = {}, SelfSimOptions ss = {});

/// KS between the Lamperti-built marginal and the absorbed-SDE marginal at
/// time t (absorbed paths count as 0 on both sides). `lamperti_theta`
/// replaces theta on the Lamperti side only (negative controls). n >= 1000.
KsReport lamperti_vs_sde_test(const Parameters& params, double x0, double t, std::size_t n, const McOptions& opts,
                              SchemeConfig scheme = {}, XiConfig xi_cfg = {},
                              std::optional<double> lamperti_theta = std::nullopt);

}  // namespace ssde

#pragma once

#include <cstdint>
#include <optional>

#include "gpas/rng.hpp"

namespace gpas {

inline constexpr std::uint64_t kDefaultMaxCalls = 1'000'000;
inline constexpr std::int64_t kDefaultCalibrationCap = 10'000'000;

/// Stream of iid Poisson(mu) counts with a fixed, unknown mean.
///
/// Implementors supply draw(); the base class counts calls. call_count() is the
/// running time of any estimator that consumes the stream. max_calls() is the
/// per-run draw budget enforced by gpas().
class PoissonSource {
public:
    explicit PoissonSource(std::optional<std::uint64_t> max_calls = kDefaultMaxCalls)
        : max_calls_(max_calls) {}
    virtual ~PoissonSource() = default;

    std::uint64_t next_count() {
        ++call_count_;
        return draw();
    }

    std::uint64_t call_count() const noexcept { return call_count_; }
    std::optional<std::uint64_t> max_calls() const noexcept { return max_calls_; }
    void set_max_calls(std::optional<std::uint64_t> max_calls) noexcept { max_calls_ = max_calls; }

protected:
    virtual std::uint64_t draw() = 0;

private:
    std::uint64_t call_count_ = 0;
    std::optional<std::uint64_t> max_calls_;
};

/// Poisson(mu) counts from an owned random stream.
class SyntheticPoissonSource final : public PoissonSource {
public:
    SyntheticPoissonSource(double mu, RngStream rng,
                           std::optional<std::uint64_t> max_calls = kDefaultMaxCalls);

    double mu() const noexcept { return mu_; }

protected:
    std::uint64_t draw() override;

private:
    double mu_;
    RngStream rng_;
};

/// One GPAS run. t_prime is the k-th arrival time of the rate-mu point process
/// assembled from the count stream; mu_hat = (k - 1) / t_prime.
struct GpasResult {
    std::int64_t k = 0;
    double t_prime = 0.0;
    double mu_hat = 0.0;
    std::uint64_t draws_used = 0;
};

/// Outcome of the k search for a target (epsilon, delta). Running GPAS with
/// k - 1 with probability p and with k otherwise fails with probability
/// exactly delta.
struct Calibration {
    double epsilon = 0.0;
    double delta = 0.0;
    std::int64_t k = 0;
    double p = 0.0;
    double f_k = 0.0;    ///< failure probability at k (<= delta)
    double f_km1 = 0.0;  ///< failure probability at k - 1 (> delta)
};

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double coverage = 0.0;
};

/// Gamma Poisson Approximation Scheme.
///
/// Consumes unit-interval counts until k points have accumulated, then places
/// the k-th point inside the last interval with the matching uniform order
/// statistic, Beta(k - A, T - (k - A) + 1). The estimate is
/// InvGamma(k, (k - 1) mu) distributed whatever mu is, and the expected number
/// of draws is at most 1 + k / mu.
///
/// Throws DomainError if k < 2 and BudgetExceeded when the run would consume
/// more than source.max_calls() draws.
GpasResult gpas(PoissonSource& source, std::int64_t k, RngStream& rng);

/// Exact P(|mu_hat_k / mu - 1| > epsilon) for the GPAS estimate with index k.
double failure_probability(std::int64_t k, double epsilon);

/// Smallest k >= 3 whose failure probability is at most delta, plus the
/// mixing probability p that tops the failure rate up to exactly delta.
/// Throws SearchFailure past `k_cap` or if monotonicity in k is violated.
Calibration calibrate(double epsilon, double delta,
                      std::int64_t k_cap = kDefaultCalibrationCap);

/// Randomized-k GPAS meeting (epsilon, delta) with equality.
GpasResult exact_gpas(PoissonSource& source, const Calibration& calibration, RngStream& rng);
GpasResult exact_gpas(PoissonSource& source, double epsilon, double delta, RngStream& rng);

/// Exact interval for mu from one GPAS result, using mu * t_prime ~ Gamma(k, 1).
ConfidenceInterval confidence_interval(const GpasResult& result, double coverage);

}  // namespace gpas

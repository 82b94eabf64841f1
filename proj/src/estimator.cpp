#include "gpas/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpas/distributions.hpp"
#include "gpas/errors.hpp"
#include "gpas/special_functions.hpp"

namespace gpas {

namespace {

constexpr std::int64_t kMinCalibratedK = 3;

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0,1)");
}

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
}

}  // namespace

SyntheticPoissonSource::SyntheticPoissonSource(double mu, RngStream rng,
                                               std::optional<std::uint64_t> max_calls)
    : PoissonSource(max_calls), mu_(mu), rng_(rng) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw DomainError("synthetic source: mu must be nonnegative and finite");
}

std::uint64_t SyntheticPoissonSource::draw() { return sample_poisson(rng_, mu_); }

GpasResult gpas(PoissonSource& source, std::int64_t k, RngStream& rng) {
    if (k < 2) throw DomainError("gpas: k must be at least 2");

    const auto budget = source.max_calls();
    const auto target = static_cast<std::uint64_t>(k);
    std::uint64_t points = 0;    // A: points seen in [0, i)
    std::uint64_t interval = 0;  // i
    double t_prime = 0.0;

    while (points < target) {
        if (budget && interval >= *budget)
            throw BudgetExceeded("gpas: draw budget of " + std::to_string(*budget) +
                                 " exhausted before " + std::to_string(k) + " points");
        const std::uint64_t count = source.next_count();
        if (points + count >= target) {
            const std::uint64_t needed = target - points;
            const std::uint64_t after = count - needed + 1;
            t_prime = static_cast<double>(interval) +
                      sample_beta(rng, static_cast<std::int64_t>(needed),
                                  static_cast<std::int64_t>(after));
        }
        points += count;
        ++interval;
    }

    GpasResult result;
    result.k = k;
    result.t_prime = t_prime;
    result.mu_hat = static_cast<double>(k - 1) / t_prime;
    result.draws_used = interval;
    return result;
}

double failure_probability(std::int64_t k, double epsilon) {
    if (k < 2) throw DomainError("failure_probability: k must be at least 2");
    check_epsilon(epsilon);
    // mu * T' ~ Gamma(k, 1) and mu_hat / mu = (k - 1) / (mu * T').
    const double shape = static_cast<double>(k);
    const double scale = static_cast<double>(k - 1);
    const double over = reg_lower_gamma(shape, scale / (1.0 + epsilon));
    const double under = reg_upper_gamma(shape, scale / (1.0 - epsilon));
    return over + under;
}

Calibration calibrate(double epsilon, double delta, std::int64_t k_cap) {
    check_epsilon(epsilon);
    check_delta(delta);
    if (k_cap < kMinCalibratedK) throw DomainError("calibrate: k cap must be at least 3");

    auto f = [epsilon](std::int64_t k) { return failure_probability(k, epsilon); };
    auto nonmonotone = [&](std::int64_t k) {
        return SearchFailure("calibrate: failure probability increased in k near k=" +
                             std::to_string(k) + " (epsilon=" + std::to_string(epsilon) + ")");
    };

    // Invariant while searching: f(lo) > delta >= f(hi), f(lo) >= f(hi).
    std::int64_t lo = kMinCalibratedK - 1;
    double f_lo = f(lo);
    std::int64_t hi = kMinCalibratedK;
    double f_hi = f(hi);
    if (f_hi > f_lo) throw nonmonotone(hi);
    while (f_hi > delta) {
        if (hi >= k_cap)
            throw SearchFailure("calibrate: no k <= " + std::to_string(k_cap) +
                                " reaches delta=" + std::to_string(delta));
        lo = hi;
        f_lo = f_hi;
        hi = std::min(hi * 2, k_cap);
        f_hi = f(hi);
        if (f_hi > f_lo) throw nonmonotone(hi);
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        const double f_mid = f(mid);
        if (f_mid > f_lo || f_mid < f_hi) throw nonmonotone(mid);
        if (f_mid > delta) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }

    Calibration c;
    c.epsilon = epsilon;
    c.delta = delta;
    c.k = hi;
    c.f_k = f_hi;
    c.f_km1 = f_lo;
    // Only possible when k = 3 already meets delta at k - 1 = 2; never decrement.
    c.p = f_lo > delta ? (delta - f_hi) / (f_lo - f_hi) : 0.0;
    return c;
}

GpasResult exact_gpas(PoissonSource& source, const Calibration& calibration, RngStream& rng) {
    std::int64_t k = calibration.k;
    if (sample_bernoulli(rng, calibration.p)) --k;
    return gpas(source, k, rng);
}

GpasResult exact_gpas(PoissonSource& source, double epsilon, double delta, RngStream& rng) {
    return exact_gpas(source, calibrate(epsilon, delta), rng);
}

ConfidenceInterval confidence_interval(const GpasResult& result, double coverage) {
    if (!(coverage > 0.0 && coverage < 1.0))
        throw DomainError("confidence_interval: coverage must lie in (0,1)");
    if (result.k < 2 || !(result.t_prime > 0.0))
        throw DomainError("confidence_interval: result is not a completed GPAS run");
    const double shape = static_cast<double>(result.k);
    ConfidenceInterval ci;
    ci.lower = gamma_quantile(shape, 1.0, 0.5 * (1.0 - coverage)) / result.t_prime;
    ci.upper = gamma_quantile(shape, 1.0, 0.5 * (1.0 + coverage)) / result.t_prime;
    ci.coverage = coverage;
    return ci;
}

}  // namespace gpas

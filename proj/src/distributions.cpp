#include "gpas/distributions.hpp"

#include <cmath>

#include "gpas/errors.hpp"

namespace gpas {

namespace {

constexpr double kPoissonSplit = 30.0;
constexpr double kMaxExponentialSumShape = 64.0;

std::uint64_t poisson_inversion(RngStream& rng, double mu) {
    const double p0 = std::exp(-mu);
    for (;;) {
        const double u = rng.uniform();
        double p = p0;
        double cdf = p0;
        std::uint64_t x = 0;
        while (u >= cdf) {
            ++x;
            p *= mu / static_cast<double>(x);
            cdf += p;
            // Remaining mass is below round-off; u landed in the rounding gap.
            if (p < cdf * 1e-17 && static_cast<double>(x) > mu) break;
        }
        if (u < cdf) return x;
    }
}

double marsaglia_tsang(RngStream& rng, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = sample_standard_normal(rng);
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = rng.open_uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

void GammaShapeRate::validate() const {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw DomainError("gamma: shape must be positive and finite");
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw DomainError("gamma: rate must be positive and finite");
}

double sample_uniform(RngStream& rng) { return rng.uniform(); }

bool sample_bernoulli(RngStream& rng, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli: p must lie in [0,1]");
    return rng.uniform() < p;
}

std::uint64_t sample_poisson(RngStream& rng, double mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw DomainError("poisson: mean must be nonnegative and finite");
    if (mu == 0.0) return 0;
    if (mu <= kPoissonSplit) return poisson_inversion(rng, mu);
    const auto parts = static_cast<std::uint64_t>(std::ceil(mu / kPoissonSplit));
    const double sub = mu / static_cast<double>(parts);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < parts; ++i) total += poisson_inversion(rng, sub);
    return total;
}

double sample_exponential(RngStream& rng, double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw DomainError("exponential: rate must be positive and finite");
    return -std::log(rng.open_uniform()) / rate;
}

double sample_standard_normal(RngStream& rng) {
    // Marsaglia polar method; the second variate is discarded so the stream
    // carries no hidden cache.
    for (;;) {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double sample_gamma(RngStream& rng, GammaShapeRate params) {
    params.validate();
    const double shape = params.shape;
    if (shape <= kMaxExponentialSumShape && shape == std::floor(shape)) {
        double sum = 0.0;
        for (int i = 0; i < static_cast<int>(shape); ++i) sum -= std::log(rng.open_uniform());
        return sum / params.rate;
    }
    if (shape < 1.0) {
        // Gamma(a) = Gamma(a + 1) * U^(1/a)
        const double g = marsaglia_tsang(rng, shape + 1.0);
        return g * std::pow(rng.open_uniform(), 1.0 / shape) / params.rate;
    }
    return marsaglia_tsang(rng, shape) / params.rate;
}

double sample_beta(RngStream& rng, std::int64_t a, std::int64_t b) {
    if (a < 1 || b < 1) throw DomainError("beta: parameters must be integers >= 1");
    const double g1 = sample_gamma(rng, static_cast<double>(a), 1.0);
    const double g2 = sample_gamma(rng, static_cast<double>(b), 1.0);
    const double x = g1 / (g1 + g2);
    return x < 1.0 ? x : std::nextafter(1.0, 0.0);
}

}  // namespace gpas

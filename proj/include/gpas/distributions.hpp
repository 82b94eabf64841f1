#pragma once

#include <cstdint>

#include "gpas/rng.hpp"

namespace gpas {

/// Gamma law parameterized by shape and rate (mean shape / rate).
struct GammaShapeRate {
    double shape;
    double rate;

    /// Throws DomainError unless both parameters are positive and finite.
    void validate() const;
};

double sample_uniform(RngStream& rng);

/// True with probability p, p in [0,1].
bool sample_bernoulli(RngStream& rng, double p);

/// Exact Poisson(mu) by sequential-search inversion. Means above 30 are split
/// into ceil(mu/30) equal parts whose draws are summed.
std::uint64_t sample_poisson(RngStream& rng, double mu);

double sample_exponential(RngStream& rng, double rate);

double sample_standard_normal(RngStream& rng);

/// Integer shapes up to 64 use a sum of exponentials; other shapes use
/// Marsaglia-Tsang rejection.
double sample_gamma(RngStream& rng, GammaShapeRate params);

inline double sample_gamma(RngStream& rng, double shape, double rate) {
    return sample_gamma(rng, GammaShapeRate{shape, rate});
}

/// Beta(a, b) with integer a, b >= 1, as G1 / (G1 + G2). Result lies in (0,1).
double sample_beta(RngStream& rng, std::int64_t a, std::int64_t b);

}  // namespace gpas

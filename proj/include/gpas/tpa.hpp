#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gpas/estimator.hpp"
#include "gpas/rng.hpp"

namespace gpas {

inline constexpr std::uint64_t kDefaultTpaStepCap = 1'000'000;

/// One-parameter Gibbs family Z(beta) = sum_x exp(beta H(x)) with H >= 0,
/// nested in beta. Only H(X) of a Gibbs draw is needed by TPA, so that is all
/// the family exposes. Implementations must be safe for concurrent const use.
class NestedGibbsFamily {
public:
    virtual ~NestedGibbsFamily() = default;

    /// H(X) for X ~ Gibbs(beta); values lie in [0, max_hamiltonian()].
    virtual double sample_hamiltonian(double beta, RngStream& rng) const = 0;
    virtual double beta_outer() const noexcept = 0;
    virtual double beta_inner() const noexcept = 0;
    virtual double max_hamiltonian() const noexcept = 0;
};

/// One Tootsie Pop run from beta_outer down to beta_inner.
///
/// Each step draws H at the current beta and moves to beta + ln(U)/H (to -inf
/// when H = 0). The number of steps that stay above beta_inner is
/// Poisson(ln(Z(beta_outer) / Z(beta_inner))). If `trajectory` is given it
/// receives every visited beta, starting with beta_outer.
/// Throws IterationCap after `step_cap` steps.
std::uint64_t tpa_run(const NestedGibbsFamily& family, RngStream& rng,
                      std::uint64_t step_cap = kDefaultTpaStepCap,
                      std::vector<double>* trajectory = nullptr);

/// Count stream where each count is one TPA run.
class TpaPoissonSource final : public PoissonSource {
public:
    TpaPoissonSource(const NestedGibbsFamily& family, RngStream rng,
                     std::optional<std::uint64_t> max_calls = kDefaultMaxCalls,
                     std::uint64_t step_cap = kDefaultTpaStepCap);

protected:
    std::uint64_t draw() override;

private:
    const NestedGibbsFamily& family_;
    RngStream rng_;
    std::uint64_t step_cap_;
};

/// Relative precision on r that guarantees relative precision epsilon on e^r:
/// ln(1 + epsilon) / r (the tighter of the two sides).
double relative_error_transfer(double epsilon, double r);

/// Phase-two precision ln(1 + epsilon)(1 - epsilon) / r_hat1, clamped below 1.
double phase_two_epsilon(double epsilon, double r_hat1);

struct TpaReport {
    double epsilon = 0.0;
    double delta = 0.0;
    GpasResult phase1;
    GpasResult phase2;
    double r_hat1 = 0.0;
    double r_hat2 = 0.0;
    double epsilon2 = 0.0;
    double ratio_estimate = 0.0;  ///< exp(r_hat2)
    ConfidenceInterval ci;        ///< on the ratio, coverage 1 - delta
    std::uint64_t total_tpa_calls = 0;
};

/// Two-phase (epsilon, delta)-approximation of e^r from a Poisson(r) stream.
/// Phase one estimates r to (epsilon, delta/2); phase two re-estimates it to
/// (phase_two_epsilon, delta/2). Throws DegenerateRatio if phase one exhausts
/// the source budget (r ~ 0).
TpaReport two_phase_scheme(PoissonSource& source, double epsilon, double delta, RngStream& rng);

/// two_phase_scheme on TPA runs of `family`, source and auxiliary randomness
/// drawn from independent streams of `seed`/`replicate`.
TpaReport two_phase_scheme(const NestedGibbsFamily& family, double epsilon, double delta,
                           std::uint64_t seed, std::uint64_t replicate = 0);

/// Comparison arm: same phase one, but phase two averages a fixed number of
/// counts sized by the two-sided Poisson Chernoff bound.
struct ChernoffReport {
    GpasResult phase1;
    double r_hat1 = 0.0;
    double epsilon2 = 0.0;
    std::uint64_t phase2_samples = 0;
    double r_hat2 = 0.0;
    double ratio_estimate = 0.0;
    std::uint64_t total_calls = 0;
};

/// Smallest n with exp(-n mu h(a)) + exp(-n mu h(-a)) <= delta, where
/// h(a) = (1 + a) ln(1 + a) - a. Bounds P(|S/(n mu) - 1| > a) for S ~ Poisson(n mu).
std::uint64_t chernoff_sample_size(double relative_error, double mu_lower, double delta);

ChernoffReport chernoff_baseline(PoissonSource& source, double epsilon, double delta,
                                 RngStream& rng);

}  // namespace gpas

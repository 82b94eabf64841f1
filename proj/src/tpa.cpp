#include "gpas/tpa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gpas/errors.hpp"

namespace gpas {

namespace {

constexpr double kMaxPhaseTwoEpsilon = 1.0 - 1e-9;

enum StreamRole : std::uint64_t { kSourceRole = 0, kAuxRole = 1 };

void check_unit(double value, const char* what) {
    if (!(value > 0.0 && value < 1.0))
        throw DomainError(std::string(what) + " must lie in (0,1)");
}

GpasResult run_phase_one(PoissonSource& source, double epsilon, double delta, RngStream& rng) {
    try {
        return exact_gpas(source, epsilon, 0.5 * delta, rng);
    } catch (const BudgetExceeded& e) {
        throw DegenerateRatio(std::string("phase one: ") + e.what() +
                              "; ln-ratio is indistinguishable from 0");
    }
}

}  // namespace

std::uint64_t tpa_run(const NestedGibbsFamily& family, RngStream& rng, std::uint64_t step_cap,
                      std::vector<double>* trajectory) {
    const double inner = family.beta_inner();
    double beta = family.beta_outer();
    if (trajectory) trajectory->assign(1, beta);
    std::uint64_t count = 0;
    for (std::uint64_t step = 0;; ++step) {
        if (step >= step_cap)
            throw IterationCap("tpa_run: exceeded " + std::to_string(step_cap) + " steps");
        const double h = family.sample_hamiltonian(beta, rng);
        if (h > 0.0)
            beta += std::log(rng.open_uniform()) / h;
        else
            beta = -std::numeric_limits<double>::infinity();
        if (trajectory) trajectory->push_back(beta);
        if (!(beta > inner)) return count;
        ++count;
    }
}

TpaPoissonSource::TpaPoissonSource(const NestedGibbsFamily& family, RngStream rng,
                                   std::optional<std::uint64_t> max_calls,
                                   std::uint64_t step_cap)
    : PoissonSource(max_calls), family_(family), rng_(rng), step_cap_(step_cap) {}

std::uint64_t TpaPoissonSource::draw() { return tpa_run(family_, rng_, step_cap_); }

double relative_error_transfer(double epsilon, double r) {
    check_unit(epsilon, "epsilon");
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive and finite");
    return std::log1p(epsilon) / r;
}

double phase_two_epsilon(double epsilon, double r_hat1) {
    check_unit(epsilon, "epsilon");
    if (!(r_hat1 > 0.0) || !std::isfinite(r_hat1))
        throw DomainError("r_hat1 must be positive and finite");
    return std::min(std::log1p(epsilon) * (1.0 - epsilon) / r_hat1, kMaxPhaseTwoEpsilon);
}

TpaReport two_phase_scheme(PoissonSource& source, double epsilon, double delta, RngStream& rng) {
    check_unit(epsilon, "epsilon");
    check_unit(delta, "delta");

    TpaReport report;
    report.epsilon = epsilon;
    report.delta = delta;
    const std::uint64_t calls_before = source.call_count();

    report.phase1 = run_phase_one(source, epsilon, delta, rng);
    report.r_hat1 = report.phase1.mu_hat;
    report.epsilon2 = phase_two_epsilon(epsilon, report.r_hat1);

    report.phase2 = exact_gpas(source, report.epsilon2, 0.5 * delta, rng);
    report.r_hat2 = report.phase2.mu_hat;
    report.ratio_estimate = std::exp(report.r_hat2);

    const ConfidenceInterval r_ci = confidence_interval(report.phase2, 1.0 - delta);
    report.ci = {std::exp(r_ci.lower), std::exp(r_ci.upper), r_ci.coverage};
    report.total_tpa_calls = source.call_count() - calls_before;
    return report;
}

TpaReport two_phase_scheme(const NestedGibbsFamily& family, double epsilon, double delta,
                           std::uint64_t seed, std::uint64_t replicate) {
    TpaPoissonSource source(family, replicate_stream(seed, replicate, kSourceRole));
    RngStream aux = replicate_stream(seed, replicate, kAuxRole);
    return two_phase_scheme(source, epsilon, delta, aux);
}

std::uint64_t chernoff_sample_size(double relative_error, double mu_lower, double delta) {
    if (!(relative_error > 0.0) || !std::isfinite(relative_error))
        throw DomainError("chernoff_sample_size: relative error must be positive");
    if (!(mu_lower > 0.0) || !std::isfinite(mu_lower))
        throw DomainError("chernoff_sample_size: mean bound must be positive");
    check_unit(delta, "delta");

    const double a = relative_error;
    const double upper_rate = (1.0 + a) * std::log1p(a) - a;
    // For a >= 1 the lower deviation event is {S = 0} (a = 1) or empty (a > 1).
    const double lower_rate = a < 1.0 ? (1.0 - a) * std::log1p(-a) + a : 1.0;
    const bool lower_possible = a <= 1.0;
    auto bound = [&](double n) {
        double b = std::exp(-n * mu_lower * upper_rate);
        if (lower_possible) b += std::exp(-n * mu_lower * lower_rate);
        return b;
    };

    std::uint64_t hi = 1;
    while (bound(static_cast<double>(hi)) > delta) hi *= 2;
    std::uint64_t lo = hi / 2;  // bound(lo) > delta, or lo == 0
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (bound(static_cast<double>(mid)) > delta)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

ChernoffReport chernoff_baseline(PoissonSource& source, double epsilon, double delta,
                                 RngStream& rng) {
    check_unit(epsilon, "epsilon");
    check_unit(delta, "delta");

    ChernoffReport report;
    const std::uint64_t calls_before = source.call_count();
    report.phase1 = run_phase_one(source, epsilon, delta, rng);
    report.r_hat1 = report.phase1.mu_hat;
    report.epsilon2 = phase_two_epsilon(epsilon, report.r_hat1);

    // On phase-one success r >= r_hat1 / (1 + epsilon); the bound is worst at the
    // smallest admissible mean.
    const double r_lower = report.r_hat1 / (1.0 + epsilon);
    report.phase2_samples = chernoff_sample_size(report.epsilon2, r_lower, 0.5 * delta);

    std::uint64_t sum = 0;
    for (std::uint64_t i = 0; i < report.phase2_samples; ++i) sum += source.next_count();
    report.r_hat2 = static_cast<double>(sum) / static_cast<double>(report.phase2_samples);
    report.ratio_estimate = std::exp(report.r_hat2);
    report.total_calls = source.call_count() - calls_before;
    return report;
}

}  // namespace gpas

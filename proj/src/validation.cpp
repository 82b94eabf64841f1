#include "gpas/validation.hpp"

#include <cmath>
#include <sstream>

#include "gpas/estimator.hpp"
#include "gpas/ising.hpp"
#include "gpas/replicate.hpp"
#include "gpas/special_functions.hpp"
#include "gpas/stats.hpp"
#include "gpas/tpa.hpp"

namespace gpas {

namespace {

enum Role : std::uint64_t { kSource = 0, kAux = 1 };

// Each property uses its own seed offset so they do not share streams.
std::uint64_t property_seed(std::uint64_t seed, std::uint64_t property) {
    return seed ^ (0x9E3779B97F4A7C15ULL * (property + 1));
}

std::vector<GpasResult> gpas_replicates(std::size_t n, std::uint64_t seed, double mu,
                                        std::int64_t k) {
    return run_replicates(n, [=](std::size_t i) {
        SyntheticPoissonSource source(mu, replicate_stream(seed, i, kSource));
        RngStream aux = replicate_stream(seed, i, kAux);
        return gpas(source, k, aux);
    });
}

std::string fmt(const char* label, double value) {
    std::ostringstream os;
    os << label << '=' << value;
    return os.str();
}

}  // namespace

std::vector<PropertyResult> run_validation(std::size_t replicates, std::uint64_t seed) {
    const double z = stats::two_sided_z(kValidationAlpha);
    const std::size_t n = replicates;
    std::vector<PropertyResult> out;

    auto add = [&](PropertyResult r) {
        if (n < kMinValidationReplicates) {
            r.warning = "insufficient replicates (" + std::to_string(n) + " < " +
                        std::to_string(kMinValidationReplicates) + ")";
            r.passed = true;
        }
        out.push_back(std::move(r));
    };

    // Law of mu * T'.
    std::uint64_t property = 0;
    for (auto [mu, k] : {std::pair{1.0, std::int64_t{50}}, std::pair{3.0, std::int64_t{100}}}) {
        const auto runs = gpas_replicates(n, property_seed(seed, property++), mu, k);
        std::vector<double> scaled;
        for (const auto& r : runs) scaled.push_back(mu * r.t_prime);
        const double d = stats::ks_statistic(
            scaled, [k](double t) { return reg_lower_gamma(static_cast<double>(k), t); });
        const double crit = stats::ks_critical(kValidationAlpha, n);
        add({"gpas_gamma_law_mu" + std::to_string(static_cast<int>(mu)) + "_k" + std::to_string(k),
             d < crit, d, crit, "KS of mu*T' vs Gamma(k,1)", ""});
    }

    // Scale-free relative error.
    {
        const std::int64_t k = 100;
        auto rel = [&](double mu) {
            std::vector<double> v;
            for (const auto& r : gpas_replicates(n, property_seed(seed, property++), mu, k))
                v.push_back(r.mu_hat / mu - 1.0);
            return v;
        };
        const auto small = rel(0.5);
        const auto large = rel(10.0);
        const double d = stats::ks_two_sample(small, large);
        const double crit = stats::ks_critical_two_sample(kValidationAlpha, n, n);
        add({"relative_error_scale_free", d < crit, d, crit,
             "two-sample KS of mu_hat/mu - 1 at mu=0.5 vs mu=10, k=100", ""});
    }

    // Unbiasedness and running time.
    {
        const double mu = 3.0;
        const std::int64_t k = 100;
        const auto runs = gpas_replicates(n, property_seed(seed, property++), mu, k);
        std::vector<double> est;
        for (const auto& r : runs) est.push_back(r.mu_hat);
        const auto s = stats::summarize(est);
        const double band = z * mu / std::sqrt(static_cast<double>(k - 2)) /
                            std::sqrt(static_cast<double>(n));
        add({"unbiased_mu3_k100", std::fabs(s.mean - mu) <= band, std::fabs(s.mean - mu), band,
             fmt("mean", s.mean), ""});
    }
    {
        const double mu = 2.0;
        const std::int64_t k = 50;
        const auto runs = gpas_replicates(n, property_seed(seed, property++), mu, k);
        std::vector<double> draws;
        for (const auto& r : runs) draws.push_back(static_cast<double>(r.draws_used));
        const auto s = stats::summarize(draws);
        const double bound = 1.0 + static_cast<double>(k) / mu + z * s.standard_error();
        add({"expected_draws_bound_mu2_k50", s.mean <= bound, s.mean, bound,
             "mean draws vs 1 + k/mu + z*se", ""});
    }

    // Exact failure probability of the randomized-k scheme.
    {
        const double eps = 0.3, delta = 0.05, mu = 5.0;
        const Calibration cal = calibrate(eps, delta);
        const std::uint64_t ps = property_seed(seed, property++);
        const auto fails = run_replicates(n, [&](std::size_t i) {
            SyntheticPoissonSource source(mu, replicate_stream(ps, i, kSource));
            RngStream aux = replicate_stream(ps, i, kAux);
            const auto r = exact_gpas(source, cal, aux);
            return std::fabs(r.mu_hat / mu - 1.0) > eps ? 1.0 : 0.0;
        });
        const double freq = stats::summarize(fails).mean;
        const double band = z * stats::binomial_sigma(delta, n);
        add({"exact_gpas_failure_rate", std::fabs(freq - delta) <= band, freq, band,
             "|freq - 0.05| within z binomial sigma", ""});
    }

    // Interval coverage.
    {
        const double mu = 2.0, coverage = 0.9;
        const auto runs = gpas_replicates(n, property_seed(seed, property++), mu, 200);
        double covered = 0.0;
        for (const auto& r : runs) {
            const auto ci = confidence_interval(r, coverage);
            if (ci.lower <= mu && mu <= ci.upper) covered += 1.0;
        }
        const double freq = covered / static_cast<double>(n);
        const double band = z * stats::binomial_sigma(coverage, n);
        add({"ci_coverage_90", std::fabs(freq - coverage) <= band, freq, band,
             "coverage of 90% intervals at mu=2, k=200", ""});
    }

    // TPA output law on the 2x2 lattice.
    {
        const ising::IsingFamily family(ising::build_histogram(ising::Graph::lattice(2, 2)));
        const double r = family.log_ratio();
        const std::uint64_t ps = property_seed(seed, property++);
        const auto counts = run_replicates(n, [&](std::size_t i) {
            RngStream rng = replicate_stream(ps, i, kSource);
            return tpa_run(family, rng);
        });
        const auto chi =
            stats::chi_square_gof(counts, [r](std::uint64_t i) { return stats::poisson_pmf(r, i); });
        add({"tpa_poisson_fit_2x2", chi.p_value >= kValidationAlpha, chi.p_value, kValidationAlpha,
             fmt("chi2", chi.statistic) + " " + fmt("dof", static_cast<double>(chi.dof)), ""});

        std::vector<double> values(counts.begin(), counts.end());
        const auto s = stats::summarize(values);
        const double dispersion = s.variance / s.mean;
        const double band = z * std::sqrt(2.0 / static_cast<double>(n - (n > 1 ? 1 : 0)));
        add({"tpa_dispersion_2x2", std::fabs(dispersion - 1.0) <= band, dispersion, band,
             fmt("r", r), ""});
    }

    // Two-phase scheme guarantee on a synthetic stream.
    {
        const double eps = 0.2, delta = 0.1, mu = 15.40;
        const std::uint64_t ps = property_seed(seed, property++);
        const auto fails = run_replicates(n, [&](std::size_t i) {
            SyntheticPoissonSource source(mu, replicate_stream(ps, i, kSource));
            RngStream aux = replicate_stream(ps, i, kAux);
            const auto rep = two_phase_scheme(source, eps, delta, aux);
            return std::fabs(std::exp(rep.r_hat2 - mu) - 1.0) > eps ? 1.0 : 0.0;
        });
        const double freq = stats::summarize(fails).mean;
        const double bound = delta + z * stats::binomial_sigma(delta, n);
        add({"two_phase_failure_rate", freq <= bound, freq, bound,
             "end-to-end failure frequency vs delta + z sigma", ""});
    }
    return out;
}

}  // namespace gpas

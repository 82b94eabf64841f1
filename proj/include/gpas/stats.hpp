#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

// Goodness-of-fit helpers shared by the validate command and the test suites.
namespace gpas::stats {

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased sample variance (0 when n < 2)

    double stddev() const;
    double standard_error() const;
};

Summary summarize(std::span<const double> values);

/// One-sample Kolmogorov-Smirnov statistic sup|F_n - F|. Sorts a copy.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf);

/// Two-sample KS statistic sup|F_n - G_m|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic critical value sqrt(-ln(alpha/2)/2) / sqrt(n_eff).
double ks_critical(double alpha, std::size_t n);
double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m);

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Pearson goodness of fit of integer observations against a pmf on {0, 1, ...}.
/// Adjacent cells are pooled until each expected count is at least
/// `min_expected`; the final cell absorbs the upper tail.
ChiSquare chi_square_gof(std::span<const std::uint64_t> observations,
                         const std::function<double(std::uint64_t)>& pmf,
                         double min_expected = 5.0);

/// Poisson(mu) probability mass at i.
double poisson_pmf(double mu, std::uint64_t i);

/// Two-sided normal quantile for significance alpha, e.g. 3.2905 for 0.001.
double two_sided_z(double alpha);

/// sqrt(p (1 - p) / n).
double binomial_sigma(double p, std::size_t n);

}  // namespace gpas::stats

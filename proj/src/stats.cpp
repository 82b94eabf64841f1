#include "gpas/stats.hpp"

#include <algorithm>
#include <cmath>

#include "gpas/errors.hpp"
#include "gpas/special_functions.hpp"

namespace gpas::stats {

double Summary::stddev() const { return std::sqrt(variance); }

double Summary::standard_error() const {
    return n == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(n));
}

Summary summarize(std::span<const double> values) {
    // Welford
    Summary s;
    double m2 = 0.0;
    for (double x : values) {
        ++s.n;
        const double d = x - s.mean;
        s.mean += d / static_cast<double>(s.n);
        m2 += d * (x - s.mean);
    }
    s.variance = s.n > 1 ? m2 / static_cast<double>(s.n - 1) : 0.0;
    return s;
}

double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf) {
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double t = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= t) ++i;
        while (j < y.size() && y[j] <= t) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return d;
}

double ks_critical(double alpha, std::size_t n) {
    return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m) {
    const double dn = static_cast<double>(n);
    const double dm = static_cast<double>(m);
    return std::sqrt(-0.5 * std::log(0.5 * alpha)) * std::sqrt((dn + dm) / (dn * dm));
}

double poisson_pmf(double mu, std::uint64_t i) {
    if (mu == 0.0) return i == 0 ? 1.0 : 0.0;
    const double x = static_cast<double>(i);
    return std::exp(x * std::log(mu) - mu - log_gamma(x + 1.0));
}

ChiSquare chi_square_gof(std::span<const std::uint64_t> observations,
                         const std::function<double(std::uint64_t)>& pmf, double min_expected) {
    if (observations.empty()) throw DomainError("chi_square_gof: no observations");
    const double n = static_cast<double>(observations.size());
    std::uint64_t top = 0;
    for (auto v : observations) top = std::max(top, v);

    // Expected mass per value. The support is extended past the largest
    // observation while the remaining tail still expects min_expected counts;
    // the last value then carries the rest of the tail.
    std::vector<double> expected;
    double mass = 0.0;
    for (std::uint64_t i = 0;; ++i) {
        const double p = pmf(i);
        expected.push_back(p);
        mass += p;
        if (i >= top && (n * (1.0 - mass) < min_expected || i >= top + 100000)) break;
    }
    top = expected.size() - 1;
    expected[top] += std::max(0.0, 1.0 - mass);

    std::vector<double> observed(top + 1, 0.0);
    for (auto v : observations) observed[v] += 1.0;

    std::vector<double> cell_obs, cell_exp;
    double acc_obs = 0.0, acc_exp = 0.0;
    for (std::uint64_t i = 0; i <= top; ++i) {
        acc_obs += observed[i];
        acc_exp += expected[i] * n;
        if (acc_exp >= min_expected) {
            cell_obs.push_back(acc_obs);
            cell_exp.push_back(acc_exp);
            acc_obs = acc_exp = 0.0;
        }
    }
    if (acc_exp > 0.0 || acc_obs > 0.0) {
        if (cell_obs.empty()) {
            cell_obs.push_back(acc_obs);
            cell_exp.push_back(acc_exp);
        } else {
            cell_obs.back() += acc_obs;
            cell_exp.back() += acc_exp;
        }
    }

    ChiSquare result;
    for (std::size_t c = 0; c < cell_obs.size(); ++c) {
        const double diff = cell_obs[c] - cell_exp[c];
        result.statistic += diff * diff / cell_exp[c];
    }
    result.dof = cell_obs.size() > 1 ? cell_obs.size() - 1 : 0;
    result.p_value = result.dof == 0
                         ? 1.0
                         : reg_upper_gamma(0.5 * static_cast<double>(result.dof),
                                           0.5 * result.statistic);
    return result;
}

double two_sided_z(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("two_sided_z: alpha must lie in (0,1)");
    // Solve erfc(z / sqrt 2) = alpha by bisection.
    double lo = 0.0, hi = 40.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::erfc(mid / std::sqrt(2.0)) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double binomial_sigma(double p, std::size_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace gpas::stats

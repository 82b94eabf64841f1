#include "gpas/special_functions.hpp"

#include <cmath>

#include "gpas/errors.hpp"

namespace gpas {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2 pi) / 2
constexpr double kStirlingCutoff = 15.0;
constexpr double kTolerance = 1e-16;
constexpr int kMaxIterations = 1'000'000;
constexpr double kTiny = 1e-300;

// lgamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2], valid for x >= kStirlingCutoff.
double stirling_error(double x) {
    const double r = 1.0 / x;
    const double r2 = r * r;
    return r * (1.0 / 12 - r2 * (1.0 / 360 - r2 * (1.0 / 1260 - r2 * (1.0 / 1680 - r2 / 1188))));
}

// x^s e^-x / Gamma(s). For large s the exponent is rearranged around x = s so
// that the O(s ln s) terms cancel analytically instead of in floating point.
double gamma_kernel(double s, double x) {
    if (x == 0.0) return 0.0;
    if (s < kStirlingCutoff) return std::exp(s * std::log(x) - x - log_gamma(s));
    const double d = (x - s) / s;
    const double exponent =
        -s * (d - std::log1p(d)) + 0.5 * std::log(s) - kHalfLog2Pi - stirling_error(s);
    return std::exp(exponent);
}

// P(s, x) by the power series; intended for x < s + 1.
double lower_series(double s, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < kMaxIterations; ++n) {
        term *= x / (s + n);
        sum += term;
        if (term < sum * kTolerance) break;
    }
    return gamma_kernel(s, x) / s * sum;
}

// Q(s, x) by the modified Lentz continued fraction; intended for x >= s + 1.
double upper_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kTolerance) break;
    }
    return gamma_kernel(s, x) * h;
}

void check_args(double shape, double x) {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw DomainError("incomplete gamma: shape must be positive and finite");
    if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be nonnegative");
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    if (x >= kStirlingCutoff)
        return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_error(x);
    // Shift up past the cutoff: Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1)).
    double product = 1.0;
    double y = x;
    while (y < kStirlingCutoff) product *= y++;
    return log_gamma(y) - std::log(product);
}

double reg_lower_gamma(double shape, double x) {
    check_args(shape, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < shape + 1.0) return lower_series(shape, x);
    return 1.0 - upper_fraction(shape, x);
}

double reg_upper_gamma(double shape, double x) {
    check_args(shape, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < shape + 1.0) return 1.0 - lower_series(shape, x);
    return upper_fraction(shape, x);
}

double gamma_quantile(double shape, double rate, double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("gamma_quantile: q must lie in (0,1)");
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw DomainError("gamma_quantile: rate must be positive and finite");
    check_args(shape, 0.0);

    double lo = 0.0;
    double hi = shape / rate * 10.0 + 50.0 / rate;
    while (gamma_cdf(shape, rate, hi) <= q) {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (gamma_cdf(shape, rate, mid) < q)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace gpas

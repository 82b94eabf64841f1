#pragma once

namespace gpas {

/// ln Gamma(x) for x > 0. Reentrant (no signgam side effect).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(shape, x) = gamma(shape, x) / Gamma(shape).
///
/// Series expansion for x < shape + 1, continued fraction for the upper
/// function otherwise. Relative accuracy is better than 1e-12 for shape <= 1e4.
/// Throws DomainError unless shape > 0 and x >= 0.
double reg_lower_gamma(double shape, double x);

/// Regularized upper incomplete gamma Q(shape, x) = 1 - P(shape, x), computed
/// without cancellation in the far upper tail.
double reg_upper_gamma(double shape, double x);

/// CDF of Gamma(shape, rate) at t.
inline double gamma_cdf(double shape, double rate, double t) {
    return reg_lower_gamma(shape, rate * t);
}

/// Quantile of Gamma(shape, rate): the t with gamma_cdf(shape, rate, t) == q.
/// Bracketed bisection; q must lie in (0,1).
double gamma_quantile(double shape, double rate, double q);

}  // namespace gpas

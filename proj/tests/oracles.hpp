#pragma once

// Test-only reference computations, independent of the library code paths
// they check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-15) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Root of an increasing function on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& f, double target, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// H-level histogram of the 0/1 Ising model by brute force over explicit
// spin vectors.
inline std::vector<std::uint64_t> enumerate_levels(
    std::size_t vertices, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::uint64_t> counts(edges.size() + 1, 0);
    std::vector<int> spin(vertices, 0);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << vertices); ++s) {
        for (std::size_t v = 0; v < vertices; ++v) spin[v] = static_cast<int>((s >> v) & 1U);
        std::size_t h = 0;
        for (auto [a, b] : edges) h += spin[a] == spin[b] ? 1 : 0;
        ++counts[h];
    }
    return counts;
}

}  // namespace oracle

#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "critline/zero_cache.hpp"
#include "critline/zeros.hpp"

namespace oracle {

using C = std::complex<double>;

// Lanczos (g = 7, n = 9) log-gamma; principal branch only, re(z) > 0.
inline C lanczos_log_gamma(C z) {
    static const double c[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                               771.32342877765313,   -176.61502916214059,   12.507343278686905,
                               -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    C x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
    const C t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Borwein's alternating-series algorithm; reliable for re(s) > 0, |im(s)| <= 10.
inline C borwein_zeta(C s, int n = 60) {
    std::vector<double> d(n + 1);
    double term = 1.0 / n;
    double sum = term;
    d[0] = n * sum;
    for (int i = 1; i <= n; ++i) {
        term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
        sum += term;
        d[i] = n * sum;
    }
    C acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const C v = (d[k] - d[n]) * std::exp(-s * std::log(double(k + 1)));
        acc += (k % 2 == 0) ? v : -v;
    }
    return -acc / (d[n] * (1.0 - std::exp((1.0 - s) * std::log(2.0))));
}

inline double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
    double fa = f(a);
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

inline bool is_prime_trial(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Zero cache on [0, 1200], built once per test binary.
inline const critline::ZeroCache& low_cache() {
    static const critline::ZeroCache c = critline::build_cache(0.0, 1200.0);
    return c;
}

}  // namespace oracle

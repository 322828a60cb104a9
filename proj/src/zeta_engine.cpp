#include "critline/zeta_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "critline/error.hpp"
#include "critline/summation.hpp"

namespace critline {

namespace {

using LComplex = std::complex<long double>;

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kTwoPiL = 2.0L * kPiL;
constexpr double kPi = std::numbers::pi;

// B_{2k} for k = 1..15 as exact rationals.
constexpr std::array<std::array<long double, 2>, 15> kBernoulliEven = {{
    {1.0L, 6.0L},
    {-1.0L, 30.0L},
    {1.0L, 42.0L},
    {-1.0L, 30.0L},
    {5.0L, 66.0L},
    {-691.0L, 2730.0L},
    {7.0L, 6.0L},
    {-3617.0L, 510.0L},
    {43867.0L, 798.0L},
    {-174611.0L, 330.0L},
    {854513.0L, 138.0L},
    {-236364091.0L, 2730.0L},
    {8553103.0L, 6.0L},
    {-23749461029.0L, 870.0L},
    {8615841276005.0L, 14322.0L},
}};

constexpr int kMaxEulerMaclaurinTerms = 40;

struct BernoulliTables {
    // B_{2k} / (2k)! for k = 1..kMaxEulerMaclaurinTerms (index k-1).
    std::array<long double, kMaxEulerMaclaurinTerms> over_factorial{};
    // B_{2k} / (2k (2k-1)) for the Stirling series, k = 1..15.
    std::array<long double, 15> stirling{};
    // B_{2k} / (2k) for the digamma series, k = 1..15.
    std::array<long double, 15> digamma{};

    BernoulliTables() {
        long double fact = 1.0L;
        for (int k = 1; k <= kMaxEulerMaclaurinTerms; ++k) {
            fact *= static_cast<long double>(2 * k - 1) * static_cast<long double>(2 * k);
            if (k <= 15) {
                const long double b = kBernoulliEven[k - 1][0] / kBernoulliEven[k - 1][1];
                over_factorial[k - 1] = b / fact;
                stirling[k - 1] = b / (static_cast<long double>(2 * k) * (2 * k - 1));
                digamma[k - 1] = b / static_cast<long double>(2 * k);
            } else {
                // B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}
                long double z = 0.0L;
                for (int n = 40; n >= 1; --n) z += std::pow(static_cast<long double>(n), -2.0L * k);
                const long double sign = (k % 2 == 1) ? 1.0L : -1.0L;
                over_factorial[k - 1] = sign * 2.0L * z / std::pow(kTwoPiL, 2.0L * k);
            }
        }
    }
};

const BernoulliTables& bernoulli() {
    static const BernoulliTables tables;
    return tables;
}

bool is_nonpositive_integer(LComplex z) {
    return z.imag() == 0.0L && z.real() <= 0.0L && z.real() == std::floor(z.real());
}

LComplex log_gamma_ext(LComplex z) {
    require(!is_nonpositive_integer(z), ErrorKind::Pole, "log_gamma: pole at non-positive integer");
    const auto& b = bernoulli();
    LComplex shift = 0.0L;
    while (z.real() < 0.5L || std::abs(z) < 16.0L) {
        shift += std::log(z);
        z += 1.0L;
    }
    const LComplex inv = 1.0L / z;
    const LComplex inv2 = inv * inv;
    LComplex series = 0.0L;
    LComplex pw = inv;
    for (int k = 0; k < 12; ++k) {
        series += b.stirling[k] * pw;
        pw *= inv2;
    }
    const long double half_log_two_pi = 0.5L * std::log(kTwoPiL);
    return (z - 0.5L) * std::log(z) - z + half_log_two_pi + series - shift;
}

LComplex digamma_ext(LComplex z) {
    require(!is_nonpositive_integer(z), ErrorKind::Pole, "digamma: pole at non-positive integer");
    const auto& b = bernoulli();
    LComplex shift = 0.0L;
    while (z.real() < 0.5L || std::abs(z) < 16.0L) {
        shift += 1.0L / z;
        z += 1.0L;
    }
    const LComplex inv2 = 1.0L / (z * z);
    LComplex series = 0.0L;
    LComplex pw = inv2;
    for (int k = 0; k < 12; ++k) {
        series += b.digamma[k] * pw;
        pw *= inv2;
    }
    return std::log(z) - 0.5L / z - series - shift;
}

// e^{-i x}, with x reduced modulo 2 pi in extended precision.
Complex unit_phase(long double x) {
    const long double r = x - kTwoPiL * std::floor(x / kTwoPiL);
    const double rd = static_cast<double>(r);
    return {std::cos(rd), -std::sin(rd)};
}

// n^{-s} for s = sigma + i t.
Complex inverse_power(std::int64_t n, double sigma, double t) {
    const long double ln = std::log(static_cast<long double>(n));
    const double mag = std::exp(-sigma * static_cast<double>(ln));
    return mag * unit_phase(static_cast<long double>(t) * ln);
}

// zeta(s) for im(s) >= 0 by Euler-Maclaurin.
Complex zeta_euler_maclaurin(Complex s, double target_abs_err) {
    const auto& b = bernoulli();
    const double sigma = s.real();
    const double t = s.imag();
    std::int64_t n_cut = std::max<std::int64_t>(10, static_cast<std::int64_t>(std::ceil((std::abs(s) + 10.0) / kPi)));

    for (int attempt = 0; attempt < 40; ++attempt) {
        const Complex n_pow = inverse_power(n_cut, sigma, t);  // N^{-s}
        const double n_d = static_cast<double>(n_cut);

        // T_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
        CompensatedComplexSum tail;
        Complex rising = s;
        Complex scaled = n_pow / n_d;  // N^{-s-1}
        bool converged = false;
        for (int k = 1; k < kMaxEulerMaclaurinTerms; ++k) {
            const Complex term = static_cast<double>(b.over_factorial[k - 1]) * rising * scaled;
            tail.add(term);
            // next term for the remainder bound
            const Complex next_rising = rising * (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
            const Complex next_scaled = scaled / (n_d * n_d);
            const Complex next = static_cast<double>(b.over_factorial[k]) * next_rising * next_scaled;
            const double denom = sigma + 2.0 * k + 1.0;
            if (denom > 0.0) {
                const double bound = std::abs(s + (2.0 * k + 1.0)) / denom * std::abs(next);
                if (bound < 0.5 * target_abs_err) {
                    converged = true;
                    break;
                }
            }
            rising = next_rising;
            scaled = next_scaled;
        }
        if (!converged) {
            n_cut = static_cast<std::int64_t>(std::ceil(n_d * 1.5));
            continue;
        }

        CompensatedComplexSum head;
        for (std::int64_t n = 1; n < n_cut; ++n) head.add(inverse_power(n, sigma, t));
        const Complex s_minus_1 = s - 1.0;
        head.add(n_pow * n_d / s_minus_1);
        head.add(0.5 * n_pow);
        head.add(tail.value());
        return head.value();
    }
    fail(ErrorKind::Precision, "zeta_reference: Euler-Maclaurin tail bound not attainable");
}

// Taylor coefficients of Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) about p = 1/2.
constexpr int kPsiDegree = 64;

struct PsiTaylor {
    std::array<double, kPsiDegree + 1> coeff{};

    PsiTaylor() {
        // Psi is entire; sample it on |z - 1/2| = 1 and read off coefficients.
        constexpr int nodes = 256;
        const Complex i(0.0, 1.0);
        std::array<Complex, nodes> values;
        for (int j = 0; j < nodes; ++j) {
            const Complex w = std::exp(i * (2.0 * kPi * j / nodes));
            const Complex z = 0.5 + w;
            values[j] = std::cos(2.0 * kPi * (z * z - z - 1.0 / 16.0)) / std::cos(2.0 * kPi * z);
        }
        for (int k = 0; k <= kPsiDegree; ++k) {
            CompensatedComplexSum acc;
            for (int j = 0; j < nodes; ++j)
                acc.add(values[j] * std::exp(-i * (2.0 * kPi * static_cast<double>(k * j % nodes) / nodes)));
            coeff[k] = acc.value().real() / nodes;
        }
    }

    // j-th derivative at p.
    double derivative(int j, double p) const {
        const double x = p - 0.5;
        double acc = 0.0;
        for (int k = kPsiDegree; k >= j; --k) {
            double falling = 1.0;
            for (int m = 0; m < j; ++m) falling *= static_cast<double>(k - m);
            acc = acc * x + coeff[k] * falling;
        }
        return acc;
    }
};

const PsiTaylor& psi_taylor() {
    static const PsiTaylor table;
    return table;
}

// Chebyshev series in x = 2p - 1 for the corrections C5, C6, generated by
// tools/rs_coefficients.py.
constexpr std::array<double, 36> kC5Chebyshev = {
    -4.4553147160582347e-23,
    8.8288452348089015e-5,
    8.9876344347703191e-23,
    -1.5628684969328387e-5,
    -6.2937363829151945e-23,
    -1.8342447697160084e-7,
    2.0695973250810545e-23,
    2.1097267874937542e-6,
    -4.7464351543574936e-24,
    -6.6570161740963875e-7,
    1.0611664204967254e-24,
    2.771474120506843e-8,
    -2.2265582997868825e-25,
    1.8111249375764875e-8,
    3.745772486815261e-26,
    -5.7658908117159773e-10,
    -3.8927875166191557e-27,
    -1.8675033426083152e-10,
    -4.4811440302093825e-29,
    -1.1051608917093022e-13,
    9.171856806600512e-29,
    7.8706433680568237e-13,
    -1.2931580403591403e-29,
    1.4458350995655121e-14,
    1.7917945357662567e-31,
    -1.581459190860953e-15,
    1.2390186125422859e-31,
    -4.9106388303637602e-17,
    -7.3365754846616933e-33,
    1.6444201220857263e-18,
    -5.8117205828808486e-34,
    7.7780178784395234e-20,
    4.2160941252280257e-35,
    -7.9326774476718658e-22,
    1.9003014443316777e-36,
    -7.3041414037259266e-23,
};
constexpr std::array<double, 36> kC6Chebyshev = {
    1.2189742141069017e-5,
    -1.8594303697582366e-20,
    -1.3829760140503881e-5,
    1.1332615793770906e-21,
    5.1109673049983257e-6,
    2.5744596557204656e-22,
    -2.0458136450386292e-6,
    -5.3210784357605918e-23,
    4.9381366448320613e-7,
    1.5834416227775455e-23,
    -3.6187528349623921e-8,
    -1.6860523218750111e-24,
    -1.2876905098079628e-8,
    -6.0461970522665085e-25,
    2.5744121111448271e-9,
    3.1719318479912134e-25,
    1.364145707079209e-10,
    -7.4211934866772407e-26,
    -3.0324395740843774e-11,
    9.3527205720066615e-27,
    -1.3216671239903494e-12,
    -2.4163236556634715e-28,
    1.3031652130010717e-13,
    -1.1100279635538576e-28,
    6.6358835532004828e-15,
    1.3951777473907449e-29,
    -2.4600356547945713e-16,
    9.3201982448297244e-32,
    -1.6815279208155996e-17,
    -1.0348245348951794e-31,
    1.8937932056948386e-19,
    2.212428037638885e-33,
    2.4306493061337735e-20,
    3.8506714338256589e-34,
    4.6314449443209357e-23,
    -9.5983351469646352e-36,
};

double chebyshev_eval(const std::array<double, 36>& c, double x) {
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
        const double b0 = 2.0 * x * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

}  // namespace

Complex log_gamma(Complex z) {
    const LComplex r = log_gamma_ext(LComplex(z.real(), z.imag()));
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

Complex digamma(Complex z) {
    const LComplex r = digamma_ext(LComplex(z.real(), z.imag()));
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

long double theta_extended(double t) {
    const LComplex z(0.25L, 0.5L * static_cast<long double>(t));
    return log_gamma_ext(z).imag() - 0.5L * static_cast<long double>(t) * std::log(kPiL);
}

ThetaValue theta(double t, ThetaMode mode) {
    require(std::isfinite(t) && t > 0.0, ErrorKind::Domain, "theta: requires t > 0");
    ThetaValue out;
    out.t = t;
    if (mode == ThetaMode::Exact) {
        out.theta = static_cast<double>(theta_extended(t));
        const LComplex psi = digamma_ext(LComplex(0.25L, 0.5L * static_cast<long double>(t)));
        out.theta_prime = static_cast<double>(0.5L * psi.real() - 0.5L * std::log(kPiL));
        return out;
    }
    require(t >= 10.0, ErrorKind::Precision, "theta: asymptotic mode requires t >= 10");
    const double t3 = t * t * t;
    out.theta = 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t3);
    out.theta_prime = 0.5 * std::log(t / (2.0 * kPi)) - 1.0 / (48.0 * t * t) - 7.0 / (1920.0 * t3 * t);
    return out;
}

Complex chi(Complex s) {
    require(std::isfinite(s.real()) && std::isfinite(s.imag()), ErrorKind::Domain, "chi: non-finite argument");
    const LComplex sl(s.real(), s.imag());
    const LComplex a = (1.0L - sl) / 2.0L;
    const LComplex b = sl / 2.0L;
    if (is_nonpositive_integer(a)) fail(ErrorKind::Domain, "chi: pole of Gamma((1-s)/2)");
    if (is_nonpositive_integer(b)) return 0.0;  // 1/Gamma(s/2) vanishes
    const LComplex e = log_gamma_ext(a) - log_gamma_ext(b) + (sl - 0.5L) * std::log(kPiL);
    const long double mag = std::exp(e.real());
    const long double ph = e.imag() - kTwoPiL * std::floor(e.imag() / kTwoPiL);
    return {static_cast<double>(mag * std::cos(ph)), static_cast<double>(mag * std::sin(ph))};
}

Complex zeta_reference(Complex s, double target_abs_err) {
    require(std::isfinite(s.real()) && std::isfinite(s.imag()), ErrorKind::Domain, "zeta_reference: non-finite argument");
    require(target_abs_err >= kPrecisionFloor, ErrorKind::Precision, "zeta_reference: target below double-precision floor 1e-12");
    require(!(s.real() == 1.0 && s.imag() == 0.0), ErrorKind::Pole, "zeta_reference: pole at s = 1");
    require(std::abs(s.imag()) <= 1e7, ErrorKind::Domain, "zeta_reference: |im(s)| above 1e7");
    if (s.imag() < 0.0) return std::conj(zeta_euler_maclaurin(std::conj(s), target_abs_err));
    return zeta_euler_maclaurin(s, target_abs_err);
}

double riemann_siegel_z(double t) {
    t = std::abs(t);
    require(t >= kFastPathHardMin, ErrorKind::Domain, "riemann_siegel_z: t below fast-path range");
    require(t <= 1e7, ErrorKind::Domain, "riemann_siegel_z: t above 1e7");
    const double x = t / (2.0 * kPi);
    const double root = std::sqrt(x);
    const auto m = static_cast<std::int64_t>(std::floor(root));
    const double p = root - static_cast<double>(m);

    const long double th = theta_extended(t);
    const long double tl = t;
    CompensatedSum main;
    for (std::int64_t n = 1; n <= m; ++n) {
        const long double ln = std::log(static_cast<long double>(n));
        long double ph = th - tl * ln;
        ph -= kTwoPiL * std::floor(ph / kTwoPiL);
        main.add(std::cos(static_cast<double>(ph)) / std::sqrt(static_cast<double>(n)));
    }

    const PsiTaylor& psi = psi_taylor();
    const double pi2 = kPi * kPi;
    const double pi4 = pi2 * pi2;
    const double pi6 = pi4 * pi2;
    const double pi8 = pi4 * pi4;
    const double d0 = psi.derivative(0, p);
    const double c0 = d0;
    const double c1 = -psi.derivative(3, p) / (96.0 * pi2);
    const double c2 = psi.derivative(6, p) / (18432.0 * pi4) + psi.derivative(2, p) / (64.0 * pi2);
    const double c3 = -psi.derivative(9, p) / (5308416.0 * pi6) - psi.derivative(5, p) / (3840.0 * pi4) -
                      psi.derivative(1, p) / (64.0 * pi2);
    const double c4 = psi.derivative(12, p) / (2038431744.0 * pi8) + 11.0 * psi.derivative(8, p) / (5898240.0 * pi6) +
                      19.0 * psi.derivative(4, p) / (24576.0 * pi4) + d0 / (128.0 * pi2);
    const double c5 = chebyshev_eval(kC5Chebyshev, 2.0 * p - 1.0);
    const double c6 = chebyshev_eval(kC6Chebyshev, 2.0 * p - 1.0);
    const double u = 1.0 / root;  // (t/2pi)^{-1/2}
    const double correction = c0 + u * (c1 + u * (c2 + u * (c3 + u * (c4 + u * (c5 + u * c6)))));
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    return 2.0 * main.value() + sign * std::sqrt(u) * correction;
}

namespace {

void check_target(double target_abs_err) {
    require(target_abs_err >= kPrecisionFloor, ErrorKind::Precision,
            "target_abs_err below double-precision floor 1e-12");
}

double hardy_z_oracle(double t, double target_abs_err) {
    const Complex z = zeta_reference(Complex(0.5, t), target_abs_err);
    const long double th = theta_extended(t);
    const Complex rotated = std::conj(unit_phase(th)) * z;  // e^{i theta} zeta
    const double tol = std::max(10.0 * target_abs_err, 1e-10);
    require(std::abs(rotated.imag()) < tol, ErrorKind::Consistency,
            "hardy_z: imaginary residue exceeds tolerance");
    return rotated.real();
}

}  // namespace

double riemann_siegel_error_estimate(double t) {
    t = std::abs(t);
    return 1e-8 * std::pow(50.0 / t, 3.75) + 5e-13 * (1.0 + t / 1e5);
}

bool auto_uses_fast_path(double t, double target_abs_err) {
    t = std::abs(t);
    return t >= kFastPathMin && riemann_siegel_error_estimate(t) <= target_abs_err;
}

double hardy_z(double t, EvalOptions opts) {
    require(std::isfinite(t), ErrorKind::Domain, "hardy_z: non-finite t");
    check_target(opts.target_abs_err);
    switch (opts.method) {
        case EvalMethod::ReferenceOracle:
            return hardy_z_oracle(t, opts.target_abs_err);
        case EvalMethod::FastCriticalLine:
            return riemann_siegel_z(t);
        case EvalMethod::Auto:
            break;
    }
    if (auto_uses_fast_path(t, opts.target_abs_err)) return riemann_siegel_z(t);
    return hardy_z_oracle(t, opts.target_abs_err);
}

Complex evaluate(const EvalRequest& req) {
    const Complex s = req.s;
    check_target(req.options.target_abs_err);
    const bool on_line = s.real() == 0.5;
    if (req.options.method == EvalMethod::FastCriticalLine)
        require(on_line, ErrorKind::Domain, "evaluate: fast path requires re(s) = 1/2");
    const bool fast = req.options.method == EvalMethod::FastCriticalLine ||
                      (req.options.method == EvalMethod::Auto && on_line &&
                       auto_uses_fast_path(s.imag(), req.options.target_abs_err));
    if (!fast) return zeta_reference(s, req.options.target_abs_err);
    const double t = s.imag();
    const double z = riemann_siegel_z(t);
    // zeta(1/2+it) = e^{-i theta} Z(t); theta is odd in t
    return z * unit_phase(theta_extended(t));
}

double zeta_abs2_halfline(double t, EvalOptions opts) {
    check_target(opts.target_abs_err);
    const bool fast = opts.method == EvalMethod::FastCriticalLine ||
                      (opts.method == EvalMethod::Auto && auto_uses_fast_path(t, opts.target_abs_err));
    if (fast) {
        const double z = riemann_siegel_z(t);
        return z * z;
    }
    return std::norm(zeta_reference(Complex(0.5, t), opts.target_abs_err));
}

Complex zeta_deriv_halfline(double t, double target_abs_err) {
    require(std::isfinite(t) && std::abs(t) >= 5.0, ErrorKind::Domain, "zeta_deriv_halfline: requires |t| >= 5");
    constexpr int nodes = 32;
    constexpr double radius = 0.125;
    const double node_err = std::max(kPrecisionFloor, 0.5 * target_abs_err * radius);
    const Complex center(0.5, t);
    CompensatedComplexSum acc;
    for (int j = 0; j < nodes; ++j) {
        const double ang = 2.0 * kPi * j / nodes;
        const Complex w(std::cos(ang), std::sin(ang));
        acc.add(zeta_reference(center + radius * w, node_err) / w);
    }
    return acc.value() / (nodes * radius);
}

}  // namespace critline

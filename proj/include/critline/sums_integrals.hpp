#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "critline/quadrature.hpp"
#include "critline/selberg.hpp"
#include "critline/zero_cache.hpp"

namespace critline {

/// [T, T+H] with T >= 10 and 0 < H <= T.
struct Interval {
    double T = 1000.0;
    double H = 100.0;
    void validate() const;
};

struct FSum {
    double value = 0.0;        // sum of |zeta(1/2+i gamma)|^2 over T < gamma <= T+H
    double noise_bound = 0.0;  // sum of (2 tol |Z'(gamma)|)^2
    std::size_t zeros = 0;
    bool degenerate() const noexcept { return value <= noise_bound; }
};

FSum f_sum(const Interval& iv, const ZeroCache& cache);

/// Shift alpha/L with L = log(T/2pi)/(2pi), |alpha| <= L/2.
struct GonekSpec {
    double T = 5000.0;
    double alpha = 0.5;
    double L() const;
    void validate() const;
};

/// (1 - (sin(pi a)/(pi a))^2) (T/2pi) log^2 T, zero at a = 0.
double gonek_main_term(const GonekSpec& spec);

/// sum over 0 < gamma <= T of |zeta(1/2 + i(gamma + alpha/L))|^2.
double gonek_shifted_sum(const GonekSpec& spec, const ZeroCache& cache);

/// Integral of |zeta(1/2+it)|^2 S(t)^k over the interval, k in {1, 2};
/// `absolute` integrates |zeta|^2 |S|^k instead.
QuadResult weighted_integral_s(const Interval& iv, int k, const ZeroCache& cache, const QuadratureSpec& quad = {},
                               bool absolute = false);

/// Integrals of |zeta|^2, |zeta|^4 and |zeta'|^4 over [a, b] on the critical line.
/// `marks` request running integrals from a (see integrate).
QuadResult moment2(double a, double b, const QuadratureSpec& quad = {}, std::span<const double> marks = {});
QuadResult moment4(double a, double b, const QuadratureSpec& quad = {}, std::span<const double> marks = {});
QuadResult moment4_deriv(double a, double b, const QuadratureSpec& quad = {});

struct P4Fit {
    std::array<double, 5> coeffs{};  // c0 + c1 x + ... + c4 x^4, x = log T
    std::vector<double> residuals;   // fitted minus observed, per sample
    double rms = 0.0;
    double condition = 0.0;          // of the (column-scaled) design matrix
    double leading() const noexcept { return coeffs[4]; }
};

/// Least squares fit of (1/T) integral_0^T |zeta|^4 against powers of log T.
/// samples: (T, integral_0^T |zeta|^4). Needs >= 8 samples over >= one decade.
P4Fit p4_fit(std::span<const std::pair<double, double>> samples);

/// (T, integral_0^T |zeta|^4) at each T from one cumulative pass.
std::vector<std::pair<double, double>> moment4_samples(std::span<const double> Ts, const QuadratureSpec& quad = {});

/// Smooth weight with its derivative.
struct TestFunction {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> df;
};

TestFunction test_constant();
TestFunction test_linear();
/// exp(-((t-c)/w)^2) centred on the interval, w = H/6.
TestFunction test_bump(const Interval& iv);
/// Z(t)^2 = |zeta(1/2+it)|^2 (derivative through zeta').
TestFunction test_z_squared();

struct StieltjesCheck {
    double lhs = 0.0;       // sum of f(gamma)
    double i1 = 0.0;        // integral of f (1/2pi) log(t/2pi)
    double i2 = 0.0;        // integral of f dS plus the exact-phase remainder
    double residual = 0.0;  // lhs - i1 - i2
    double relative = 0.0;  // |residual| / max(|lhs|, |i1|, |i2|)
};

StieltjesCheck stieltjes_identity_check(const Interval& iv, const TestFunction& f, const ZeroCache& cache,
                                        const QuadratureSpec& quad = {});

/// d/dt |zeta(1/2+it)|^2 = 2 Re(i zeta'(1/2+it) conj zeta(1/2+it)).
double zeta_abs2_derivative(double t, double target_abs_err = 1e-10);

struct IbpCheck {
    double direct = 0.0;    // jump sum plus smooth part of dR
    double parts = 0.0;     // boundary terms minus integral of R f'
    double residual = 0.0;
    double mass = 0.0;      // integral of |f| |dR|
    double relative = 0.0;  // |residual| / mass
};

/// Integral of f dR, f = |zeta(1/2+it)|^2, computed two ways. With
/// `constant_r` set, R is replaced by the constant R(T) (so dR = 0).
IbpCheck ibp_identity_check(const Interval& iv, const ZeroCache& cache, const SelbergParams& params,
                            const PrimeTable& primes, const QuadratureSpec& quad = {}, bool constant_r = false);

}  // namespace critline

#pragma once

#include <complex>

namespace critline {

using Complex = std::complex<double>;

/// Riemann-Siegel phase and its derivative at height t.
struct ThetaValue {
    double t = 0.0;
    double theta = 0.0;
    double theta_prime = 0.0;
};

enum class ThetaMode { Exact, Asymptotic };

enum class EvalMethod { ReferenceOracle, FastCriticalLine, Auto };

struct EvalOptions {
    double target_abs_err = 1e-10;
    EvalMethod method = EvalMethod::Auto;
};

struct EvalRequest {
    Complex s;
    EvalOptions options;
};

/// Lowest absolute error any evaluator will promise.
inline constexpr double kPrecisionFloor = 1e-12;

/// Auto mode never routes below this height to the Riemann-Siegel path.
inline constexpr double kFastPathMin = 50.0;

/// Below this height Riemann-Siegel has fewer than one main-sum term.
inline constexpr double kFastPathHardMin = 6.3;

/// Log-gamma on the branch that is continuous along paths avoiding the
/// non-positive real axis (sum of principal logs plus Stirling).
Complex log_gamma(Complex z);

/// Digamma psi(z) = Gamma'(z)/Gamma(z).
Complex digamma(Complex z);

ThetaValue theta(double t, ThetaMode mode = ThetaMode::Exact);

/// theta(t) in extended precision, valid for any real t (odd in t).
/// Hot loops use this to keep phase error far below 1e-10 at t ~ 1e6.
long double theta_extended(double t);

/// Gamma((1-s)/2) / Gamma(s/2) * pi^(s-1/2).
Complex chi(Complex s);

/// Euler-Maclaurin evaluation with a rigorous tail bound below target_abs_err.
Complex zeta_reference(Complex s, double target_abs_err = kPrecisionFloor);

/// Riemann-Siegel Z(t) with corrections C0..C6. Requires t >= kFastPathHardMin.
double riemann_siegel_z(double t);

/// Empirical envelope of |riemann_siegel_z - Z| (C7 term, plus rounding).
double riemann_siegel_error_estimate(double t);

/// True when Auto mode evaluates Z at height t through Riemann-Siegel.
bool auto_uses_fast_path(double t, double target_abs_err);

/// Z(t) = exp(i theta(t)) zeta(1/2+it), real.
double hardy_z(double t, EvalOptions opts = {});

/// zeta(s) with routing; FastCriticalLine requires re(s) == 1/2.
Complex evaluate(const EvalRequest& req);

/// |zeta(1/2+it)|^2 for any real t, routed like hardy_z.
double zeta_abs2_halfline(double t, EvalOptions opts = {});

/// zeta'(1/2+it) by the Cauchy integral over a circle of radius 1/8 (32 nodes).
Complex zeta_deriv_halfline(double t, double target_abs_err = 1e-10);

}  // namespace critline

#pragma once

#include <cstdint>
#include <vector>

#include "critline/quadrature.hpp"
#include "critline/zero_cache.hpp"

namespace critline {

struct PrimeTable {
    std::int64_t limit = 0;
    std::vector<std::int64_t> primes;
};

/// Segmented sieve of Eratosthenes, 2 <= limit <= 1e8.
PrimeTable sieve(std::int64_t limit);

/// Prime cutoff y for the Selberg approximation. Either y = T_ref^delta or an
/// absolute y; y < 2 is allowed and leaves the prime sum empty.
struct SelbergParams {
    double delta = 0.05;
    double T_ref = 1000.0;
    double y = 0.0;
    bool y_absolute = false;

    static SelbergParams from_delta(double delta, double T_ref);
    static SelbergParams from_y(double y, double T_ref);
    void validate() const;
};

enum class PrimeWeight { InvSqrtSin, LogCos };

/// sum_{p <= y} p^{-1/2} sin(t log p)  or  sum_{p <= y} p^{-1/2} log p cos(t log p).
double prime_trig_sum(double t, double y, PrimeWeight weight, const PrimeTable& primes);

/// Precomputed terms of the prime sum for repeated evaluation.
class PrimeSum {
public:
    PrimeSum(double y, const PrimeTable& primes);
    double sin_sum(double t) const;  // InvSqrtSin
    double cos_sum(double t) const;  // LogCos, the t-derivative of sin_sum
    std::size_t size() const noexcept { return log_p_.size(); }

private:
    std::vector<double> log_p_;
    std::vector<double> inv_sqrt_p_;
};

/// S(t) from the cache if it covers t, else by the path method.
double s_value(double t, const ZeroCache* cache);

/// R(t) = S(t) + (1/pi) sum_{p <= y} p^{-1/2} sin(t log p).
double r_of_t(double t, const SelbergParams& params, const PrimeTable& primes, const ZeroCache* cache = nullptr);

/// Quadrature policy for R: panels no wider than 0.5/log y.
QuadratureSpec r_quadrature(const SelbergParams& params, QuadratureSpec quad);

/// Integral of R^{2m} over [T, T+H], panels split at cached ordinates.
QuadResult moment_r(double T, double H, int two_m, const SelbergParams& params, const PrimeTable& primes,
                    const ZeroCache& cache, const QuadratureSpec& quad = {});

/// The explicit moment bound (e^37 pi^-2 eps^-3 m^2)^m H.
double moment_bound(double H, int m, double eps);

/// Side conditions of the moment bound, reported rather than assumed.
struct MomentBoundConditions {
    double x = 0.0;
    bool m_above_one = false;         // m > 1
    bool m_small = false;             // m <= log x / 192
    bool y_window = false;            // x^{1/(4m)} < y <= x^{1/m}
    bool h_regime = false;            // H >= T^{27/82 + eps}
    bool all() const noexcept { return m_above_one && m_small && y_window && h_regime; }
};
/// x defaults to y^m (the largest x allowed by the y-window).
MomentBoundConditions moment_bound_conditions(double T, double H, int m, double eps, const SelbergParams& params,
                                   double x = 0.0);

struct ExceedanceSpec {
    double V = 1.0;
    int m = 1;
    double grid_step = 0.01;
    void validate() const;
};

/// V = c log log T.
double exceedance_level(double c, double T);

struct ExceedanceResult {
    double measure = 0.0;      // |{t : |R(t)| >= V}| by midpoint grid counting
    double grid_step = 0.0;    // effective cell width (one cell of slack)
    std::int64_t cells = 0;
    double moment = 0.0;       // integral of R^{2m}
    double certificate = 0.0;  // V^{-2m} moment (infinite for V = 0)
    bool holds() const noexcept { return measure <= certificate + grid_step; }
};

ExceedanceResult exceedance_measure(double T, double H, const ExceedanceSpec& spec, const SelbergParams& params,
                                    const PrimeTable& primes, const ZeroCache& cache,
                                    const QuadratureSpec& quad = {});

struct MertensSums {
    double sum_logp_over_p = 0.0;
    double sum_1_over_p = 0.0;
};
MertensSums mertens_sums(double x, const PrimeTable& primes);

}  // namespace critline

#pragma once

#include <complex>
#include <filesystem>
#include <vector>

#include "critline/quadrature.hpp"
#include "critline/selberg.hpp"

namespace critline {

/// A(s) = sum_{m <= M} a(m) m^{-s}; coeffs[m-1] = a(m).
struct DirichletPoly {
    std::vector<std::complex<double>> coeffs;

    int M() const noexcept { return static_cast<int>(coeffs.size()); }
    std::complex<double> a(int m) const { return coeffs[static_cast<std::size_t>(m - 1)]; }
    /// A(1/2 + it).
    std::complex<double> eval_halfline(double t) const;
    void validate() const;

    static DirichletPoly unit(int M);
    /// a(p) = log p (LogP) or 1 (Unit) on primes p <= y, zero elsewhere.
    static DirichletPoly primes_weighted(double y, bool log_weight, const PrimeTable& primes);
    /// Lines `m re im`, `#` comments allowed.
    static DirichletPoly load(const std::filesystem::path& path);
};

/// Euler's constant from the Euler-Maclaurin corrected harmonic series (memoized).
double euler_constant();

struct MainTermBreakdown {
    double total = 0.0;
    double diagonal = 0.0;
    double off_diagonal = 0.0;
    double imag_residue = 0.0;
    double euler_C0 = 0.0;
};

/// T sum_{k,l} a(k) conj a(l) / [k,l] (log(T (k,l)^2 / (2 pi k l)) + 2 C0 - 1).
MainTermBreakdown main_term(double T, const DirichletPoly& A);

enum class PrimeMainWeight { LogP, Unit };

/// The diagonal plus off-diagonal prime split, without the leading factor T:
/// equals main_term(T, A) / T for the matching prime-supported polynomial.
MainTermBreakdown prime_main_term(double T, double y, PrimeMainWeight weight, const PrimeTable& primes);

struct EmpiricalComparison {
    double empirical = 0.0;  // integral_0^T |zeta A|^2 by quadrature
    double main = 0.0;
    double E = 0.0;
    int level = 0;
};

EmpiricalComparison empirical_weighted_integral(double T, const DirichletPoly& A, const QuadratureSpec& quad = {});

struct ShortIntervalDifference {
    double main_difference = 0.0;  // main_term(T+H) - main_term(T)
    double empirical = 0.0;        // integral_T^{T+H} |zeta A|^2
};

ShortIntervalDifference short_interval_difference(double T, double H, const DirichletPoly& A,
                                                  const QuadratureSpec& quad = {}, bool with_empirical = true);

}  // namespace critline

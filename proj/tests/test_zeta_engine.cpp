#include <cmath>
#include <numbers>
#include <random>

#include "critline/error.hpp"
#include "critline/zeta_engine.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace critline;
using std::numbers::pi;

TEST_CASE("log_gamma matches the Lanczos oracle") {
    for (double re : {0.25, 0.5, 1.5, 3.0, 12.0}) {
        for (double im : {0.0, 0.7, 5.0, 25.0, 80.0}) {
            const Complex z(re, im);
            const Complex a = log_gamma(z);
            const Complex b = oracle::lanczos_log_gamma(z);
            CHECK(std::abs(a.real() - b.real()) < 1e-11 * (1.0 + std::abs(b.real())));
            // The branch may differ by 2 pi k from the principal one.
            const double k = std::round((a.imag() - b.imag()) / (2.0 * pi));
            CHECK(std::abs(a.imag() - b.imag() - 2.0 * pi * k) < 1e-10 * (1.0 + std::abs(b.imag())));
        }
    }
    CHECK(std::abs(log_gamma(Complex(0.5, 0.0)) - Complex(0.5 * std::log(pi), 0.0)) < 1e-14);
}

TEST_CASE("digamma: psi(1) = -gamma and psi(z+1) = psi(z) + 1/z") {
    CHECK(std::abs(digamma(Complex(1.0, 0.0)).real() + std::numbers::egamma) < 1e-13);
    const Complex z(0.25, 7.0);
    CHECK(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) < 1e-13);
}

TEST_CASE("theta: exact vs asymptotic") {
    const auto e = theta(100.0, ThetaMode::Exact);
    const auto a = theta(100.0, ThetaMode::Asymptotic);
    CHECK(std::abs(e.theta - a.theta) < 1e-10);
    // Independent check of the exact mode through the Lanczos log-gamma.
    const double ref = oracle::lanczos_log_gamma(Complex(0.25, 50.0)).imag() - 50.0 * std::log(pi);
    const double k = std::round((e.theta - ref) / (2.0 * pi));
    CHECK(std::abs(e.theta - ref - 2.0 * pi * k) < 1e-9);
    CHECK(std::abs(theta(1e4).theta_prime - 0.5 * std::log(1e4 / (2.0 * pi))) < 1e-6);
}

TEST_CASE("theta: derivative matches finite differences and is positive past 2 pi e") {
    for (double t : {20.0, 150.0, 3000.0}) {
        const double h = 1e-4;
        const double fd = (theta(t + h).theta - theta(t - h).theta) / (2.0 * h);
        CHECK(std::abs(fd - theta(t).theta_prime) < 1e-7);
    }
    for (double t = 2.0 * pi * std::numbers::e + 0.01; t < 200.0; t += 3.7) CHECK(theta(t).theta_prime > 0.0);
}

TEST_CASE("theta prime: single zero in [6, 8]") {
    const double z = oracle::bisect([](double t) { return theta(t).theta_prime; }, 6.0, 8.0);
    CHECK(z == doctest::Approx(6.2898).epsilon(1e-3));
    int changes = 0;
    double prev = theta(6.0).theta_prime;
    for (double t = 6.01; t <= 8.0; t += 0.01) {
        const double v = theta(t).theta_prime;
        if ((v < 0) != (prev < 0)) ++changes;
        prev = v;
    }
    CHECK(changes == 1);
}

TEST_CASE("theta: contract errors") {
    CHECK_THROWS_AS(theta(0.0), Error);
    try {
        theta(5.0, ThetaMode::Asymptotic);
        FAIL("expected precision error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Precision);
    }
}

TEST_CASE("chi: fixed point, reflection product, unit modulus") {
    CHECK(std::abs(chi(Complex(0.5, 0.0)) - 1.0) < 1e-14);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> sig(0.01, 0.99);
    std::uniform_real_distribution<double> ht(-100.0, 100.0);
    for (int i = 0; i < 200; ++i) {
        const Complex s(sig(rng), ht(rng));
        CHECK(std::abs(chi(s) * chi(1.0 - s) - 1.0) < 1e-10);
    }
    CHECK(std::abs(std::abs(chi(Complex(0.5, 50.0))) - 1.0) < 1e-10);
    try {
        chi(Complex(3.0, 0.0));
        FAIL("expected domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
}

TEST_CASE("zeta_reference: classical values") {
    CHECK(std::abs(zeta_reference(2.0) - pi * pi / 6.0) < 1e-12);
    CHECK(std::abs(zeta_reference(4.0) - std::pow(pi, 4) / 90.0) < 1e-12);
    CHECK(std::abs(zeta_reference(0.0) + 0.5) < 1e-12);
    CHECK(std::abs(zeta_reference(-1.0) + 1.0 / 12.0) < 1e-12);
    try {
        zeta_reference(1.0);
        FAIL("expected pole error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Pole);
    }
}

TEST_CASE("zeta_reference: agrees with the Borwein series for small heights") {
    for (double sigma : {0.2, 0.5, 0.8, 1.5}) {
        for (double t : {0.3, 2.0, 6.0, 9.5}) {
            const Complex s(sigma, t);
            CHECK(std::abs(zeta_reference(s) - oracle::borwein_zeta(s)) < 1e-11);
        }
    }
}

TEST_CASE("zeta_reference: conjugate symmetry is exact") {
    for (const Complex s : {Complex(0.3, 40.0), Complex(0.5, 1234.5), Complex(0.9, 17.25)}) {
        const Complex a = zeta_reference(s);
        const Complex b = zeta_reference(std::conj(s));
        CHECK(a.real() == b.real());
        CHECK(a.imag() == -b.imag());
    }
}

TEST_CASE("functional equation residual") {
    const Complex s(0.3, 40.0);
    CHECK(std::abs(zeta_reference(s) - chi(s) * zeta_reference(1.0 - s)) < 1e-9);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> sig(0.01, 0.99);
    std::uniform_real_distribution<double> ht(-1e4, 1e4);
    for (int i = 0; i < 50; ++i) {
        const Complex s2(sig(rng), ht(rng));
        if (std::abs(s2.imag()) < 1.0) continue;
        CHECK(std::abs(zeta_reference(s2, 1e-11) - chi(s2) * zeta_reference(1.0 - s2, 1e-11)) < 1e-9);
    }
}

TEST_CASE("hardy_z is real, even, and changes sign near the first zero") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ud(10.0, 1e5);
    for (int i = 0; i < 1000; ++i) {
        const double t = ud(rng);
        CHECK_NOTHROW(hardy_z(t, {1e-10, EvalMethod::Auto}));
    }
    for (double t : {14.0, 30.0, 333.3, 5000.5}) {
        CHECK(std::abs(hardy_z(t) - hardy_z(-t)) < 1e-10);
        CHECK(std::abs(hardy_z(t, {1e-10, EvalMethod::ReferenceOracle}) -
                       hardy_z(-t, {1e-10, EvalMethod::ReferenceOracle})) < 1e-10);
    }
    CHECK(hardy_z(14.0) * hardy_z(14.2) < 0.0);
}

TEST_CASE("Riemann-Siegel path agrees with the oracle") {
    for (double t : {100.0, 1e3, 1e4, 1e5}) {
        const double fast = hardy_z(t, {1e-10, EvalMethod::FastCriticalLine});
        const double ref = hardy_z(t, {1e-12, EvalMethod::ReferenceOracle});
        CHECK(std::abs(fast - ref) < 1e-7);
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lt(std::log(50.0), std::log(1e6));
    for (int i = 0; i < 20; ++i) {
        const double t = std::exp(lt(rng));
        const double d = std::abs(riemann_siegel_z(t) - hardy_z(t, {1e-12, EvalMethod::ReferenceOracle}));
        CHECK(d < std::max(1e-7, riemann_siegel_error_estimate(t)));
    }
}

TEST_CASE("evaluate: request contract") {
    CHECK_THROWS_AS(evaluate({Complex(0.6, 100.0), {1e-10, EvalMethod::FastCriticalLine}}), Error);
    CHECK_THROWS_AS(evaluate({Complex(0.5, 100.0), {1e-13, EvalMethod::Auto}}), Error);
    const Complex a = evaluate({Complex(0.5, 500.0), {1e-10, EvalMethod::FastCriticalLine}});
    const Complex b = evaluate({Complex(0.5, 500.0), {1e-12, EvalMethod::ReferenceOracle}});
    CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("zeta_deriv_halfline: finite differences, symmetry, and |Z'| at a zero") {
    const auto fd = [](double t, double h) {
        const Complex zp = zeta_reference(Complex(0.5, t + h));
        const Complex zm = zeta_reference(Complex(0.5, t - h));
        return (zp - zm) / (2.0 * h) / Complex(0.0, 1.0);
    };
    CHECK(std::abs(zeta_deriv_halfline(50.0) - fd(50.0, 1e-4)) < 1e-6);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> lt(std::log(10.0), std::log(1e4));
    for (int i = 0; i < 50; ++i) {
        const double t = std::exp(lt(rng));
        const Complex d = zeta_deriv_halfline(t);
        CHECK(std::abs(d - fd(t, 1e-4)) < 1e-6 * std::max(1.0, std::abs(d)));
    }
    CHECK(std::abs(zeta_deriv_halfline(-77.0) - std::conj(zeta_deriv_halfline(77.0))) < 1e-10);
    const double g1 = oracle::bisect([](double t) { return hardy_z(t); }, 14.0, 14.2);
    const double zp = (hardy_z(g1 + 1e-5) - hardy_z(g1 - 1e-5)) / 2e-5;
    CHECK(std::abs(std::abs(zeta_deriv_halfline(g1)) - std::abs(zp)) < 1e-5);
}

TEST_CASE("zeta_abs2_halfline equals Z squared") {
    for (double t : {3.0, 20.0, 700.0}) {
        const double z = hardy_z(t);
        CHECK(std::abs(zeta_abs2_halfline(t) - z * z) < 1e-9 * (1.0 + z * z));
    }
}

#include <cmath>
#include <numbers>

#include "critline/error.hpp"
#include "critline/selberg.hpp"
#include "critline/sums_integrals.hpp"
#include "critline/zeta_engine.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace critline;
using std::numbers::pi;

namespace {

const PrimeTable& table() {
    static const PrimeTable p = sieve(1'000'000);
    return p;
}

}  // namespace

TEST_CASE("sieve") {
    CHECK(sieve(10).primes == std::vector<std::int64_t>{2, 3, 5, 7});
    CHECK(sieve(2).primes == std::vector<std::int64_t>{2});
    CHECK(table().primes.size() == 78498);
    // Trial division on windows, including one across a segment edge.
    for (long long lo : {1LL, 262100LL, 999000LL}) {
        std::size_t expect = 0;
        for (long long n = lo; n < lo + 1000; ++n) expect += oracle::is_prime_trial(n);
        std::size_t got = 0;
        for (auto p : table().primes) got += (p >= lo && p < lo + 1000);
        CHECK(got == expect);
    }
    CHECK_THROWS_AS(sieve(1), Error);
    CHECK_THROWS_AS(sieve(200'000'000), Error);
}

TEST_CASE("prime_trig_sum") {
    CHECK(prime_trig_sum(0.0, 50.0, PrimeWeight::InvSqrtSin, table()) == 0.0);
    double direct = 0.0;
    for (double p : {2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 31.0, 37.0, 41.0, 43.0, 47.0})
        direct += std::log(p) / std::sqrt(p);
    CHECK(prime_trig_sum(0.0, 50.0, PrimeWeight::LogCos, table()) == doctest::Approx(direct).epsilon(1e-14));
    double hand = 0.0;
    for (double p : {2.0, 3.0, 5.0, 7.0}) hand += std::sin(std::log(p)) / std::sqrt(p);
    CHECK(prime_trig_sum(1.0, 10.0, PrimeWeight::InvSqrtSin, table()) == doctest::Approx(hand).epsilon(1e-14));
    const double h = 1e-5;
    const double fd = (prime_trig_sum(100.0 + h, 50.0, PrimeWeight::InvSqrtSin, table()) -
                       prime_trig_sum(100.0 - h, 50.0, PrimeWeight::InvSqrtSin, table())) /
                      (2.0 * h);
    CHECK(std::abs(fd - prime_trig_sum(100.0, 50.0, PrimeWeight::LogCos, table())) < 1e-6);
}

TEST_CASE("SelbergParams") {
    const auto a = SelbergParams::from_delta(0.1, 1000.0);
    CHECK(a.y == doctest::Approx(std::pow(1000.0, 0.1)));
    const auto b = SelbergParams::from_y(100.0, 1000.0);
    CHECK(b.y_absolute);
    CHECK(b.delta == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(SelbergParams::from_delta(0.3, 1000.0), Error);
    CHECK_THROWS_AS(SelbergParams::from_delta(0.0, 1000.0), Error);
}

TEST_CASE("R(t) with an empty prime sum equals S(t)") {
    const auto& cache = oracle::low_cache();
    const auto p = SelbergParams::from_delta(0.05, 1000.0);
    REQUIRE(p.y < 2.0);
    for (double t : {100.3, 555.5, 1001.7}) CHECK(r_of_t(t, p, table(), &cache) == s_of_t_counting(t, cache));
}

TEST_CASE("R(t) jumps by one at an ordinate and R - S is smooth") {
    const auto& cache = oracle::low_cache();
    const auto p = SelbergParams::from_y(100.0, 1000.0);
    const double g = cache.records[500].gamma;
    CHECK(std::abs(r_of_t(g + 1e-6, p, table(), &cache) - r_of_t(g - 1e-6, p, table(), &cache) - 1.0) < 1e-3);
    // Second differences of R - S stay bounded by sum p^{-1/2} log^2 p / pi.
    double bound = 0.0;
    for (auto q : table().primes) {
        if (q > 100) break;
        bound += std::pow(std::log(static_cast<double>(q)), 2) / std::sqrt(static_cast<double>(q));
    }
    bound /= pi;
    const double h = 1e-3;
    for (double t = 1000.1; t < 1010.0; t += 0.77) {
        const auto d = [&](double x) { return r_of_t(x, p, table(), &cache) - s_of_t_counting(x, cache); };
        const double second = (d(t + h) - 2.0 * d(t) + d(t - h)) / (h * h);
        CHECK(std::abs(second) <= bound * 1.01 + 1e-3);
    }
}

TEST_CASE("R averages smaller than |S|") {
    const auto& cache = oracle::low_cache();
    const auto p = SelbergParams::from_delta(0.1, 1000.0);
    const auto breaks = cache.ordinates_between(1000.0, 1100.0);
    const double r_avg = integrate([&](double t) { return r_of_t(t, p, table(), &cache); }, 1000.0, 1100.0, {}, breaks).value;
    const double s_abs = integrate([&](double t) { return std::abs(s_of_t_counting(t, cache)); }, 1000.0, 1100.0, {}, breaks).value;
    CHECK(std::abs(r_avg) < s_abs);
}

TEST_CASE("moment_r: bound, sign, self-convergence, monotone in H") {
    const auto& cache = oracle::low_cache();
    const auto p = SelbergParams::from_delta(0.1, 1000.0);
    const auto m2 = moment_r(1000.0, 200.0, 2, p, table(), cache);
    CHECK(m2.value >= 0.0);
    CHECK(m2.value <= moment_bound(200.0, 1, 0.1));
    QuadratureSpec fine;
    fine.base_step_factor = 8.0;
    const auto m2f = moment_r(1000.0, 200.0, 2, p, table(), cache, fine);
    CHECK(std::abs(m2.value - m2f.value) < 0.01 * m2f.value);
    const auto py = SelbergParams::from_y(100.0, 1000.0);
    double prev = 0.0;
    for (double H : {20.0, 60.0, 120.0, 200.0}) {
        const double v = moment_r(1000.0, H, 4, py, table(), cache).value;
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(moment_r(1000.0, 200.0, 3, p, table(), cache), Error);
    try {
        moment_r(1100.0, 200.0, 2, p, table(), cache);
        FAIL("expected coverage error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Coverage);
    }
}

TEST_CASE("moment bound side conditions are reported") {
    const auto p = SelbergParams::from_y(100.0, 1000.0);
    const auto c = moment_bound_conditions(1000.0, 200.0, 2, 0.1, p);
    CHECK(c.m_above_one);
    CHECK_FALSE(c.m_small);
    CHECK(c.y_window);
    CHECK(c.h_regime);
    CHECK_FALSE(c.all());
}

TEST_CASE("exceedance measure obeys the Chebyshev step") {
    const auto& cache = oracle::low_cache();
    for (const auto& p : {SelbergParams::from_delta(0.1, 1000.0), SelbergParams::from_y(30.0, 1000.0)}) {
        for (int m : {1, 2}) {
            for (double V : {0.5, 1.0, 2.0}) {
                const auto r = exceedance_measure(1000.0, 100.0, {V, m, 0.01}, p, table(), cache);
                CHECK(r.holds());
            }
        }
        const auto huge = exceedance_measure(1000.0, 50.0, {1e6, 1, 0.01}, p, table(), cache);
        CHECK(huge.measure == 0.0);
        const auto zero = exceedance_measure(1000.0, 50.0, {0.0, 1, 0.01}, p, table(), cache);
        CHECK(zero.measure == doctest::Approx(50.0));
    }
    CHECK_THROWS_AS(ExceedanceSpec({1.0, 1, 0.02}).validate(), Error);
    CHECK(exceedance_level(2.0, 1000.0) == doctest::Approx(2.0 * std::log(std::log(1000.0))));
}

TEST_CASE("mertens sums") {
    const auto a = mertens_sums(10.0, table());
    CHECK(std::abs(a.sum_1_over_p - (0.5 + 1.0 / 3 + 0.2 + 1.0 / 7)) < 1e-12);
    CHECK(std::abs(a.sum_1_over_p - 1.17619) < 1e-5);
    const auto b = mertens_sums(1e4, table());
    CHECK(b.sum_logp_over_p >= std::log(1e4) - 3.0);
    CHECK(b.sum_logp_over_p <= std::log(1e4) + 1.0);
    const auto c = mertens_sums(1.0, table());
    CHECK(c.sum_1_over_p == 0.0);
    CHECK(c.sum_logp_over_p == 0.0);
}

#include <cmath>
#include <numbers>
#include <random>

#include "critline/argument.hpp"
#include "critline/error.hpp"
#include "critline/zeros.hpp"
#include "critline/zeta_engine.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace critline;

TEST_CASE("S(10) is small") { CHECK(std::abs(s_of_t_path(10.0)) < 1.0); }

TEST_CASE("path and counting methods agree off ordinates") {
    const auto& cache = oracle::low_cache();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ud(20.0, 1200.0);
    int n = 0;
    while (n < 100) {
        const double t = ud(rng);
        if (cache.distance_to_nearest(t) < 1e-4) continue;
        CHECK(std::abs(s_of_t_path(t) - s_of_t_counting(t, cache)) < 1e-6);
        ++n;
    }
    CHECK(std::abs(s_of_t_path(50.0) - s_of_t_counting(50.0, cache)) < 1e-6);
}

TEST_CASE("path method agrees at larger heights") {
    const auto w = build_cache(9000.0, 9010.0);
    for (double t = 9000.5; t < 9010.0; t += 1.1) {
        if (w.distance_to_nearest(t) < 1e-4) continue;
        CHECK(std::abs(s_of_t_path(t) - s_of_t_counting(t, w)) < 1e-6);
    }
}

TEST_CASE("jump at the first ordinate and the right-limit convention") {
    const auto& cache = oracle::low_cache();
    const double g1 = cache.records.front().gamma;
    CHECK(std::abs(s_of_t_path(g1 + 0.01) - s_of_t_path(g1 - 0.01) - 1.0) < 0.05);
    const double at = s_of_t_path(g1, {}, &cache);
    CHECK(std::abs(at - s_of_t_path(g1 + 1e-6)) < 1e-4);
    CHECK(std::abs(s_of_t_counting(g1, cache) - s_of_t_counting(g1 + 1e-6, cache)) < 1e-4);
}

TEST_CASE("counting S has slope -theta'/pi between ordinates") {
    const auto& cache = oracle::low_cache();
    const double a = cache.records[10].gamma + 0.05;
    const double h = 1e-3;
    const double slope = (s_of_t_counting(a + h, cache) - s_of_t_counting(a - h, cache)) / (2.0 * h);
    CHECK(std::abs(slope + theta(a).theta_prime / std::numbers::pi) < 1e-6);
}

TEST_CASE("|S(t)| <= 2 log t on the cached range") {
    const auto& cache = oracle::low_cache();
    for (double t = 15.0; t < 1200.0; t += 0.37) CHECK(std::abs(s_of_t_counting(t, cache)) <= 2.0 * std::log(t));
}

TEST_CASE("coverage error beyond the cache") {
    const auto& cache = oracle::low_cache();
    try {
        (void)s_of_t_counting(2000.0, cache);
        FAIL("expected coverage error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Coverage);
    }
}

TEST_CASE("offline zero count") {
    const auto r = offline_zero_count({0.6, 0.9, 10.0, 50.0});
    CHECK(r.count == 0);
    CHECK(std::abs(r.raw) < 0.1);
    CHECK(r.min_boundary_abs > 1e-6);
    CHECK(offline_zero_count({0.6, 0.9, 30.0, 30.0}).count == 0);
    for (double lo : {100.0, 400.0}) {
        const auto w = offline_zero_count({0.51, 0.99, lo, lo + 50.0});
        CHECK(w.count == 0);
        CHECK(w.count <= count_zeros_nt(lo + 50.5).count - count_zeros_nt(lo - 0.5).count);
    }
    CHECK_THROWS_AS(offline_zero_count({0.4, 0.9, 10.0, 50.0}), Error);
    CHECK_THROWS_AS(offline_zero_count({0.6, 0.9, 10.0, 50.0}, 2.0), Error);
}

TEST_CASE("winding count detects zeros on the critical line") {
    CHECK(winding_count({0.4, 0.6, 14.0, 15.0}).count == 1);
    CHECK(winding_count({0.4, 0.6, 10.0, 30.0}).count == 3);
    CHECK(winding_count({0.4, 0.6, 15.0, 20.0}).count == 0);
}

TEST_CASE("ArgPath contract") {
    ArgPath p;
    p.max_phase_step = 2.0;
    CHECK_THROWS_AS(s_of_t_path(100.0, p), Error);
    CHECK_THROWS_AS(s_of_t_path(5.0), Error);
}

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "critline/error.hpp"
#include "critline/zeros.hpp"
#include "critline/zeta_engine.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace critline;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("critline_test_" + name); }

// Sign changes of Z on a fine uniform grid: independent of the scanner's grid rule.
int oracle_sign_changes(double a, double b, double step) {
    int n = 0;
    double prev = hardy_z(a);
    for (double t = a + step; t <= b + 1e-12; t += step) {
        const double v = hardy_z(t);
        if ((v < 0) != (prev < 0)) ++n;
        prev = v;
    }
    return n;
}

}  // namespace

TEST_CASE("gram points") {
    CHECK(std::abs(theta(gram_point(0)).theta) < 1e-10);
    const double g0 = oracle::bisect([](double t) { return theta(t).theta; }, 17.0, 18.0);
    CHECK(gram_point(0) == doctest::Approx(g0).epsilon(1e-10));
    CHECK(gram_point(0) == doctest::Approx(17.8455995).epsilon(1e-8));
    CHECK(std::abs(theta(gram_point(-1)).theta + std::numbers::pi) < 1e-10);
    double prev = gram_point(-1);
    for (int n = 0; n <= 100; ++n) {
        const double g = gram_point(n);
        CHECK(g > prev);
        CHECK(std::abs(theta(g).theta - n * std::numbers::pi) < 1e-10);
        prev = g;
    }
    CHECK_THROWS_AS(gram_point(-2), Error);
}

TEST_CASE("count_zeros_nt against an independent sign-change count") {
    CHECK(count_zeros_nt(100.0).count == 29);
    CHECK(oracle_sign_changes(10.0, 100.0, 0.01) == 29);
    CHECK(std::abs(count_zeros_nt(100.0).raw - 29.0) < 1e-6);
    std::int64_t prev = 0;
    for (double T = 10.0; T <= 300.0; T += 7.3) {
        const auto c = count_zeros_nt(T).count;
        CHECK(c >= prev);
        prev = c;
    }
    const auto& cache = oracle::low_cache();
    const double g1 = cache.records.front().gamma;
    CHECK(count_zeros_nt(g1 + 0.5).count - count_zeros_nt(g1 - 0.5).count == 1);
    CHECK_THROWS_AS(count_zeros_nt(5.0), Error);
}

TEST_CASE("scan_zeros: first zero, count to 100, and empty stretch") {
    const auto recs = scan_zeros(0.0, 100.0);
    REQUIRE(recs.size() == 29);
    const double g1 = oracle::bisect([](double t) { return hardy_z(t, {1e-12, EvalMethod::ReferenceOracle}); }, 14.0,
                                     14.2, 1e-12);
    CHECK(std::abs(recs[0].gamma - 14.134725) < 1e-5);
    CHECK(std::abs(recs[0].gamma - g1) < 2e-9);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].index == static_cast<std::int64_t>(i) + 1);
        if (i > 0) CHECK(recs[i].gamma > recs[i - 1].gamma);
        const double lo = hardy_z(recs[i].gamma - recs[i].tol);
        const double hi = hardy_z(recs[i].gamma + recs[i].tol);
        CHECK(lo * hi <= 0.0);
        CHECK(std::abs(hardy_z(recs[i].gamma)) <= 2.0 * recs[i].z_prime_abs * recs[i].tol + 1e-12);
    }
    // Between gamma_1 = 14.13 and gamma_2 = 21.02 there is nothing else.
    CHECK(scan_zeros(14.5, 20.5).empty());
    CHECK(count_zeros_nt(20.5).count - count_zeros_nt(14.5).count == 0);
}

TEST_CASE("scan_zeros: partial window carries global indices") {
    const auto& cache = oracle::low_cache();
    const auto w = build_cache(500.0, 600.0);
    CHECK(w.base_count == cache.count_upto(500.0));
    const auto ref = cache.in_range(500.0, 600.0);
    REQUIRE(w.records.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(w.records[i].index == ref[i].index);
        CHECK(std::abs(w.records[i].gamma - ref[i].gamma) < 2e-9);
    }
    CHECK_NOTHROW(w.validate());
}

TEST_CASE("scan_zeros: serial and parallel runs are identical") {
    ScanOptions a;
    a.exec = Exec::Serial;
    ScanOptions b;
    b.exec = Exec::Parallel;
    const auto ra = scan_zeros(200.0, 260.0, a);
    const auto rb = scan_zeros(200.0, 260.0, b);
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(ra[i].gamma == rb[i].gamma);
        CHECK(ra[i].z_prime_abs == rb[i].z_prime_abs);
    }
}

TEST_CASE("scan_zeros: parameter contract") {
    CHECK_THROWS_AS(scan_zeros(100.0, 50.0), Error);
    CHECK_THROWS_AS(scan_zeros(10.0, 2e6), Error);
    ScanOptions o;
    o.tol = 1e-6;
    CHECK_THROWS_AS(scan_zeros(10.0, 20.0, o), Error);
}

TEST_CASE("completeness and local density on the cached range") {
    const auto& cache = oracle::low_cache();
    for (double T = 15.0; T <= 1200.0; T += 61.7) {
        if (cache.distance_to_nearest(T) < 1e-3) continue;
        CHECK(cache.count_upto(T) == count_zeros_nt(T).count);
    }
    for (double T = 20.0; T + 1.0 <= 1200.0; T += 37.0) {
        const double n = static_cast<double>(cache.count_upto(T + 1.0) - cache.count_upto(T));
        CHECK(std::abs(n - theta(T).theta_prime / std::numbers::pi) <= 10.0 * std::log(T));
    }
}

TEST_CASE("cache file round trip and atomic write") {
    const auto& cache = oracle::low_cache();
    const auto path = temp_file("cache.txt");
    write_cache(cache, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("# zeta-zeros v1 t_max=", 0) == 0);
    const auto back = read_cache(path);
    REQUIRE(back.records.size() == cache.records.size());
    for (std::size_t i = 0; i < back.records.size(); ++i) {
        CHECK(back.records[i].gamma == cache.records[i].gamma);
        CHECK(back.records[i].index == cache.records[i].index);
    }
    CHECK(back.t_max_verified == cache.t_max_verified);
    for (const auto& e : fs::directory_iterator(fs::temp_directory_path()))
        CHECK(e.path().filename().string().find("critline_test_cache.txt.tmp") == std::string::npos);
    fs::remove(path);
}

TEST_CASE("cache windows merge") {
    const auto a = build_cache(0.0, 60.0);
    const auto b = build_cache(60.0, 120.0);
    const auto m = merge_caches(a, b);
    CHECK(m.t_min_verified == 0.0);
    CHECK(m.t_max_verified == 120.0);
    CHECK(static_cast<std::int64_t>(m.records.size()) == count_zeros_nt(120.0).count);
    CHECK_NOTHROW(m.validate());
}

TEST_CASE("coverage errors outside the verified window") {
    const auto& cache = oracle::low_cache();
    try {
        (void)cache.count_upto(5000.0);
        FAIL("expected coverage error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Coverage);
    }
}

TEST_CASE("ingest_zero_table") {
    const auto recs = scan_zeros(0.0, 100.0);
    const auto path = temp_file("ordinates.txt");
    {
        std::ofstream out(path);
        out << "# ordinates from a scan\n";
        for (const auto& r : recs) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12f\n", r.gamma);
            out << buf;
        }
    }
    const auto c = ingest_zero_table(path);
    CHECK(c.source == CacheSource::Ingested);
    REQUIRE(c.records.size() == 29);
    CHECK(c.records.front().index == 1);
    CHECK(c.records.back().index == 29);
    CHECK(c.records.front().tol == doctest::Approx(5e-13));

    {
        std::ofstream out(path);
    }
    const auto empty = ingest_zero_table(path);
    CHECK(empty.records.empty());
    CHECK(empty.t_max_verified == 0.0);

    {
        std::ofstream out(path);
        out << "14.134725142\n21.022039639\n# comment\n20.0\n";
    }
    try {
        ingest_zero_table(path);
        FAIL("expected format error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Format);
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }

    {
        std::ofstream out(path);
        out << "14.5\n";
    }
    try {
        ingest_zero_table(path);
        FAIL("expected data error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Data);
    }
    fs::remove(path);
}

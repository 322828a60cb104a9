#include <cmath>
#include <numbers>

#include "critline/error.hpp"
#include "critline/quadrature.hpp"
#include "doctest.h"

using namespace critline;

TEST_CASE("Gauss-Legendre panels integrate polynomials and smooth functions") {
    const auto r = integrate([](double t) { return 3.0 * t * t; }, 10.0, 20.0, {});
    CHECK(r.value == doctest::Approx(7000.0).epsilon(1e-13));
    const auto s = integrate([](double t) { return std::sin(t); }, 10.0, 110.0, {});
    CHECK(std::abs(s.value - (std::cos(10.0) - std::cos(110.0))) < 1e-12);
}

TEST_CASE("breaks keep jump discontinuities exact") {
    const std::vector<double> breaks{12.345, 17.5};
    const auto step = [](double t) { return (t > 12.345 ? 1.0 : 0.0) + (t > 17.5 ? 1.0 : 0.0); };
    const auto r = integrate(step, 10.0, 20.0, {}, breaks);
    CHECK(std::abs(r.value - ((20.0 - 12.345) + 2.5)) < 1e-12);
    const auto e = panel_edges(10.0, 20.0, {}, 0, breaks);
    CHECK(std::find(e.begin(), e.end(), 12.345) != e.end());
    CHECK(std::find(e.begin(), e.end(), 17.5) != e.end());
    CHECK(e.front() == 10.0);
    CHECK(e.back() == 20.0);
}

TEST_CASE("running integrals at marks") {
    const std::vector<double> marks{11.0, 15.0, 20.0};
    const auto r = integrate([](double t) { return t; }, 10.0, 20.0, {}, {}, marks);
    CHECK(r.at_marks[0] == doctest::Approx(10.5));
    CHECK(r.at_marks[1] == doctest::Approx(62.5));
    CHECK(r.at_marks[2] == doctest::Approx(r.value));
}

TEST_CASE("panel widths follow the mean zero gap") {
    QuadratureSpec q;
    const auto e = panel_edges(1000.0, 1010.0, q, 0);
    const double w = e[1] - e[0];
    CHECK(w == doctest::Approx(mean_zero_gap(1000.0) / 4.0));
    const auto e1 = panel_edges(1000.0, 1010.0, q, 1);
    CHECK(e1.size() - 1 >= 2 * (e.size() - 1) - 1);
    q.max_panel = 0.01;
    const auto c = panel_edges(1000.0, 1001.0, q, 0);
    CHECK(c.size() - 1 == 100);
}

TEST_CASE("additivity over split intervals") {
    const auto f = [](double t) { return std::cos(t * std::log(t)); };
    const double whole = integrate(f, 100.0, 140.0, {}).value;
    const double parts = integrate(f, 100.0, 120.0, {}).value + integrate(f, 120.0, 140.0, {}).value;
    CHECK(std::abs(whole - parts) < 1e-9);
}

TEST_CASE("serial and parallel evaluation agree bit for bit") {
    QuadratureSpec a;
    a.exec = Exec::Serial;
    QuadratureSpec b;
    b.exec = Exec::Parallel;
    const auto f = [](double t) { return std::exp(std::sin(t)) * std::log(t); };
    CHECK(integrate(f, 50.0, 400.0, a).value == integrate(f, 50.0, 400.0, b).value);
}

TEST_CASE("non-convergence and parameter errors") {
    QuadratureSpec q;
    q.refinement_limit = 1;
    q.rel_tol = 1e-15;
    try {
        integrate([](double t) { return std::sin(1e4 * t); }, 10.0, 30.0, q);
        FAIL("expected quadrature error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Quadrature);
    }
    QuadratureSpec bad;
    bad.base_step_factor = 2.0;
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, bad), Error);
}

#include <cmath>
#include <stdexcept>
#include <vector>

#include "critline/kernels.hpp"
#include "critline/zeta_engine.hpp"
#include "doctest.h"

using namespace critline;

TEST_CASE("hardy_z_grid: serial reference equals the parallel kernel") {
    std::vector<double> ts;
    for (int i = 0; i < 3000; ++i) ts.push_back(40.0 + 0.37 * i);
    std::vector<double> a(ts.size());
    std::vector<double> b(ts.size());
    hardy_z_grid(ts, a, {}, Exec::Serial);
    hardy_z_grid(ts, b, {}, Exec::Parallel);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(a[i] == b[i]);
    CHECK(a[7] == hardy_z(ts[7]));
}

TEST_CASE("sum_indexed is order-deterministic") {
    const auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)) * 1e-3 + (i % 7 == 0 ? 1e8 : 0.0); };
    CHECK(sum_indexed(20000, f, Exec::Serial) == sum_indexed(20000, f, Exec::Parallel));
}

TEST_CASE("exceptions inside the parallel region surface as the lowest index") {
    std::vector<double> out(1000);
    try {
        map_indexed(
            out.size(),
            [](std::size_t i) -> double {
                if (i == 400 || i == 900) throw std::runtime_error("bad " + std::to_string(i));
                return 1.0;
            },
            out, Exec::Parallel);
        FAIL("expected exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "bad 400");
    }
    CHECK(worker_count() >= 1);
}

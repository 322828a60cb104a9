#pragma once

// Data-parallel kernels. Every kernel has a serial reference path and an
// OpenMP path; both write per-index results and reduce in index order, so
// the two paths agree bit-for-bit.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "critline/summation.hpp"
#include "critline/zeta_engine.hpp"

namespace critline {

enum class Exec { Serial, Parallel };

/// Runs f(i) for i in [0, n); f must only write to slots owned by i.
template <class F>
void for_each_index(std::size_t n, F&& f, Exec exec) {
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    // Exceptions must not escape an OpenMP region; keep the lowest-index one.
    const auto count = static_cast<long long>(n);
    std::exception_ptr first_error;
    long long first_index = count;
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(critline_map_error)
            if (i < first_index) {
                first_index = i;
                first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

/// out[i] = f(i) for i in [0, n).
template <class F>
void map_indexed(std::size_t n, F&& f, std::span<double> out, Exec exec) {
    for_each_index(n, [&](std::size_t i) { out[i] = f(i); }, exec);
}

/// Compensated sum of f(0..n-1), reduced in index order.
template <class F>
double sum_indexed(std::size_t n, F&& f, Exec exec) {
    std::vector<double> parts(n);
    map_indexed(n, std::forward<F>(f), parts, exec);
    return compensated_total(parts);
}

/// Z(t) at every grid point.
void hardy_z_grid(std::span<const double> ts, std::span<double> out, EvalOptions opts, Exec exec);

/// Max number of OpenMP threads, 1 when built without OpenMP.
int worker_count();

}  // namespace critline

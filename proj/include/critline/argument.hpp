#pragma once

#include <numbers>

#include "critline/zero_cache.hpp"

namespace critline {

/// Polyline 2 -> 2+it -> 1/2+it used to define arg zeta(1/2+it).
/// Only the horizontal leg is tracked: on re(s) = 2 the real part of zeta is
/// at least 2 - zeta(2) > 0, so the principal argument is already continuous.
struct ArgPath {
    double horizontal_step = 0.25;  // initial (and maximal) sigma step
    double max_phase_step = std::numbers::pi / 4.0;
};

/// Right-limit offset used when t sits on a cached ordinate.
inline constexpr double kRightLimitOffset = 1e-7;

/// S(t) = arg zeta(1/2+it) / pi by continuous variation along the path.
/// If `cache` is given and t is within 1e-9 of a cached ordinate the value
/// at t + kRightLimitOffset is returned.
double s_of_t_path(double t, const ArgPath& path = {}, const ZeroCache* cache = nullptr);

/// S(t) = N(t) - 1 - theta(t)/pi with N from the cache.
double s_of_t_counting(double t, const ZeroCache& cache);

/// Rectangle strictly inside 1/2 < sigma < 1.
struct Rectangle {
    double sigma_lo = 0.6;
    double sigma_hi = 0.9;
    double t_lo = 10.0;
    double t_hi = 50.0;
};

struct WindingResult {
    int count = 0;
    double raw = 0.0;
    int boundary_samples = 0;
    double min_boundary_abs = 0.0;
};

/// Zeros of zeta inside any rectangle by the argument principle (no strip check).
WindingResult winding_count(const Rectangle& rect, double max_phase_step = std::numbers::pi / 4.0);

/// Zeros of zeta inside a rectangle in 1/2 < sigma < 1.
WindingResult offline_zero_count(const Rectangle& rect, double max_phase_step = std::numbers::pi / 4.0);

}  // namespace critline

#include "critline/argument.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "critline/error.hpp"
#include "critline/zeta_engine.hpp"

namespace critline {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinStep = 1e-12;
constexpr double kEvalErr = 1e-12;

}  // namespace

double s_of_t_path(double t, const ArgPath& path, const ZeroCache* cache) {
    require(std::isfinite(t) && t >= 10.0, ErrorKind::Domain, "s_of_t_path: requires t >= 10");
    require(path.max_phase_step > 0.0 && path.max_phase_step <= kPi / 2.0, ErrorKind::Parameter,
            "s_of_t_path: max_phase_step must lie in (0, pi/2]");
    if (cache != nullptr && cache->distance_to_nearest(t) < 1e-9) t += kRightLimitOffset;

    Complex prev = zeta_reference(Complex(2.0, t), kEvalErr);
    double phase = std::arg(prev);
    double sigma = 2.0;
    double step = path.horizontal_step;
    while (sigma > 0.5) {
        const double h = std::min(step, sigma - 0.5);
        const double next_sigma = (sigma - h <= 0.5 + 1e-15) ? 0.5 : sigma - h;
        const Complex z = zeta_reference(Complex(next_sigma, t), kEvalErr);
        require(z != 0.0, ErrorKind::Proximity, "s_of_t_path: zeta vanishes on the path");
        const double d = std::arg(z / prev);
        if (std::abs(d) > path.max_phase_step) {
            step = 0.5 * h;
            require(step >= kMinStep, ErrorKind::Proximity,
                    "s_of_t_path: step underflow near t = " + std::to_string(t) + " (ordinate too close)");
            continue;
        }
        phase += d;
        sigma = next_sigma;
        prev = z;
        step = std::min(path.horizontal_step, 2.0 * h);
    }
    return phase / kPi;
}

double s_of_t_counting(double t, const ZeroCache& cache) {
    const auto n = cache.count_upto(t);
    return static_cast<double>(n) - 1.0 - theta(t).theta / kPi;
}

namespace {

struct EdgeTrack {
    double phase = 0.0;
    int samples = 0;
    double min_abs = 1e300;
};

// Continuous argument change of zeta along the segment a -> b.
void track_edge(Complex a, Complex b, double max_phase_step, EdgeTrack& acc) {
    const double len = std::abs(b - a);
    if (len == 0.0) return;
    const double max_du = std::min(1.0, 0.25 / len);
    double u = 0.0;
    double du = max_du;
    Complex prev = zeta_reference(a, kEvalErr);
    acc.min_abs = std::min(acc.min_abs, std::abs(prev));
    ++acc.samples;
    require(std::abs(prev) > 1e-6, ErrorKind::Proximity, "winding_count: zeta too small on boundary");
    while (u < 1.0) {
        const double h = std::min(du, 1.0 - u);
        const double next_u = (u + h >= 1.0 - 1e-15) ? 1.0 : u + h;
        const Complex z = zeta_reference(a + next_u * (b - a), kEvalErr);
        ++acc.samples;
        acc.min_abs = std::min(acc.min_abs, std::abs(z));
        require(std::abs(z) > 1e-6, ErrorKind::Proximity, "winding_count: zeta too small on boundary");
        const double d = std::arg(z / prev);
        if (std::abs(d) > max_phase_step) {
            du = 0.5 * h;
            require(du * len >= 1e-10, ErrorKind::Proximity, "winding_count: step underflow on boundary");
            continue;
        }
        acc.phase += d;
        u = next_u;
        prev = z;
        du = std::min(max_du, 2.0 * h);
    }
}

}  // namespace

WindingResult offline_zero_count(const Rectangle& rect, double max_phase_step) {
    require(rect.sigma_lo > 0.5 && rect.sigma_lo < rect.sigma_hi && rect.sigma_hi < 1.0, ErrorKind::Parameter,
            "offline_zero_count: need 1/2 < sigma_lo < sigma_hi < 1");
    return winding_count(rect, max_phase_step);
}

WindingResult winding_count(const Rectangle& rect, double max_phase_step) {
    require(rect.sigma_lo < rect.sigma_hi, ErrorKind::Parameter, "winding_count: need sigma_lo < sigma_hi");
    require(rect.t_lo <= rect.t_hi && rect.t_lo >= 0.0, ErrorKind::Parameter,
            "winding_count: need 0 <= t_lo <= t_hi");
    require(max_phase_step > 0.0 && max_phase_step <= kPi / 2.0, ErrorKind::Parameter,
            "winding_count: max_phase_step must lie in (0, pi/2]");
    WindingResult out;
    if (rect.t_lo == rect.t_hi) return out;

    const Complex c0(rect.sigma_lo, rect.t_lo);
    const Complex c1(rect.sigma_hi, rect.t_lo);
    const Complex c2(rect.sigma_hi, rect.t_hi);
    const Complex c3(rect.sigma_lo, rect.t_hi);
    EdgeTrack acc;
    track_edge(c0, c1, max_phase_step, acc);
    track_edge(c1, c2, max_phase_step, acc);
    track_edge(c2, c3, max_phase_step, acc);
    track_edge(c3, c0, max_phase_step, acc);

    out.raw = acc.phase / (2.0 * kPi);
    out.count = static_cast<int>(std::lround(out.raw));
    out.boundary_samples = acc.samples;
    out.min_boundary_abs = acc.min_abs;
    require(std::abs(out.raw - out.count) < 0.1, ErrorKind::Resolution,
            "winding_count: winding number not near an integer");
    return out;
}

}  // namespace critline

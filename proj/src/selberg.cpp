#include "critline/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "critline/argument.hpp"
#include "critline/error.hpp"
#include "critline/summation.hpp"
#include "critline/zeta_engine.hpp"

namespace critline {

namespace {

constexpr double kPi = std::numbers::pi;

void require_primes(const PrimeTable& primes, double y, const char* who) {
    require(std::floor(y) <= static_cast<double>(primes.limit) || y < 2.0, ErrorKind::Parameter,
            std::string(who) + ": prime table limit below y");
}

}  // namespace

PrimeTable sieve(std::int64_t limit) {
    require(limit >= 2 && limit <= 100'000'000, ErrorKind::Parameter, "sieve: limit must lie in [2, 1e8]");
    PrimeTable out;
    out.limit = limit;
    const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    std::vector<char> small(static_cast<std::size_t>(root + 1), 1);
    std::vector<std::int64_t> base;
    for (std::int64_t i = 2; i <= root; ++i) {
        if (!small[static_cast<std::size_t>(i)]) continue;
        base.push_back(i);
        for (std::int64_t j = i * i; j <= root; j += i) small[static_cast<std::size_t>(j)] = 0;
    }
    constexpr std::int64_t kSegment = 1 << 18;
    std::vector<char> seg(kSegment);
    for (std::int64_t lo = 2; lo <= limit; lo += kSegment) {
        const std::int64_t hi = std::min(lo + kSegment - 1, limit);
        std::fill(seg.begin(), seg.end(), 1);
        for (std::int64_t p : base) {
            if (p * p > hi) break;
            std::int64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (std::int64_t j = start; j <= hi; j += p) seg[static_cast<std::size_t>(j - lo)] = 0;
        }
        for (std::int64_t n = lo; n <= hi; ++n)
            if (seg[static_cast<std::size_t>(n - lo)]) out.primes.push_back(n);
    }
    return out;
}

SelbergParams SelbergParams::from_delta(double delta, double T_ref) {
    SelbergParams p;
    p.delta = delta;
    p.T_ref = T_ref;
    p.y = std::pow(T_ref, delta);
    p.y_absolute = false;
    p.validate();
    return p;
}

SelbergParams SelbergParams::from_y(double y, double T_ref) {
    SelbergParams p;
    p.y = y;
    p.T_ref = T_ref;
    p.delta = std::log(y) / std::log(T_ref);
    p.y_absolute = true;
    p.validate();
    return p;
}

void SelbergParams::validate() const {
    require(std::isfinite(T_ref) && T_ref >= 10.0, ErrorKind::Parameter, "selberg: T_ref must be >= 10");
    require(std::isfinite(y) && y >= 1.0 && y <= 1e8, ErrorKind::Parameter, "selberg: y must lie in [1, 1e8]");
    if (!y_absolute)
        require(delta > 0.0 && delta <= 0.25, ErrorKind::Parameter, "selberg: delta must lie in (0, 1/4]");
}

PrimeSum::PrimeSum(double y, const PrimeTable& primes) {
    require_primes(primes, y, "prime sum");
    for (std::int64_t p : primes.primes) {
        if (static_cast<double>(p) > y) break;
        log_p_.push_back(std::log(static_cast<double>(p)));
        inv_sqrt_p_.push_back(1.0 / std::sqrt(static_cast<double>(p)));
    }
}

double PrimeSum::sin_sum(double t) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < log_p_.size(); ++i) s += inv_sqrt_p_[i] * std::sin(t * log_p_[i]);
    return s.value();
}

double PrimeSum::cos_sum(double t) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < log_p_.size(); ++i) s += inv_sqrt_p_[i] * log_p_[i] * std::cos(t * log_p_[i]);
    return s.value();
}

double prime_trig_sum(double t, double y, PrimeWeight weight, const PrimeTable& primes) {
    const PrimeSum ps(y, primes);
    return weight == PrimeWeight::InvSqrtSin ? ps.sin_sum(t) : ps.cos_sum(t);
}

double s_value(double t, const ZeroCache* cache) {
    if (cache != nullptr && cache->covers(t, t)) return s_of_t_counting(t, *cache);
    return s_of_t_path(t, {}, cache);
}

double r_of_t(double t, const SelbergParams& params, const PrimeTable& primes, const ZeroCache* cache) {
    params.validate();
    return s_value(t, cache) + prime_trig_sum(t, params.y, PrimeWeight::InvSqrtSin, primes) / kPi;
}

QuadratureSpec r_quadrature(const SelbergParams& params, QuadratureSpec quad) {
    if (params.y >= 2.0) {
        const double cap = 0.5 / std::log(params.y);
        quad.max_panel = quad.max_panel > 0.0 ? std::min(quad.max_panel, cap) : cap;
    }
    return quad;
}

QuadResult moment_r(double T, double H, int two_m, const SelbergParams& params, const PrimeTable& primes,
                    const ZeroCache& cache, const QuadratureSpec& quad) {
    params.validate();
    require(two_m == 2 || two_m == 4 || two_m == 6 || two_m == 8, ErrorKind::Parameter,
            "moment_r: two_m must be one of 2, 4, 6, 8");
    require(H > 0.0 && T >= 10.0, ErrorKind::Parameter, "moment_r: need T >= 10 and H > 0");
    require(cache.covers(T, T + H), ErrorKind::Coverage, "moment_r: zero cache does not cover [T, T+H]");
    const PrimeSum ps(params.y, primes);
    const auto breaks = cache.ordinates_between(T, T + H);
    const auto f = [&](double t) {
        const double r = s_of_t_counting(t, cache) + ps.sin_sum(t) / kPi;
        return std::pow(r, two_m);
    };
    return integrate(f, T, T + H, r_quadrature(params, quad), breaks);
}

double moment_bound(double H, int m, double eps) {
    require(m >= 1 && eps > 0.0 && H >= 0.0, ErrorKind::Parameter, "moment_bound: need m >= 1, eps > 0, H >= 0");
    return std::pow(std::exp(37.0) / (kPi * kPi) / (eps * eps * eps) * m * m, m) * H;
}

MomentBoundConditions moment_bound_conditions(double T, double H, int m, double eps, const SelbergParams& params, double x) {
    MomentBoundConditions c;
    c.x = x > 0.0 ? x : std::pow(params.y, m);
    const double lx = std::log(c.x);
    c.m_above_one = m > 1;
    c.m_small = m <= lx / 192.0;
    c.y_window = params.y > std::exp(lx / (4.0 * m)) && params.y <= std::exp(lx / m) * (1.0 + 1e-12);
    c.h_regime = H >= std::pow(T, 27.0 / 82.0 + eps);
    return c;
}

void ExceedanceSpec::validate() const {
    require(std::isfinite(V) && V >= 0.0, ErrorKind::Parameter, "exceedance: V must be >= 0");
    require(m >= 1 && m <= 4, ErrorKind::Parameter, "exceedance: m must lie in [1, 4]");
    require(grid_step > 0.0 && grid_step <= 0.01, ErrorKind::Parameter, "exceedance: grid_step must lie in (0, 0.01]");
}

double exceedance_level(double c, double T) {
    require(T > std::numbers::e, ErrorKind::Parameter, "exceedance_level: need T > e");
    return c * std::log(std::log(T));
}

ExceedanceResult exceedance_measure(double T, double H, const ExceedanceSpec& spec, const SelbergParams& params,
                                    const PrimeTable& primes, const ZeroCache& cache, const QuadratureSpec& quad) {
    spec.validate();
    params.validate();
    require(H > 0.0 && T >= 10.0, ErrorKind::Parameter, "exceedance: need T >= 10 and H > 0");
    require(cache.covers(T, T + H), ErrorKind::Coverage, "exceedance: zero cache does not cover [T, T+H]");
    ExceedanceResult out;
    out.cells = static_cast<std::int64_t>(std::ceil(H / spec.grid_step - 1e-9));
    out.grid_step = H / static_cast<double>(out.cells);
    const PrimeSum ps(params.y, primes);
    std::vector<double> hit(static_cast<std::size_t>(out.cells));
    map_indexed(
        hit.size(),
        [&](std::size_t j) {
            const double t = T + (static_cast<double>(j) + 0.5) * out.grid_step;
            const double r = s_of_t_counting(t, cache) + ps.sin_sum(t) / kPi;
            return std::abs(r) >= spec.V ? 1.0 : 0.0;
        },
        hit, quad.exec);
    double count = 0.0;
    for (double h : hit) count += h;
    out.measure = count * out.grid_step;
    out.moment = moment_r(T, H, 2 * spec.m, params, primes, cache, quad).value;
    out.certificate =
        spec.V > 0.0 ? out.moment / std::pow(spec.V, 2 * spec.m) : std::numeric_limits<double>::infinity();
    return out;
}

MertensSums mertens_sums(double x, const PrimeTable& primes) {
    require(std::isfinite(x) && x >= 0.0, ErrorKind::Parameter, "mertens_sums: x must be >= 0");
    require_primes(primes, x, "mertens_sums");
    CompensatedSum a;
    CompensatedSum b;
    for (std::int64_t p : primes.primes) {
        const auto pd = static_cast<double>(p);
        if (pd > x) break;
        a += std::log(pd) / pd;
        b += 1.0 / pd;
    }
    return {a.value(), b.value()};
}

}  // namespace critline

#include "critline/sums_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "critline/argument.hpp"
#include "critline/error.hpp"
#include "critline/summation.hpp"
#include "critline/zeta_engine.hpp"

namespace critline {

namespace {

constexpr double kPi = std::numbers::pi;
const EvalOptions kZeroEval{kPrecisionFloor, EvalMethod::Auto};
const EvalOptions kQuadEval{1e-10, EvalMethod::Auto};

void require_cover(const ZeroCache& cache, double lo, double hi, const char* who) {
    require(cache.covers(lo, hi), ErrorKind::Coverage,
            std::string(who) + ": zero cache does not cover [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double abs2(double t) { return zeta_abs2_halfline(t, kQuadEval); }

}  // namespace

void Interval::validate() const {
    require(std::isfinite(T) && T >= 10.0, ErrorKind::Parameter, "interval: T must be >= 10");
    require(std::isfinite(H) && H > 0.0 && H <= T, ErrorKind::Parameter, "interval: need 0 < H <= T");
}

FSum f_sum(const Interval& iv, const ZeroCache& cache) {
    iv.validate();
    const auto recs = cache.in_range(iv.T, iv.T + iv.H);
    std::vector<double> vals(recs.size());
    std::vector<double> noise(recs.size());
    for_each_index(
        recs.size(),
        [&](std::size_t i) {
            const double z = hardy_z(recs[i].gamma, kZeroEval);
            vals[i] = z * z;
            const double n = 2.0 * recs[i].tol * recs[i].z_prime_abs;
            noise[i] = n * n;
        },
        Exec::Parallel);
    return {compensated_total(vals), compensated_total(noise), recs.size()};
}

double GonekSpec::L() const { return std::log(T / (2.0 * kPi)) / (2.0 * kPi); }

void GonekSpec::validate() const {
    require(std::isfinite(T) && T >= 10.0, ErrorKind::Parameter, "gonek: T must be >= 10");
    require(std::isfinite(alpha) && std::abs(alpha) <= 0.5 * L() * (1.0 + 1e-12), ErrorKind::Parameter,
            "gonek: need |alpha| <= L/2");
}

double gonek_main_term(const GonekSpec& spec) {
    spec.validate();
    const double x = kPi * spec.alpha;
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    return (1.0 - sinc * sinc) * spec.T / (2.0 * kPi) * std::pow(std::log(spec.T), 2);
}

double gonek_shifted_sum(const GonekSpec& spec, const ZeroCache& cache) {
    spec.validate();
    require_cover(cache, 0.0, spec.T, "gonek_shifted_sum");
    const auto recs = cache.in_range(0.0, spec.T);
    const double shift = spec.alpha / spec.L();
    std::vector<double> vals(recs.size());
    map_indexed(
        recs.size(), [&](std::size_t i) { return zeta_abs2_halfline(recs[i].gamma + shift, kZeroEval); }, vals,
        Exec::Parallel);
    return compensated_total(vals);
}

QuadResult weighted_integral_s(const Interval& iv, int k, const ZeroCache& cache, const QuadratureSpec& quad,
                               bool absolute) {
    iv.validate();
    require(k == 1 || k == 2, ErrorKind::Parameter, "weighted_integral_s: k must be 1 or 2");
    require_cover(cache, iv.T, iv.T + iv.H, "weighted_integral_s");
    const auto breaks = cache.ordinates_between(iv.T, iv.T + iv.H);
    const auto f = [&](double t) {
        const double s = s_of_t_counting(t, cache);
        const double sk = k == 1 ? s : s * s;
        return abs2(t) * (absolute ? std::abs(sk) : sk);
    };
    return integrate(f, iv.T, iv.T + iv.H, quad, breaks);
}

QuadResult moment2(double a, double b, const QuadratureSpec& quad, std::span<const double> marks) {
    require(a >= 0.0, ErrorKind::Parameter, "moment2: need a >= 0");
    return integrate(abs2, a, b, quad, {}, marks);
}

QuadResult moment4(double a, double b, const QuadratureSpec& quad, std::span<const double> marks) {
    require(a >= 0.0, ErrorKind::Parameter, "moment4: need a >= 0");
    return integrate([](double t) { return std::pow(abs2(t), 2); }, a, b, quad, {}, marks);
}

QuadResult moment4_deriv(double a, double b, const QuadratureSpec& quad) {
    require(a >= 5.0, ErrorKind::Parameter, "moment4_deriv: need a >= 5");
    return integrate([](double t) { return std::pow(std::norm(zeta_deriv_halfline(t)), 2); }, a, b, quad);
}

P4Fit p4_fit(std::span<const std::pair<double, double>> samples) {
    require(samples.size() >= 8, ErrorKind::Parameter, "p4_fit: need at least 8 samples");
    double lo = samples[0].first;
    double hi = samples[0].first;
    for (const auto& [T, m] : samples) {
        require(std::isfinite(T) && T > 1.0 && std::isfinite(m), ErrorKind::Parameter, "p4_fit: invalid sample");
        lo = std::min(lo, T);
        hi = std::max(hi, T);
    }
    require(hi >= 10.0 * lo, ErrorKind::Parameter, "p4_fit: samples must span at least one decade of T");

    const auto n = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd A(n, 5);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = std::log(samples[static_cast<std::size_t>(i)].first);
        double p = 1.0;
        for (int k = 0; k < 5; ++k, p *= x) A(i, k) = p;
        y(i) = samples[static_cast<std::size_t>(i)].second / samples[static_cast<std::size_t>(i)].first;
    }
    const Eigen::VectorXd norms = A.colwise().norm();
    const Eigen::MatrixXd As = A * norms.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    P4Fit fit;
    fit.condition = sv(0) / sv(sv.size() - 1);
    require(std::isfinite(fit.condition) && fit.condition <= 1e12, ErrorKind::Fit,
            "p4_fit: design matrix ill-conditioned (condition " + std::to_string(fit.condition) + ")");
    const Eigen::VectorXd c = svd.solve(y).cwiseQuotient(norms);
    for (int k = 0; k < 5; ++k) fit.coeffs[static_cast<std::size_t>(k)] = c(k);
    const Eigen::VectorXd r = A * c - y;
    fit.residuals.assign(r.data(), r.data() + r.size());
    fit.rms = std::sqrt(r.squaredNorm() / static_cast<double>(n));
    return fit;
}

std::vector<std::pair<double, double>> moment4_samples(std::span<const double> Ts, const QuadratureSpec& quad) {
    require(!Ts.empty(), ErrorKind::Parameter, "moment4_samples: no sample heights");
    std::vector<double> marks(Ts.begin(), Ts.end());
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    const auto res = moment4(0.0, marks.back(), quad, marks);
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < marks.size(); ++i) out.emplace_back(marks[i], res.at_marks[i]);
    return out;
}

TestFunction test_constant() {
    return {"one", [](double) { return 1.0; }, [](double) { return 0.0; }};
}

TestFunction test_linear() {
    return {"t", [](double t) { return t; }, [](double) { return 1.0; }};
}

TestFunction test_bump(const Interval& iv) {
    const double c = iv.T + 0.5 * iv.H;
    const double w = iv.H / 6.0;
    return {"bump", [=](double t) { return std::exp(-std::pow((t - c) / w, 2)); },
            [=](double t) {
                const double u = (t - c) / w;
                return -2.0 * u / w * std::exp(-u * u);
            }};
}

TestFunction test_z_squared() {
    return {"zsq", [](double t) { return abs2(t); }, [](double t) { return zeta_abs2_derivative(t); }};
}

StieltjesCheck stieltjes_identity_check(const Interval& iv, const TestFunction& f, const ZeroCache& cache,
                                        const QuadratureSpec& quad) {
    iv.validate();
    const double a = iv.T;
    const double b = iv.T + iv.H;
    require_cover(cache, a, b, "stieltjes_identity_check");
    const auto recs = cache.in_range(a, b);
    const auto breaks = cache.ordinates_between(a, b);

    StieltjesCheck out;
    CompensatedSum lhs;
    for (const auto& r : recs) lhs += f.f(r.gamma);
    out.lhs = lhs.value();

    const auto half_log = [](double t) { return 0.5 * std::log(t / (2.0 * kPi)); };
    out.i1 = integrate([&](double t) { return f.f(t) * half_log(t) / kPi; }, a, b, quad).value;

    const double boundary = f.f(b) * s_of_t_counting(b, cache) - f.f(a) * s_of_t_counting(a, cache);
    const double s_df = integrate([&](double t) { return s_of_t_counting(t, cache) * f.df(t); }, a, b, quad, breaks).value;
    const double remainder =
        integrate([&](double t) { return f.f(t) * (theta(t).theta_prime - half_log(t)) / kPi; }, a, b, quad).value;
    out.i2 = boundary - s_df + remainder;

    out.residual = out.lhs - out.i1 - out.i2;
    const double scale = std::max({std::abs(out.lhs), std::abs(out.i1), std::abs(out.i2), 1e-300});
    out.relative = std::abs(out.residual) / scale;
    return out;
}

double zeta_abs2_derivative(double t, double target_abs_err) {
    const Complex z = zeta_reference(Complex(0.5, t), std::max(target_abs_err, kPrecisionFloor));
    const Complex dz = zeta_deriv_halfline(t, target_abs_err);
    return 2.0 * std::real(Complex(0.0, 1.0) * dz * std::conj(z));
}

IbpCheck ibp_identity_check(const Interval& iv, const ZeroCache& cache, const SelbergParams& params,
                            const PrimeTable& primes, const QuadratureSpec& quad, bool constant_r) {
    iv.validate();
    params.validate();
    const double a = iv.T;
    const double b = iv.T + iv.H;
    require_cover(cache, a, b, "ibp_identity_check");
    const PrimeSum ps(params.y, primes);
    const auto breaks = cache.ordinates_between(a, b);
    const auto rq = r_quadrature(params, quad);
    const auto r_at = [&](double t) { return s_of_t_counting(t, cache) + ps.sin_sum(t) / kPi; };
    const double r_const = r_at(a);
    const auto r_fn = [&](double t) { return constant_r ? r_const : r_at(t); };

    IbpCheck out;
    const double fa = abs2(a);
    const double fb = abs2(b);
    const auto parts_int = integrate([&](double t) { return r_fn(t) * zeta_abs2_derivative(t); }, a, b, rq, breaks);
    out.parts = fb * r_fn(b) - fa * r_fn(a) - parts_int.value;

    if (constant_r) {
        out.direct = 0.0;
        out.mass = std::abs(r_const) * integrate([](double t) { return std::abs(zeta_abs2_derivative(t)); }, a, b, rq).value;
    } else {
        const auto recs = cache.in_range(a, b);
        CompensatedSum jumps;
        CompensatedSum jump_mass;
        for (const auto& r : recs) {
            const double v = hardy_z(r.gamma, kZeroEval);
            jumps += v * v;
            jump_mass += v * v;
        }
        const auto density = [&](double t) { return (ps.cos_sum(t) - theta(t).theta_prime) / kPi; };
        const auto smooth = integrate([&](double t) { return abs2(t) * density(t); }, a, b, rq);
        out.direct = jumps.value() + smooth.value;
        out.mass = jump_mass.value() + smooth.abs_mass;
    }
    out.residual = out.direct - out.parts;
    out.relative = std::abs(out.residual) / std::max(out.mass, 1e-300);
    return out;
}

}  // namespace critline

#include "critline/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "critline/error.hpp"
#include "critline/zeta_engine.hpp"

namespace critline {

namespace {

constexpr double kPi = std::numbers::pi;
// No zero lies below 14.13, so N(10) = 0.
constexpr double kScanFloor = 10.0;
constexpr double kDerivStep = 1e-5;

// Principal branch of Lambert W for x >= -1/e (Halley iteration).
double lambert_w0(double x) {
    double w = x < 3.0 ? std::log1p(x) : std::log(x) - std::log(std::log(x));
    for (int i = 0; i < 60; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double dw = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= dw;
        if (std::abs(dw) <= 1e-15 * (1.0 + std::abs(w))) break;
    }
    return w;
}

std::string interval_text(double a, double b) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.10g, %.10g]", a, b);
    return buf;
}

double eval_target(double tol) { return std::clamp(tol * 1e-2, kPrecisionFloor, 1e-10); }

std::vector<double> scan_grid(double lo, double hi, double factor) {
    std::vector<double> g{lo};
    double t = lo;
    while (t < hi) {
        t += factor / theta(t).theta_prime;
        g.push_back(std::min(t, hi));
    }
    return g;
}

std::int64_t sign_changes(const std::vector<double>& z, std::size_t from, std::size_t to) {
    std::int64_t n = 0;
    for (std::size_t i = from; i + 1 < to; ++i)
        if (std::signbit(z[i]) != std::signbit(z[i + 1])) ++n;
    return n;
}

ZeroRecord refine(double a, double b, double za, double tol, const EvalOptions& ev) {
    while (0.5 * (b - a) > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double zm = hardy_z(m, ev);
        if (std::signbit(zm) == std::signbit(za)) {
            a = m;
            za = zm;
        } else {
            b = m;
        }
    }
    ZeroRecord r;
    r.gamma = 0.5 * (a + b);
    r.tol = std::max(0.5 * (b - a), tol);
    r.z_prime_abs =
        std::abs(hardy_z(r.gamma + kDerivStep, ev) - hardy_z(r.gamma - kDerivStep, ev)) / (2.0 * kDerivStep);
    return r;
}

struct ScanResult {
    std::vector<ZeroRecord> records;
    std::int64_t base = 0;
};

// Locates the first chunk whose sign-change count disagrees with N(T).
std::string locate_mismatch(const std::vector<double>& grid, const std::vector<double>& z) {
    const std::size_t chunks = std::min<std::size_t>(16, grid.size() - 1);
    std::size_t from = 0;
    for (std::size_t c = 1; c <= chunks; ++c) {
        const std::size_t to = (c == chunks) ? grid.size() - 1 : c * (grid.size() - 1) / chunks;
        try {
            const auto expect = count_zeros_nt(std::max(grid[to], kScanFloor)).count -
                                (grid[from] < kScanFloor ? 0 : count_zeros_nt(grid[from]).count);
            if (expect != sign_changes(z, from, to + 1))
                return interval_text(grid[from], grid[to]) + " (expected " + std::to_string(expect) + ", found " +
                       std::to_string(sign_changes(z, from, to + 1)) + ")";
        } catch (const Error&) {
            return interval_text(grid[from], grid[to]) + " (N(T) audit failed at a chunk edge)";
        }
        from = to;
    }
    return interval_text(grid.front(), grid.back());
}

ScanResult scan_impl(double t_lo, double t_hi, const ScanOptions& opts) {
    require(std::isfinite(t_lo) && std::isfinite(t_hi) && t_lo >= 0.0 && t_lo < t_hi && t_hi <= 1e6,
            ErrorKind::Parameter, "scan_zeros: need 0 <= t_lo < t_hi <= 1e6");
    require(opts.grid_factor > 0.0 && opts.grid_factor <= 0.2, ErrorKind::Parameter,
            "scan_zeros: grid_factor must lie in (0, 0.2]");
    require(opts.tol >= 1e-12 && opts.tol <= 1e-9, ErrorKind::Parameter, "scan_zeros: tol must lie in [1e-12, 1e-9]");
    require(opts.max_rescans >= 0, ErrorKind::Parameter, "scan_zeros: max_rescans must be >= 0");

    ScanResult out;
    if (t_hi <= kScanFloor) return out;
    const double lo = std::max(t_lo, kScanFloor);
    out.base = (t_lo < kScanFloor) ? 0 : count_zeros_nt(lo).count;
    const std::int64_t expected = count_zeros_nt(t_hi).count - out.base;

    const EvalOptions ev{eval_target(opts.tol), EvalMethod::Auto};
    double factor = opts.grid_factor;
    std::vector<double> grid;
    std::vector<double> z;
    for (int attempt = 0; attempt <= opts.max_rescans; ++attempt, factor *= 0.5) {
        grid = scan_grid(lo, t_hi, factor);
        z.assign(grid.size(), 0.0);
        hardy_z_grid(grid, z, ev, opts.exec);
        if (sign_changes(z, 0, z.size()) != expected) continue;

        std::vector<std::size_t> brackets;
        for (std::size_t i = 0; i + 1 < z.size(); ++i)
            if (std::signbit(z[i]) != std::signbit(z[i + 1])) brackets.push_back(i);
        out.records.resize(brackets.size());
        for_each_index(
            brackets.size(),
            [&](std::size_t k) {
                const std::size_t i = brackets[k];
                out.records[k] = refine(grid[i], grid[i + 1], z[i], opts.tol, ev);
            },
            opts.exec);
        for (std::size_t k = 0; k < out.records.size(); ++k)
            out.records[k].index = out.base + static_cast<std::int64_t>(k) + 1;
        return out;
    }
    fail(ErrorKind::MissedZero, "scan_zeros: sign changes disagree with N(T) after " +
                                    std::to_string(opts.max_rescans) + " rescans on " + locate_mismatch(grid, z));
}

}  // namespace

double gram_point(int n) {
    require(n >= -1, ErrorKind::Parameter, "gram_point: n must be >= -1");
    // theta(t) ~ (t/2) log(t / 2 pi e) - pi/8 inverts through Lambert W.
    const double x = (8.0 * n + 1.0) / (8.0 * std::numbers::e);
    double t = std::max(2.0 * kPi * std::exp(1.0 + lambert_w0(x)), 7.0);
    const double target = n * kPi;
    for (int i = 0; i < 50; ++i) {
        const auto th = theta(t);
        const double resid = th.theta - target;
        if (std::abs(resid) < 1e-10) return t;
        t = std::max(t - resid / th.theta_prime, 6.5);
    }
    fail(ErrorKind::Numeric, "gram_point: Newton did not converge for n = " + std::to_string(n));
}

ZeroCount count_zeros_nt(double T, const ArgPath& path) {
    require(std::isfinite(T) && T >= 10.0, ErrorKind::Domain, "count_zeros_nt: requires T >= 10");
    ZeroCount c;
    c.raw = theta(T).theta / kPi + 1.0 + s_of_t_path(T, path);
    c.count = std::llround(c.raw);
    require(std::abs(c.raw - static_cast<double>(c.count)) < 1e-3, ErrorKind::Consistency,
            "count_zeros_nt: raw count " + std::to_string(c.raw) + " not near an integer at T = " + std::to_string(T));
    return c;
}

std::vector<ZeroRecord> scan_zeros(double t_lo, double t_hi, const ScanOptions& opts) {
    return scan_impl(t_lo, t_hi, opts).records;
}

ZeroCache build_cache(double t_lo, double t_hi, const ScanOptions& opts) {
    auto res = scan_impl(t_lo, t_hi, opts);
    ZeroCache c;
    c.records = std::move(res.records);
    c.base_count = res.base;
    c.t_min_verified = t_lo < kScanFloor ? 0.0 : t_lo;
    c.t_max_verified = t_hi;
    c.source = CacheSource::Scanned;
    return c;
}

ZeroCache ingest_zero_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::Format, "ingest_zero_table: cannot open " + path.string());
    std::vector<ZeroRecord> recs;
    std::string line;
    long long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(b, e - b + 1);
        std::size_t used = 0;
        double g = 0.0;
        try {
            g = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == tok.size() && std::isfinite(g) && g > 0.0, ErrorKind::Format,
                "ingest_zero_table: line " + std::to_string(lineno) + ": not a positive decimal ordinate");
        require(recs.empty() || g > recs.back().gamma, ErrorKind::Format,
                "ingest_zero_table: line " + std::to_string(lineno) + ": ordinate not strictly increasing");
        ZeroRecord r;
        r.gamma = g;
        // Half a unit in the last printed digit.
        const auto dot = tok.find('.');
        const auto digits = dot == std::string::npos ? 0 : tok.size() - dot - 1;
        r.tol = 0.5 * std::pow(10.0, -static_cast<double>(digits));
        recs.push_back(r);
    }

    ZeroCache c;
    c.source = CacheSource::Ingested;
    if (recs.empty()) return c;

    // Anchor the global index with N(T) just below the first ordinate.
    const double gap = recs.size() > 1 ? recs[1].gamma - recs[0].gamma : 1.0;
    const double anchor = recs[0].gamma - std::min(0.5, 0.5 * gap);
    if (anchor < kScanFloor) {
        c.base_count = 0;
        c.t_min_verified = 0.0;
    } else {
        c.base_count = count_zeros_nt(anchor).count;
        c.t_min_verified = anchor;
    }
    c.t_max_verified = recs.back().gamma;

    const EvalOptions ev{1e-10, EvalMethod::Auto};
    for_each_index(
        recs.size(),
        [&](std::size_t i) {
            auto& r = recs[i];
            r.index = c.base_count + static_cast<std::int64_t>(i) + 1;
            const double h = std::max(kDerivStep, 4.0 * r.tol);
            r.z_prime_abs = std::abs(hardy_z(r.gamma + h, ev) - hardy_z(r.gamma - h, ev)) / (2.0 * h);
            if (i % 100 == 0) {
                const double zv = hardy_z(r.gamma, ev);
                require(std::abs(zv) < 1e-3, ErrorKind::Data,
                        "ingest_zero_table: |Z(gamma)| >= 1e-3 at ordinate " + std::to_string(r.gamma));
            }
        },
        Exec::Parallel);
    c.records = std::move(recs);
    return c;
}

}  // namespace critline

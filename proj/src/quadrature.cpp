#include "critline/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "critline/error.hpp"
#include "critline/summation.hpp"

namespace critline {

namespace {

struct GaussRule {
    std::array<double, kPanelOrder> x{};
    std::array<double, kPanelOrder> w{};
};

// Nodes on [-1, 1] by Newton on the Legendre recurrence.
GaussRule make_rule() {
    GaussRule r;
    constexpr int n = kPanelOrder;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GaussRule& rule() {
    static const GaussRule r = make_rule();
    return r;
}

struct LevelSums {
    std::vector<double> panel;  // per-panel integrals
    double mass = 0.0;
};

LevelSums eval_level(const Integrand& f, const std::vector<double>& edges, Exec exec) {
    const auto& g = rule();
    const std::size_t np = edges.size() - 1;
    std::vector<double> vals(np * kPanelOrder);
    for_each_index(
        vals.size(),
        [&](std::size_t j) {
            const std::size_t p = j / kPanelOrder;
            const std::size_t k = j % kPanelOrder;
            const double half = 0.5 * (edges[p + 1] - edges[p]);
            const double mid = 0.5 * (edges[p + 1] + edges[p]);
            vals[j] = f(mid + half * g.x[k]);
        },
        exec);
    LevelSums out;
    out.panel.resize(np);
    CompensatedSum mass;
    for (std::size_t p = 0; p < np; ++p) {
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        CompensatedSum s;
        CompensatedSum m;
        for (int k = 0; k < kPanelOrder; ++k) {
            const double v = vals[p * kPanelOrder + k];
            require(std::isfinite(v), ErrorKind::Numeric, "integrate: integrand not finite");
            s += g.w[k] * v;
            m += g.w[k] * std::abs(v);
        }
        out.panel[p] = half * s.value();
        mass += half * m.value();
    }
    out.mass = mass.value();
    return out;
}

}  // namespace

void QuadratureSpec::validate() const {
    require(base_step_factor >= 4.0, ErrorKind::Parameter, "quadrature: base_step_factor must be >= 4");
    require(refinement_limit >= 1 && refinement_limit <= 20, ErrorKind::Parameter,
            "quadrature: refinement_limit must lie in [1, 20]");
    require(rel_tol > 0.0 && rel_tol < 1.0, ErrorKind::Parameter, "quadrature: rel_tol must lie in (0, 1)");
    require(max_panel >= 0.0, ErrorKind::Parameter, "quadrature: max_panel must be >= 0");
}

double mean_zero_gap(double t) {
    return 2.0 * std::numbers::pi / std::max(std::log(std::abs(t) / (2.0 * std::numbers::pi)), 1.0);
}

std::vector<double> panel_edges(double a, double b, const QuadratureSpec& spec, int level,
                                std::span<const double> breaks) {
    const double scale = std::ldexp(1.0 / spec.base_step_factor, -level);
    const double cap = spec.max_panel > 0.0 ? std::ldexp(spec.max_panel, -level) : 0.0;
    std::vector<double> e{a};
    auto brk = std::upper_bound(breaks.begin(), breaks.end(), a);
    double t = a;
    while (t < b) {
        double w = mean_zero_gap(t) * scale;
        if (cap > 0.0) w = std::min(w, cap);
        double next = t + w;
        while (brk != breaks.end() && *brk <= t) ++brk;
        if (brk != breaks.end() && *brk < std::min(next, b)) next = *brk;
        if (next >= b || b - next < 1e-9 * w) next = b;
        e.push_back(next);
        t = next;
    }
    return e;
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breaks, std::span<const double> marks) {
    spec.validate();
    require(std::isfinite(a) && std::isfinite(b) && a <= b, ErrorKind::Parameter, "integrate: need a <= b");
    require(std::is_sorted(breaks.begin(), breaks.end()) && std::is_sorted(marks.begin(), marks.end()),
            ErrorKind::Parameter, "integrate: breaks and marks must be sorted");
    for (double m : marks)
        require(m > a && m <= b, ErrorKind::Parameter, "integrate: marks must lie in (a, b]");
    QuadResult res;
    res.at_marks.assign(marks.size(), 0.0);
    if (a == b) return res;

    std::vector<double> all_breaks;
    std::merge(breaks.begin(), breaks.end(), marks.begin(), marks.end(), std::back_inserter(all_breaks));

    double prev = 0.0;
    for (int level = 0; level <= spec.refinement_limit; ++level) {
        const auto edges = panel_edges(a, b, spec, level, all_breaks);
        const auto sums = eval_level(f, edges, spec.exec);
        const double value = compensated_total(sums.panel);
        res.evaluations += sums.panel.size() * kPanelOrder;
        if (level > 0) {
            const double scale = std::max(sums.mass, 1e-300);
            res.rel_change = std::abs(value - prev) / scale;
            if (res.rel_change < spec.rel_tol) {
                res.value = value;
                res.previous = prev;
                res.abs_mass = sums.mass;
                res.level = level;
                res.panels = sums.panel.size();
                CompensatedSum run;
                std::size_t mi = 0;
                for (std::size_t p = 0; p < sums.panel.size() && mi < marks.size(); ++p) {
                    run += sums.panel[p];
                    while (mi < marks.size() && marks[mi] <= edges[p + 1]) res.at_marks[mi++] = run.value();
                }
                return res;
            }
        }
        prev = value;
    }
    fail(ErrorKind::Quadrature, "integrate: no convergence on [" + std::to_string(a) + ", " + std::to_string(b) +
                                    "] after " + std::to_string(spec.refinement_limit) + " refinements");
}

}  // namespace critline

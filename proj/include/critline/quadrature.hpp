#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "critline/kernels.hpp"

namespace critline {

/// Panel subdivision policy for integrals over stretches of the critical line.
/// Level 0 panels are (mean zero gap) / base_step_factor wide; each refinement
/// level halves them. Integration stops once two consecutive levels agree.
struct QuadratureSpec {
    double base_step_factor = 4.0;  // panels per mean zero spacing, >= 4
    int refinement_limit = 6;
    double rel_tol = 1e-3;          // relative change between levels
    double max_panel = 0.0;         // optional cap on panel width (0: none)
    Exec exec = Exec::Parallel;

    void validate() const;
};

/// Gauss-Legendre order used on every panel.
inline constexpr int kPanelOrder = 8;

struct QuadResult {
    double value = 0.0;
    double previous = 0.0;     // value one level coarser
    double rel_change = 0.0;   // |value - previous| / scale
    double abs_mass = 0.0;     // integral of |f|, the convergence scale
    int level = 0;
    std::size_t panels = 0;
    std::size_t evaluations = 0;
    /// Integral from a to each requested mark (same order as the marks).
    std::vector<double> at_marks;
};

using Integrand = std::function<double(double)>;

/// 2 pi / log(t / 2 pi), clamped for small t.
double mean_zero_gap(double t);

/// Panel end points on [a, b] at `level`; every entry of `breaks` inside (a, b)
/// is a panel boundary.
std::vector<double> panel_edges(double a, double b, const QuadratureSpec& spec, int level,
                                std::span<const double> breaks = {});

/// Integral of f over [a, b] with self-convergence control. `breaks` are points
/// where f may jump (sorted); `marks` (sorted, inside (a, b]) request running
/// integrals, which are also panel boundaries. Quadrature error if two
/// consecutive levels never agree within rel_tol.
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breaks = {}, std::span<const double> marks = {});

}  // namespace critline

// Second-order horizontal Monge-Ampere quantities on H^1: the pointwise
// operator det[Hess_H u]* + 12 (Tu)^2, its domain integral by a midpoint rule
// with boundary-layer exclusion, and the slice-image growth ladder that
// separates the subcritical exponent regime quantitatively.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "heisconvex/domains.hpp"
#include "heisconvex/fields.hpp"
#include "heisconvex/point.hpp"

namespace heis {

// det of the symmetrized horizontal Hessian plus 12 (Tu)^2, by composed
// central differences with step h. Requires n == 1.
double s_ma_pointwise(const ScalarField& u, const Point& xi, double h = 1e-3);

struct QuadratureReport {
    double value = 0.0;
    // (h, value) per refinement level, h strictly decreasing.
    std::vector<std::pair<double, double>> refinement_levels;
    double cauchy_gap = 0.0;  // |last - previous| between the two finest levels
};

// Midpoint-rule integral of the operator over dom on a boundary-fitted
// product lattice. The x-axis is graded (x = xlo + Lx * I(xi) with I a
// symmetric incomplete-beta map), so the lattice resolves the integrable
// end-seam singularities of the slab integrand instead of excluding them; a
// boundary layer two lattice steps wide at each x-end is still excluded so
// difference stencils never straddle a seam, the step shrinks proportionally
// to the seam distance inside the graded cells, and a fixed layer of 1e-7 of
// the x-extent at each x-face (entered through a smooth log-ramp) stays
// excluded at every level, because closer to a face the lateral second
// differences of a double-precision field fall below its rounding floor.
// The levels therefore converge to the integral over the retained interior,
// which witnesses finiteness of the operator's mass there. Each (y, t)
// cross-section is integrated exactly up to midpoint error in polar cells
// fitted to the domain boundary (radius per angle by bisection), so no
// lateral layer is lost. Levels halve the lattice step starting from h0
// (h0 = 0 picks 1/16 of the unit lattice coordinate). Deterministic and
// thread-count independent.
QuadratureReport s_ma_integral_experiment(const ScalarField& u, const ConvexDomain& dom,
                                          std::size_t levels = 3, double h0 = 0.0,
                                          double fd_h = 1e-3, int threads = 0);

struct SliceGrowthLevel {
    int k = 0;              // slice base (1/(2k), 0, 0)
    double window_depth = 0.0;  // p1 window reaches down to -window_depth
    double measure = 0.0;       // raster measure of the slice image in the window
    std::size_t points = 0;     // evaluation points on the slice
};

struct SliceGrowthReport {
    double alpha = 0.0;
    double beta = 0.0;
    double cell = 0.0;
    std::vector<SliceGrowthLevel> levels;
    bool monotone = false;      // measures strictly increase with depth
    double growth_ratio = 0.0;  // last measure / first measure
};

// Growth of the normal-map image of the slice through (1/(2k), 0, 0) in
// windows of depth V_k = 4 * 3^(k-1), k = 1..k_max: evaluation points follow
// the image depth uniformly (one ladder point per half-cell of p1-depth,
// found by bisection of alpha*x - alpha*x^(alpha-1) = -w along the slice
// x-axis), with transverse rungs where the image band is thicker than a
// cell, plus low-discrepancy bulk samples. In the subcritical exponent range
// the image is unbounded, so the windowed measure keeps growing with depth;
// the raster floor of one cell row makes the growth linear in the window.
SliceGrowthReport slice_growth_experiment(const ScalarField& u, const ConvexDomain& dom,
                                          double alpha, double beta, int k_max = 6,
                                          double cell = 0.05, std::size_t slice_samples = 48,
                                          std::uint64_t seed = 1, int threads = 0);

}  // namespace heis

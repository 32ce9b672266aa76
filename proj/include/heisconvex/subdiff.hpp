// Horizontal subdifferential queries. Every point zeta of the slice
// dom ∩ H_xi yields the necessary condition a·p <= b on slopes p, with
// a = Pr1(zeta) - Pr1(xi) and b = u(zeta) - u(xi); intersecting many of them
// gives an outer polytope for the subdifferential at xi, and unions of those
// over point families rasterize the normal-mapping image together with its
// pixel-counted (outer-biased) measure. Constraints always range over the
// slice of the ambient domain, also when callers study a sub-region of it.
// Polytope geometry and rasters are 2D, i.e. the n = 1 group.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "heisconvex/domains.hpp"
#include "heisconvex/fields.hpp"
#include "heisconvex/point.hpp"

namespace heis {

// One half-space {p in R^{2n} : a·p <= b}.
struct Halfspace {
    Vec a;
    double b = 0.0;
};

// Finite intersection of half-spaces inside a reference window. The window
// takes part in all polygon geometry (an empty constraint list evaluates to
// the window itself, the vacuous outer bound), while `contains` and
// `normalized_excess` look at the constraints alone.
struct HalfspaceSet {
    std::vector<Halfspace> constraints;
    Box bbox2d;

    // max_i (a_i·p - b_i)/|a_i|; -infinity when there are no constraints.
    double normalized_excess(const Vec& p) const;
    bool contains(const Vec& p, double tol = 0.0) const;

    // Counter-clockwise vertices of the window rectangle clipped by every
    // constraint relaxed to a·p <= b + relax*|a| (Sutherland-Hodgman).
    std::vector<Vec> polygon(double relax = 0.0) const;
    bool empty(double relax = 0.0) const;
    // Closest point of the window-clipped polygon to q; degenerate polygons
    // are retried under a slightly relaxed clip before giving up (returns q).
    Vec closest_point(const Vec& q) const;
    Vec min_norm_point() const;
    // Diameter of the window-clipped polygon (0 when it degenerates).
    double diameter() const;
    // Image of the set under p -> alpha*p + shift, alpha > 0.
    HalfspaceSet affine_image(double alpha, const Vec& shift) const;
};

// Axis-aligned cube {p : |p_i - c_i| <= halfwidth} as a HalfspaceSet.
HalfspaceSet singleton_set(const Vec& c, double halfwidth);

// Uniform 2D grid; cell (i,j) has center (cx(i), cy(j)) and side `cell`.
// cover() snaps the origin so cell centers land on the lattice cell*Z^2,
// which keeps the grids of nested windows aligned with each other.
struct GridSpec2 {
    double x0 = 0.0;
    double y0 = 0.0;
    double cell = 0.05;
    std::size_t nx = 0;
    std::size_t ny = 0;

    double cx(std::size_t i) const { return x0 + (static_cast<double>(i) + 0.5) * cell; }
    double cy(std::size_t j) const { return y0 + (static_cast<double>(j) + 0.5) * cell; }
    std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
    std::size_t cells() const { return nx * ny; }

    static GridSpec2 cover(const Box& window, double cell);
};

// Flag raster of a p-space region. measure.value = #flagged * cell^2 and
// measure.bias = "outer": a cell is flagged when its center satisfies every
// sampled constraint within the half-cell slack cell/2 (normalized by |a|),
// so the flag set covers the sampled image at the grid's resolution.
struct RasterImage {
    GridSpec2 grid;
    std::vector<std::uint8_t> flags;  // row-major: index = j*nx + i
    MeasureEstimate measure;

    std::size_t flagged_count() const;
    // CSV rows "px,py,flag" for every cell, LF line ends, '.' decimal point.
    void to_csv(std::ostream& os) const;
};

enum class SubdiffVerdict { REFUTED, NOT_REFUTED };

// A harvested constraint together with the slice point that produced it.
struct SliceConstraint {
    Halfspace h;
    Point zeta;
};

// Constraints at xi from (a) `slice_samples` low-discrepancy points of the
// slice (prefix-nested, so growing the count only adds constraints) and (b) a
// small ring of points around xi, one per quasi-uniform chart direction at
// the largest dyadically-shrunk radius that stays inside the slice. The ring
// guarantees the directions positively span the chart plane, which pins the
// outer polytope near gradient points even when xi sits close to the slice
// rim and the global samples all lie to one side of it.
std::vector<SliceConstraint> subdiff_constraints(const ScalarField& u, const ConvexDomain& dom,
                                                 const Point& xi, std::size_t slice_samples = 256,
                                                 std::uint64_t seed = 1);

// REFUTED iff some sampled slice point violates u(zeta) >= u(xi) + a·p by
// more than tol (the violating inequality is re-evaluated from the generating
// point before the verdict, so REFUTED certifies p outside the
// subdifferential). NOT_REFUTED is resolution-qualified: it is a statement
// about the sampled constraints only. Throws std::invalid_argument when xi
// lies outside dom.
SubdiffVerdict subdiff_test(const ScalarField& u, const ConvexDomain& dom, const Point& xi,
                            const Vec& p, std::size_t slice_samples = 256, double tol = 1e-9,
                            std::uint64_t seed = 1);

// Bounding box of finite-difference horizontal gradients at `pts`, inflated
// by `inflate` of its half-extent on each side (minimum half-extent 0.5).
Box gradient_window(const ScalarField& u, const std::vector<Point>& pts, double inflate = 0.5);

// Intersection of the sampled half-space constraints at xi; contains the true
// subdifferential, and shrinks monotonically as constraint_samples grows.
// The window defaults to gradient_window over xi and its constraint points.
// Throws std::invalid_argument when xi lies outside dom.
HalfspaceSet subdiff_outer_polytope(const ScalarField& u, const ConvexDomain& dom, const Point& xi,
                                    std::size_t constraint_samples = 256,
                                    const std::optional<Box>& p_window = std::nullopt,
                                    std::uint64_t seed = 1);

// Union over xi in E of the rasterized outer polytopes: cell flagged iff its
// center satisfies all of some xi's constraints within slack cell/2. Points
// of E outside dom are skipped; throws std::invalid_argument when E is empty.
// Deterministic for fixed seed, independent of the thread count.
RasterImage normal_map_raster(const ScalarField& u, const ConvexDomain& dom,
                              const std::vector<Point>& E, const GridSpec2& p_grid,
                              std::size_t slice_samples = 256, std::uint64_t seed = 1,
                              int threads = 0);

// Slicewise measure: max over base points of the raster measure of the image
// of the slice dom ∩ H_base (each slice charted by `slice_E` sampled points
// plus the base itself). Optionally reports the per-base values.
MeasureEstimate slicing_measure(const ScalarField& u, const ConvexDomain& dom,
                                const std::vector<Point>& bases, const GridSpec2& p_grid,
                                std::size_t slice_samples = 256, std::size_t slice_E = 128,
                                std::uint64_t seed = 1, int threads = 0,
                                std::vector<double>* per_base = nullptr);

}  // namespace heis

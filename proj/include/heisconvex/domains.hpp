// Convex domains as membership oracles with bounding boxes, their
// intersections with horizontal planes (slices), and the metric queries built
// on ray casting: boundary points along rays, gauge distance to the boundary,
// per-slice boundary distance, the chain constant D(xi), and the
// slicewise diameter diam_HS.

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "heisconvex/point.hpp"
#include "heisconvex/sampling.hpp"

namespace heis {

struct ConvexDomain {
    std::function<bool(const Point&)> contains;
    Box bbox;  // packed (x..., y..., t); guaranteed to contain the closure
    std::string label;
    std::size_t n = 1;
    // When true, the |t| extremes of bbox are a sampling window for a
    // t-unbounded domain: ray exits through those caps are not boundary.
    bool lateral_boundary_only = false;

    bool contains_packed(const Vec& v) const { return contains(unpack(v)); }
};

// ---- standard constructions -------------------------------------------------

ConvexDomain make_cylinder(double radius, double height, std::size_t n = 1);
ConvexDomain make_gauge_ball(double radius, std::size_t n = 1);
ConvexDomain make_euclidean_ellipsoid(const Vec& semi_axes, std::size_t n = 1);
ConvexDomain make_box(const Box& box, std::size_t n = 1);
// Pushforwards: xi -> g o xi  and  xi -> delta_lambda(xi).
ConvexDomain translate_domain(const ConvexDomain& dom, const Point& g);
ConvexDomain dilate_domain(const ConvexDomain& dom, double lambda);

// ---- slices -----------------------------------------------------------------

struct SliceRegion {
    HPlaneFrame frame;
    ConvexDomain dom;
    Box bbox2d;  // (x..., y...) window containing the slice

    bool contains2d(const Vec& w) const { return dom.contains(frame.from_plane(w)); }
};

// Intersection of dom with the horizontal plane of `base`, charted by Pr1.
// `base` need not lie in dom (the slice may then be empty).
SliceRegion slice_region(const ConvexDomain& dom, const Point& base);

struct RayHit {
    double lambda_star = 0.0;  // boundary parameter along the ray
    Vec boundary;              // origin + lambda_star * dir
};

// First boundary crossing of { origin + s*dir : s > 0 } within a slice.
// Preconditions: contains2d(origin), dir != 0. Bracket by doubling, then
// bisection (60 iterations or relative width 1e-10). Throws
// std::invalid_argument on a bad precondition and std::runtime_error if the
// ray never leaves the region inside its box window.
RayHit ray_boundary(const SliceRegion& slice, const Vec& origin, const Vec& dir);

// lambda^xi of an in-slice point w relative to center: the dilation factor
// with  w - center = lambda * (boundary(w-dir) - center). Zero at the center.
double lambda_of_point(const SliceRegion& slice, const Vec& center, const Vec& w);

// 3D Euclidean-ray boundary crossing in the ambient domain. Returns nullopt
// when the ray exits the bbox window without leaving the domain (possible
// only for lateral_boundary_only domains), or when the exit happens through a
// synthetic t-cap of such a domain.
std::optional<Point> ray_boundary_ambient(const ConvexDomain& dom, const Point& origin,
                                          const Vec& dir_packed);

// Upper estimate of the gauge distance d(xi, boundary of dom): minimum of
// d(xi, hit) over K quasi-uniform Euclidean ray directions (signed axes
// first; prefix-nested, so estimates are monotone non-increasing in K).
// `lin_map`, when given, multiplies each packed direction (matched sampling
// under affine pushforwards). Throws std::invalid_argument if xi is outside.
double dist_h_boundary(const ConvexDomain& dom, const Point& xi, std::size_t K = 64,
                       std::uint64_t seed = 1,
                       const std::function<Vec(const Vec&)>& lin_map = nullptr);

// Boundary sample points seen from xi along K ray directions (synthetic caps
// skipped for lateral_boundary_only domains).
std::vector<Point> boundary_samples(const ConvexDomain& dom, const Point& xi, std::size_t K,
                                    std::uint64_t seed = 1);

// Distance from xi to the boundary of its own slice: for zeta' on H_xi,
// d(xi, zeta') = |Pr1(zeta') - Pr1(xi)|, so this is the minimum over K2
// in-plane ray directions of the Euclidean boundary distance in the chart.
double dist_slice_boundary(const ConvexDomain& dom, const Point& xi, std::size_t K2 = 32,
                           std::uint64_t seed = 1);

struct DistSliceD {
    double dist_slice;  // d(xi, boundary of (dom ∩ H_xi))
    double dist_h;      // d(xi, boundary of dom), the ray estimate
    double D;           // min over sampled zeta in closed B(xi, dist_h/3) of d_slice(zeta)
};

// D(xi) = min over zeta in the closed gauge ball B(xi, d(xi,bd)/3) of
// d(zeta, boundary of (dom ∩ H_zeta)); zeta are M rejection samples from the
// ball's bounding box plus xi itself, so D <= dist_slice always holds.
DistSliceD dist_slice_boundary_and_D(const ConvexDomain& dom, const Point& xi, std::size_t M = 48,
                                     std::size_t K2 = 32, std::uint64_t seed = 1,
                                     std::size_t K_dist = 64);

// Slicewise diameter: max over base points of the d_H-pairwise diameter of
// boundary samples of dom ∩ H_base (K ray directions per slice). Converges
// from below; empty or point slices contribute 0.
double diam_hs(const ConvexDomain& dom, const std::vector<Point>& base_points, std::size_t K = 48);

// d_H-pairwise diameter of one slice (boundary samples along K directions
// from Pr1(base)); 0 if base is outside dom.
double slice_diameter(const ConvexDomain& dom, const Point& base, std::size_t K = 48);

// A measured set quantity together with how it was produced: `resolution` is
// the grid cell side (or sampling scale) behind the estimate and `bias` is
// one of "outer", "inner", "unbiased-sample".
struct MeasureEstimate {
    double value = 0.0;
    double resolution = 0.0;
    std::string bias = "outer";
};

// ---- samplers ---------------------------------------------------------------

// `count` Halton rejection samples from dom (throws std::runtime_error if the
// acceptance rate collapses: domain too thin for its box).
std::vector<Point> sample_in_domain(const ConvexDomain& dom, std::size_t count,
                                    std::uint64_t seed = 1);

// 2D Halton rejection samples from a slice region.
std::vector<Vec> sample_in_slice(const SliceRegion& slice, std::size_t count,
                                 std::uint64_t seed = 1);

// Quasi-uniform points of the closed gauge ball B(center, r) (rejection from
// the box |z_i| <= r, |t| <= r^2, then left-translation by center).
std::vector<Point> sample_gauge_ball(const Point& center, double r, std::size_t count,
                                     std::uint64_t seed = 1);

}  // namespace heis

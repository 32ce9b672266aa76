// Slicing cones: the H-convex cone over the slice of a convex base domain.
// With vertex value c_v and boundary value c_b (c_v < c_b <= 0), the cone at
// xi is V(xi) = c_v * (1 - (1 - c_b/c_v) * lambda(xi_perp)) where xi_perp is
// the Euclidean orthogonal projection of xi onto the vertex's horizontal
// plane and lambda is the radial dilation factor of xi_perp in the base
// slice. V is evaluated wherever the slice ray from the vertex exits the
// region window (std::runtime_error otherwise).
#pragma once

#include <cstdint>

#include "heisconvex/domains.hpp"
#include "heisconvex/fields.hpp"
#include "heisconvex/point.hpp"

namespace heis {

struct SlicingCone {
    Point vertex;
    double c_v = -1.0;
    double c_b = 0.0;
    ConvexDomain base;
    SliceRegion slice;  // base ∩ H_vertex, charted by Pr1
    ScalarField as_field;
};

// Builds the cone. Throws std::invalid_argument when xi0 lies outside base,
// when the value ordering c_v < c_b <= 0 fails, or the slice degenerates.
SlicingCone make_slicing_cone(const ConvexDomain& base, const Point& xi0, double c_v, double c_b);

// Sampled verification of the two cone properties at the vertex:
// (i)  every p of a grid filling B(0, 0.95*r0), with
//      r0 = (c_b - c_v)/diam(base ∩ H_vertex), survives the slope test
//      (NOT_REFUTED), matching the guaranteed subdifferential ball;
// (ii) every sampled p strictly inside the outer polytope supports V
//      strictly at sampled slice-boundary points, with positive margin
//      min over pairs of  V(xi) - V(vertex) - p·(Pr1 xi - Pr1 vertex).
struct ConePropertyReport {
    double r0 = 0.0;
    double base_slice_diameter = 0.0;
    bool ball_ok = false;
    std::size_t ball_points = 0;
    double min_support_margin = 0.0;
    std::size_t support_pairs = 0;
    bool support_ok = false;
};

ConePropertyReport cone_property_check(const SlicingCone& cone, std::size_t samples = 64,
                                       std::uint64_t seed = 1);

}  // namespace heis

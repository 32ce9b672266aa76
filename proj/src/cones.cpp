#include "heisconvex/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "heisconvex/subdiff.hpp"

namespace heis {

SlicingCone make_slicing_cone(const ConvexDomain& base, const Point& xi0, double c_v, double c_b) {
    if (!base.contains(xi0)) throw std::invalid_argument("make_slicing_cone: vertex outside base");
    if (!(c_v < c_b && c_b <= 0))
        throw std::invalid_argument("make_slicing_cone: need c_v < c_b <= 0");
    SlicingCone cone;
    cone.vertex = xi0;
    cone.c_v = c_v;
    cone.c_b = c_b;
    cone.base = base;
    cone.slice = slice_region(base, xi0);
    Vec center = pr1(xi0);
    if (!cone.slice.contains2d(center))
        throw std::invalid_argument("make_slicing_cone: degenerate slice at the vertex");
    SliceRegion slice = cone.slice;
    cone.as_field.eval = [slice, center, c_v, c_b](const Point& q) {
        Vec w = pr1(slice.frame.project(q));
        return c_v + (c_b - c_v) * lambda_of_point(slice, center, w);
    };
    cone.as_field.label = "slicing_cone";
    return cone;
}

ConePropertyReport cone_property_check(const SlicingCone& cone, std::size_t samples,
                                       std::uint64_t seed) {
    ConePropertyReport rep;
    const Point& xi0 = cone.vertex;
    Vec center = pr1(xi0);
    rep.base_slice_diameter = slice_diameter(cone.base, xi0, std::max<std::size_t>(samples, 48));
    if (!(rep.base_slice_diameter > 0)) return rep;
    rep.r0 = (cone.c_b - cone.c_v) / rep.base_slice_diameter;

    std::size_t cons_samples = std::max<std::size_t>(samples, 128);
    std::vector<SliceConstraint> cons =
        subdiff_constraints(cone.as_field, cone.base, xi0, cons_samples, seed);
    auto refuted = [&](const Vec& p, double tol) {
        for (const SliceConstraint& c : cons)
            if (dot(c.h.a, p) - c.h.b > tol) return true;
        return false;
    };

    // (i) grid filling B(0, 0.95*r0): no sampled constraint may refute.
    double spacing = rep.r0 / 8.0;
    bool ball_ok = true;
    for (int i = -8; i <= 8; ++i)
        for (int j = -8; j <= 8; ++j) {
            Vec p = {i * spacing, j * spacing};
            if (std::sqrt(dot(p, p)) > 0.95 * rep.r0) continue;
            ++rep.ball_points;
            if (refuted(p, 1e-7)) ball_ok = false;
        }
    rep.ball_ok = ball_ok && rep.ball_points > 0;

    // (ii) strict support: p strictly inside the outer polytope versus
    // sampled slice-boundary points.
    HalfspaceSet poly_set;
    poly_set.constraints.reserve(cons.size());
    for (const SliceConstraint& c : cons) poly_set.constraints.push_back(c.h);
    poly_set.bbox2d = gradient_window(cone.as_field, {xi0});
    std::vector<Vec> poly = poly_set.polygon();
    std::vector<Vec> cands;
    if (!poly.empty()) {
        Vec m(2, 0.0);
        for (const Vec& v : poly) m = m + (1.0 / static_cast<double>(poly.size())) * v;
        cands.push_back(m);
        for (const Vec& v : poly)
            for (double s : {0.5, 0.8}) cands.push_back(m + s * (v - m));
        double eta = 0.02 * poly_set.diameter();
        std::erase_if(cands, [&](const Vec& p) { return poly_set.normalized_excess(p) > -eta; });
        if (cands.empty()) cands.push_back(m);
    } else {
        cands.push_back(Vec(2, 0.0));
    }

    double v0 = cone.as_field(xi0);
    rep.min_support_margin = std::numeric_limits<double>::infinity();
    for (const Vec& d : sphere_directions(2, std::max<std::size_t>(samples, 16), seed + 5)) {
        RayHit hit = ray_boundary(cone.slice, center, d);
        Point bd = cone.slice.frame.from_plane(hit.boundary);
        double vb = cone.as_field(bd);
        Vec a = hit.boundary - center;
        for (const Vec& p : cands) {
            double margin = vb - v0 - dot(p, a);
            rep.min_support_margin = std::min(rep.min_support_margin, margin);
            ++rep.support_pairs;
        }
    }
    rep.support_ok = rep.support_pairs > 0 && rep.min_support_margin > 0;
    return rep;
}

}  // namespace heis

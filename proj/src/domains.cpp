#include "heisconvex/domains.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

ConvexDomain make_cylinder(double radius, double height, std::size_t n) {
    if (radius <= 0 || height <= 0) throw std::invalid_argument("make_cylinder: nonpositive size");
    ConvexDomain d;
    d.n = n;
    d.contains = [radius, height](const Point& p) {
        return dot(p.x, p.x) + dot(p.y, p.y) < radius * radius && std::abs(p.t) < height;
    };
    d.bbox.lo.assign(2 * n, -radius);
    d.bbox.hi.assign(2 * n, radius);
    d.bbox.lo.push_back(-height);
    d.bbox.hi.push_back(height);
    d.label = "cylinder";
    return d;
}

ConvexDomain make_gauge_ball(double radius, std::size_t n) {
    if (radius <= 0) throw std::invalid_argument("make_gauge_ball: nonpositive radius");
    ConvexDomain d;
    d.n = n;
    d.contains = [radius](const Point& p) { return gauge_norm(p) < radius; };
    d.bbox.lo.assign(2 * n, -radius);
    d.bbox.hi.assign(2 * n, radius);
    d.bbox.lo.push_back(-radius * radius);
    d.bbox.hi.push_back(radius * radius);
    d.label = "gauge_ball";
    return d;
}

ConvexDomain make_euclidean_ellipsoid(const Vec& semi_axes, std::size_t n) {
    if (semi_axes.size() != 2 * n + 1)
        throw std::invalid_argument("make_euclidean_ellipsoid: need 2n+1 semi-axes");
    for (double a : semi_axes)
        if (a <= 0) throw std::invalid_argument("make_euclidean_ellipsoid: nonpositive axis");
    ConvexDomain d;
    d.n = n;
    d.contains = [semi_axes](const Point& p) {
        Vec v = pack(p);
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) s += (v[i] / semi_axes[i]) * (v[i] / semi_axes[i]);
        return s < 1.0;
    };
    d.bbox.lo.resize(2 * n + 1);
    d.bbox.hi.resize(2 * n + 1);
    for (std::size_t i = 0; i < 2 * n + 1; ++i) {
        d.bbox.lo[i] = -semi_axes[i];
        d.bbox.hi[i] = semi_axes[i];
    }
    d.label = "ellipsoid";
    return d;
}

ConvexDomain make_box(const Box& box, std::size_t n) {
    if (box.lo.size() != 2 * n + 1) throw std::invalid_argument("make_box: bad box dimension");
    ConvexDomain d;
    d.n = n;
    d.contains = [box](const Point& p) {
        Vec v = pack(p);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] <= box.lo[i] || v[i] >= box.hi[i]) return false;
        return true;
    };
    d.bbox = box;
    d.label = "box";
    return d;
}

ConvexDomain translate_domain(const ConvexDomain& dom, const Point& g) {
    ConvexDomain d = dom;
    Point ginv = group_inv(g);
    auto inner = dom.contains;
    d.contains = [inner, ginv](const Point& p) { return inner(group_mul(ginv, p)); };
    // xi -> g o xi is affine on packed coordinates; box of the images of the corners.
    std::size_t dim = dom.bbox.dim();
    Vec lo(dim, 1e300), hi(dim, -1e300);
    std::size_t corners = std::size_t(1) << dim;
    for (std::size_t c = 0; c < corners; ++c) {
        Vec v(dim);
        for (std::size_t i = 0; i < dim; ++i)
            v[i] = (c >> i) & 1 ? dom.bbox.hi[i] : dom.bbox.lo[i];
        Vec w = pack(group_mul(g, unpack(v)));
        for (std::size_t i = 0; i < dim; ++i) {
            lo[i] = std::min(lo[i], w[i]);
            hi[i] = std::max(hi[i], w[i]);
        }
    }
    d.bbox = Box{lo, hi};
    d.label = dom.label + "+g";
    return d;
}

ConvexDomain dilate_domain(const ConvexDomain& dom, double lambda) {
    if (lambda <= 0) throw std::invalid_argument("dilate_domain: nonpositive lambda");
    ConvexDomain d = dom;
    auto inner = dom.contains;
    double inv = 1.0 / lambda;
    d.contains = [inner, inv](const Point& p) { return inner(dilate(p, inv)); };
    std::size_t dim = dom.bbox.dim();
    d.bbox = dom.bbox;
    for (std::size_t i = 0; i + 1 < dim; ++i) {
        d.bbox.lo[i] *= lambda;
        d.bbox.hi[i] *= lambda;
    }
    d.bbox.lo[dim - 1] *= lambda * lambda;
    d.bbox.hi[dim - 1] *= lambda * lambda;
    d.label = dom.label + "*l";
    return d;
}

SliceRegion slice_region(const ConvexDomain& dom, const Point& base) {
    if (base.n() != dom.n) throw std::invalid_argument("slice_region: dimension mismatch");
    SliceRegion s{slice_frame(base), dom, Box{}};
    s.bbox2d.lo.assign(dom.bbox.lo.begin(), dom.bbox.lo.begin() + 2 * dom.n);
    s.bbox2d.hi.assign(dom.bbox.hi.begin(), dom.bbox.hi.begin() + 2 * dom.n);
    return s;
}

RayHit ray_boundary(const SliceRegion& slice, const Vec& origin, const Vec& dir) {
    double dn = norm2(dir);
    if (dn <= 0.0) throw std::invalid_argument("ray_boundary: zero direction");
    if (!slice.contains2d(origin)) throw std::invalid_argument("ray_boundary: origin not in slice");

    Vec unit = (1.0 / dn) * dir;
    auto at = [&](double s) { return origin + s * unit; };
    // Bracket: double until outside; the box window bounds how far we may go.
    double span = slice.bbox2d.diameter() + 1.0;
    double hi = 1e-3;
    while (slice.contains2d(at(hi))) {
        hi *= 2.0;
        if (hi > 4.0 * span) throw std::runtime_error("ray_boundary: ray never exits the region window");
    }
    double lo = hi > 1e-3 ? hi / 2.0 : 0.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (slice.contains2d(at(mid)))
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-10 * std::max(1.0, hi)) break;
    }
    double s = 0.5 * (lo + hi);
    return RayHit{s, at(s)};
}

double lambda_of_point(const SliceRegion& slice, const Vec& center, const Vec& w) {
    Vec d = w - center;
    double dn = norm2(d);
    if (dn == 0.0) return 0.0;
    RayHit hit = ray_boundary(slice, center, d);
    return dn / hit.lambda_star;
}

std::optional<Point> ray_boundary_ambient(const ConvexDomain& dom, const Point& origin,
                                          const Vec& dir_packed) {
    double dn = norm2(dir_packed);
    if (dn <= 0.0) throw std::invalid_argument("ray_boundary_ambient: zero direction");
    if (!dom.contains(origin)) throw std::invalid_argument("ray_boundary_ambient: origin outside");
    Vec o = pack(origin);
    Vec unit = (1.0 / dn) * dir_packed;
    auto at = [&](double s) { return o + s * unit; };
    double span = dom.bbox.diameter() + 1.0;
    double hi = 1e-3;
    while (dom.contains_packed(at(hi))) {
        hi *= 2.0;
        if (hi > 4.0 * span) return std::nullopt;  // never exits the window
    }
    double lo = hi > 1e-3 ? hi / 2.0 : 0.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (dom.contains_packed(at(mid)))
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-10 * std::max(1.0, hi)) break;
    }
    Vec b = at(0.5 * (lo + hi));
    if (dom.lateral_boundary_only) {
        std::size_t tdim = dom.bbox.dim() - 1;
        double cap = 0.995 * std::max(std::abs(dom.bbox.lo[tdim]), std::abs(dom.bbox.hi[tdim]));
        if (std::abs(b[tdim]) >= cap) return std::nullopt;  // synthetic cap, not boundary
    }
    return unpack(b);
}

double dist_h_boundary(const ConvexDomain& dom, const Point& xi, std::size_t K, std::uint64_t seed,
                       const std::function<Vec(const Vec&)>& lin_map) {
    if (!dom.contains(xi)) throw std::invalid_argument("dist_h_boundary: point outside domain");
    std::size_t dim = 2 * dom.n + 1;
    auto dirs = sphere_directions(dim, K, seed);
    double best = 1e300;
    bool any = false;
    for (auto& d0 : dirs) {
        Vec d = lin_map ? lin_map(d0) : d0;
        auto hit = ray_boundary_ambient(dom, xi, d);
        if (!hit) continue;
        any = true;
        best = std::min(best, kc_distance(xi, *hit));
    }
    if (!any) throw std::runtime_error("dist_h_boundary: no ray reached the boundary");
    return best;
}

std::vector<Point> boundary_samples(const ConvexDomain& dom, const Point& xi, std::size_t K,
                                    std::uint64_t seed) {
    if (!dom.contains(xi)) throw std::invalid_argument("boundary_samples: point outside domain");
    std::size_t dim = 2 * dom.n + 1;
    auto dirs = sphere_directions(dim, K, seed);
    std::vector<Point> out;
    out.reserve(K);
    for (auto& d : dirs) {
        auto hit = ray_boundary_ambient(dom, xi, d);
        if (hit) out.push_back(*hit);
    }
    return out;
}

double dist_slice_boundary(const ConvexDomain& dom, const Point& xi, std::size_t K2,
                           std::uint64_t seed) {
    if (!dom.contains(xi)) throw std::invalid_argument("dist_slice_boundary: point outside domain");
    SliceRegion s = slice_region(dom, xi);
    Vec origin = pr1(xi);
    auto dirs = sphere_directions(2 * dom.n, K2, seed);
    double best = 1e300;
    for (auto& d : dirs) {
        RayHit hit = ray_boundary(s, origin, d);
        best = std::min(best, hit.lambda_star);
    }
    return best;
}

DistSliceD dist_slice_boundary_and_D(const ConvexDomain& dom, const Point& xi, std::size_t M,
                                     std::size_t K2, std::uint64_t seed, std::size_t K_dist) {
    DistSliceD r{};
    r.dist_slice = dist_slice_boundary(dom, xi, K2, seed);
    r.dist_h = dist_h_boundary(dom, xi, K_dist, seed);
    double radius = r.dist_h / 3.0;
    auto zetas = sample_gauge_ball(xi, radius, M, seed);
    double best = r.dist_slice;  // zeta = xi is always admissible
    for (auto& z : zetas) {
        if (!dom.contains(z)) continue;  // numerical safety; the ball is interior by construction
        best = std::min(best, dist_slice_boundary(dom, z, K2, seed));
    }
    r.D = best;
    return r;
}

double slice_diameter(const ConvexDomain& dom, const Point& base, std::size_t K) {
    if (!dom.contains(base)) return 0.0;
    SliceRegion s = slice_region(dom, base);
    Vec origin = pr1(base);
    auto dirs = sphere_directions(2 * dom.n, K, 7);
    std::vector<Point> pts;
    pts.reserve(K);
    for (auto& d : dirs) {
        RayHit hit = ray_boundary(s, origin, d);
        pts.push_back(s.frame.from_plane(hit.boundary));
    }
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, kc_distance(pts[i], pts[j]));
    return best;
}

double diam_hs(const ConvexDomain& dom, const std::vector<Point>& base_points, std::size_t K) {
    double best = 0.0;
    for (auto& b : base_points) best = std::max(best, slice_diameter(dom, b, K));
    return best;
}

std::vector<Point> sample_in_domain(const ConvexDomain& dom, std::size_t count,
                                    std::uint64_t seed) {
    std::vector<Point> out;
    out.reserve(count);
    std::size_t dim = 2 * dom.n + 1;
    std::uint64_t i = 0, limit = 2000 * (count + 16);
    while (out.size() < count) {
        if (i >= limit)
            throw std::runtime_error("sample_in_domain: acceptance rate too low for " + dom.label);
        Vec u = halton_point(i++, dim, seed);
        Vec v = dom.bbox.at(u);
        if (dom.contains_packed(v)) out.push_back(unpack(v));
    }
    return out;
}

std::vector<Vec> sample_in_slice(const SliceRegion& slice, std::size_t count, std::uint64_t seed) {
    std::vector<Vec> out;
    out.reserve(count);
    std::size_t dim = slice.bbox2d.dim();
    std::uint64_t i = 0, limit = 2000 * (count + 16);
    while (out.size() < count) {
        if (i >= limit) break;  // thin slices may yield fewer points; caller decides
        Vec u = halton_point(i++, dim, seed);
        Vec w = slice.bbox2d.at(u);
        if (slice.contains2d(w)) out.push_back(w);
    }
    return out;
}

std::vector<Point> sample_gauge_ball(const Point& center, double r, std::size_t count,
                                     std::uint64_t seed) {
    std::vector<Point> out;
    out.reserve(count);
    if (r <= 0.0) return out;
    std::size_t nn = center.n(), dim = 2 * nn + 1;
    std::uint64_t i = 0, limit = 400 * (count + 16);
    while (out.size() < count && i < limit) {
        Vec u = halton_point(i++, dim, seed);
        Point w;
        w.x.resize(nn);
        w.y.resize(nn);
        for (std::size_t j = 0; j < nn; ++j) {
            w.x[j] = r * (2.0 * u[j] - 1.0);
            w.y[j] = r * (2.0 * u[nn + j] - 1.0);
        }
        w.t = r * r * (2.0 * u[2 * nn] - 1.0);
        if (gauge_norm(w) <= r) out.push_back(group_mul(center, w));
    }
    return out;
}

}  // namespace heis

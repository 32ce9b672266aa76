#include "heisconvex/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "heisconvex/parallel.hpp"

namespace heis {

namespace {

double vnorm(const Vec& v) { return std::sqrt(dot(v, v)); }

}  // namespace

double HalfspaceSet::normalized_excess(const Vec& p) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Halfspace& h : constraints) {
        double na = vnorm(h.a);
        if (na < 1e-300) continue;
        worst = std::max(worst, (dot(h.a, p) - h.b) / na);
    }
    return worst;
}

bool HalfspaceSet::contains(const Vec& p, double tol) const { return normalized_excess(p) <= tol; }

std::vector<Vec> HalfspaceSet::polygon(double relax) const {
    if (bbox2d.dim() != 2)
        throw std::invalid_argument("HalfspaceSet::polygon: window is not 2D");
    std::vector<Vec> verts = {{bbox2d.lo[0], bbox2d.lo[1]},
                              {bbox2d.hi[0], bbox2d.lo[1]},
                              {bbox2d.hi[0], bbox2d.hi[1]},
                              {bbox2d.lo[0], bbox2d.hi[1]}};
    std::vector<Vec> next;
    for (const Halfspace& h : constraints) {
        double na = vnorm(h.a);
        if (na < 1e-300) continue;
        double bound = h.b + relax * na;
        next.clear();
        std::size_t m = verts.size();
        for (std::size_t k = 0; k < m; ++k) {
            const Vec& cur = verts[k];
            const Vec& nxt = verts[(k + 1) % m];
            double dc = dot(h.a, cur) - bound;
            double dn = dot(h.a, nxt) - bound;
            if (dc <= 0) next.push_back(cur);
            if ((dc <= 0) != (dn <= 0)) {
                double s = dc / (dc - dn);
                next.push_back(cur + s * (nxt - cur));
            }
        }
        verts = next;
        if (verts.size() < 3) return {};
    }
    return verts;
}

bool HalfspaceSet::empty(double relax) const { return polygon(relax).size() < 3; }

Vec HalfspaceSet::closest_point(const Vec& q) const {
    static const double ladder[] = {0.0, 1e-12, 1e-9, 1e-6, 1e-4};
    for (double relax : ladder) {
        std::vector<Vec> poly = polygon(relax);
        if (poly.size() < 3) continue;
        bool inside = true;
        std::size_t m = poly.size();
        for (std::size_t k = 0; k < m && inside; ++k) {
            const Vec& a = poly[k];
            const Vec& b = poly[(k + 1) % m];
            double cross = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]);
            if (cross < -1e-12) inside = false;
        }
        if (inside) return q;
        double best = std::numeric_limits<double>::infinity();
        Vec arg = poly[0];
        for (std::size_t k = 0; k < m; ++k) {
            const Vec& a = poly[k];
            const Vec& b = poly[(k + 1) % m];
            Vec d = b - a;
            double dd = dot(d, d);
            double s = dd > 0 ? std::clamp(dot(q - a, d) / dd, 0.0, 1.0) : 0.0;
            Vec c = a + s * d;
            double dist2 = dot(q - c, q - c);
            if (dist2 < best) {
                best = dist2;
                arg = c;
            }
        }
        return arg;
    }
    return q;
}

Vec HalfspaceSet::min_norm_point() const { return closest_point(Vec(bbox2d.dim(), 0.0)); }

double HalfspaceSet::diameter() const {
    static const double ladder[] = {0.0, 1e-12, 1e-9};
    for (double relax : ladder) {
        std::vector<Vec> poly = polygon(relax);
        if (poly.size() < 2) continue;
        double best = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::size_t j = i + 1; j < poly.size(); ++j)
                best = std::max(best, dot(poly[i] - poly[j], poly[i] - poly[j]));
        return std::sqrt(best);
    }
    return 0.0;
}

HalfspaceSet HalfspaceSet::affine_image(double alpha, const Vec& shift) const {
    if (!(alpha > 0)) throw std::invalid_argument("HalfspaceSet::affine_image: alpha <= 0");
    if (shift.size() != bbox2d.dim())
        throw std::invalid_argument("HalfspaceSet::affine_image: shift dimension");
    HalfspaceSet out;
    out.constraints.reserve(constraints.size());
    for (const Halfspace& h : constraints)
        out.constraints.push_back({h.a, alpha * h.b + dot(h.a, shift)});
    out.bbox2d.lo.resize(shift.size());
    out.bbox2d.hi.resize(shift.size());
    for (std::size_t i = 0; i < shift.size(); ++i) {
        out.bbox2d.lo[i] = alpha * bbox2d.lo[i] + shift[i];
        out.bbox2d.hi[i] = alpha * bbox2d.hi[i] + shift[i];
    }
    return out;
}

HalfspaceSet singleton_set(const Vec& c, double halfwidth) {
    if (!(halfwidth >= 0)) throw std::invalid_argument("singleton_set: negative halfwidth");
    HalfspaceSet out;
    std::size_t d = c.size();
    out.bbox2d.lo.resize(d);
    out.bbox2d.hi.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        Vec plus(d, 0.0), minus(d, 0.0);
        plus[i] = 1.0;
        minus[i] = -1.0;
        out.constraints.push_back({plus, c[i] + halfwidth});
        out.constraints.push_back({minus, -c[i] + halfwidth});
        out.bbox2d.lo[i] = c[i] - std::max(halfwidth, 1e-9);
        out.bbox2d.hi[i] = c[i] + std::max(halfwidth, 1e-9);
    }
    return out;
}

GridSpec2 GridSpec2::cover(const Box& window, double cell) {
    if (window.dim() != 2) throw std::invalid_argument("GridSpec2::cover: window is not 2D");
    if (!(cell > 0)) throw std::invalid_argument("GridSpec2::cover: nonpositive cell");
    GridSpec2 g;
    g.cell = cell;
    g.x0 = (std::floor(window.lo[0] / cell + 0.5) - 0.5) * cell;
    g.y0 = (std::floor(window.lo[1] / cell + 0.5) - 0.5) * cell;
    g.nx = static_cast<std::size_t>(
        std::max(1.0, std::ceil((window.hi[0] - g.x0) / cell - 1e-9)));
    g.ny = static_cast<std::size_t>(
        std::max(1.0, std::ceil((window.hi[1] - g.y0) / cell - 1e-9)));
    return g;
}

std::size_t RasterImage::flagged_count() const {
    std::size_t c = 0;
    for (std::uint8_t f : flags) c += (f != 0);
    return c;
}

void RasterImage::to_csv(std::ostream& os) const {
    os << "px,py,flag\n";
    char line[80];
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%u\n", grid.cx(i), grid.cy(j),
                          flags[grid.index(i, j)] ? 1u : 0u);
            os << line;
        }
}

std::vector<SliceConstraint> subdiff_constraints(const ScalarField& u, const ConvexDomain& dom,
                                                 const Point& xi, std::size_t slice_samples,
                                                 std::uint64_t seed) {
    SliceRegion slice = slice_region(dom, xi);
    Vec origin = pr1(xi);
    double u_xi = u(xi);
    std::vector<SliceConstraint> out;
    out.reserve(slice_samples + 10);
    auto add = [&](const Vec& w) {
        Vec a = w - origin;
        if (dot(a, a) < 1e-28) return;
        Point zeta = slice.frame.from_plane(w);
        out.push_back({{a, u(zeta) - u_xi}, zeta});
    };
    for (const Vec& w : sample_in_slice(slice, slice_samples, seed)) add(w);
    // Local ring: one in-slice point per direction, at the largest dyadic
    // shrink of a slice-sized radius; the directions positively span.
    std::size_t n = dom.n;
    double r0 = std::max(slice.bbox2d.diameter() / 8.0, 1e-12);
    for (const Vec& d : sphere_directions(2 * n, std::max<std::size_t>(8, 4 * n + 1), 3)) {
        for (int m = 0; m <= 26; ++m) {
            Vec w = origin + (r0 * std::ldexp(1.0, -m)) * d;
            if (slice.contains2d(w)) {
                add(w);
                break;
            }
        }
    }
    return out;
}

SubdiffVerdict subdiff_test(const ScalarField& u, const ConvexDomain& dom, const Point& xi,
                            const Vec& p, std::size_t slice_samples, double tol,
                            std::uint64_t seed) {
    if (!dom.contains(xi)) throw std::invalid_argument("subdiff_test: xi outside domain");
    double u_xi = u(xi);
    Vec w0 = pr1(xi);
    for (const SliceConstraint& c : subdiff_constraints(u, dom, xi, slice_samples, seed)) {
        if (dot(c.h.a, p) - c.h.b > tol) {
            // Re-derive the violated inequality from the generating point.
            double lhs = u_xi + dot(pr1(c.zeta) - w0, p);
            if (lhs - u(c.zeta) > tol) return SubdiffVerdict::REFUTED;
        }
    }
    return SubdiffVerdict::NOT_REFUTED;
}

Box gradient_window(const ScalarField& u, const std::vector<Point>& pts, double inflate) {
    if (pts.empty()) throw std::invalid_argument("gradient_window: no points");
    std::size_t d = 2 * pts.front().n();
    Box box;
    box.lo.assign(d, std::numeric_limits<double>::infinity());
    box.hi.assign(d, -std::numeric_limits<double>::infinity());
    for (const Point& p : pts) {
        Vec g = horizontal_gradient(u, p);
        for (std::size_t i = 0; i < d; ++i) {
            box.lo[i] = std::min(box.lo[i], g[i]);
            box.hi[i] = std::max(box.hi[i], g[i]);
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        double half = std::max(0.5, (1 + inflate) * 0.5 * (box.hi[i] - box.lo[i]));
        double mid = 0.5 * (box.lo[i] + box.hi[i]);
        box.lo[i] = mid - half;
        box.hi[i] = mid + half;
    }
    return box;
}

HalfspaceSet subdiff_outer_polytope(const ScalarField& u, const ConvexDomain& dom, const Point& xi,
                                    std::size_t constraint_samples,
                                    const std::optional<Box>& p_window, std::uint64_t seed) {
    if (!dom.contains(xi)) throw std::invalid_argument("subdiff_outer_polytope: xi outside domain");
    std::vector<SliceConstraint> cons = subdiff_constraints(u, dom, xi, constraint_samples, seed);
    HalfspaceSet set;
    set.constraints.reserve(cons.size());
    for (const SliceConstraint& c : cons) set.constraints.push_back(c.h);
    if (p_window) {
        set.bbox2d = *p_window;
    } else {
        std::vector<Point> pts = {xi};
        for (std::size_t k = 0; k < cons.size() && k < 16; ++k) pts.push_back(cons[k].zeta);
        set.bbox2d = gradient_window(u, pts);
    }
    return set;
}

RasterImage normal_map_raster(const ScalarField& u, const ConvexDomain& dom,
                              const std::vector<Point>& E, const GridSpec2& p_grid,
                              std::size_t slice_samples, std::uint64_t seed, int threads) {
    if (E.empty()) throw std::invalid_argument("normal_map_raster: empty point family");
    if (dom.n != 1) throw std::invalid_argument("normal_map_raster: raster queries need n = 1");
    RasterImage img;
    img.grid = p_grid;
    img.flags.assign(p_grid.cells(), 0);
    double slack = p_grid.cell / 2.0;
    Box window;
    window.lo = {p_grid.x0, p_grid.y0};
    window.hi = {p_grid.x0 + p_grid.cell * static_cast<double>(p_grid.nx),
                 p_grid.y0 + p_grid.cell * static_cast<double>(p_grid.ny)};

    std::vector<std::vector<std::size_t>> slot(E.size());
    parallel_for(E.size(), threads, [&](std::size_t e) {
        const Point& xi = E[e];
        if (!dom.contains(xi)) return;
        std::vector<SliceConstraint> cons = subdiff_constraints(u, dom, xi, slice_samples, seed);
        if (cons.size() < 2) return;  // under-constrained: contribute nothing
        HalfspaceSet set;
        set.bbox2d = window;
        set.constraints.reserve(cons.size());
        for (const SliceConstraint& c : cons) set.constraints.push_back(c.h);
        std::vector<Vec> poly = set.polygon(slack);
        if (poly.size() < 3) return;
        double px0 = poly[0][0], px1 = poly[0][0], py0 = poly[0][1], py1 = poly[0][1];
        for (const Vec& v : poly) {
            px0 = std::min(px0, v[0]);
            px1 = std::max(px1, v[0]);
            py0 = std::min(py0, v[1]);
            py1 = std::max(py1, v[1]);
        }
        auto clampi = [](double v, std::size_t count) {
            if (v < 0) return static_cast<std::size_t>(0);
            if (v >= static_cast<double>(count)) return count;  // exclusive end
            return static_cast<std::size_t>(v);
        };
        std::size_t i0 = clampi(std::floor((px0 - p_grid.x0) / p_grid.cell - 1.0), p_grid.nx);
        std::size_t i1 = clampi(std::ceil((px1 - p_grid.x0) / p_grid.cell + 1.0), p_grid.nx);
        std::size_t j0 = clampi(std::floor((py0 - p_grid.y0) / p_grid.cell - 1.0), p_grid.ny);
        std::size_t j1 = clampi(std::ceil((py1 - p_grid.y0) / p_grid.cell + 1.0), p_grid.ny);
        Vec c(2);
        for (std::size_t j = j0; j < j1; ++j) {
            c[1] = p_grid.cy(j);
            for (std::size_t i = i0; i < i1; ++i) {
                c[0] = p_grid.cx(i);
                if (set.normalized_excess(c) <= slack) slot[e].push_back(p_grid.index(i, j));
            }
        }
    });
    for (const std::vector<std::size_t>& cells : slot)
        for (std::size_t idx : cells) img.flags[idx] = 1;
    img.measure.value =
        static_cast<double>(img.flagged_count()) * p_grid.cell * p_grid.cell;
    img.measure.resolution = p_grid.cell;
    img.measure.bias = "outer";
    return img;
}

MeasureEstimate slicing_measure(const ScalarField& u, const ConvexDomain& dom,
                                const std::vector<Point>& bases, const GridSpec2& p_grid,
                                std::size_t slice_samples, std::size_t slice_E,
                                std::uint64_t seed, int threads, std::vector<double>* per_base) {
    MeasureEstimate best;
    best.value = 0.0;
    best.resolution = p_grid.cell;
    best.bias = "outer";
    if (per_base) per_base->assign(bases.size(), 0.0);
    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
        const Point& base = bases[bi];
        if (!dom.contains(base)) continue;
        SliceRegion slice = slice_region(dom, base);
        std::vector<Point> E = {base};
        for (const Vec& w : sample_in_slice(slice, slice_E, seed + 77 + bi)) {
            Point zeta = slice.frame.from_plane(w);
            if (dom.contains(zeta)) E.push_back(zeta);
        }
        RasterImage img = normal_map_raster(u, dom, E, p_grid, slice_samples, seed, threads);
        if (per_base) (*per_base)[bi] = img.measure.value;
        best.value = std::max(best.value, img.measure.value);
    }
    return best;
}

}  // namespace heis

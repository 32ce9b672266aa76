#include "heisconvex/principles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <stdexcept>

#include "json.hpp"

namespace heis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

std::string csv_join(std::initializer_list<double> vals) {
    std::string row;
    bool first = true;
    for (double v : vals) {
        if (!first) row += ',';
        row += fmt(v);
        first = false;
    }
    return row;
}

Box hull2(const Box& a, const Box& b) {
    Box h = a;
    for (std::size_t i = 0; i < h.dim(); ++i) {
        h.lo[i] = std::min(h.lo[i], b.lo[i]);
        h.hi[i] = std::max(h.hi[i], b.hi[i]);
    }
    return h;
}

// Inclusive candidate cell range of grid covering [w_lo, w_hi] along x (axis 0) or y.
void cell_range(const GridSpec2& grid, bool along_x, double w_lo, double w_hi, std::size_t& i_lo,
                std::size_t& i_hi) {
    const double o = along_x ? grid.x0 : grid.y0;
    const std::size_t count = along_x ? grid.nx : grid.ny;
    long lo = static_cast<long>(std::floor((w_lo - o) / grid.cell)) - 1;
    long hi = static_cast<long>(std::floor((w_hi - o) / grid.cell)) + 1;
    lo = std::max(lo, 0L);
    hi = std::min(hi, static_cast<long>(count) - 1);
    if (hi < lo) {
        i_lo = 1;
        i_hi = 0;  // empty range
        return;
    }
    i_lo = static_cast<std::size_t>(lo);
    i_hi = static_cast<std::size_t>(hi);
}

HypothesisProbe make_probe(std::string name, bool passed, double value, std::string note = {}) {
    HypothesisProbe p;
    p.name = std::move(name);
    p.passed = passed;
    p.value = value;
    p.note = std::move(note);
    return p;
}

ConvexitySamples probe_convexity_samples(std::uint64_t seed) {
    ConvexitySamples s;
    s.base_points = 64;
    s.slice_points = 16;
    s.lambdas = {0.25, 0.5, 0.75};
    s.seed = seed;
    return s;
}

}  // namespace

std::string PrincipleReport::to_json_string(int indent) const {
    nlohmann::json j;
    j["name"] = name;
    j["verdict"] = verdict;
    j["statistic"] = statistic;
    j["resolution"] = resolution;
    j["probes"] = nlohmann::json::array();
    for (const auto& p : hypothesis_probes)
        j["probes"].push_back({{"name", p.name}, {"passed", p.passed}, {"value", p.value},
                               {"note", p.note}});
    j["witnesses"] = nlohmann::json::array();
    for (const auto& w : witnesses)
        j["witnesses"].push_back({{"kind", w.kind}, {"value", w.value}, {"data", w.data}});
    return j.dump(indent);
}

PrincipleReport comparison_inclusion_check(const ScalarField& u, const ScalarField& v,
                                           const ConvexDomain& dom, const ConvexDomain& dom0,
                                           const GridSettings& grids,
                                           const std::vector<Point>& extra_points) {
    PrincipleReport rep;
    rep.name = "comparison-inclusion";
    rep.resolution = grids.cell;
    rep.csv_header = "p1,p2,v_excess,u_min_excess";

    std::vector<Point> E = sample_in_domain(dom0, std::max<std::size_t>(grids.base_grid, 8),
                                            grids.seed);
    for (const Point& p : extra_points)
        if (dom0.contains(p)) E.push_back(p);

    bool inside = true;
    for (const Point& p : E)
        if (!dom.contains(p)) inside = false;
    rep.hypothesis_probes.push_back(
        make_probe("dom0-samples-inside-dom", inside, static_cast<double>(E.size())));

    const auto cu = check_convexity(u, dom, ConvexityMode::H, probe_convexity_samples(grids.seed));
    rep.hypothesis_probes.push_back(make_probe("u-h-convex", cu.pass, cu.worst_gap));
    const auto cv = check_convexity(v, dom, ConvexityMode::H, probe_convexity_samples(grids.seed));
    rep.hypothesis_probes.push_back(make_probe("v-h-convex", cv.pass, cv.worst_gap));

    double min_gap = kInf;
    double scale = 0.0;
    for (const Point& p : E) {
        min_gap = std::min(min_gap, v(p) - u(p));
        scale = std::max({scale, std::abs(u(p)), std::abs(v(p))});
    }
    rep.hypothesis_probes.push_back(make_probe("u-below-v-inside", min_gap > -1e-12, min_gap));

    const auto bd = boundary_samples(dom0, E.front(), 128, grids.seed);
    double max_bd_gap = 0.0;
    for (const Point& p : bd) max_bd_gap = std::max(max_bd_gap, std::abs(v(p) - u(p)));
    rep.hypothesis_probes.push_back(make_probe("u-equals-v-on-boundary",
                                               max_bd_gap <= 1e-6 * (1.0 + scale), max_bd_gap));

    // Shared p-grid over the joint gradient window.
    const Box window = hull2(gradient_window(u, E), gradient_window(v, E));
    const GridSpec2 grid = GridSpec2::cover(window, grids.cell);
    const double slack = grids.cell / 2.0;

    const RasterImage outer_u =
        normal_map_raster(u, dom, E, grid, grids.slice_samples, grids.seed, grids.threads);

    // Two witness routes. A: cells strictly inside some sampled v-polytope
    // (depth >= slack), which needs a fat subdifferential. B: the horizontal
    // gradient of v at a sample point -- for an H-convex v this is itself a
    // subgradient wherever v is smooth, so it is an exact image point even
    // when the subdifferential is a singleton. Route B is only used when the
    // convexity probe for v passed, and only when v's own sampled
    // constraints do not refute the gradient.
    std::vector<long> inner_from(grid.cells(), -1);
    struct GradCand {
        Vec p;
        std::size_t from;
    };
    std::vector<GradCand> grad_cands;
    std::vector<std::uint8_t> grad_seen(grid.cells(), 0);
    for (std::size_t k = 0; k < E.size(); ++k) {
        const auto cons = subdiff_constraints(v, dom, E[k], grids.slice_samples, grids.seed);
        if (cons.size() < 3) continue;
        std::vector<Halfspace> hs;
        hs.reserve(cons.size());
        for (const auto& c : cons) hs.push_back(c.h);
        HalfspaceSet set{std::move(hs), window};
        if (cv.pass && dom.n == 1) {
            const Vec g = horizontal_gradient(v, E[k]);
            if (window.contains(g, 0.0) && set.normalized_excess(g) <= slack) {
                const double fi = std::floor((g[0] - grid.x0) / grid.cell);
                const double fj = std::floor((g[1] - grid.y0) / grid.cell);
                if (fi >= 0.0 && fj >= 0.0 && fi < static_cast<double>(grid.nx) &&
                    fj < static_cast<double>(grid.ny)) {
                    const std::size_t idx = grid.index(static_cast<std::size_t>(fi),
                                                       static_cast<std::size_t>(fj));
                    if (!grad_seen[idx]) {
                        grad_seen[idx] = 1;
                        if (!outer_u.flags[idx]) grad_cands.push_back({g, k});
                    }
                }
            }
        }
        const auto poly = set.polygon(-slack);
        if (poly.size() < 3) continue;
        double bx0 = kInf, bx1 = -kInf, by0 = kInf, by1 = -kInf;
        for (const Vec& q : poly) {
            bx0 = std::min(bx0, q[0]);
            bx1 = std::max(bx1, q[0]);
            by0 = std::min(by0, q[1]);
            by1 = std::max(by1, q[1]);
        }
        std::size_t i0, i1, j0, j1;
        cell_range(grid, true, bx0, bx1, i0, i1);
        cell_range(grid, false, by0, by1, j0, j1);
        for (std::size_t j = j0; j <= j1 && j1 >= j0; ++j)
            for (std::size_t i = i0; i <= i1 && i1 >= i0; ++i) {
                const std::size_t idx = grid.index(i, j);
                if (inner_from[idx] >= 0) continue;
                if (set.normalized_excess({grid.cx(i), grid.cy(j)}) <= -slack)
                    inner_from[idx] = static_cast<long>(k);
            }
    }

    struct Cand {
        Vec p;
        std::size_t from;
        bool at_point;  // route B: exact gradient point, else cell center
    };
    std::size_t inner_cells = 0;
    std::vector<Cand> candidates;
    for (std::size_t idx = 0; idx < grid.cells(); ++idx) {
        if (inner_from[idx] < 0) continue;
        ++inner_cells;
        if (!outer_u.flags[idx]) {
            const std::size_t i = idx % grid.nx;
            const std::size_t j = idx / grid.nx;
            candidates.push_back(
                {{grid.cx(i), grid.cy(j)}, static_cast<std::size_t>(inner_from[idx]), false});
        }
    }
    for (const auto& gc : grad_cands) candidates.push_back({gc.p, gc.from, true});

    // Re-validate candidates at 10x constraint density before reporting. The
    // u-side sets are plane-indexed and candidate-independent, so they are
    // built lazily and reused across candidates.
    const std::size_t ss10 = grids.slice_samples * 10;
    std::vector<std::unique_ptr<HalfspaceSet>> u_sets(E.size());
    const auto u_set_at = [&](std::size_t k) -> const HalfspaceSet& {
        if (!u_sets[k]) {
            const auto cons_u = subdiff_constraints(u, dom, E[k], ss10, grids.seed);
            std::vector<Halfspace> hu;
            hu.reserve(cons_u.size());
            for (const auto& c : cons_u) hu.push_back(c.h);
            u_sets[k] = std::make_unique<HalfspaceSet>(HalfspaceSet{std::move(hu), window});
        }
        return *u_sets[k];
    };
    std::size_t confirmed = 0;
    for (const Cand& cand : candidates) {
        if (confirmed >= grids.max_witnesses) break;
        const Vec& p = cand.p;
        const auto cons_v = subdiff_constraints(v, dom, E[cand.from], ss10, grids.seed);
        std::vector<Halfspace> hv;
        for (const auto& c : cons_v) hv.push_back(c.h);
        const HalfspaceSet sv{std::move(hv), window};
        const double v_excess = sv.normalized_excess(p);
        // Route A needs strict depth; route B only needs "not refuted".
        if (v_excess > (cand.at_point ? slack : -slack)) continue;
        double u_min_excess = kInf;
        for (std::size_t k = 0; k < E.size(); ++k) {
            u_min_excess = std::min(u_min_excess, u_set_at(k).normalized_excess(p));
            if (u_min_excess <= slack) break;
        }
        if (u_min_excess <= slack) continue;  // some u-polytope still reaches the point
        ++confirmed;
        Witness w;
        w.kind = cand.at_point ? "image-point" : "image-cell";
        w.data = p;
        w.value = u_min_excess;
        rep.witnesses.push_back(w);
        rep.csv_rows.push_back(csv_join({p[0], p[1], v_excess, u_min_excess}));
    }

    rep.statistic = static_cast<double>(confirmed);
    rep.verdict = confirmed > 0 ? "violated" : "consistent";
    rep.hypothesis_probes.push_back(make_probe(
        "v-image-cells", true, static_cast<double>(inner_cells), "strict inner cells over E"));
    rep.hypothesis_probes.push_back(make_probe("v-gradient-candidates", true,
                                               static_cast<double>(grad_cands.size()),
                                               "unflagged exact image points"));
    return rep;
}

PrincipleReport boundary_min_check(const ScalarField& u, const ScalarField& v,
                                   const ConvexDomain& dom, const GridSettings& grids) {
    PrincipleReport rep;
    rep.name = "boundary-minimum";
    rep.resolution = grids.cell;
    rep.csv_header = "probe,passed,value";

    const std::size_t n_int = std::max<std::size_t>(8 * grids.base_grid, 1024);
    const auto S = sample_in_domain(dom, n_int, grids.seed);

    // Measure-domination hypothesis on axis boxes and gauge balls at 3 scales.
    const double d = dom.bbox.diameter();
    const std::vector<double> scales = {d / 8.0, d / 16.0, d / 32.0};
    std::vector<Point> centers(S.begin(), S.begin() + std::min<std::size_t>(3, S.size()));

    std::vector<Point> wpts(S.begin(), S.begin() + std::min<std::size_t>(32, S.size()));
    const Box window = hull2(gradient_window(u, wpts), gradient_window(v, wpts));
    const GridSpec2 grid = GridSpec2::cover(window, grids.cell);
    const std::size_t ss = std::max<std::size_t>(64, grids.slice_samples / 2);

    bool hypothesis_all = true;
    for (std::size_t ci = 0; ci < centers.size(); ++ci) {
        const Vec pc = pack(centers[ci]);
        for (double s : scales) {
            for (int family = 0; family < 2; ++family) {
                std::vector<Point> Es;
                for (const Point& p : S) {
                    if (family == 0) {
                        const Vec pp = pack(p);
                        bool in = true;
                        for (std::size_t i = 0; i < pp.size(); ++i)
                            if (std::abs(pp[i] - pc[i]) > s) in = false;
                        if (in) Es.push_back(p);
                    } else if (kc_distance(p, centers[ci]) <= s) {
                        Es.push_back(p);
                    }
                }
                const std::string label = std::string(family == 0 ? "box" : "ball") + "-scale-" +
                                          fmt(s) + "-center-" + std::to_string(ci);
                if (Es.size() < 8) {
                    rep.hypothesis_probes.push_back(make_probe(
                        "measure-" + label, true, static_cast<double>(Es.size()),
                        "skipped: too few samples"));
                    continue;
                }
                if (Es.size() > 64) Es.resize(64);
                const double mu =
                    normal_map_raster(u, dom, Es, grid, ss, grids.seed, grids.threads)
                        .measure.value;
                const double mv =
                    normal_map_raster(v, dom, Es, grid, ss, grids.seed, grids.threads)
                        .measure.value;
                const double allow = std::max(0.05 * mu, 2.0 * grids.cell * grids.cell);
                const bool ok = mv <= mu + allow;
                if (!ok) hypothesis_all = false;
                rep.hypothesis_probes.push_back(make_probe("measure-" + label, ok, mv - mu));
                rep.csv_rows.push_back("measure-" + label + "," + (ok ? "1" : "0") + "," +
                                       fmt(mv - mu));
            }
        }
    }

    // Interior vs boundary extrema of v - u (and the per-field max principle).
    double min_int = kInf, max_u_int = -kInf, max_v_int = -kInf;
    Point argmin = S.front();
    for (const Point& p : S) {
        const double g = v(p) - u(p);
        if (g < min_int) {
            min_int = g;
            argmin = p;
        }
        max_u_int = std::max(max_u_int, u(p));
        max_v_int = std::max(max_v_int, v(p));
    }
    const std::size_t K = std::max<std::size_t>(256, grids.slice_samples);
    const auto bd = boundary_samples(dom, S.front(), K, grids.seed);
    double min_bd = kInf, max_u_bd = -kInf, max_v_bd = -kInf, min_u_bd = kInf;
    for (const Point& p : bd) {
        min_bd = std::min(min_bd, v(p) - u(p));
        max_u_bd = std::max(max_u_bd, u(p));
        min_u_bd = std::min(min_u_bd, u(p));
        max_v_bd = std::max(max_v_bd, v(p));
    }
    const double spread = std::max(1e-12, max_u_bd - min_u_bd);
    rep.hypothesis_probes.push_back(make_probe("u-max-on-boundary",
                                               max_u_int <= max_u_bd + 0.02 * spread + 1e-9,
                                               max_u_int - max_u_bd));
    rep.hypothesis_probes.push_back(make_probe("v-max-on-boundary",
                                               max_v_int <= max_v_bd + 0.02 * spread + 1e-9,
                                               max_v_int - max_v_bd));

    rep.statistic = min_int - min_bd;
    const double tol_c = 1e-9 * (1.0 + std::abs(min_bd));
    if (hypothesis_all && min_int < min_bd - tol_c) {
        // Re-validate against a denser boundary sweep before declaring it.
        const auto bd10 = boundary_samples(dom, S.front(), 10 * K, grids.seed);
        double min_bd10 = min_bd;
        for (const Point& p : bd10) min_bd10 = std::min(min_bd10, v(p) - u(p));
        const double gm = v(argmin) - u(argmin);
        if (gm < min_bd10 - tol_c) {
            rep.verdict = "violated";
            Witness w;
            w.kind = "interior-point";
            w.data = pack(argmin);
            w.value = gm - min_bd10;
            rep.witnesses.push_back(w);
        }
    }
    rep.csv_rows.push_back("interior-min,1," + fmt(min_int));
    rep.csv_rows.push_back("boundary-min,1," + fmt(min_bd));
    return rep;
}

PrincipleReport aleksandrov_ratio(const ScalarField& u, const ConvexDomain& dom,
                                  const std::vector<Point>& xi_grid, AleksandrovMode mode,
                                  const GridSettings& grids, double dist_exponent,
                                  std::vector<AleksandrovRow>* rows) {
    if (dom.n != 1)
        throw std::invalid_argument("aleksandrov_ratio: raster path requires n == 1");
    if (xi_grid.empty()) throw std::invalid_argument("aleksandrov_ratio: empty xi grid");

    PrincipleReport rep;
    rep.name = mode == AleksandrovMode::Full ? "aleksandrov-ratio" : "aleksandrov-ratio-per-plane";
    rep.resolution = grids.cell;
    rep.csv_header = "x,y,t,abs_u,dist,diam,image_measure,ratio";

    std::vector<Point> E = xi_grid;
    for (const Point& p : sample_in_domain(dom, grids.base_grid, grids.seed)) E.push_back(p);

    double global_diam = 0.0, global_measure = 0.0;
    if (mode == AleksandrovMode::Full) {
        global_diam = diam_hs(dom, E, 48);
        const GridSpec2 grid = GridSpec2::cover(gradient_window(u, E), grids.cell);
        global_measure =
            normal_map_raster(u, dom, E, grid, grids.slice_samples, grids.seed, grids.threads)
                .measure.value;
    }

    double best = 0.0;
    std::size_t best_i = 0;
    bool denom_ok = true;
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        const Point& xi = xi_grid[i];
        if (!dom.contains(xi)) continue;
        AleksandrovRow row;
        row.xi = xi;
        row.abs_u = std::abs(u(xi));
        if (mode == AleksandrovMode::Full) {
            row.dist = dist_h_boundary(dom, xi, 64, grids.seed);
            row.diam = global_diam;
            row.image_measure = global_measure;
        } else {
            row.dist = dist_slice_boundary(dom, xi, 32, grids.seed);
            row.diam = slice_diameter(dom, xi, 48);
            std::vector<Point> ew = {xi};
            const auto slice = slice_region(dom, xi);
            for (const Vec& w : sample_in_slice(slice, 16, grids.seed + 11))
                ew.push_back(slice.frame.from_plane(w));
            const GridSpec2 grid = GridSpec2::cover(gradient_window(u, ew), grids.cell);
            row.image_measure =
                slicing_measure(u, dom, {xi}, grid, grids.slice_samples,
                                std::max<std::size_t>(32, grids.base_grid / 4),
                                grids.seed + i, grids.threads)
                    .value;
        }
        const double num = row.abs_u * row.abs_u;  // |u|^{2n}, n = 1
        const double den =
            std::pow(row.dist, dist_exponent) * row.diam * row.image_measure;  // diam^{2n-1}
        if (num <= 1e-300) {
            row.ratio = 0.0;
        } else if (den <= 0.0) {
            row.ratio = kInf;
            denom_ok = false;
        } else {
            row.ratio = num / den;
        }
        if (row.ratio > best) {
            best = row.ratio;
            best_i = i;
        }
        rep.csv_rows.push_back(csv_join({xi.x[0], xi.y[0], xi.t, row.abs_u, row.dist, row.diam,
                                         row.image_measure, row.ratio}));
        if (rows) rows->push_back(row);
    }

    rep.hypothesis_probes.push_back(make_probe("denominators-positive", denom_ok, 0.0));
    rep.statistic = best;
    if (best > 0.0) {
        Witness w;
        w.kind = "max-ratio-point";
        w.data = pack(xi_grid[best_i]);
        w.value = best;
        rep.witnesses.push_back(w);
    }
    return rep;
}

PrincipleReport geometric_ratio(const ConvexDomain& dom, const std::vector<Point>& xi_grid,
                                const GridSettings& grids, std::vector<GeometricRow>* rows) {
    if (xi_grid.empty()) throw std::invalid_argument("geometric_ratio: empty xi grid");
    PrincipleReport rep;
    rep.name = "slice-vs-boundary-distance";
    rep.resolution = 0.0;
    rep.csv_header = "x_norm,y_norm,t,dist_slice,dist_h,D,ratio";

    double best = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        const Point& xi = xi_grid[i];
        if (!dom.contains(xi)) continue;
        const DistSliceD r = dist_slice_boundary_and_D(dom, xi, 48, 32, grids.seed, 64);
        GeometricRow row;
        row.xi = xi;
        row.dist_slice = r.dist_slice;
        row.dist_h = r.dist_h;
        row.D = r.D;
        row.ratio = r.dist_h > 0.0 ? r.D / r.dist_h : 0.0;
        if (row.ratio > best) {
            best = row.ratio;
            best_i = i;
        }
        rep.csv_rows.push_back(csv_join({norm2(xi.x), norm2(xi.y), xi.t, row.dist_slice,
                                         row.dist_h, row.D, row.ratio}));
        if (rows) rows->push_back(row);
    }
    rep.statistic = best;
    Witness w;
    w.kind = "max-ratio-point";
    w.data = pack(xi_grid[best_i]);
    w.value = best;
    rep.witnesses.push_back(w);
    return rep;
}

PrincipleReport scaling_check(const ScalarField& u, const ConvexDomain& dom, double lambda,
                              const GridSettings& grids) {
    if (!(lambda > 0.0)) throw std::invalid_argument("scaling_check: need lambda > 0");
    PrincipleReport rep;
    rep.name = "dilation-covariance";
    rep.resolution = grids.cell;
    rep.csv_header = "identity,reference,scaled,deviation";

    const std::size_t nb = std::max<std::size_t>(16, grids.base_grid / 4);
    const auto bases = sample_in_domain(dom, nb, grids.seed);
    const ConvexDomain dom_l = dilate_domain(dom, lambda);
    const ScalarField u_l = dilate_field(u, lambda);
    std::vector<Point> bases_l;
    bases_l.reserve(bases.size());
    for (const Point& p : bases) bases_l.push_back(dilate(p, lambda));

    // (a) slicewise diameter scales by lambda.
    const double d1 = diam_hs(dom, bases, 48);
    const double d2 = diam_hs(dom_l, bases_l, 48);
    const double dev_a = d1 > 0.0 ? std::abs(d2 / (lambda * d1) - 1.0) : 0.0;
    rep.hypothesis_probes.push_back(make_probe("diameter-scaling", dev_a <= 0.02, dev_a));
    rep.csv_rows.push_back("diam," + fmt(lambda * d1) + "," + fmt(d2) + "," + fmt(dev_a));

    // (b) boundary gauge distance scales by lambda under matched ray directions.
    const std::size_t n = dom.n;
    const auto lin = [lambda, n](const Vec& dir) {
        Vec d = dir;
        for (std::size_t i = 0; i < 2 * n; ++i) d[i] *= lambda;
        d[2 * n] *= lambda * lambda;
        return d;
    };
    double dev_b = 0.0;
    const std::size_t nd = std::min<std::size_t>(8, bases.size());
    for (std::size_t i = 0; i < nd; ++i) {
        const double r1 = dist_h_boundary(dom, bases[i], 64, grids.seed);
        const double r2 = dist_h_boundary(dom_l, bases_l[i], 64, grids.seed, lin);
        if (r1 > 0.0) dev_b = std::max(dev_b, std::abs(r2 / (lambda * r1) - 1.0));
    }
    rep.hypothesis_probes.push_back(make_probe("distance-scaling", dev_b <= 0.02, dev_b));
    rep.csv_rows.push_back("dist,1," + fmt(1.0 + dev_b) + "," + fmt(dev_b));

    // (c) normal-map raster measure: lambda^{2n} * m(u_l over dilated data) = m(u),
    // on the exactly corresponding grid (cells map to cells under p -> p/lambda).
    double dev_c = 0.0;
    if (n == 1) {
        const Box w = gradient_window(u, bases);
        const GridSpec2 grid = GridSpec2::cover(w, grids.cell);
        GridSpec2 grid_l;
        grid_l.cell = grid.cell / lambda;
        grid_l.x0 = grid.x0 / lambda;
        grid_l.y0 = grid.y0 / lambda;
        grid_l.nx = grid.nx;
        grid_l.ny = grid.ny;
        const double m1 =
            normal_map_raster(u, dom, bases, grid, grids.slice_samples, grids.seed, grids.threads)
                .measure.value;
        const double m2 = normal_map_raster(u_l, dom_l, bases_l, grid_l, grids.slice_samples,
                                            grids.seed, grids.threads)
                              .measure.value;
        if (m1 > 0.0) dev_c = std::abs(m2 * lambda * lambda / m1 - 1.0);
        rep.hypothesis_probes.push_back(make_probe("measure-scaling", dev_c <= 0.02, dev_c));
        rep.csv_rows.push_back("measure," + fmt(m1) + "," + fmt(m2 * lambda * lambda) + "," +
                               fmt(dev_c));
    }

    // Subdifferential verdict agreement at matched points/vectors.
    std::size_t agree = 0, total = 0;
    for (std::size_t i = 0; i < nd; ++i) {
        const Vec g = horizontal_gradient(u, bases[i]);
        Vec g_l = g;
        for (double& c : g_l) c /= lambda;
        const auto v1 =
            subdiff_test(u, dom, bases[i], g, grids.slice_samples, 1e-9, grids.seed);
        const auto v2 =
            subdiff_test(u_l, dom_l, bases_l[i], g_l, grids.slice_samples, 1e-9, grids.seed);
        ++total;
        if (v1 == v2) ++agree;
    }
    rep.hypothesis_probes.push_back(make_probe(
        "subdiff-verdict-match", agree == total,
        total ? static_cast<double>(agree) / static_cast<double>(total) : 1.0));

    rep.statistic = std::max({dev_a, dev_b, dev_c});
    rep.verdict = (rep.statistic <= 0.02 && agree == total) ? "consistent" : "violated";
    if (rep.verdict == "violated") {
        Witness w;
        w.kind = "identity-deviation";
        w.data = {lambda};
        w.value = rep.statistic;
        rep.witnesses.push_back(w);
    }
    return rep;
}

}  // namespace heis

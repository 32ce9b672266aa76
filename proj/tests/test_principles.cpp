#include <cmath>

#include "doctest.h"
#include "heisconvex/domains.hpp"
#include "heisconvex/fields.hpp"
#include "heisconvex/gallery.hpp"
#include "heisconvex/principles.hpp"
#include "heisconvex/subdiff.hpp"

using namespace heis;

TEST_SUITE("principles") {

TEST_CASE("image inclusion holds for the ordered cone pair") {
    const auto entry = make_gallery_entry("cone-pair");
    GridSettings grids;
    grids.base_grid = 96;
    grids.slice_samples = 192;
    const auto rep = comparison_inclusion_check(*entry.u, *entry.v, entry.domain,
                                                *entry.sub_domain, grids, entry.special_points);
    CHECK(rep.verdict == "consistent");
    CHECK(rep.witnesses.empty());
    CHECK(rep.statistic == 0.0);
    for (const auto& probe : rep.hypothesis_probes)
        if (probe.name == "u-below-v-inside" || probe.name == "u-equals-v-on-boundary")
            CHECK(probe.passed);
}

TEST_CASE("image inclusion is violated for the dimpled pair") {
    const auto entry = make_gallery_entry("cylinder-bump");
    GridSettings grids;
    grids.base_grid = 96;
    grids.slice_samples = 192;
    const auto rep = comparison_inclusion_check(*entry.u, *entry.v, entry.domain, entry.domain,
                                                grids, {});
    CHECK(rep.verdict == "violated");
    CHECK(!rep.witnesses.empty());
    CHECK(rep.witnesses.size() <= grids.max_witnesses);
    // The dimpled field itself fails the convexity probe.
    bool u_convex_probe = true;
    for (const auto& probe : rep.hypothesis_probes)
        if (probe.name == "u-h-convex") u_convex_probe = probe.passed;
    CHECK(!u_convex_probe);
    CHECK(!rep.csv_rows.empty());
}

TEST_CASE("witness cap is honored and adjustable") {
    const auto entry = make_gallery_entry("cylinder-bump");
    GridSettings grids;
    grids.base_grid = 64;
    grids.slice_samples = 128;
    grids.max_witnesses = 2;
    const auto rep = comparison_inclusion_check(*entry.u, *entry.v, entry.domain, entry.domain,
                                                grids, {});
    CHECK(rep.verdict == "violated");
    CHECK(rep.witnesses.size() == 2);
}

TEST_CASE("boundary minimum principle on the ordered cone pair") {
    const auto entry = make_gallery_entry("cone-pair");
    GridSettings grids;
    grids.base_grid = 96;
    const auto rep = boundary_min_check(*entry.u, *entry.v, entry.domain, grids);
    CHECK(rep.verdict == "consistent");
    // interior min of (v - u) stays above the sampled boundary min
    CHECK(rep.statistic >= -1e-9);
}

TEST_CASE("pointwise ratio statistic vanishes for the zero field") {
    ScalarField zero;
    zero.eval = [](const Point&) { return 0.0; };
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    GridSettings grids;
    grids.base_grid = 32;
    const auto pts = sample_in_domain(cyl, 16, 2);
    const auto rep = aleksandrov_ratio(zero, cyl, pts, AleksandrovMode::Full, grids);
    CHECK(rep.statistic == 0.0);
    CHECK(rep.verdict == "consistent");
}

TEST_CASE("pointwise ratio statistic is finite and positive on the cone") {
    const auto entry = make_gallery_entry("koranyi-cone");
    GridSettings grids;
    grids.base_grid = 24;
    grids.slice_samples = 128;
    std::vector<Point> pts = entry.special_points;
    for (const Point& p : sample_in_domain(entry.domain, 24, 5)) pts.push_back(p);
    std::vector<AleksandrovRow> rows;
    const auto rep =
        aleksandrov_ratio(*entry.u, entry.domain, pts, AleksandrovMode::Full, grids, 1.0, &rows);
    CHECK(std::isfinite(rep.statistic));
    CHECK(rep.statistic > 0.0);
    REQUIRE(rows.size() == pts.size());
    double mx = 0.0;
    for (const auto& r : rows) mx = std::max(mx, r.ratio);
    CHECK(rep.statistic == doctest::Approx(mx));
}

TEST_CASE("slice-to-boundary distance ratio stays under the chain constant") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    GridSettings grids;
    const auto pts = sample_in_domain(cyl, 64, 5);
    std::vector<GeometricRow> rows;
    const auto rep = geometric_ratio(cyl, pts, grids, &rows);
    CHECK(rep.verdict == "consistent");
    CHECK(rep.statistic <= 1.9026 * 1.05);
    CHECK(rep.statistic > 0.0);
    REQUIRE(rows.size() == pts.size());
    for (const auto& r : rows) {
        CHECK(r.D <= r.dist_slice + 1e-9);
        CHECK(r.ratio == doctest::Approx(r.D / r.dist_h));
    }
}

TEST_CASE("dilation covariance of measured quantities") {
    const auto entry = make_gallery_entry("koranyi-cone");
    GridSettings grids;
    grids.base_grid = 48;
    grids.slice_samples = 128;
    for (double lam : {0.5, 2.0}) {
        const auto rep = scaling_check(*entry.u, entry.domain, lam, grids);
        CHECK(rep.verdict == "consistent");
        CHECK(rep.statistic <= 0.02);
    }
}

TEST_CASE("normal-map raster is left-translation invariant under matched data") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    ScalarField u;
    u.eval = [](const Point& p) { return p.t; };
    const Point g{0.2, -0.1, 0.3};
    const ConvexDomain dom2 = translate_domain(cyl, g);
    const ScalarField u2 = translate_field(u, g);

    const auto E = sample_in_domain(cyl, 256, 1);
    std::vector<Point> E2;
    for (const Point& p : E) E2.push_back(group_mul(g, p));

    const GridSpec2 grid = GridSpec2::cover(gradient_window(u, E), 0.1);
    const RasterImage a = normal_map_raster(u, cyl, E, grid, 128, 1);
    const RasterImage b = normal_map_raster(u2, dom2, E2, grid, 128, 1);
    CHECK(std::abs(a.measure.value - b.measure.value) <= 0.01 * (a.measure.value + 1e-12));
}

}  // TEST_SUITE

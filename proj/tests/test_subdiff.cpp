#include <cmath>
#include <sstream>

#include "doctest.h"
#include "heisconvex/domains.hpp"
#include "heisconvex/fields.hpp"
#include "heisconvex/subdiff.hpp"

using namespace heis;

namespace {

ScalarField field_t() {
    ScalarField f;
    f.eval = [](const Point& p) { return p.t; };
    return f;
}

}  // namespace

TEST_SUITE("subdiff") {

TEST_CASE("half-space set point queries") {
    const HalfspaceSet s = singleton_set({0.5, -0.25}, 0.1);
    CHECK(s.contains({0.5, -0.25}));
    CHECK(s.contains({0.59, -0.25}, 1e-12));
    CHECK(!s.contains({0.75, -0.25}));
    CHECK(s.normalized_excess({0.5, -0.25}) <= -0.1 + 1e-12);
    CHECK(s.normalized_excess({0.7, -0.25}) == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(!s.empty());

    const Vec cp = s.closest_point({1.0, -0.25});
    CHECK(cp[0] == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(cp[1] == doctest::Approx(-0.25).epsilon(1e-6));

    // Min-norm point of a box that straddles the origin is the origin.
    const HalfspaceSet o = singleton_set({0.02, -0.03}, 0.2);
    const Vec mn = o.min_norm_point();
    CHECK(std::abs(mn[0]) <= 1e-6);
    CHECK(std::abs(mn[1]) <= 1e-6);

    CHECK(s.diameter() == doctest::Approx(0.2 * std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("half-space set polygon and affine image") {
    const HalfspaceSet s = singleton_set({0.0, 0.0}, 0.5);
    const auto poly = s.polygon();
    REQUIRE(poly.size() >= 3);
    double area = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec& a = poly[i];
        const Vec& b = poly[(i + 1) % poly.size()];
        area += 0.5 * (a[0] * b[1] - b[0] * a[1]);
    }
    CHECK(std::abs(area) == doctest::Approx(1.0).epsilon(1e-6));

    const HalfspaceSet im = s.affine_image(2.0, {1.0, -1.0});
    CHECK(im.contains({1.0, -1.0}, 1e-9));
    CHECK(im.contains({1.9, -1.0}, 1e-9));
    CHECK(!im.contains({2.2, -1.0}));
}

TEST_CASE("grid cover snaps centers to the cell lattice") {
    const GridSpec2 g = GridSpec2::cover(Box{{-0.23, 0.11}, {0.34, 0.56}}, 0.05);
    CHECK(g.cell == 0.05);
    REQUIRE(g.nx > 0);
    REQUIRE(g.ny > 0);
    for (std::size_t i = 0; i < g.nx; ++i) {
        const double c = g.cx(i) / 0.05;
        CHECK(std::abs(c - std::round(c)) <= 1e-9);
    }
    // The cover really covers the window.
    CHECK(g.cx(0) - 0.025 <= -0.23 + 1e-12);
    CHECK(g.cx(g.nx - 1) + 0.025 >= 0.34 - 1e-12);
    CHECK(g.cells() == g.nx * g.ny);
    CHECK(g.index(1, 2) == 2 * g.nx + 1);
}

TEST_CASE("subdifferential constraints of an affine-per-slice field are tight") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    const ScalarField u = field_t();
    const Point xi{0.2, -0.3, 0.1};
    const Vec pstar = {2.0 * xi.y[0], -2.0 * xi.x[0]};
    const auto cons = subdiff_constraints(u, cyl, xi);
    REQUIRE(cons.size() >= 8);
    for (const auto& c : cons) {
        double dotv = c.h.a[0] * pstar[0] + c.h.a[1] * pstar[1];
        CHECK(dotv - c.h.b <= 1e-9);
    }
}

TEST_CASE("point verdicts for the vertical coordinate field") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    const ScalarField u = field_t();
    const Point xi{0.2, -0.3, 0.1};
    CHECK(subdiff_test(u, cyl, xi, {2.0 * xi.y[0], -2.0 * xi.x[0]}) ==
          SubdiffVerdict::NOT_REFUTED);
    CHECK(subdiff_test(u, cyl, xi, {2.0 * xi.y[0] + 0.3, -2.0 * xi.x[0]}) ==
          SubdiffVerdict::REFUTED);
}

TEST_CASE("gradient window contains the sampled image") {
    const ScalarField u = field_t();
    std::vector<Point> pts = {Point{0.0, 0.0, 0.0}, Point{0.5, 0.5, 0.0},
                              Point{-0.5, 0.25, 0.1}};
    const Box w = gradient_window(u, pts);
    for (const Point& p : pts) {
        CHECK(w.contains({2.0 * p.y[0], -2.0 * p.x[0]}, 1e-9));
    }
}

TEST_CASE("outer polytope of a smooth field localizes the gradient") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    const ScalarField u = field_t();
    const Point xi{0.1, 0.25, 0.0};
    const HalfspaceSet s = subdiff_outer_polytope(u, cyl, xi);
    const Vec pstar = {2.0 * xi.y[0], -2.0 * xi.x[0]};
    CHECK(s.normalized_excess(pstar) <= 1e-9);
    CHECK(s.diameter() <= 1e-5);
}

TEST_CASE("normal-map raster is deterministic and flags exact image cells") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    const ScalarField u = field_t();
    const auto E = sample_in_domain(cyl, 256, 1);
    const GridSpec2 grid = GridSpec2::cover(gradient_window(u, E), 0.1);

    const RasterImage a = normal_map_raster(u, cyl, E, grid, 128, 1);
    const RasterImage b = normal_map_raster(u, cyl, E, grid, 128, 1);
    REQUIRE(a.flags.size() == b.flags.size());
    bool equal = true;
    for (std::size_t i = 0; i < a.flags.size(); ++i)
        if (a.flags[i] != b.flags[i]) equal = false;
    CHECK(equal);
    CHECK(a.measure.value == b.measure.value);
    CHECK(a.measure.value == doctest::Approx(grid.cell * grid.cell *
                                             static_cast<double>(a.flagged_count())));
    CHECK(a.measure.bias == "outer");
    CHECK(a.measure.resolution == grid.cell);

    // Flag rule: a cell is marked when its center is within half a cell of
    // the sampled polytope (normalized excess <= cell/2, itself bounded by
    // the Euclidean distance to the exact image point). So whenever the
    // exact image lands close enough to its containing cell's center, that
    // cell must be flagged; images near cell corners carry no guarantee.
    std::size_t guaranteed = 0;
    for (std::size_t k = 0; k < 64; ++k) {
        const Vec p = {2.0 * E[k].y[0], -2.0 * E[k].x[0]};
        const double fi = std::floor((p[0] - grid.x0) / grid.cell);
        const double fj = std::floor((p[1] - grid.y0) / grid.cell);
        REQUIRE(fi >= 0);
        REQUIRE(fj >= 0);
        const std::size_t i = static_cast<std::size_t>(fi);
        const std::size_t j = static_cast<std::size_t>(fj);
        if (std::hypot(p[0] - grid.cx(i), p[1] - grid.cy(j)) > 0.45 * grid.cell) continue;
        ++guaranteed;
        CHECK(a.flags[grid.index(i, j)] != 0);
    }
    CHECK(guaranteed >= 16);

    std::ostringstream os;
    a.to_csv(os);
    CHECK(os.str().size() > 10);
}

TEST_CASE("slicing measure tracks the largest per-slice image") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    const ScalarField u = field_t();
    std::vector<Point> bases = {Point{0.0, 0.0, 0.0}, Point{0.1, 0.2, 0.3}};
    const GridSpec2 grid = GridSpec2::cover(Box{{-2.2, -2.2}, {2.2, 2.2}}, 0.1);
    std::vector<double> per_base;
    const MeasureEstimate m = slicing_measure(u, cyl, bases, grid, 128, 64, 1, 0, &per_base);
    REQUIRE(per_base.size() == bases.size());
    double mx = 0.0;
    for (double v : per_base) mx = std::max(mx, v);
    CHECK(m.value == doctest::Approx(mx));
    CHECK(m.value > 0.0);
}

}  // TEST_SUITE

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "heisconvex/domains.hpp"

using namespace heis;

TEST_SUITE("domains") {

TEST_CASE("standard constructions: membership and bounding boxes") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    CHECK(cyl.contains(Point{0.0, 0.0, 0.0}));
    CHECK(cyl.contains(Point{0.7, 0.7, 0.99}));
    CHECK(!cyl.contains(Point{1.1, 0.0, 0.0}));
    CHECK(!cyl.contains(Point{0.0, 0.0, 1.5}));
    CHECK(cyl.bbox.lo[0] <= -1.0);
    CHECK(cyl.bbox.hi[2] >= 1.0);

    const ConvexDomain ball = make_gauge_ball(1.0);
    CHECK(ball.contains(Point{0.9, 0.0, 0.0}));
    CHECK(!ball.contains(Point{0.9, 0.0, 0.9}));  // gauge norm > 1
    CHECK(ball.contains(Point{0.0, 0.0, 0.99}));  // |t| < R^2 on the axis

    const ConvexDomain ell = make_euclidean_ellipsoid({1.0, 0.5, 0.25});
    CHECK(ell.contains(Point{0.9, 0.0, 0.0}));
    CHECK(!ell.contains(Point{0.0, 0.6, 0.0}));

    const ConvexDomain box = make_box(Box{{0.0, -0.5, -0.5}, {1.0, 0.5, 0.5}});
    CHECK(box.contains(Point{0.5, 0.0, 0.0}));
    CHECK(!box.contains(Point{-0.1, 0.0, 0.0}));
    CHECK(box.contains_packed({0.5, 0.0, 0.0}));
}

TEST_CASE("translated and dilated domains are membership pushforwards") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    const Point g{0.4, -0.3, 0.6};
    const ConvexDomain td = translate_domain(cyl, g);
    const ConvexDomain dd = dilate_domain(cyl, 2.0);
    for (const Point& xi : {Point{0.0, 0.0, 0.0}, Point{0.8, 0.3, 0.5}, Point{1.05, 0.0, 0.0}}) {
        CHECK(td.contains(group_mul(g, xi)) == cyl.contains(xi));
        CHECK(dd.contains(dilate(xi, 2.0)) == cyl.contains(xi));
    }
    CHECK(dd.bbox.hi[0] >= 2.0 - 1e-12);
}

TEST_CASE("slice through the origin of the unit cylinder is the unit disk") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    const SliceRegion s = slice_region(cyl, Point{0.0, 0.0, 0.0});
    CHECK(s.contains2d({0.9, 0.0}));
    CHECK(s.contains2d({0.5, -0.5}));
    CHECK(!s.contains2d({1.05, 0.0}));
    CHECK(s.bbox2d.lo[0] <= -1.0 + 1e-9);
    CHECK(s.bbox2d.hi[1] >= 1.0 - 1e-9);

    const RayHit hit = ray_boundary(s, {0.0, 0.0}, {1.0, 0.0});
    CHECK(hit.lambda_star == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(hit.boundary[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(hit.boundary[1]) <= 1e-12);

    CHECK(lambda_of_point(s, {0.0, 0.0}, {0.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(lambda_of_point(s, {0.0, 0.0}, {0.0, 0.0}) == 0.0);

    CHECK_THROWS_AS(ray_boundary(s, {2.0, 0.0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ray_boundary(s, {0.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("slices of a tilted plane follow the chart") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    const Point base{0.5, 0.0, 0.0};
    const SliceRegion s = slice_region(cyl, base);
    // Points of the slice satisfy the plane equation t = 2(x*y0 - x0*y) = -y.
    CHECK(s.contains2d({0.5, 0.0}));
    const Point p = s.frame.from_plane({0.2, 0.4});
    CHECK(p.t == doctest::Approx(-0.4).epsilon(1e-12));
}

TEST_CASE("ambient ray boundary and gauge boundary distance on the cylinder") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    const auto hit = ray_boundary_ambient(cyl, Point{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
    REQUIRE(hit.has_value());
    CHECK(hit->x[0] == doctest::Approx(1.0).epsilon(1e-8));

    // Lateral wall and caps are both at gauge distance exactly 1 from the center.
    CHECK(dist_h_boundary(cyl, Point{0.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(dist_h_boundary(cyl, Point{2.0, 0.0, 0.0}), std::invalid_argument);

    // Monotone in the direction count (prefix-nested estimates).
    const double d16 = dist_h_boundary(cyl, Point{0.3, 0.1, 0.2}, 16);
    const double d64 = dist_h_boundary(cyl, Point{0.3, 0.1, 0.2}, 64);
    CHECK(d64 <= d16 + 1e-12);
}

TEST_CASE("slice boundary distance and the ball-infimum variant") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    CHECK(dist_slice_boundary(cyl, Point{0.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-6));

    const DistSliceD d = dist_slice_boundary_and_D(cyl, Point{0.0, 0.0, 0.0});
    CHECK(d.dist_slice == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(d.dist_h == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(d.D <= d.dist_slice + 1e-12);
    // Every ball point has its full disk slice, so D >= 1 - 1/3 here.
    CHECK(d.D >= 2.0 / 3.0 - 0.02);
}

TEST_CASE("slice diameter and slicewise diameter of the unit cylinder") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);
    CHECK(slice_diameter(cyl, Point{0.0, 0.0, 0.0}, 64) == doctest::Approx(2.0).epsilon(5e-3));
    CHECK(slice_diameter(cyl, Point{2.0, 0.0, 0.0}) == 0.0);

    std::vector<Point> bases = {Point{0.0, 0.0, 0.0}, Point{0.2, 0.1, 0.3},
                                Point{-0.4, 0.2, -0.5}};
    // Slices through off-axis bases pick up the vertical twist between plane
    // points, so their gauge diameter slightly exceeds the Euclidean 2.
    const double d = diam_hs(cyl, bases, 64);
    CHECK(d <= 2.2);
    CHECK(d >= 2.0 - 0.02);
}

TEST_CASE("domain samplers are deterministic and stay inside") {
    const ConvexDomain ball = make_gauge_ball(1.0);
    const auto s1 = sample_in_domain(ball, 64, 3);
    const auto s2 = sample_in_domain(ball, 64, 3);
    const auto s3 = sample_in_domain(ball, 64, 4);
    REQUIRE(s1.size() == 64);
    REQUIRE(s2.size() == 64);
    bool same = true, differs = false;
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(ball.contains(s1[i]));
        if (s1[i].x[0] != s2[i].x[0] || s1[i].t != s2[i].t) same = false;
        if (s1[i].x[0] != s3[i].x[0]) differs = true;
    }
    CHECK(same);
    CHECK(differs);

    const SliceRegion s = slice_region(ball, Point{0.0, 0.0, 0.0});
    const auto w1 = sample_in_slice(s, 32, 3);
    REQUIRE(w1.size() == 32);
    for (const Vec& w : w1) CHECK(s.contains2d(w));
}

TEST_CASE("sampler reports a collapse instead of hanging on thin domains") {
    ConvexDomain thin;
    thin.n = 1;
    thin.label = "thin-slab";
    thin.contains = [](const Point& p) { return std::abs(p.t) < 1e-9; };
    thin.bbox = Box{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(sample_in_domain(thin, 16, 1), std::runtime_error);
}

}  // TEST_SUITE

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "heisconvex/degree.hpp"

using namespace heis;

TEST_SUITE("degree") {

TEST_CASE("polygon primitives") {
    const Polygon sq = rect_polygon(Box{{0.0, 0.0}, {2.0, 1.0}});
    CHECK(sq.signed_area() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sq.contains({1.0, 0.5}));
    CHECK(!sq.contains({2.5, 0.5}));

    const Polygon disk = disk_polygon({0.0, 0.0}, 1.0, 64);
    REQUIRE(disk.vertices.size() == 64);
    // Inscribed regular n-gon area: n/2 * sin(2*pi/n).
    CHECK(disk.signed_area() ==
          doctest::Approx(32.0 * std::sin(2.0 * M_PI / 64.0)).epsilon(1e-9));
    CHECK(disk.contains({0.9, 0.0}));
    CHECK(!disk.contains({1.1, 0.0}));
}

TEST_CASE("winding degree of reference planar maps") {
    const Polygon sq = rect_polygon(Box{{0.0, 0.0}, {1.0, 1.0}});
    CHECK(brouwer_degree_2d([](const Vec& w) { return w; }, sq, {0.2, 0.1}) == 1);

    const Polygon disk = disk_polygon({0.0, 0.0}, 1.0, 64);
    const PlanarMap square_map = [](const Vec& w) {
        return Vec{w[0] * w[0] - w[1] * w[1], 2.0 * w[0] * w[1]};
    };
    CHECK(brouwer_degree_2d(square_map, disk, {0.1, 0.0}) == 2);
    CHECK(brouwer_degree_2d(square_map, disk, {3.0, 0.0}) == 0);

    // Orientation-reversing map has degree -1.
    const PlanarMap mirror = [](const Vec& w) { return Vec{w[0], -w[1]}; };
    const Polygon box = rect_polygon(Box{{-1.0, -1.0}, {1.0, 1.0}});
    CHECK(brouwer_degree_2d(mirror, box, {0.1, 0.2}) == -1);
}

TEST_CASE("degree guard aborts when the target touches the boundary image") {
    const Polygon sq = rect_polygon(Box{{0.0, 0.0}, {1.0, 1.0}});
    CHECK_THROWS_AS(brouwer_degree_2d([](const Vec& w) { return w; }, sq, {0.5, 0.0}),
                    std::runtime_error);
}

TEST_CASE("approximate selector of a singleton map tracks the map") {
    SetValuedMap2D ident;
    ident.values = [](const Vec& w) { return singleton_set(w, 1e-9); };
    const Polygon box = rect_polygon(Box{{-1.0, -1.0}, {1.0, 1.0}});
    const ApproxSelector sel = approx_selector(ident, box, 0.125);
    CHECK(sel.eps() == 0.125);
    CHECK(sel.spacing() == doctest::Approx(0.125 / (2.0 * std::sqrt(2.0))));
    for (const Vec& w : {Vec{0.0, 0.0}, Vec{0.3, -0.4}, Vec{-0.7, 0.2}}) {
        const Vec s = sel(w);
        CHECK(std::hypot(s[0] - w[0], s[1] - w[1]) <= 0.125 / 2.0 + 1e-9);
    }
}

TEST_CASE("default refinement schedule is the dyadic ladder") {
    const auto sched = default_eps_schedule();
    REQUIRE(sched.size() == 8);
    CHECK(sched.front() == doctest::Approx(0.125));
    CHECK(sched.back() == doctest::Approx(std::ldexp(1.0, -10)));
    for (std::size_t i = 1; i < sched.size(); ++i)
        CHECK(sched[i] == doctest::Approx(0.5 * sched[i - 1]));
}

TEST_CASE("set-valued degree of the identity singleton map") {
    SetValuedMap2D ident;
    ident.values = [](const Vec& w) { return singleton_set(w, 1e-9); };
    const Polygon box = rect_polygon(Box{{-1.0, -1.0}, {1.0, 1.0}});
    CHECK(sv_degree(ident, box, {0.2, 0.1}) == 1);
    // Target on the boundary image violates admissibility.
    CHECK_THROWS_AS(sv_degree(ident, box, {1.0, 0.0}), std::runtime_error);
}

TEST_CASE("set-valued degree sees through a fat-valued blend") {
    // F(w) = w + [-r, r]^2: still degree 1 around targets well inside.
    SetValuedMap2D fat;
    fat.values = [](const Vec& w) { return singleton_set(w, 0.05); };
    const Polygon box = rect_polygon(Box{{-1.0, -1.0}, {1.0, 1.0}});
    CHECK(sv_degree(fat, box, {0.0, 0.0}) == 1);
}

}  // TEST_SUITE

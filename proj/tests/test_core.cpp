#include <cmath>

#include "doctest.h"
#include "heisconvex/point.hpp"
#include "heisconvex/sampling.hpp"

using namespace heis;

namespace {

Point rand_point(SplitMix64& rng) {
    return Point{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("group product of the two horizontal unit generators") {
    const Point a{1.0, 0.0, 0.0};
    const Point b{0.0, 1.0, 0.0};
    const Point ab = group_mul(a, b);
    CHECK(ab.x[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ab.y[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ab.t == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("group inverse and associativity") {
    SplitMix64 rng(42);
    for (int i = 0; i < 200; ++i) {
        const Point a = rand_point(rng);
        const Point b = rand_point(rng);
        const Point c = rand_point(rng);
        const Point e = group_mul(a, group_inv(a));
        CHECK(std::abs(e.x[0]) <= 1e-12);
        CHECK(std::abs(e.y[0]) <= 1e-12);
        CHECK(std::abs(e.t) <= 1e-12);
        const Point l = group_mul(group_mul(a, b), c);
        const Point r = group_mul(a, group_mul(b, c));
        CHECK(std::abs(l.x[0] - r.x[0]) <= 1e-12);
        CHECK(std::abs(l.y[0] - r.y[0]) <= 1e-12);
        CHECK(std::abs(l.t - r.t) <= 1e-11);
    }
}

TEST_CASE("gauge norm closed-form values") {
    CHECK(gauge_norm(Point{3.0, 4.0, 0.0}) == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(gauge_norm(Point{0.0, 0.0, 0.0}) == 0.0);
    CHECK(gauge_norm(Point{0.0, 0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-13));
    // 1-homogeneous under dilations.
    const Point p{0.7, -0.3, 0.9};
    CHECK(gauge_norm(dilate(p, 3.0)) == doctest::Approx(3.0 * gauge_norm(p)).epsilon(1e-13));
}

TEST_CASE("dilation acts linearly on z and quadratically on t") {
    const Point p{0.5, -1.5, 0.75};
    const Point q = dilate(p, 2.0);
    CHECK(q.x[0] == doctest::Approx(1.0));
    CHECK(q.y[0] == doctest::Approx(-3.0));
    CHECK(q.t == doctest::Approx(3.0));
    // delta_lambda is a group automorphism.
    SplitMix64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const Point a = rand_point(rng), b = rand_point(rng);
        const double lam = rng.uniform(0.25, 4.0);
        const Point l = dilate(group_mul(a, b), lam);
        const Point r = group_mul(dilate(a, lam), dilate(b, lam));
        CHECK(std::abs(l.x[0] - r.x[0]) <= 1e-11);
        CHECK(std::abs(l.y[0] - r.y[0]) <= 1e-11);
        CHECK(std::abs(l.t - r.t) <= 1e-10);
    }
}

TEST_CASE("metric axioms hold at 1e-10 relative tolerance over 1000 tuples") {
    SplitMix64 rng(9001);
    for (int i = 0; i < 1000; ++i) {
        const Point a = rand_point(rng), b = rand_point(rng), c = rand_point(rng);
        const Point g = rand_point(rng);
        const double lam = rng.uniform(0.25, 4.0);
        const double dab = kc_distance(a, b);

        // left invariance
        const double dgab = kc_distance(group_mul(g, a), group_mul(g, b));
        CHECK(std::abs(dgab - dab) <= 1e-10 * (1.0 + dab));
        // symmetry
        CHECK(std::abs(kc_distance(b, a) - dab) <= 1e-10 * (1.0 + dab));
        // triangle inequality
        const double dac = kc_distance(a, c), dcb = kc_distance(c, b);
        CHECK(dab <= dac + dcb + 1e-10 * (1.0 + dac + dcb));
        // dilation homogeneity
        const double dl = kc_distance(dilate(a, lam), dilate(b, lam));
        CHECK(std::abs(dl - lam * dab) <= 1e-10 * (1.0 + lam * dab));
        // identity of indiscernibles (positivity side)
        if (i % 50 == 0) CHECK(kc_distance(a, a) == 0.0);
    }
}

TEST_CASE("swap-reflect is an involutive gauge-preserving automorphism") {
    SplitMix64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Point a = rand_point(rng), b = rand_point(rng);
        const Point ra = swap_reflect(a);
        CHECK(ra.x[0] == a.y[0]);
        CHECK(ra.y[0] == a.x[0]);
        CHECK(ra.t == -a.t);
        const Point rra = swap_reflect(ra);
        CHECK(rra.x[0] == a.x[0]);
        CHECK(rra.t == a.t);
        CHECK(gauge_norm(ra) == doctest::Approx(gauge_norm(a)).epsilon(1e-13));
        const Point l = swap_reflect(group_mul(a, b));
        const Point r = group_mul(swap_reflect(a), swap_reflect(b));
        CHECK(std::abs(l.x[0] - r.x[0]) <= 1e-12);
        CHECK(std::abs(l.y[0] - r.y[0]) <= 1e-12);
        CHECK(std::abs(l.t - r.t) <= 1e-11);
    }
}

TEST_CASE("horizontal plane chart and membership") {
    const HPlaneFrame f = slice_frame(Point{1.0, 0.0, 0.0});
    const Point p = f.from_plane({0.0, 1.0});
    CHECK(p.x[0] == doctest::Approx(0.0));
    CHECK(p.y[0] == doctest::Approx(1.0));
    CHECK(p.t == doctest::Approx(-2.0));
    CHECK(f.contains(p));
    // Plane equation t = t0 + 2(x*y0 - x0*y) and the chart roundtrip.
    const HPlaneFrame g = slice_frame(Point{0.3, -0.4, 0.7});
    SplitMix64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const Vec w = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const Point q = g.from_plane(w);
        CHECK(q.t == doctest::Approx(0.7 + 2.0 * (q.x[0] * (-0.4) - 0.3 * q.y[0])).epsilon(1e-12));
        CHECK(std::abs(g.plane_defect(q)) <= 1e-12);
        const Vec w2 = g.to_plane(q);
        CHECK(w2[0] == doctest::Approx(w[0]).epsilon(1e-13));
        CHECK(w2[1] == doctest::Approx(w[1]).epsilon(1e-13));
        // Off-plane points are rejected and projected back on.
        const Point off{q.x, q.y, q.t + 0.5};
        CHECK(!g.contains(off));
        CHECK(g.contains(g.project(off)));
    }
}

TEST_CASE("horizontal segment interpolation") {
    const Point xi1{-0.5, 0.0, 0.0};
    const Point xi2{0.5, 0.0, 0.0};
    // xi2 lies on the horizontal plane of xi1.
    CHECK(slice_frame(xi1).contains(xi2));
    const Point p0 = h_segment_point(xi1, xi2, 0.0);
    const Point p1 = h_segment_point(xi1, xi2, 1.0);
    CHECK(kc_distance(p0, xi1) <= 1e-12);
    CHECK(kc_distance(p1, xi2) <= 1e-12);
    const Point mid = h_segment_point(xi1, xi2, 0.5);
    CHECK(std::abs(mid.x[0]) <= 1e-13);
    CHECK(std::abs(mid.y[0]) <= 1e-13);
    CHECK(std::abs(mid.t) <= 1e-13);
    // Pr1 moves affinely along the segment and stays on the plane.
    const Point a{0.2, -0.3, 0.4};
    const HPlaneFrame fa = slice_frame(a);
    const Point b = fa.from_plane({1.1, 0.8});
    for (double lam : {0.25, 0.5, 0.75}) {
        const Point s = h_segment_point(a, b, lam);
        CHECK(fa.contains(s));
        CHECK(s.x[0] == doctest::Approx((1 - lam) * a.x[0] + lam * b.x[0]).epsilon(1e-12));
        CHECK(s.y[0] == doctest::Approx((1 - lam) * a.y[0] + lam * b.y[0]).epsilon(1e-12));
    }
}

TEST_CASE("pack and unpack roundtrip") {
    const Point p{0.1, -0.2, 0.3};
    const Vec v = pack(p);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 0.1);
    CHECK(v[1] == -0.2);
    CHECK(v[2] == 0.3);
    const Point q = unpack(v);
    CHECK(q.x[0] == p.x[0]);
    CHECK(q.y[0] == p.y[0]);
    CHECK(q.t == p.t);
}

}  // TEST_SUITE

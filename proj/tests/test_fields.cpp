#include <cmath>

#include "doctest.h"
#include "heisconvex/domains.hpp"
#include "heisconvex/fields.hpp"
#include "heisconvex/gallery.hpp"

using namespace heis;

namespace {

ScalarField field_t() {
    ScalarField f;
    f.label = "vertical-coordinate";
    f.eval = [](const Point& p) { return p.t; };
    return f;
}

ScalarField field_z2() {
    ScalarField f;
    f.label = "horizontal-square";
    f.eval = [](const Point& p) { return p.x[0] * p.x[0] + p.y[0] * p.y[0]; };
    return f;
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("horizontal gradient of the vertical coordinate is (2y, -2x)") {
    const ScalarField u = field_t();
    for (const Point& xi : {Point{0.0, 0.0, 0.0}, Point{0.3, -0.7, 0.2}, Point{-1.0, 0.5, -0.4}}) {
        const Vec g = horizontal_gradient(u, xi);
        CHECK(g[0] == doctest::Approx(2.0 * xi.y[0]).epsilon(1e-9));
        CHECK(g[1] == doctest::Approx(-2.0 * xi.x[0]).epsilon(1e-9));
    }
}

TEST_CASE("horizontal hessian of the horizontal square is 2I with no vertical part") {
    const ScalarField u = field_z2();
    const HessT h = horizontal_hessian_sym_T(u, Point{0.4, -0.2, 0.6});
    REQUIRE(h.sym.size() == 4);
    CHECK(h.sym[0] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(h.sym[3] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(h.sym[1]) <= 1e-6);
    CHECK(std::abs(h.sym[2]) <= 1e-6);
    CHECK(std::abs(h.Tu) <= 1e-8);
}

TEST_CASE("frame commutator identity on twice-differentiable fields") {
    const auto entry = make_gallery_entry("cylinder-bump");
    const auto seam = make_gallery_entry("prop-ma");
    struct CasePt {
        const ScalarField* f;
        Point xi;
    };
    const std::vector<CasePt> cases = {
        {&*entry.u, Point{0.35, 0.2, 0.1}},  {&*entry.u, Point{-0.5, 0.1, -0.3}},
        {&*entry.v, Point{0.2, -0.6, 0.4}},  {&*seam.u, Point{0.7, 0.1, 0.05}},
        {&*seam.u, Point{1.4, -0.08, 0.1}},
    };
    for (const auto& c : cases) {
        const double comm = commutator_xy(*c.f, c.xi);
        const double tu = horizontal_hessian_sym_T(*c.f, c.xi).Tu;
        CHECK(std::abs(comm + 4.0 * tu) <= 1e-4 * (1.0 + std::abs(tu)));
    }
}

TEST_CASE("finite differences converge at second order against closed forms") {
    ScalarField u;
    u.eval = [](const Point& p) { return std::sin(p.x[0]) * p.y[0] + p.t * p.t; };
    const Point xi{0.3, 0.7, 0.2};
    const double xg = 0.7 * std::cos(0.3) + 4.0 * 0.7 * 0.2;  // (d_x + 2y d_t) u
    const double yg = std::sin(0.3) - 4.0 * 0.3 * 0.2;        // (d_y - 2x d_t) u
    auto err = [&](double h) {
        const Vec g = horizontal_gradient(u, xi, h);
        return std::max(std::abs(g[0] - xg), std::abs(g[1] - yg));
    };
    const double e1 = err(2e-2), e2 = err(1e-2), e3 = err(5e-3);
    REQUIRE(e1 > 0.0);
    REQUIRE(e2 > 0.0);
    const double r1 = e1 / e2, r2 = e2 / e3;
    CHECK(r1 >= 3.0);
    CHECK(r1 <= 5.0);
    CHECK(r2 >= 3.0);
    CHECK(r2 <= 5.0);
}

TEST_CASE("analytic derivatives short-circuit the finite differences") {
    ScalarField u;
    u.eval = [](const Point& p) { return p.x[0] + 3.0 * p.y[0]; };
    u.analytic_grad = [](const Point&) { return Vec{10.0, 20.0, 30.0}; };
    const Vec g = horizontal_gradient(u, Point{0.0, 0.0, 0.0});
    CHECK(g[0] == 10.0);
    CHECK(g[1] == 20.0);
}

TEST_CASE("left translation pushes a field forward") {
    const ScalarField u = field_z2();
    const Point g{0.3, -0.2, 0.5};
    const ScalarField w = translate_field(u, g);
    for (const Point& xi : {Point{0.0, 0.0, 0.0}, Point{0.4, 0.1, -0.2}}) {
        CHECK(w(group_mul(g, xi)) == doctest::Approx(u(xi)).epsilon(1e-12));
    }
}

TEST_CASE("dilation pushes a field forward") {
    const ScalarField u = field_t();
    const ScalarField w = dilate_field(u, 2.0);
    for (const Point& xi : {Point{0.1, 0.2, 0.3}, Point{-0.4, 0.0, 0.6}}) {
        CHECK(w(dilate(xi, 2.0)) == doctest::Approx(u(xi)).epsilon(1e-12));
    }
}

TEST_CASE("convexity checker verdicts on reference fields") {
    const ConvexDomain cyl = make_cylinder(1.0, 1.0);

    // The vertical coordinate is affine along horizontal segments.
    const auto rt = check_convexity(field_t(), cyl, ConvexityMode::H);
    CHECK(rt.pass);
    CHECK(rt.triples_checked > 1000);
    CHECK(rt.worst_gap <= 1e-9);

    // The horizontal square is convex in every mode.
    const auto rz = check_convexity(field_z2(), cyl, ConvexityMode::H);
    CHECK(rz.pass);
    const auto rze = check_convexity(field_z2(), cyl, ConvexityMode::Euclidean);
    CHECK(rze.pass);

    // Affine fields are not strictly convex.
    const auto rs = check_convexity(field_t(), cyl, ConvexityMode::StrictH);
    CHECK(!rs.pass);

    // The dimpled counterexample field fails the horizontal midpoint probe.
    const auto entry = make_gallery_entry("cylinder-bump");
    const auto rb = check_convexity(*entry.u, cyl, ConvexityMode::H);
    CHECK(!rb.pass);
    CHECK(rb.worst_gap > 0.1);
    CHECK(!rb.violations.empty());
}

TEST_CASE("convexity checker rejects an empty field") {
    ScalarField empty;
    CHECK_THROWS_AS(check_convexity(empty, make_cylinder(1.0, 1.0), ConvexityMode::H),
                    std::invalid_argument);
}

}  // TEST_SUITE

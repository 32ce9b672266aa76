#include <cmath>

#include "doctest.h"
#include "heisconvex/domains.hpp"
#include "heisconvex/fields.hpp"
#include "heisconvex/gallery.hpp"
#include "heisconvex/monge.hpp"

using namespace heis;

TEST_SUITE("monge") {

TEST_CASE("pointwise operator closed forms") {
    ScalarField ut;
    ut.eval = [](const Point& p) { return p.t; };
    // Vanishing symmetrized hessian determinant, Tu = 1: value 12*(Tu)^2.
    for (const Point& xi : {Point{0.0, 0.0, 0.0}, Point{0.4, -0.3, 0.2}}) {
        CHECK(s_ma_pointwise(ut, xi) == doctest::Approx(12.0).epsilon(1e-6));
    }

    ScalarField uz;
    uz.eval = [](const Point& p) { return p.x[0] * p.x[0] + p.y[0] * p.y[0]; };
    // Hessian 2I, no vertical part: det = 4.
    for (const Point& xi : {Point{0.0, 0.0, 0.0}, Point{-0.2, 0.5, -0.1}}) {
        CHECK(s_ma_pointwise(uz, xi) == doctest::Approx(4.0).epsilon(1e-5));
    }
}

TEST_CASE("box integrals of constant-operator fields match volume times value") {
    const ConvexDomain box = make_box(Box{{0.0, -0.5, -0.5}, {1.0, 0.5, 0.5}});
    ScalarField ut;
    ut.eval = [](const Point& p) { return p.t; };
    const QuadratureReport r = s_ma_integral_experiment(ut, box, 3);
    REQUIRE(r.refinement_levels.size() == 3);
    CHECK(r.value == doctest::Approx(12.0).epsilon(0.01));
    CHECK(r.cauchy_gap <= 0.02 * std::abs(r.value));
    for (std::size_t i = 1; i < r.refinement_levels.size(); ++i)
        CHECK(r.refinement_levels[i].first < r.refinement_levels[i - 1].first);

    ScalarField uz;
    uz.eval = [](const Point& p) { return p.x[0] * p.x[0] + p.y[0] * p.y[0]; };
    const QuadratureReport rz = s_ma_integral_experiment(uz, box, 3);
    CHECK(rz.value == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("operator is nonnegative on the subcritical growth field") {
    const auto entry = make_gallery_entry("prop-ma");
    // Away from the ridge of min(x, 2-x) and the end seams the field is C^2;
    // the operator of a horizontally convex field stays nonnegative there.
    const auto pts = sample_in_domain(entry.domain, 400, 11);
    std::size_t checked = 0;
    for (const Point& xi : pts) {
        const double gap = std::min(xi.x[0], 2.0 - xi.x[0]);
        if (gap < 0.05 || std::abs(xi.x[0] - 1.0) < 0.02) continue;
        const double h = std::min(1e-3, 0.1 * gap);
        const double s = s_ma_pointwise(*entry.u, xi, h);
        ++checked;
        CHECK(s >= -1e-5 * (1.0 + std::abs(s)));
    }
    CHECK(checked > 100);
}

TEST_CASE("symmetrized hessian of the subcritical field is positive semidefinite") {
    const auto entry = make_gallery_entry("prop-ma");
    const auto pts = sample_in_domain(entry.domain, 300, 13);
    std::size_t checked = 0;
    for (const Point& xi : pts) {
        const double gap = std::min(xi.x[0], 2.0 - xi.x[0]);
        if (gap < 0.05 || std::abs(xi.x[0] - 1.0) < 0.02) continue;
        const HessT h = horizontal_hessian_sym_T(*entry.u, xi, std::min(1e-3, 0.1 * gap));
        const double a = h.sym[0], b = h.sym[1], d = h.sym[3];
        const double scale = 1.0 + std::abs(a) + std::abs(b) + std::abs(d);
        const double tr = a + d;
        const double det = a * d - b * b;
        ++checked;
        CHECK(tr >= -1e-6 * scale);
        CHECK(det >= -1e-6 * scale * scale);
    }
    CHECK(checked > 80);
}

TEST_CASE("slice-image growth ladder structure on shallow windows") {
    const auto entry = make_gallery_entry("prop-ma");
    const double alpha = entry.params.at("alpha");
    const double beta = entry.params.at("beta");
    const SliceGrowthReport rep =
        slice_growth_experiment(*entry.u, entry.domain, alpha, beta, 3, 0.1, 48, 1);
    REQUIRE(rep.levels.size() == 3);
    CHECK(rep.alpha == alpha);
    CHECK(rep.beta == beta);
    CHECK(rep.cell == 0.1);
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
        CHECK(rep.levels[i].k == static_cast<int>(i) + 1);
        // Window depth ladder 4 * 3^(k-1).
        CHECK(rep.levels[i].window_depth ==
              doctest::Approx(4.0 * std::pow(3.0, static_cast<double>(i))));
        CHECK(rep.levels[i].measure > 0.0);
        CHECK(rep.levels[i].points > 0);
    }
    CHECK(rep.monotone);
    CHECK(rep.growth_ratio > 1.0);
}

TEST_CASE("quadrature report is deterministic") {
    const ConvexDomain box = make_box(Box{{0.0, -0.5, -0.5}, {1.0, 0.5, 0.5}});
    ScalarField ut;
    ut.eval = [](const Point& p) { return p.t; };
    const QuadratureReport a = s_ma_integral_experiment(ut, box, 2);
    const QuadratureReport b = s_ma_integral_experiment(ut, box, 2);
    CHECK(a.value == b.value);
    CHECK(a.cauchy_gap == b.cauchy_gap);
}

}  // TEST_SUITE

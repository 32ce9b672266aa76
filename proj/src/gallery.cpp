#include "heisconvex/gallery.hpp"

#include <cmath>
#include <stdexcept>

#include "heisconvex/cones.hpp"

namespace heis {

namespace {

// Smooth radial bump profile: support 1/4 < r < 3/4, max 1/4 at r = 1/2.
double bump_profile(double r) {
    const double s = 4.0 * r - 2.0;
    const double s2 = s * s;
    if (s2 >= 1.0 - 1e-12) return 0.0;
    return 0.25 * std::exp(1.0 - 1.0 / (1.0 - s2));
}

double seam_min(double x) { return std::max(std::min(x, 2.0 - x), 1e-12); }

std::map<std::string, double> defaults_for(const std::string& name) {
    if (name == "cylinder-bump") return {{"amplitude", 1.0}};
    if (name == "sharpness") return {{"epsilon", 0.5}, {"beta", 2.0}};
    if (name == "prop-ma") return {{"beta", 2.0}, {"alpha", 0.55}};
    if (name == "koranyi-cone") return {{"R", 1.0}, {"c_v", -1.0}, {"c_b", 0.0}};
    if (name == "cone-pair") return {{"s", 0.5}, {"c", -0.25}};
    if (name == "cylinder") return {{"r", 1.0}, {"h", 1.0}};
    if (name == "ball") return {{"R", 1.0}};
    throw std::invalid_argument("gallery: unknown entry '" + name + "'");
}

ConvexDomain seam_domain(double alpha, double beta, const std::string& label) {
    ConvexDomain dom;
    dom.n = 1;
    dom.label = label;
    dom.contains = [alpha, beta](const Point& p) {
        const double m = std::min(p.x[0], 2.0 - p.x[0]);
        if (m <= 0.0) return false;
        const double r2 = p.y[0] * p.y[0] + p.t * p.t;
        return std::pow(r2, beta) < std::pow(m, alpha);
    };
    dom.bbox = Box{{0.0, -1.0, -1.0}, {2.0, 1.0, 1.0}};
    return dom;
}

void validate_entry(const GalleryEntry& e) {
    const auto S = sample_in_domain(e.domain, 96, 7);
    for (std::size_t i = 0; i + 1 < S.size(); i += 2) {
        Point mid{{0.5 * (S[i].x[0] + S[i + 1].x[0])},
                  {0.5 * (S[i].y[0] + S[i + 1].y[0])},
                  0.5 * (S[i].t + S[i + 1].t)};
        if (!e.domain.contains(mid))
            throw std::runtime_error("gallery '" + e.name + "': domain midpoint probe failed");
    }
    const auto check_field = [&](const std::optional<ScalarField>& f, const char* which) {
        if (!f) return;
        for (std::size_t i = 0; i < std::min<std::size_t>(16, S.size()); ++i)
            if (!std::isfinite((*f)(S[i])))
                throw std::runtime_error(std::string("gallery '") + e.name + "': field " + which +
                                         " not finite on a domain sample");
    };
    check_field(e.u, "u");
    check_field(e.v, "v");
    for (const Point& p : e.special_points)
        if (!e.domain.contains(p))
            throw std::runtime_error("gallery '" + e.name + "': special point outside domain");
}

}  // namespace

std::vector<std::string> gallery_names() {
    return {"cylinder-bump", "sharpness", "prop-ma", "koranyi-cone",
            "cone-pair",     "cylinder",  "ball"};
}

GalleryEntry make_gallery_entry(const std::string& name,
                                const std::map<std::string, double>& overrides) {
    auto params = defaults_for(name);
    for (const auto& [key, value] : overrides) {
        if (params.find(key) == params.end())
            throw std::invalid_argument("gallery '" + name + "': unknown parameter '" + key + "'");
        params[key] = value;
    }

    GalleryEntry e;
    e.name = name;
    e.params = params;

    if (name == "cylinder-bump") {
        const double amp = params.at("amplitude");
        e.domain = make_cylinder(1.0, 1.0);
        ScalarField v;
        v.label = "vertical-affine";
        v.eval = [](const Point& p) { return p.t; };
        ScalarField u;
        u.label = "vertical-dimple";
        u.eval = [amp](const Point& p) {
            const double r = std::sqrt(p.x[0] * p.x[0] + p.y[0] * p.y[0]);
            return p.t - amp * (1.0 - p.t * p.t) * bump_profile(r);
        };
        e.u = u;
        e.v = v;
    } else if (name == "sharpness") {
        const double eps = params.at("epsilon");
        const double beta = params.at("beta");
        if (!(eps > 0.0) || !(beta >= 1.0))
            throw std::invalid_argument("gallery sharpness: need epsilon > 0, beta >= 1");
        const double alpha = 2.0 * beta / (4.0 * beta - 1.0) + eps / 4.0;
        if (!(alpha < 1.0))
            throw std::invalid_argument("gallery sharpness: epsilon too large (alpha >= 1)");
        e.params["alpha"] = alpha;
        e.domain = seam_domain(alpha, beta, "seam-region");
        ScalarField u;
        u.label = "sharpness-field";
        u.eval = [alpha, beta](const Point& p) {
            const double r2 = p.y[0] * p.y[0] + p.t * p.t;
            return std::pow(r2, beta) - std::pow(seam_min(p.x[0]), alpha);
        };
        e.u = u;
    } else if (name == "prop-ma") {
        const double beta = params.at("beta");
        const double alpha = params.at("alpha");
        if (!(alpha > 0.5) || !(alpha <= 2.0 * beta / (4.0 * beta - 1.0)))
            throw std::invalid_argument(
                "gallery prop-ma: need 1/2 < alpha <= 2*beta/(4*beta-1)");
        e.domain = seam_domain(alpha, beta, "seam-region");
        ScalarField u;
        u.label = "subcritical-growth-field";
        u.eval = [alpha, beta](const Point& p) {
            const double r2 = p.y[0] * p.y[0] + p.t * p.t;
            const double m = seam_min(p.x[0]);
            return std::pow(r2, beta) - std::pow(m, alpha) + 0.5 * alpha * m * m;
        };
        e.u = u;
    } else if (name == "koranyi-cone") {
        const double R = params.at("R");
        if (!(R > 0.0)) throw std::invalid_argument("gallery koranyi-cone: need R > 0");
        e.domain = make_gauge_ball(R);
        const SlicingCone cone = make_slicing_cone(e.domain, Point{0.0, 0.0, 0.0},
                                                   params.at("c_v"), params.at("c_b"));
        e.u = cone.as_field;
        e.special_points = {Point{0.0, 0.0, 0.0}};
    } else if (name == "cone-pair") {
        const double s = params.at("s");
        const double c = params.at("c");
        if (!(s > 0.0)) throw std::invalid_argument("gallery cone-pair: need s > 0");
        if (!(c > -1.0 && c < 0.0))
            throw std::invalid_argument("gallery cone-pair: need c in (-1, 0)");
        const ConvexDomain ball = make_gauge_ball(1.0);
        const SlicingCone cone = make_slicing_cone(ball, Point{0.0, 0.0, 0.0}, -1.0, 0.0);
        const ScalarField V = cone.as_field;
        // Sublevel {V < c}: a t-unbounded cylinder, windowed in |t| < 1.
        ConvexDomain dom;
        dom.n = 1;
        dom.label = "cone-sublevel-cylinder";
        const double radius = 1.0 + c;
        dom.contains = [radius](const Point& p) {
            return p.x[0] * p.x[0] + p.y[0] * p.y[0] < radius * radius && std::abs(p.t) < 1.0;
        };
        dom.bbox = Box{{-radius, -radius, -1.0}, {radius, radius, 1.0}};
        dom.lateral_boundary_only = true;
        e.domain = dom;
        e.sub_domain = dom;
        ScalarField u;
        u.label = "cone-reshaped";
        const auto veval = V.eval;
        u.eval = [veval, s, c](const Point& p) { return (1.0 + s) * (veval(p) - c) + c; };
        e.u = u;
        e.v = V;
        e.special_points = {Point{0.0, 0.0, 0.0}, Point{0.0, 0.0, 0.5}, Point{0.0, 0.0, -0.5}};
    } else if (name == "cylinder") {
        e.domain = make_cylinder(params.at("r"), params.at("h"));
    } else if (name == "ball") {
        e.domain = make_gauge_ball(params.at("R"));
    } else {
        throw std::invalid_argument("gallery: unknown entry '" + name + "'");
    }

    validate_entry(e);
    return e;
}

}  // namespace heis

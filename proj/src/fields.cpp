#include "heisconvex/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace heis {

ScalarField translate_field(const ScalarField& u, const Point& g) {
    ScalarField v;
    Point ginv = group_inv(g);
    auto f = u.eval;
    v.eval = [f, ginv](const Point& p) { return f(group_mul(ginv, p)); };
    if (u.analytic_grad) {
        auto gr = u.analytic_grad;
        v.analytic_grad = [gr, ginv](const Point& p) { return gr(group_mul(ginv, p)); };
    }
    if (u.analytic_t) {
        auto tt = u.analytic_t;
        v.analytic_t = [tt, ginv](const Point& p) { return tt(group_mul(ginv, p)); };
    }
    v.label = u.label + "+g";
    return v;
}

ScalarField dilate_field(const ScalarField& u, double lambda) {
    if (lambda <= 0) throw std::invalid_argument("dilate_field: nonpositive lambda");
    ScalarField v;
    double inv = 1.0 / lambda;
    auto f = u.eval;
    v.eval = [f, inv](const Point& p) { return f(dilate(p, inv)); };
    if (u.analytic_grad) {
        auto gr = u.analytic_grad;
        v.analytic_grad = [gr, inv](const Point& p) { return inv * gr(dilate(p, inv)); };
    }
    if (u.analytic_t) {
        auto tt = u.analytic_t;
        v.analytic_t = [tt, inv](const Point& p) { return inv * inv * tt(dilate(p, inv)); };
    }
    v.label = u.label + "*l";
    return v;
}

namespace {

// W_k u at xi by coordinate central differences: k < n is X_k, else Y_{k-n}.
double field_derivative(const std::function<double(const Point&)>& f, const Point& xi,
                        std::size_t k, double h) {
    const std::size_t nn = xi.n();
    Point a = xi, b = xi;
    double coef;  // coefficient of the d/dt part
    if (k < nn) {
        a.x[k] += h;
        b.x[k] -= h;
        coef = 2.0 * xi.y[k];
    } else {
        a.y[k - nn] += h;
        b.y[k - nn] -= h;
        coef = -2.0 * xi.x[k - nn];
    }
    double dspace = (f(a) - f(b)) / (2.0 * h);
    Point c = xi, d = xi;
    c.t += h;
    d.t -= h;
    double dt = (f(c) - f(d)) / (2.0 * h);
    return dspace + coef * dt;
}

}  // namespace

Vec horizontal_gradient(const ScalarField& u, const Point& xi, double h) {
    if (u.analytic_grad) return u.analytic_grad(xi);
    if (!u.eval) throw std::invalid_argument("horizontal_gradient: empty field");
    const std::size_t nn = xi.n();
    Vec g(2 * nn);
    for (std::size_t k = 0; k < 2 * nn; ++k) g[k] = field_derivative(u.eval, xi, k, h);
    return g;
}

HessT horizontal_hessian_sym_T(const ScalarField& u, const Point& xi, double h) {
    if (!u.eval) throw std::invalid_argument("horizontal_hessian_sym_T: empty field");
    const std::size_t nn = xi.n();
    const std::size_t m = 2 * nn;
    HessT r;
    r.raw.assign(m * m, 0.0);
    // First-derivative functional: analytic gradient components when present,
    // else nested central differences.
    auto first = [&](std::size_t j) {
        return std::function<double(const Point&)>([&u, j, h](const Point& p) {
            if (u.analytic_grad) return u.analytic_grad(p)[j];
            return field_derivative(u.eval, p, j, h);
        });
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            r.raw[i * m + j] = field_derivative(first(j), xi, i, h);
        }
    }
    r.sym.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            r.sym[i * m + j] = 0.5 * (r.raw[i * m + j] + r.raw[j * m + i]);
    if (u.analytic_t) {
        r.Tu = u.analytic_t(xi);
    } else {
        Point a = xi, b = xi;
        a.t += h;
        b.t -= h;
        r.Tu = (u.eval(a) - u.eval(b)) / (2.0 * h);
    }
    return r;
}

double commutator_xy(const ScalarField& u, const Point& xi, double h) {
    if (!u.eval) throw std::invalid_argument("commutator_xy: empty field");
    auto Yu = std::function<double(const Point&)>([&u, h](const Point& p) {
        if (u.analytic_grad) return u.analytic_grad(p)[p.n()];
        return field_derivative(u.eval, p, p.n(), h);
    });
    auto Xu = std::function<double(const Point&)>([&u, h](const Point& p) {
        if (u.analytic_grad) return u.analytic_grad(p)[0];
        return field_derivative(u.eval, p, 0, h);
    });
    double xy = field_derivative(Yu, xi, 0, h);
    double yx = field_derivative(Xu, xi, xi.n(), h);
    return xy - yx;
}

ConvexityReport check_convexity(const ScalarField& u, const ConvexDomain& dom, ConvexityMode mode,
                                const ConvexitySamples& samples, double tol, double strict_margin) {
    if (!u.eval) throw std::invalid_argument("check_convexity: empty field");
    ConvexityReport rep;
    rep.worst_gap = -1e300;
    auto bases = sample_in_domain(dom, samples.base_points, samples.seed);

    auto consider = [&](const Point& xi1, const Point& xi2, double lambda, const Point& mid) {
        if (!dom.contains(mid)) return;
        double lhs = u.eval(mid);
        double rhs = (1.0 - lambda) * u.eval(xi1) + lambda * u.eval(xi2);
        double gap = lhs - rhs;
        rep.worst_gap = std::max(rep.worst_gap, gap);
        ++rep.triples_checked;
        bool violated;
        if (mode == ConvexityMode::StrictH) {
            double sep = kc_distance(xi1, xi2);
            violated = sep > 1e-12 && gap > -strict_margin;
        } else {
            violated = gap > tol;
        }
        if (violated) {
            // Re-validate by direct re-evaluation before reporting.
            double lhs2 = u.eval(mid);
            double rhs2 = (1.0 - lambda) * u.eval(xi1) + lambda * u.eval(xi2);
            bool confirmed = (mode == ConvexityMode::StrictH) ? (lhs2 - rhs2 > -strict_margin)
                                                              : (lhs2 - rhs2 > tol);
            if (confirmed && rep.violations.size() < 64)
                rep.violations.push_back(ConvexityViolation{xi1, xi2, lambda, gap});
            if (confirmed) rep.pass = false;
        }
    };

    std::size_t bi = 0;
    for (auto& xi1 : bases) {
        ++bi;
        if (mode == ConvexityMode::Euclidean) {
            auto partners =
                sample_in_domain(dom, samples.slice_points, samples.seed + 1000 + bi);
            Vec v1 = pack(xi1);
            for (auto& xi2 : partners) {
                Vec v2 = pack(xi2);
                for (double l : samples.lambdas) {
                    Vec vm = v1 + l * (v2 - v1);
                    consider(xi1, xi2, l, unpack(vm));
                }
            }
        } else {
            SliceRegion s = slice_region(dom, xi1);
            auto ws = sample_in_slice(s, samples.slice_points, samples.seed + 1000 + bi);
            for (auto& w : ws) {
                Point xi2 = s.frame.from_plane(w);
                for (double l : samples.lambdas) {
                    Point mid = h_segment_point(xi1, xi2, l);
                    consider(xi1, xi2, l, mid);
                }
            }
        }
    }
    return rep;
}

}  // namespace heis

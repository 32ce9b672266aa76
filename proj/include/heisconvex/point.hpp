// Core types and group-theoretic operations on the Heisenberg group H^n.
//
// A point is xi = (x, y, t) in R^n x R^n x R with the non-commutative law
//   (x_a,y_a,t_a) o (x_b,y_b,t_b)
//     = (x_a+x_b, y_a+y_b, t_a+t_b + 2*sum_j(x_bj*y_aj - x_aj*y_bj)),
// anisotropic dilations delta_l(x,y,t) = (l*x, l*y, l^2*t), the gauge
// N(x,y,t) = (|(x,y)|^4 + t^2)^(1/4), and the right-invariant... (left-
// invariant) metric d(a,b) = N(b^-1 o a).
//
// The horizontal plane of base xi0 is the 2n-plane
//   H_xi0 = { (x,y,t) : t = t0 + 2*(x.y0 - x0.y) },
// the set reachable from xi0 by horizontal lifts; HPlaneFrame charts it by
// the first projection Pr1(x,y,t) = (x,y).

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace heis {

using Vec = std::vector<double>;

struct Point {
    Vec x;  // size n
    Vec y;  // size n
    double t = 0.0;

    Point() = default;
    Point(Vec x_, Vec y_, double t_) : x(std::move(x_)), y(std::move(y_)), t(t_) {
        if (x.size() != y.size()) throw std::invalid_argument("Point: x/y size mismatch");
    }
    // H^1 convenience.
    Point(double x1, double y1, double t_) : x{x1}, y{y1}, t(t_) {}

    std::size_t n() const { return x.size(); }
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator*(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

// Group law. The t-component picks up twice the symplectic area term
// sum_j (x_bj*y_aj - x_aj*y_bj).
inline Point group_mul(const Point& a, const Point& b) {
    if (a.n() != b.n()) throw std::invalid_argument("group_mul: dimension mismatch");
    Point r;
    r.x = a.x + b.x;
    r.y = a.y + b.y;
    double twist = 0.0;
    for (std::size_t j = 0; j < a.n(); ++j) twist += b.x[j] * a.y[j] - a.x[j] * b.y[j];
    r.t = a.t + b.t + 2.0 * twist;
    return r;
}

inline Point group_inv(const Point& a) {
    Point r;
    r.x = -1.0 * a.x;
    r.y = -1.0 * a.y;
    r.t = -a.t;
    return r;
}

// Anisotropic dilation delta_l: 1-homogeneous on (x,y), 2-homogeneous on t.
inline Point dilate(const Point& a, double lambda) {
    Point r;
    r.x = lambda * a.x;
    r.y = lambda * a.y;
    r.t = lambda * lambda * a.t;
    return r;
}

// Gauge norm N(x,y,t) = (|(x,y)|^4 + t^2)^(1/4); vanishes only at the identity
// and is 1-homogeneous under dilations.
inline double gauge_norm(const Point& a) {
    double z2 = dot(a.x, a.x) + dot(a.y, a.y);
    return std::pow(z2 * z2 + a.t * a.t, 0.25);
}

// Gauge distance d(a,b) = N(b^-1 o a). Left-invariant; symmetric because the
// gauge is inversion-invariant; satisfies the triangle inequality.
inline double kc_distance(const Point& a, const Point& b) {
    return gauge_norm(group_mul(group_inv(b), a));
}

// First projection Pr1(x,y,t) = (x,y) as a flat 2n-vector (x..., y...).
inline Vec pr1(const Point& a) {
    Vec w(2 * a.n());
    for (std::size_t j = 0; j < a.n(); ++j) {
        w[j] = a.x[j];
        w[a.n() + j] = a.y[j];
    }
    return w;
}

// Chart of the horizontal plane H_base: to_plane = Pr1 restricted to the
// plane, from_plane solves the plane equation for t. Membership of b in
// H_base is equivalent to the t-component of base^-1 o b vanishing, and the
// relation is symmetric in (base, b).
struct HPlaneFrame {
    Point base;

    std::size_t n() const { return base.n(); }

    Vec to_plane(const Point& p) const { return pr1(p); }

    // t on the plane above horizontal coordinates w = (x, y).
    double plane_t(const Vec& w) const {
        const std::size_t nn = n();
        double twist = 0.0;
        for (std::size_t j = 0; j < nn; ++j)
            twist += w[j] * base.y[j] - base.x[j] * w[nn + j];
        return base.t + 2.0 * twist;
    }

    Point from_plane(const Vec& w) const {
        const std::size_t nn = n();
        if (w.size() != 2 * nn) throw std::invalid_argument("from_plane: bad coordinate size");
        Point p;
        p.x.assign(w.begin(), w.begin() + nn);
        p.y.assign(w.begin() + nn, w.end());
        p.t = plane_t(w);
        return p;
    }

    // Signed plane defect: t-component of base^-1 o p (zero iff p is on the plane).
    double plane_defect(const Point& p) const {
        double twist = 0.0;
        for (std::size_t j = 0; j < n(); ++j)
            twist += base.x[j] * p.y[j] - p.x[j] * base.y[j];
        return p.t - base.t + 2.0 * twist;
    }

    // Relative-tolerance membership: |defect| <= tol * (1 + N(base)^2 + N(p)^2).
    bool contains(const Point& p, double tol = 1e-10) const {
        double scale = 1.0 + std::pow(gauge_norm(base), 2) + std::pow(gauge_norm(p), 2);
        return std::abs(plane_defect(p)) <= tol * scale;
    }

    // Euclidean orthogonal projection of p onto the plane in R^{2n+1}.
    // The plane is the zero set of  L(x,y,t) = t - t0 - 2(x.y0 - x0.y),
    // with constant gradient g = (-2*y0, 2*x0, 1).
    Point project(const Point& p) const {
        const std::size_t nn = n();
        double g2 = 1.0;
        for (std::size_t j = 0; j < nn; ++j)
            g2 += 4.0 * (base.y[j] * base.y[j] + base.x[j] * base.x[j]);
        double defect = plane_defect(p);  // equals L(p) here
        double s = defect / g2;
        Point q = p;
        for (std::size_t j = 0; j < nn; ++j) {
            q.x[j] += 2.0 * s * base.y[j];
            q.y[j] -= 2.0 * s * base.x[j];
        }
        q.t -= s;
        return q;
    }
};

inline HPlaneFrame slice_frame(const Point& base) { return HPlaneFrame{base}; }

// Point on the horizontal segment from xi1 toward xi2 (xi2 in H_xi1):
// xi1 o delta_lambda(xi1^-1 o xi2). For lambda in [0,1] this is the
// H-convexity interpolant; Pr1 of it moves affinely between Pr1(xi1), Pr1(xi2).
inline Point h_segment_point(const Point& xi1, const Point& xi2, double lambda) {
    return group_mul(xi1, dilate(group_mul(group_inv(xi1), xi2), lambda));
}

// Grading automorphism (x,y,t) -> (y,x,-t); used to reduce t < 0 to t > 0.
inline Point swap_reflect(const Point& a) { return Point{a.y, a.x, -a.t}; }

// Flat packing of a point as (x..., y..., t); the bbox coordinate order.
inline Vec pack(const Point& p) {
    Vec v = pr1(p);
    v.push_back(p.t);
    return v;
}

inline Point unpack(const Vec& v) {
    if (v.size() % 2 == 0) throw std::invalid_argument("unpack: even length");
    std::size_t nn = (v.size() - 1) / 2;
    Point p;
    p.x.assign(v.begin(), v.begin() + nn);
    p.y.assign(v.begin() + nn, v.begin() + 2 * nn);
    p.t = v[2 * nn];
    return p;
}

}  // namespace heis

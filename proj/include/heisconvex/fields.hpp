// Scalar fields on H^n and their horizontal calculus: the left-invariant
// frame X_j = d/dx_j + 2 y_j d/dt, Y_j = d/dy_j - 2 x_j d/dt, the horizontal
// gradient (X_1 u, ..., X_n u, Y_1 u, ..., Y_n u), the symmetrized horizontal
// Hessian plus vertical derivative Tu, and a sampling checker for convexity
// along horizontal segments (H-convexity), its strict variant, and ordinary
// Euclidean convexity.

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "heisconvex/domains.hpp"
#include "heisconvex/point.hpp"

namespace heis {

struct ScalarField {
    std::function<double(const Point&)> eval;
    // Optional analytic horizontal gradient (size 2n) and vertical derivative.
    std::function<Vec(const Point&)> analytic_grad;
    std::function<double(const Point&)> analytic_t;
    std::string label;

    double operator()(const Point& p) const { return eval(p); }
};

// Pushforwards: left translation u_g(xi) = u(g^-1 o xi) (the horizontal
// gradient is equivariant without factors since the frame is left-invariant)
// and dilation u_l(xi) = u(delta_{1/l} xi) with grad scaling 1/l, T scaling 1/l^2.
ScalarField translate_field(const ScalarField& u, const Point& g);
ScalarField dilate_field(const ScalarField& u, double lambda);

// Horizontal gradient; central differences with step h when no analytic
// gradient is present (coordinate formulas of X_j, Y_j).
Vec horizontal_gradient(const ScalarField& u, const Point& xi, double h = 1e-4);

struct HessT {
    std::vector<double> sym;  // row-major 2n x 2n symmetrized matrix [W_i W_j u]*
    double Tu = 0.0;
    std::vector<double> raw;  // unsymmetrized W_i W_j u (for commutator checks)
};

// Composed central differences of the vector fields (or of the analytic
// gradient when available); entries symmetrized as (W_iW_j + W_jW_i)/2.
HessT horizontal_hessian_sym_T(const ScalarField& u, const Point& xi, double h = 1e-3);

// Unsymmetrized commutator (X_1 Y_1 - Y_1 X_1) u; equals -4 * Tu.
double commutator_xy(const ScalarField& u, const Point& xi, double h = 1e-3);

enum class ConvexityMode { H, StrictH, Euclidean };

struct ConvexityViolation {
    Point xi1, xi2;
    double lambda = 0.0;
    double gap = 0.0;  // u(mid) - [(1-l)u(xi1) + l u(xi2)]; positive = violated
};

struct ConvexitySamples {
    std::size_t base_points = 128;
    std::size_t slice_points = 32;
    std::vector<double> lambdas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::uint64_t seed = 1;
};

struct ConvexityReport {
    bool pass = true;
    std::vector<ConvexityViolation> violations;
    std::size_t triples_checked = 0;
    double worst_gap = 0.0;  // most positive gap seen (negative = safely convex)
};

// Sampling convexity check. Mode H tests u(xi1 o delta_l(xi1^-1 o xi2)) <=
// (1-l) u(xi1) + l u(xi2) + tol over pairs with xi2 in (dom ∩ H_xi1); strictH
// requires the inequality with margin strict_margin for xi1 != xi2; Euclidean
// uses straight segments and arbitrary pairs. Every violation is re-validated
// by direct re-evaluation before being reported.
ConvexityReport check_convexity(const ScalarField& u, const ConvexDomain& dom, ConvexityMode mode,
                                const ConvexitySamples& samples = {}, double tol = 1e-9,
                                double strict_margin = 1e-9);

}  // namespace heis

// Quantitative Harnack machinery for nonpositive H-convex functions: the
// two-point sandwich lemma with its explicit factors, the five-step chain
// from a ball point down to the center with its per-step gauge bounds, the
// resulting two-sided ratio constant (~30.26, bounded by 31), and the
// chain-of-balls sign propagation along Euclidean segments.
#pragma once

#include <cstdint>
#include <vector>

#include "heisconvex/domains.hpp"
#include "heisconvex/fields.hpp"
#include "heisconvex/point.hpp"

namespace heis {

struct LemmaFactors {
    double lower = 0.0;  // (c - c1 - c3)/(c - c1)
    double upper = 0.0;  // (c - c2)/(c - c2 - c3)
};

// Factors of the two-point sandwich lower*u(xi1) >= u(xi2) >= upper*u(xi1).
// Throws std::invalid_argument unless c1 + c3 < c and c2 + c3 < c.
LemmaFactors lemma_factors(double c, double c1, double c2, double c3);

struct LemmaCheckReport {
    LemmaFactors factors;
    bool data_checked = false;  // true when field data was supplied
    bool sandwich_ok = false;
    double u1 = 0.0;
    double u2 = 0.0;
};

LemmaCheckReport lemma_check(double c, double c1, double c2, double c3);

// Data-backed variant: verifies the geometric preconditions (scaled ball
// B_H(0, c*R) inside dom on probe samples, u <= 0 there, xi2 on the
// horizontal plane of xi1, gauge bounds N(xi1) <= c1*R, N(xi2) <= c2*R,
// d_H(xi1,xi2) <= c3*R) and then the numerical sandwich. Precondition
// violations throw std::invalid_argument.
LemmaCheckReport lemma_check(double c, double c1, double c2, double c3, const ScalarField& u,
                             const ConvexDomain& dom, const Point& xi1, const Point& xi2, double R,
                             std::size_t probes = 256, std::uint64_t seed = 1);

// One chain step: gauge bounds (in units of the ball radius R) of its two
// endpoints and of their distance, plus the sandwich factors at c = 3.
struct HarnackStep {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct HarnackChain {
    std::vector<Point> points;      // xi, xi1, ..., xi5 (xi5 = 0)
    double sigma = 0.0;             // sqrt(t0)/(2 sqrt(n))
    std::vector<HarnackStep> steps; // 5 entries
    double product_constant = 0.0;  // (prod upper)/(prod lower) ~ 30.26
};

// The explicit five-step chain from xi (gauge norm at most the caller's R)
// down to the origin. Negative t is handled by the gauge-preserving
// automorphism (x,y,t) -> (y,x,-t) applied before and after construction.
HarnackChain chain_points(const Point& xi);

// The analytic two-sided constant of the chain (10 * Q^2 with
// Q = ((3-a)/(5/2-a))*((3-b)/(5/2-b)), a = 17^{1/4}/2, b = 8^{1/4}/2).
double harnack_product_constant();

// Numerically re-verifies every step of a chain against its declared bounds
// (endpoint gauge norms, step distance, horizontality) at ball radius R.
bool verify_chain_bounds(const HarnackChain& chain, double R, double tol = 1e-9);

struct BallHarnackReport {
    double analytic_constant = 0.0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::size_t pairs_checked = 0;
    std::size_t admissible_pairs = 0;  // both values strictly negative
    bool chain_bounds_ok = false;
    bool hypothesis_ok = false;  // u <= 0 on the 3R-ball probes
    bool pass = false;
};

// Sampled two-sided ratio check u(zeta)/u(xi) in [1/31, 31] over pairs in
// B_H(xi0, R), after probing B_H(xi0, 3R) ⊆ dom (std::invalid_argument when
// the containment probe fails). Only u <= 0 on the large ball is required of
// the field; pairs where u vanishes are skipped (vacuous truth).
BallHarnackReport ball_harnack_check(const ScalarField& u, const ConvexDomain& dom,
                                     const Point& xi0, double R, std::size_t sample_pairs = 500,
                                     std::uint64_t seed = 1);

struct SignPropagationReport {
    std::size_t k = 0;            // Harnack steps used (balls minus one)
    double bound = 0.0;           // u(xi0)/31^k; 0.0 when it underflows
    double log_abs_bound = 0.0;   // log|u(xi0)| - k*log(31), always finite
    double ball_radius = 0.0;
    double tube_radius = 0.0;
    std::size_t centers = 0;
    bool overlaps_ok = false;
    bool hypothesis_ok = false;
};

// Certifies u(target) <= u(xi0)/31^k < 0 by a chain of admissible gauge
// balls whose centers partition the Euclidean segment [xi0, target]. The
// ball radius follows the tube construction (tube radius / 4), additionally
// capped so the 3R gauge ball verifiably stays inside the Euclidean safety
// tube (the cap matters once the centers carry a sizable z-part, where gauge
// balls are t-thin); the partition is refined until consecutive centers are
// within one gauge ball radius. Throws std::invalid_argument on bad inputs
// and std::runtime_error when the tube radius collapses.
SignPropagationReport sign_propagation(const ScalarField& u, const ConvexDomain& dom,
                                       const Point& xi0, const Point& target,
                                       std::uint64_t seed = 1);

}  // namespace heis

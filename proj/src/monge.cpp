#include "heisconvex/monge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "heisconvex/parallel.hpp"
#include "heisconvex/sampling.hpp"
#include "heisconvex/subdiff.hpp"

namespace heis {

double s_ma_pointwise(const ScalarField& u, const Point& xi, double h) {
    if (xi.n() != 1) throw std::invalid_argument("s_ma_pointwise: requires n == 1");
    const HessT ht = horizontal_hessian_sym_T(u, xi, h);
    const double det = ht.sym[0] * ht.sym[3] - ht.sym[1] * ht.sym[2];
    return det + 12.0 * ht.Tu * ht.Tu;
}

namespace {

// Exponent of the graded x-lattice: x = xlo + Lx * I(xi) with I the
// regularized incomplete beta of equal parameters p+1, so I'(xi) is
// proportional to xi^p (1-xi)^p. Cells of a uniform xi-lattice then pile up
// polynomially at the x-extremes; an x^(2a-2) end singularity of the slab
// integrand turns into a xi^((p+1)(2a-1)+p) profile that vanishes at the
// seam, so plain midpoint quadrature in xi converges instead of chasing an
// excluded h^(2a-1) tail.
constexpr int kGradeP = 27;

// 1 / B(p+1, p+1) = (p+1) * C(2p+1, p).
double grade_inv_beta(int p) {
    double binom = 1.0;
    for (int i = 1; i <= p; ++i)
        binom = binom * static_cast<double>(p + 1 + i) / static_cast<double>(i);
    return static_cast<double>(p + 1) * binom;
}

// Regularized incomplete beta I_xi(p+1, p+1): alternating series on
// [0, 1/2] (terms decay geometrically there) and symmetry above.
double grade_map(double xi, int p, double inv_beta) {
    if (xi <= 0.0) return 0.0;
    if (xi >= 1.0) return 1.0;
    if (xi > 0.5) return 1.0 - grade_map(1.0 - xi, p, inv_beta);
    double coef = 1.0;  // C(p, i) * (-1)^i
    double sum = 0.0;
    double pw = std::pow(xi, static_cast<double>(p + 1));
    for (int i = 0; i <= p; ++i) {
        sum += coef * pw / static_cast<double>(p + 1 + i);
        pw *= xi;
        coef *= -static_cast<double>(p - i) / static_cast<double>(i + 1);
    }
    return sum * inv_beta;
}

}  // namespace

QuadratureReport s_ma_integral_experiment(const ScalarField& u, const ConvexDomain& dom,
                                          std::size_t levels, double h0, double fd_h,
                                          int threads) {
    if (dom.n != 1) throw std::invalid_argument("s_ma_integral_experiment: requires n == 1");
    if (levels == 0) throw std::invalid_argument("s_ma_integral_experiment: need levels >= 1");
    const Box& bb = dom.bbox;
    const double xlo = bb.lo[0], xhi = bb.hi[0];
    const double lx = xhi - xlo;
    const double yc = 0.5 * (bb.lo[1] + bb.hi[1]);
    const double tc = 0.5 * (bb.lo[2] + bb.hi[2]);
    // Bisection bracket for the cross-section radius: farthest bbox corner.
    const double r_bracket =
        std::hypot(std::max(bb.hi[1] - yc, yc - bb.lo[1]),
                   std::max(bb.hi[2] - tc, tc - bb.lo[2])) +
        1e-9;
    if (h0 <= 0.0) h0 = 1.0 / 16.0;
    h0 = std::min(h0, 1.0 / 8.0);
    const double inv_beta = grade_inv_beta(kGradeP);
    constexpr double two_pi = 6.283185307179586476925286766559;

    QuadratureReport rep;
    for (std::size_t lvl = 0; lvl < levels; ++lvl) {
        const double h = h0 / static_cast<double>(1u << lvl);
        const std::size_t nx =
            std::max<std::size_t>(8, static_cast<std::size_t>(std::llround(1.0 / h)));
        const double hx = 1.0 / static_cast<double>(nx);
        const std::size_t ntheta = std::max<std::size_t>(32, nx);
        const std::size_t nrad = std::max<std::size_t>(8, nx / 4);

        // One slot per x-slab keeps the reduction independent of threads.
        std::vector<double> slab_sum(nx, 0.0);
        parallel_for(nx, threads, [&](std::size_t ix) {
            const double xic = (static_cast<double>(ix) + 0.5) * hx;
            // Boundary layer of width 2h of the lattice coordinate: the end
            // slabs carry the seam singularities and their finite-difference
            // stencils; grading makes the skipped x-mass negligible.
            if (xic < 2.0 * hx || xic > 1.0 - 2.0 * hx) return;
            const double x = xlo + lx * grade_map(xic, kGradeP, inv_beta);
            const double wx =
                lx * inv_beta * std::pow(xic * (1.0 - xic), static_cast<double>(kGradeP));
            const Point axis{x, yc, tc};
            if (!dom.contains(axis)) return;
            const double gap_x = std::min(x - xlo, xhi - x);
            // Fixed seam layer: closer than ~1e-7 of the x-extent to an
            // x-face the lateral second differences of a double-precision
            // field drop below its rounding floor, so those slabs cannot be
            // evaluated pointwise and stay excluded at every level. The C^1
            // log-ramp keeps the retained integrand smooth in the lattice
            // coordinate, so refinement converges to the retained integral
            // without cutoff jitter between levels.
            const double floor_x = 1e-7 * lx;
            if (gap_x <= floor_x) return;
            double chi = 1.0;
            if (gap_x < 4.0 * floor_x) {
                const double s = std::log(gap_x / floor_x) / std::log(4.0);
                chi = s * s * (3.0 - 2.0 * s);
            }
            // Seam-proportional difference step: keeps the stencil clear of
            // the x-extremes and the relative conditioning of the composed
            // differences scale-free all the way into the graded cells.
            const double h_pt = std::min(fd_h, gap_x / 8.0);
            double slab = 0.0;
            for (std::size_t jt = 0; jt < ntheta; ++jt) {
                const double theta =
                    two_pi * (static_cast<double>(jt) + 0.5) / static_cast<double>(ntheta);
                const double cth = std::cos(theta), sth = std::sin(theta);
                // Radial extent of the star-shaped cross-section along this ray.
                double r_lo = 0.0, r_hi = r_bracket;
                for (int it = 0; it < 48; ++it) {
                    const double mid = 0.5 * (r_lo + r_hi);
                    const Point q{x, yc + mid * cth, tc + mid * sth};
                    if (dom.contains(q))
                        r_lo = mid;
                    else
                        r_hi = mid;
                }
                const double rmax = r_lo;
                if (rmax <= 0.0) continue;
                // Midpoints of v = (r/rmax)^2 integrate the area element
                // exactly; the integrand is smooth in v inside the domain.
                double ray = 0.0;
                for (std::size_t m = 0; m < nrad; ++m) {
                    const double v = (static_cast<double>(m) + 0.5) / static_cast<double>(nrad);
                    const double r = rmax * std::sqrt(v);
                    const Point q{x, yc + r * cth, tc + r * sth};
                    ray += s_ma_pointwise(u, q, h_pt);
                }
                slab += ray * 0.5 * rmax * rmax / static_cast<double>(nrad);
            }
            slab_sum[ix] = chi * wx * hx * slab * two_pi / static_cast<double>(ntheta);
        });
        rep.refinement_levels.emplace_back(hx, pairwise_sum(slab_sum));
    }
    rep.value = rep.refinement_levels.back().second;
    if (rep.refinement_levels.size() >= 2) {
        const double last = rep.refinement_levels.back().second;
        const double prev = rep.refinement_levels[rep.refinement_levels.size() - 2].second;
        rep.cauchy_gap = std::abs(last - prev);
    }
    return rep;
}

namespace {

// Root of alpha*x - alpha*x^(alpha-1) = -w on (0, 1); the left side is
// strictly increasing with limit -inf at 0+ and value 0 at 1.
double ladder_x(double alpha, double w) {
    const auto f = [alpha](double x) { return alpha * x - alpha * std::pow(x, alpha - 1.0); };
    double lo = std::min(0.5, 0.5 * std::pow(alpha / (w + 1.0), 1.0 / (1.0 - alpha)));
    while (f(lo) > -w && lo > 1e-300) lo *= 0.25;
    double hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > -w)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SliceGrowthReport slice_growth_experiment(const ScalarField& u, const ConvexDomain& dom,
                                          double alpha, double beta, int k_max, double cell,
                                          std::size_t slice_samples, std::uint64_t seed,
                                          int threads) {
    if (dom.n != 1) throw std::invalid_argument("slice_growth_experiment: requires n == 1");
    if (!(alpha > 0.0 && alpha < 1.0) || !(beta >= 1.0))
        throw std::invalid_argument("slice_growth_experiment: exponents out of range");
    if (k_max < 1) throw std::invalid_argument("slice_growth_experiment: need k_max >= 1");

    SliceGrowthReport rep;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.cell = cell;

    for (int k = 1; k <= k_max; ++k) {
        const double vk = 4.0 * std::pow(3.0, k - 1);
        const double b = 1.0 / (2.0 * k);
        const Point base{b, 0.0, 0.0};
        const auto slice = slice_region(dom, base);
        const double ck = 1.0 + 1.0 / (static_cast<double>(k) * k);

        std::vector<Point> E;
        E.push_back(base);
        for (const Vec& w : sample_in_slice(slice, slice_samples, seed + 31 * k))
            E.push_back(slice.frame.from_plane(w));

        // Ladder along the slice x-axis. The image band generated at depth w
        // spans roughly [-1.1 w, -w] in the first gradient coordinate, so a
        // geometric depth schedule with ratio < 1.1 keeps consecutive bands
        // overlapping; below depth 0.5 the bands are thinner than a cell and
        // a linear cell/2 schedule is used instead. Transverse rungs
        // corroborate the band width where it exceeds a cell.
        const double step = cell / 2.0;
        std::vector<double> depths;
        for (double w = step; w < 0.5 && w <= vk; w += step) depths.push_back(w);
        for (double w = std::max(0.5, step); w < vk; w *= 1.06) depths.push_back(w);
        depths.push_back(vk);
        for (std::size_t j = 0; j < depths.size(); ++j) {
            const double x = ladder_x(alpha, depths[j]);
            E.push_back(slice.frame.from_plane({x, 0.0}));
            const double ymax =
                std::pow(std::max(0.0, std::pow(x, alpha) - 0.5 * alpha * x * x), 1.0 / (2.0 * beta)) /
                std::sqrt(ck);
            const double p2_extent = 2.0 * beta * std::pow(ymax, 2.0 * beta - 1.0) *
                                     (1.0 + 2.0 * x / k) * std::pow(ck, beta - 1.0);
            if (p2_extent >= cell) {
                for (int sgn = -1; sgn <= 1; sgn += 2)
                    E.push_back(slice.frame.from_plane({x, sgn * 0.6 * ymax}));
            } else if (p2_extent >= cell / 4.0 && j % 2 == 0) {
                for (int sgn = -1; sgn <= 1; sgn += 2)
                    E.push_back(slice.frame.from_plane({x, sgn * 0.5 * ymax}));
            }
        }
        E.erase(std::remove_if(E.begin(), E.end(),
                               [&dom](const Point& p) { return !dom.contains(p); }),
                E.end());

        const Box window{{-vk - 1.0, -1.5}, {1.0, 1.5}};
        const GridSpec2 grid = GridSpec2::cover(window, cell);
        const RasterImage img =
            normal_map_raster(u, dom, E, grid, std::max<std::size_t>(slice_samples, 32), seed,
                              threads);

        SliceGrowthLevel lvl;
        lvl.k = k;
        lvl.window_depth = vk;
        lvl.measure = img.measure.value;
        lvl.points = E.size();
        rep.levels.push_back(lvl);
    }

    rep.monotone = true;
    for (std::size_t i = 1; i < rep.levels.size(); ++i)
        if (!(rep.levels[i].measure > rep.levels[i - 1].measure)) rep.monotone = false;
    if (!rep.levels.empty() && rep.levels.front().measure > 0.0)
        rep.growth_ratio = rep.levels.back().measure / rep.levels.front().measure;
    return rep;
}

}  // namespace heis

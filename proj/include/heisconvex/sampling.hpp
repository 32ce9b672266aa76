// Deterministic sampling utilities: Halton low-discrepancy sequences (with a
// seed-derived leap so distinct seeds give distinct yet reproducible streams),
// quasi-uniform sphere direction sets with the coordinate axes first (so axis
// extremes are always probed), and a splitmix64 generator for "random" test
// tuples.

#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "heisconvex/point.hpp"

namespace heis {

inline double halton(std::uint64_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

inline unsigned nth_prime(std::size_t k) {
    static const unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                      31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    if (k >= sizeof(primes) / sizeof(primes[0]))
        throw std::invalid_argument("nth_prime: dimension too large");
    return primes[k];
}

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Halton point in [0,1)^dim, seed entering as an index offset.
inline Vec halton_point(std::uint64_t i, std::size_t dim, std::uint64_t seed) {
    Vec p(dim);
    std::uint64_t off = SplitMix64(seed).next() % 9973;
    for (std::size_t d = 0; d < dim; ++d) p[d] = halton(i + 1 + off, nth_prime(d));
    return p;
}

// Inverse of the standard normal CDF via Acklam's rational approximation;
// plenty for quasi-uniform direction generation.
inline double inv_normal_cdf(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("inv_normal_cdf: p outside (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
        q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

// Prefix-nested direction set on the unit sphere of R^dim: the 2*dim signed
// axes first, then Halton points mapped through the normal quantile and
// normalized. Growing K extends the set, so min-over-directions estimates are
// monotone in K.
inline std::vector<Vec> sphere_directions(std::size_t dim, std::size_t K, std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("sphere_directions: dim 0");
    std::vector<Vec> dirs;
    dirs.reserve(K);
    for (std::size_t d = 0; d < dim && dirs.size() < K; ++d) {
        for (double s : {1.0, -1.0}) {
            if (dirs.size() >= K) break;
            Vec e(dim, 0.0);
            e[d] = s;
            dirs.push_back(e);
        }
    }
    std::uint64_t i = 0;
    while (dirs.size() < K) {
        Vec u = halton_point(i++, dim, seed);
        Vec g(dim);
        bool ok = true;
        double nrm2 = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            double p = std::min(std::max(u[d], 1e-12), 1.0 - 1e-12);
            g[d] = inv_normal_cdf(p);
            nrm2 += g[d] * g[d];
        }
        if (nrm2 < 1e-12) ok = false;
        if (!ok) continue;
        double inv = 1.0 / std::sqrt(nrm2);
        for (auto& v : g) v *= inv;
        dirs.push_back(g);
    }
    return dirs;
}

struct Box {
    Vec lo, hi;  // packed (x..., y..., t)

    std::size_t dim() const { return lo.size(); }

    bool contains(const Vec& v, double slack = 0.0) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (v[i] < lo[i] - slack || v[i] > hi[i] + slack) return false;
        return true;
    }

    double volume() const {
        double v = 1.0;
        for (std::size_t i = 0; i < lo.size(); ++i) v *= (hi[i] - lo[i]);
        return v;
    }

    Vec at(const Vec& unit) const {
        Vec v(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) v[i] = lo[i] + (hi[i] - lo[i]) * unit[i];
        return v;
    }

    double diameter() const {
        double s = 0.0;
        for (std::size_t i = 0; i < lo.size(); ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
        return std::sqrt(s);
    }
};

}  // namespace heis

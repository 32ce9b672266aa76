#include "heisconvex/degree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heis {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Projection of q onto the closed polygon (inside -> q, else nearest edge).
Vec project_to_polygon(const Polygon& poly, const Vec& q) {
    if (poly.contains(q)) return q;
    double best = std::numeric_limits<double>::infinity();
    Vec arg = q;
    std::size_t m = poly.vertices.size();
    for (std::size_t k = 0; k < m; ++k) {
        const Vec& a = poly.vertices[k];
        const Vec& b = poly.vertices[(k + 1) % m];
        Vec d = b - a;
        double dd = dot(d, d);
        double s = dd > 0 ? std::clamp(dot(q - a, d) / dd, 0.0, 1.0) : 0.0;
        Vec c = a + s * d;
        double dist2 = dot(q - c, q - c);
        if (dist2 < best) {
            best = dist2;
            arg = c;
        }
    }
    return arg;
}

struct WindingAccum {
    const PlanarMap& f;
    const Vec& y;
    double delta;
    double total = 0.0;

    Vec shifted(const Vec& x) const {
        Vec v = f(x);
        v[0] -= y[0];
        v[1] -= y[1];
        if (std::sqrt(dot(v, v)) <= delta)
            throw std::runtime_error(
                "brouwer_degree_2d: boundary value within delta of y (degree undefined)");
        return v;
    }

    void arc(const Vec& x0, const Vec& x1, const Vec& f0, const Vec& f1, int depth) {
        double cross = f0[0] * f1[1] - f0[1] * f1[0];
        double d = dot(f0, f1);
        double dtheta = std::atan2(cross, d);
        if (depth >= 3 && std::abs(dtheta) <= 0.45 * kPi) {
            total += dtheta;
            return;
        }
        if (depth >= 45)
            throw std::runtime_error("brouwer_degree_2d: subdivision depth exhausted near y");
        Vec xm = 0.5 * (x0 + x1);
        Vec fm = shifted(xm);
        arc(x0, xm, f0, fm, depth + 1);
        arc(xm, x1, fm, f1, depth + 1);
    }
};

}  // namespace

double Polygon::signed_area() const {
    double s = 0.0;
    std::size_t m = vertices.size();
    for (std::size_t k = 0; k < m; ++k) {
        const Vec& a = vertices[k];
        const Vec& b = vertices[(k + 1) % m];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * s;
}

bool Polygon::contains(const Vec& q) const {
    bool inside = false;
    std::size_t m = vertices.size();
    for (std::size_t k = 0; k < m; ++k) {
        const Vec& a = vertices[k];
        const Vec& b = vertices[(k + 1) % m];
        if ((a[1] > q[1]) != (b[1] > q[1])) {
            double xc = a[0] + (q[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
            if (q[0] < xc) inside = !inside;
        }
    }
    return inside;
}

Polygon rect_polygon(const Box& window2d) {
    if (window2d.dim() != 2) throw std::invalid_argument("rect_polygon: window is not 2D");
    return Polygon{{{window2d.lo[0], window2d.lo[1]},
                    {window2d.hi[0], window2d.lo[1]},
                    {window2d.hi[0], window2d.hi[1]},
                    {window2d.lo[0], window2d.hi[1]}}};
}

Polygon disk_polygon(const Vec& center, double radius, std::size_t segments) {
    if (!(radius > 0) || segments < 3) throw std::invalid_argument("disk_polygon: bad parameters");
    Polygon p;
    p.vertices.reserve(segments);
    for (std::size_t k = 0; k < segments; ++k) {
        double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(segments);
        p.vertices.push_back({center[0] + radius * std::cos(th), center[1] + radius * std::sin(th)});
    }
    return p;
}

int brouwer_degree_2d(const PlanarMap& f, const Polygon& region, const Vec& y, double delta,
                      std::size_t min_subdiv) {
    std::size_t m = region.vertices.size();
    if (m < 3) throw std::invalid_argument("brouwer_degree_2d: degenerate region");
    if (region.signed_area() <= 0)
        throw std::invalid_argument("brouwer_degree_2d: region must be positively oriented");
    std::size_t per_edge = std::max<std::size_t>(1, (min_subdiv + m - 1) / m);
    WindingAccum acc{f, y, delta};
    for (std::size_t k = 0; k < m; ++k) {
        const Vec& a = region.vertices[k];
        const Vec& b = region.vertices[(k + 1) % m];
        Vec x0 = a;
        Vec f0 = acc.shifted(x0);
        for (std::size_t s = 1; s <= per_edge; ++s) {
            double t = static_cast<double>(s) / static_cast<double>(per_edge);
            Vec x1 = a + t * (b - a);
            Vec f1 = acc.shifted(x1);
            acc.arc(x0, x1, f0, f1, 0);
            x0 = x1;
            f0 = f1;
        }
    }
    double turns = acc.total / (2.0 * kPi);
    int deg = static_cast<int>(std::lround(turns));
    if (std::abs(turns - deg) > 0.05)
        throw std::runtime_error("brouwer_degree_2d: winding total far from an integer");
    return deg;
}

ApproxSelector::ApproxSelector(SetValuedMap2D F, Polygon region, double eps)
    : F_(std::move(F)),
      region_(std::move(region)),
      eps_(eps),
      spacing_(eps / (2.0 * std::sqrt(2.0))),
      cache_(std::make_shared<std::unordered_map<std::int64_t, Vec>>()) {
    if (!(eps > 0)) throw std::invalid_argument("ApproxSelector: eps must be positive");
    double lx = region_.vertices.front()[0];
    double ly = region_.vertices.front()[1];
    for (const Vec& v : region_.vertices) {
        lx = std::min(lx, v[0]);
        ly = std::min(ly, v[1]);
    }
    ax_ = (std::floor(lx / spacing_) - 2.0) * spacing_;
    ay_ = (std::floor(ly / spacing_) - 2.0) * spacing_;
}

Vec ApproxSelector::node_value(long i, long j) const {
    std::int64_t key = (static_cast<std::int64_t>(i) << 32) ^ (static_cast<std::int64_t>(j) & 0xffffffffLL);
    auto it = cache_->find(key);
    if (it != cache_->end()) return it->second;
    Vec node = {ax_ + static_cast<double>(i) * spacing_, ay_ + static_cast<double>(j) * spacing_};
    HalfspaceSet set = F_.values(project_to_polygon(region_, node));
    Vec val = set.min_norm_point();
    (*cache_)[key] = val;
    return val;
}

Vec ApproxSelector::operator()(const Vec& x) const {
    double gx = (x[0] - ax_) / spacing_;
    double gy = (x[1] - ay_) / spacing_;
    double fi = std::floor(gx);
    double fj = std::floor(gy);
    long i = static_cast<long>(fi);
    long j = static_cast<long>(fj);
    double u = gx - fi;
    double v = gy - fj;
    Vec v00 = node_value(i, j);
    Vec v11 = node_value(i + 1, j + 1);
    if (u >= v) {
        Vec v10 = node_value(i + 1, j);
        return (1.0 - u) * v00 + (u - v) * v10 + v * v11;
    }
    Vec v01 = node_value(i, j + 1);
    return (1.0 - v) * v00 + (v - u) * v01 + u * v11;
}

ApproxSelector approx_selector(const SetValuedMap2D& F, const Polygon& region, double eps) {
    return ApproxSelector(F, region, eps);
}

std::vector<double> default_eps_schedule() {
    std::vector<double> s;
    for (int k = 3; k <= 10; ++k) s.push_back(std::ldexp(1.0, -k));
    return s;
}

int sv_degree(const SetValuedMap2D& F, const Polygon& region, const Vec& y,
              const std::vector<double>& eps_schedule) {
    std::vector<double> schedule = eps_schedule.empty() ? default_eps_schedule() : eps_schedule;
    if (schedule.size() < 3) throw std::invalid_argument("sv_degree: schedule needs >= 3 entries");

    // Boundary admissibility: y must stay clear of the value sets on sampled
    // boundary points.
    double clearance = std::numeric_limits<double>::infinity();
    std::size_t m = region.vertices.size();
    for (std::size_t k = 0; k < m; ++k) {
        const Vec& a = region.vertices[k];
        const Vec& b = region.vertices[(k + 1) % m];
        for (std::size_t s = 0; s < 32; ++s) {
            double t = static_cast<double>(s) / 32.0;
            Vec x = a + t * (b - a);
            Vec c = F.values(x).closest_point(y);
            clearance = std::min(clearance, std::sqrt(dot(c - y, c - y)));
        }
    }
    if (!(clearance > 1e-7))
        throw std::runtime_error("sv_degree: boundary value sets reach y (degree undefined)");

    std::vector<int> degs(schedule.size(), 0);
    std::vector<bool> have(schedule.size(), false);
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        ApproxSelector sel(F, region, schedule[k]);
        PlanarMap f = [&sel](const Vec& x) { return sel(x); };
        try {
            degs[k] = brouwer_degree_2d(f, region, y, std::min(1e-9, clearance / 16.0));
            have[k] = true;
        } catch (const std::runtime_error&) {
            if (k + 3 >= schedule.size()) throw;  // the stabilizing tail must evaluate
        }
    }
    std::size_t last = schedule.size() - 1;
    if (have[last] && have[last - 1] && have[last - 2] && degs[last] == degs[last - 1] &&
        degs[last] == degs[last - 2])
        return degs[last];
    throw std::runtime_error("sv_degree: eps schedule did not stabilize");
}

}  // namespace heis

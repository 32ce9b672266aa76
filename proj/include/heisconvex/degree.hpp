// Topological degree on planar regions. The Brouwer degree of a continuous
// map is the winding number of f - y along the positively oriented region
// boundary, computed by adaptive subdivision that keeps every angular
// increment below pi/2. Set-valued maps with convex compact values get a
// degree through continuous piecewise-affine approximate selectors on an
// eps-lattice (node value: the min-norm point of the value set), stabilized
// over a dyadic eps schedule.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "heisconvex/sampling.hpp"
#include "heisconvex/subdiff.hpp"

namespace heis {

// Simple closed polygon, positively oriented (counter-clockwise).
struct Polygon {
    std::vector<Vec> vertices;

    double signed_area() const;
    bool contains(const Vec& q) const;  // even-odd crossing test
};

Polygon rect_polygon(const Box& window2d);
Polygon disk_polygon(const Vec& center, double radius, std::size_t segments = 64);

using PlanarMap = std::function<Vec(const Vec&)>;

// Winding number of f - y along the region boundary. `delta` is the
// degree-defined guard: any boundary probe with |f(x) - y| <= delta aborts
// with std::runtime_error (degree undefined there), as does failure of the
// subdivision to settle on a near-integer total angle.
int brouwer_degree_2d(const PlanarMap& f, const Polygon& region, const Vec& y,
                      double delta = 1e-9, std::size_t min_subdiv = 64);

// Set-valued planar map with convex compact values.
struct SetValuedMap2D {
    std::function<HalfspaceSet(const Vec&)> values;
};

// Continuous piecewise-affine approximate selector: barycentric interpolation
// of min-norm value points over the triangulated lattice of spacing
// eps/(2*sqrt(2)) (so every query sits within eps/2 of its nodes). Node
// points outside the region are first projected onto it. Values are cached
// lazily; copies share the cache.
class ApproxSelector {
  public:
    ApproxSelector(SetValuedMap2D F, Polygon region, double eps);

    Vec operator()(const Vec& x) const;
    double eps() const { return eps_; }
    double spacing() const { return spacing_; }

  private:
    Vec node_value(long i, long j) const;

    SetValuedMap2D F_;
    Polygon region_;
    double eps_;
    double spacing_;
    double ax_ = 0.0, ay_ = 0.0;  // lattice anchor
    std::shared_ptr<std::unordered_map<std::int64_t, Vec>> cache_;
};

ApproxSelector approx_selector(const SetValuedMap2D& F, const Polygon& region, double eps);

// Default schedule eps_k = 2^-k, k = 3..10.
std::vector<double> default_eps_schedule();

// Brouwer degree of the approximate selectors, stabilized over the schedule:
// the last three entries must evaluate to the same integer, which is
// returned. Boundary admissibility (y at positive distance from the value
// sets on boundary samples) is probed first. Throws std::runtime_error on a
// violated boundary condition or a non-stabilizing schedule.
int sv_degree(const SetValuedMap2D& F, const Polygon& region, const Vec& y,
              const std::vector<double>& eps_schedule = {});

}  // namespace heis

// Built-in gallery of named domain/field configurations used by the CLI and
// the test harness. Every entry self-validates on construction: the domain
// passes a Euclidean midpoint convexity probe and each field evaluates to a
// finite value on domain samples.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heisconvex/domains.hpp"
#include "heisconvex/fields.hpp"
#include "heisconvex/point.hpp"

namespace heis {

struct GalleryEntry {
    std::string name;
    std::map<std::string, double> params;  // resolved (defaults + overrides)
    ConvexDomain domain;
    std::optional<ScalarField> u;
    std::optional<ScalarField> v;
    // Inner comparison region (defaults to `domain` when absent).
    std::optional<ConvexDomain> sub_domain;
    // Distinguished evaluation points (cone vertex/axis) merged into sample sets.
    std::vector<Point> special_points;
};

// Entry names, in a fixed order:
//   cylinder-bump (amplitude)     - t-affine field vs. its interior dimple on
//                                   the unit cylinder; the dimpled field has
//                                   empty subdifferentials near the axis
//   sharpness     (epsilon, beta) - boundary-exponent test field, alpha =
//                                   2*beta/(4*beta-1) + epsilon/4
//   prop-ma       (beta, alpha)   - subcritical growth field with the C^2 seam
//   koranyi-cone  (R, c_v, c_b)   - slicing cone over the gauge ball B(0, R)
//   cone-pair     (s, c)          - cone sublevel cylinder {V < c} carrying
//                                   the ordered pair u = (1+s)(V-c)+c < v = V
//   cylinder      (r, h)          - plain domain, no fields
//   ball          (R)             - plain domain, no fields
std::vector<std::string> gallery_names();

// Builds (and validates) an entry; `overrides` replaces parameter defaults.
// Throws std::invalid_argument for unknown names/parameters or out-of-range
// values and std::runtime_error when self-validation fails.
GalleryEntry make_gallery_entry(const std::string& name,
                                const std::map<std::string, double>& overrides = {});

}  // namespace heis

// Python bindings: group geometry on tuples, gallery access, and the JSON
// config runner (the same entry point the CLI uses).
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heisconvex/fields.hpp"
#include "heisconvex/gallery.hpp"
#include "heisconvex/point.hpp"
#include "heisconvex/runner.hpp"

namespace py = pybind11;

namespace {

using heis::Point;

using Tuple3 = std::tuple<double, double, double>;

Point to_point(const Tuple3& p) {
    return Point{std::get<0>(p), std::get<1>(p), std::get<2>(p)};
}

Tuple3 from_point(const Point& p) {
    if (p.n() != 1) throw std::invalid_argument("tuple API covers the n = 1 group only");
    return {p.x[0], p.y[0], p.t};
}

const heis::ScalarField& pick(const heis::GalleryEntry& e, const std::string& which) {
    if (which == "u") {
        if (!e.u) throw std::invalid_argument("gallery '" + e.name + "' has no field u");
        return *e.u;
    }
    if (which == "v") {
        if (!e.v) throw std::invalid_argument("gallery '" + e.name + "' has no field v");
        return *e.v;
    }
    throw std::invalid_argument("field must be 'u' or 'v'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "group geometry, example gallery, and the JSON config runner";

    m.def(
        "group_mul",
        [](const Tuple3& a, const Tuple3& b) {
            return from_point(heis::group_mul(to_point(a), to_point(b)));
        },
        py::arg("a"), py::arg("b"), "Group product a * b as (x, y, t) tuples.");
    m.def(
        "group_inv", [](const Tuple3& a) { return from_point(heis::group_inv(to_point(a))); },
        py::arg("a"), "Group inverse.");
    m.def(
        "dilate",
        [](const Tuple3& a, double lam) { return from_point(heis::dilate(to_point(a), lam)); },
        py::arg("a"), py::arg("lam"), "Anisotropic dilation (lam*x, lam*y, lam^2*t).");
    m.def(
        "swap_reflect",
        [](const Tuple3& a) { return from_point(heis::swap_reflect(to_point(a))); },
        py::arg("a"), "The involutive automorphism (x, y, t) -> (y, x, -t).");
    m.def(
        "gauge_norm", [](const Tuple3& a) { return heis::gauge_norm(to_point(a)); },
        py::arg("a"), "Homogeneous gauge (|z|^4 + t^2)^(1/4).");
    m.def(
        "distance",
        [](const Tuple3& a, const Tuple3& b) {
            return heis::kc_distance(to_point(a), to_point(b));
        },
        py::arg("a"), py::arg("b"), "Left-invariant gauge distance.");
    m.def(
        "h_segment_point",
        [](const Tuple3& a, const Tuple3& b, double lam) {
            return from_point(heis::h_segment_point(to_point(a), to_point(b), lam));
        },
        py::arg("a"), py::arg("b"), py::arg("lam"),
        "Point at parameter lam on the horizontal segment from a to b.");

    m.def("gallery_names", &heis::gallery_names, "Names of the built-in example entries.");
    m.def(
        "gallery_info",
        [](const std::string& name, const std::map<std::string, double>& params) {
            const auto e = heis::make_gallery_entry(name, params);
            py::dict d;
            d["name"] = e.name;
            d["params"] = e.params;
            d["has_u"] = static_cast<bool>(e.u);
            d["has_v"] = static_cast<bool>(e.v);
            std::vector<Tuple3> sp;
            for (const auto& p : e.special_points) sp.push_back(from_point(p));
            d["special_points"] = sp;
            d["bbox_lo"] = e.domain.bbox.lo;
            d["bbox_hi"] = e.domain.bbox.hi;
            return d;
        },
        py::arg("name"), py::arg("params") = std::map<std::string, double>{},
        "Resolved parameters, available fields, and bounding box of an entry.");
    m.def(
        "eval_field",
        [](const std::string& name, const std::string& field,
           const std::vector<Tuple3>& points, const std::map<std::string, double>& params) {
            const auto e = heis::make_gallery_entry(name, params);
            const auto& f = pick(e, field);
            std::vector<double> out;
            out.reserve(points.size());
            for (const auto& p : points) out.push_back(f.eval(to_point(p)));
            return out;
        },
        py::arg("name"), py::arg("field"), py::arg("points"),
        py::arg("params") = std::map<std::string, double>{},
        "Evaluate a gallery field at a list of (x, y, t) points.");
    m.def(
        "contains",
        [](const std::string& name, const std::vector<Tuple3>& points,
           const std::map<std::string, double>& params) {
            const auto e = heis::make_gallery_entry(name, params);
            std::vector<bool> out;
            out.reserve(points.size());
            for (const auto& p : points) out.push_back(e.domain.contains(to_point(p)));
            return out;
        },
        py::arg("name"), py::arg("points"), py::arg("params") = std::map<std::string, double>{},
        "Domain membership of a list of points for a gallery entry.");

    m.def(
        "run_config",
        [](const std::string& config_text) {
            const heis::RunResult r = heis::run_config(config_text);
            py::dict d;
            d["exit_code"] = r.exit_code;
            d["report_json"] = r.report_json;
            d["files_written"] = r.files_written;
            return d;
        },
        py::arg("config_text"),
        "Run one JSON-configured command; returns exit_code, report_json, files_written.");
}

#include "heisconvex/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "heisconvex/cones.hpp"
#include "heisconvex/degree.hpp"
#include "heisconvex/gallery.hpp"
#include "heisconvex/harnack.hpp"
#include "heisconvex/monge.hpp"
#include "heisconvex/principles.hpp"
#include "heisconvex/subdiff.hpp"

namespace heis {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

double jget(const json& j, const char* key, double def) {
    if (j.contains(key)) return j.at(key).get<double>();
    return def;
}

std::string jgets(const json& j, const char* key, const std::string& def) {
    if (j.contains(key)) return j.at(key).get<std::string>();
    return def;
}

struct OutputSink {
    std::string dir;
    std::vector<std::string> written;

    void write(const std::string& name, const std::string& content) {
        if (dir.empty()) return;
        std::filesystem::create_directories(dir);
        const std::string path = dir + "/" + name;
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        os << content;
        written.push_back(path);
    }
};

std::string csv_document(const std::string& header, const std::vector<std::string>& rows) {
    std::string doc = header + "\n";
    for (const auto& r : rows) doc += r + "\n";
    return doc;
}

json report_to_json(const PrincipleReport& rep) { return json::parse(rep.to_json_string()); }

void emit_principle(const PrincipleReport& rep, OutputSink& sink, json& out, int& exit_code) {
    out["report"] = report_to_json(rep);
    if (!rep.csv_rows.empty()) sink.write("data.csv", csv_document(rep.csv_header, rep.csv_rows));
    if (rep.verdict == "violated") exit_code = 2;
}

const ScalarField& pick_field(const GalleryEntry& entry, const std::string& which) {
    if (which == "u") {
        if (!entry.u)
            throw std::invalid_argument("gallery '" + entry.name + "' has no field u");
        return *entry.u;
    }
    if (which == "v") {
        if (!entry.v)
            throw std::invalid_argument("gallery '" + entry.name + "' has no field v");
        return *entry.v;
    }
    throw std::invalid_argument("field must be 'u' or 'v'");
}

std::vector<Point> xi_grid_for(const GalleryEntry& entry, const GridSettings& grids,
                               std::uint64_t salt) {
    std::vector<Point> pts = entry.special_points;
    for (const Point& p : sample_in_domain(entry.domain, grids.base_grid, grids.seed + salt))
        pts.push_back(p);
    return pts;
}

// Probe-backed admissible ball radius: shrink until the 3R gauge ball
// verifiably stays inside the domain.
double admissible_radius(const ConvexDomain& dom, const Point& xi0, double r0,
                         std::uint64_t seed) {
    double r = r0;
    for (int attempt = 0; attempt < 16; ++attempt) {
        bool ok = true;
        for (const Point& p : sample_gauge_ball(xi0, 3.0 * r, 512, seed))
            if (!dom.contains(p)) {
                ok = false;
                break;
            }
        if (ok) return r;
        r *= 0.6;
    }
    throw std::invalid_argument("no admissible ball radius found at this center");
}

}  // namespace

RunResult run_config(const std::string& config_text) {
    json cfg;
    try {
        cfg = json::parse(config_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!cfg.is_object() || !cfg.contains("command"))
        throw std::invalid_argument("config: missing \"command\"");

    std::string cmd = cfg.at("command").get<std::string>();
    for (char& c : cmd)
        if (c == ' ' || c == '_') c = '-';

    GridSettings grids;
    if (cfg.contains("grids")) {
        const json& g = cfg.at("grids");
        grids.cell = jget(g, "cell", grids.cell);
        grids.slice_samples = static_cast<std::size_t>(jget(g, "slice_samples", 256));
        grids.base_grid = static_cast<std::size_t>(jget(g, "base_grid", 128));
        grids.seed = static_cast<std::uint64_t>(jget(g, "seed", 1));
        grids.max_witnesses =
            static_cast<std::size_t>(jget(g, "max_witnesses", static_cast<double>(grids.max_witnesses)));
    }
    grids.threads = static_cast<int>(jget(cfg, "threads", 0));

    std::string gallery_name;
    std::map<std::string, double> overrides;
    if (cfg.contains("gallery")) {
        const json& g = cfg.at("gallery");
        gallery_name = jgets(g, "name", "");
        if (g.contains("params"))
            for (const auto& [key, value] : g.at("params").items())
                overrides[key] = value.get<double>();
    }

    OutputSink sink;
    sink.dir = jgets(cfg, "output_dir", "");

    json out;
    out["command"] = cmd;
    int exit_code = 0;

    const auto need_entry = [&]() {
        if (gallery_name.empty())
            throw std::invalid_argument("config: command '" + cmd + "' needs gallery.name");
        GalleryEntry e = make_gallery_entry(gallery_name, overrides);
        json jp;
        for (const auto& [key, value] : e.params) jp[key] = value;
        out["gallery"] = {{"name", e.name}, {"params", jp}};
        return e;
    };

    if (cmd == "verify-comparison") {
        const GalleryEntry entry = need_entry();
        const auto rep = comparison_inclusion_check(pick_field(entry, "u"), pick_field(entry, "v"),
                                                    entry.domain,
                                                    entry.sub_domain ? *entry.sub_domain
                                                                     : entry.domain,
                                                    grids, entry.special_points);
        emit_principle(rep, sink, out, exit_code);
    } else if (cmd == "verify-boundary-min") {
        const GalleryEntry entry = need_entry();
        const auto rep = boundary_min_check(pick_field(entry, "u"), pick_field(entry, "v"),
                                            entry.domain, grids);
        emit_principle(rep, sink, out, exit_code);
    } else if (cmd == "verify-aleksandrov") {
        const GalleryEntry entry = need_entry();
        const std::string mode = jgets(cfg, "mode", "full");
        const double exponent = jget(cfg, "exponent", 1.0);
        const auto rep = aleksandrov_ratio(
            pick_field(entry, jgets(cfg, "field", "u")), entry.domain,
            xi_grid_for(entry, grids, 5),
            mode == "per-plane" ? AleksandrovMode::PerPlane : AleksandrovMode::Full, grids,
            exponent);
        emit_principle(rep, sink, out, exit_code);
    } else if (cmd == "verify-geometric") {
        const GalleryEntry entry = need_entry();
        const auto rep = geometric_ratio(entry.domain, xi_grid_for(entry, grids, 5), grids);
        emit_principle(rep, sink, out, exit_code);
    } else if (cmd == "verify-scaling") {
        const GalleryEntry entry = need_entry();
        const double lambda = jget(cfg, "lambda", 2.0);
        const auto rep = scaling_check(pick_field(entry, jgets(cfg, "field", "u")), entry.domain,
                                       lambda, grids);
        emit_principle(rep, sink, out, exit_code);
    } else if (cmd == "verify-harnack") {
        const GalleryEntry entry = need_entry();
        const ScalarField& u = pick_field(entry, jgets(cfg, "field", "u"));
        Point xi0{0.0, 0.0, 0.0};
        if (cfg.contains("xi0")) {
            const auto v = cfg.at("xi0").get<std::vector<double>>();
            xi0 = unpack(v);
        } else if (!entry.special_points.empty()) {
            xi0 = entry.special_points.front();
        } else {
            Vec mid(entry.domain.bbox.lo.size());
            for (std::size_t i = 0; i < mid.size(); ++i)
                mid[i] = 0.5 * (entry.domain.bbox.lo[i] + entry.domain.bbox.hi[i]);
            xi0 = unpack(mid);
        }
        if (!entry.domain.contains(xi0))
            throw std::invalid_argument("verify-harnack: center is outside the domain");
        double R = jget(cfg, "R", 0.0);
        if (R <= 0.0)
            R = admissible_radius(entry.domain, xi0,
                                  0.3 * dist_h_boundary(entry.domain, xi0, 64, grids.seed),
                                  grids.seed);
        const std::size_t pairs = static_cast<std::size_t>(jget(cfg, "pairs", 500));
        const auto rep = ball_harnack_check(u, entry.domain, xi0, R, pairs, grids.seed);
        out["report"] = {{"analytic_constant", rep.analytic_constant},
                         {"min_ratio", rep.min_ratio},
                         {"max_ratio", rep.max_ratio},
                         {"pairs_checked", rep.pairs_checked},
                         {"admissible_pairs", rep.admissible_pairs},
                         {"chain_bounds_ok", rep.chain_bounds_ok},
                         {"hypothesis_ok", rep.hypothesis_ok},
                         {"pass", rep.pass},
                         {"R", R},
                         {"xi0", pack(xi0)}};
        std::vector<std::string> rows = {
            "analytic_constant," + fmt(rep.analytic_constant),
            "min_ratio," + fmt(rep.min_ratio),
            "max_ratio," + fmt(rep.max_ratio),
            "admissible_pairs," + fmt(static_cast<double>(rep.admissible_pairs))};
        sink.write("data.csv", csv_document("quantity,value", rows));
        if (!rep.pass) exit_code = 2;
    } else if (cmd == "verify-convexity") {
        const GalleryEntry entry = need_entry();
        const ScalarField& f = pick_field(entry, jgets(cfg, "field", "u"));
        ConvexitySamples cs;
        cs.base_points = grids.base_grid;
        cs.slice_points = 32;
        cs.seed = grids.seed;
        const auto rep = check_convexity(f, entry.domain, ConvexityMode::H, cs);
        out["report"] = {{"pass", rep.pass},
                         {"triples_checked", rep.triples_checked},
                         {"worst_gap", rep.worst_gap},
                         {"violations", rep.violations.size()}};
        std::vector<std::string> rows;
        for (std::size_t i = 0; i < std::min<std::size_t>(64, rep.violations.size()); ++i) {
            const auto& viol = rep.violations[i];
            rows.push_back(fmt(viol.xi1.x[0]) + "," + fmt(viol.xi1.y[0]) + "," + fmt(viol.xi1.t) +
                           "," + fmt(viol.xi2.x[0]) + "," + fmt(viol.xi2.y[0]) + "," +
                           fmt(viol.xi2.t) + "," + fmt(viol.lambda) + "," + fmt(viol.gap));
        }
        sink.write("data.csv",
                   csv_document("x1,y1,t1,x2,y2,t2,lambda,gap", rows));
        if (!rep.pass) exit_code = 2;
    } else if (cmd == "measure-normal-map") {
        const GalleryEntry entry = need_entry();
        const ScalarField& f = pick_field(entry, jgets(cfg, "field", "u"));
        std::size_t count = grids.base_grid;
        if (!cfg.contains("grids") || !cfg.at("grids").contains("base_grid")) count = 32768;
        std::vector<Point> E = entry.special_points;
        for (const Point& p : sample_in_domain(entry.domain, count, grids.seed)) E.push_back(p);
        const GridSpec2 grid = GridSpec2::cover(gradient_window(f, E), grids.cell);
        const RasterImage img =
            normal_map_raster(f, entry.domain, E, grid, grids.slice_samples, grids.seed,
                              grids.threads);
        out["report"] = {{"measure", img.measure.value},
                         {"resolution", img.measure.resolution},
                         {"bias", img.measure.bias},
                         {"cells_flagged", img.flagged_count()},
                         {"points", E.size()}};
        std::ostringstream os;
        img.to_csv(os);
        sink.write("raster.csv", os.str());
    } else if (cmd == "measure-slicing") {
        const GalleryEntry entry = need_entry();
        const ScalarField& f = pick_field(entry, jgets(cfg, "field", "u"));
        std::vector<Point> bases = xi_grid_for(entry, grids, 9);
        std::vector<Point> ew = bases;
        const GridSpec2 grid = GridSpec2::cover(gradient_window(f, ew), grids.cell);
        std::vector<double> per_base;
        const MeasureEstimate m =
            slicing_measure(f, entry.domain, bases, grid, grids.slice_samples, 128, grids.seed,
                            grids.threads, &per_base);
        out["report"] = {{"measure", m.value}, {"resolution", m.resolution}, {"bias", m.bias},
                         {"bases", bases.size()}};
        std::vector<std::string> rows;
        for (std::size_t i = 0; i < bases.size(); ++i)
            rows.push_back(fmt(bases[i].x[0]) + "," + fmt(bases[i].y[0]) + "," +
                           fmt(bases[i].t) + "," + fmt(per_base[i]));
        sink.write("data.csv", csv_document("x,y,t,slice_measure", rows));
    } else if (cmd == "measure-diam-hs") {
        const GalleryEntry entry = need_entry();
        const std::vector<Point> bases = xi_grid_for(entry, grids, 9);
        const double diam = diam_hs(entry.domain, bases, 48);
        out["report"] = {{"diam_hs", diam}, {"bases", bases.size()}};
        std::vector<std::string> rows;
        for (const Point& b : bases)
            rows.push_back(fmt(b.x[0]) + "," + fmt(b.y[0]) + "," + fmt(b.t) + "," +
                           fmt(slice_diameter(entry.domain, b, 48)));
        sink.write("data.csv", csv_document("x,y,t,slice_diameter", rows));
    } else if (cmd == "experiment-sharpness") {
        const GalleryEntry entry = need_entry();
        if (entry.params.find("epsilon") == entry.params.end())
            throw std::invalid_argument("experiment-sharpness: entry has no epsilon parameter");
        const ScalarField& u = pick_field(entry, "u");
        const double eps = entry.params.at("epsilon");
        std::vector<Point> ladder;
        for (int j = 3; j <= 10; ++j) ladder.push_back(Point{std::ldexp(1.0, -j), 0.0, 0.0});
        std::vector<AleksandrovRow> rows;
        const auto rep = aleksandrov_ratio(u, entry.domain, ladder, AleksandrovMode::Full, grids,
                                           1.0 + eps, &rows);
        bool increasing = rows.size() == ladder.size();
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (!(rows[i].ratio > rows[i - 1].ratio)) increasing = false;
        // Window-clipped image measure stays bounded under grid refinement.
        std::vector<Point> E;
        for (const Point& p :
             sample_in_domain(entry.domain, std::min<std::size_t>(512, grids.base_grid * 4),
                              grids.seed))
            E.push_back(p);
        const Box w = gradient_window(u, E);
        const double m_coarse =
            normal_map_raster(u, entry.domain, E, GridSpec2::cover(w, grids.cell * 2.0),
                              grids.slice_samples, grids.seed, grids.threads)
                .measure.value;
        const double m_fine =
            normal_map_raster(u, entry.domain, E, GridSpec2::cover(w, grids.cell),
                              grids.slice_samples, grids.seed, grids.threads)
                .measure.value;
        const bool bounded = m_fine <= 1.3 * m_coarse + 1e-9;
        json jr;
        jr["alpha"] = entry.params.at("alpha");
        jr["dist_exponent"] = 1.0 + eps;
        jr["increasing"] = increasing;
        jr["image_measure_coarse"] = m_coarse;
        jr["image_measure_fine"] = m_fine;
        jr["image_measure_bounded"] = bounded;
        jr["statistic"] = rep.statistic;
        out["report"] = jr;
        std::vector<std::string> csv;
        for (std::size_t i = 0; i < rows.size(); ++i)
            csv.push_back(std::to_string(i + 3) + "," + fmt(rows[i].xi.x[0]) + "," +
                          fmt(rows[i].abs_u) + "," + fmt(rows[i].dist) + "," +
                          fmt(rows[i].ratio));
        sink.write("data.csv", csv_document("j,x,abs_u,dist,ratio", csv));
        if (!increasing || !bounded) exit_code = 2;
    } else if (cmd == "experiment-prop-ma") {
        const GalleryEntry entry = need_entry();
        const ScalarField& u = pick_field(entry, "u");
        const double alpha = entry.params.at("alpha");
        const double beta = entry.params.at("beta");
        const std::size_t levels = static_cast<std::size_t>(jget(cfg, "levels", 4));
        const int k_max = static_cast<int>(jget(cfg, "k_max", 6));
        // The growth raster has its own default cell: its witness is the
        // one-cell raster floor along the deep image tail, which a finer
        // comparison cell would only dilute.
        const double growth_cell = jget(cfg, "growth_cell", 0.1);
        const auto quad =
            s_ma_integral_experiment(u, entry.domain, levels, 0.0, 1e-3, grids.threads);
        const auto growth = slice_growth_experiment(u, entry.domain, alpha, beta, k_max,
                                                    growth_cell, 48, grids.seed, grids.threads);
        json jq;
        jq["value"] = quad.value;
        jq["cauchy_gap"] = quad.cauchy_gap;
        jq["cauchy_gap_ok"] = quad.cauchy_gap <= 0.02 * std::abs(quad.value);
        json jlev = json::array();
        for (const auto& [h, value] : quad.refinement_levels)
            jlev.push_back({{"h", h}, {"value", value}});
        jq["levels"] = jlev;
        json jg;
        jg["monotone"] = growth.monotone;
        jg["growth_ratio"] = growth.growth_ratio;
        json jgl = json::array();
        for (const auto& lvl : growth.levels)
            jgl.push_back({{"k", lvl.k}, {"depth", lvl.window_depth}, {"measure", lvl.measure},
                           {"points", lvl.points}});
        jg["levels"] = jgl;
        out["report"] = {{"quadrature", jq}, {"slice_growth", jg}};
        std::vector<std::string> qcsv;
        for (std::size_t i = 0; i < quad.refinement_levels.size(); ++i)
            qcsv.push_back(std::to_string(i) + "," + fmt(quad.refinement_levels[i].first) + "," +
                           fmt(quad.refinement_levels[i].second));
        sink.write("quadrature.csv", csv_document("level,h,value", qcsv));
        std::vector<std::string> gcsv;
        for (const auto& lvl : growth.levels)
            gcsv.push_back(std::to_string(lvl.k) + "," + fmt(lvl.window_depth) + "," +
                           fmt(lvl.measure) + "," + std::to_string(lvl.points));
        sink.write("growth.csv", csv_document("k,depth,measure,points", gcsv));
        if (!(quad.cauchy_gap <= 0.02 * std::abs(quad.value)) || !growth.monotone ||
            !(growth.growth_ratio >= 10.0))
            exit_code = 2;
    } else if (cmd == "degree-brouwer") {
        struct Case {
            std::string name;
            int expected;
            int computed;
        };
        std::vector<Case> cases;
        const Polygon square = rect_polygon(Box{{0.0, 0.0}, {1.0, 1.0}});
        cases.push_back({"identity-square", 1,
                         brouwer_degree_2d([](const Vec& w) { return w; }, square, {0.2, 0.1})});
        const Polygon disk = disk_polygon({0.0, 0.0}, 1.0, 64);
        const PlanarMap square_map = [](const Vec& w) {
            return Vec{w[0] * w[0] - w[1] * w[1], 2.0 * w[0] * w[1]};
        };
        cases.push_back({"complex-square-disk", 2, brouwer_degree_2d(square_map, disk, {0.1, 0.0})});
        cases.push_back({"target-outside-image", 0, brouwer_degree_2d(square_map, disk, {3.0, 0.0})});
        bool all_ok = true;
        json jr = json::array();
        std::vector<std::string> rows;
        for (const auto& c : cases) {
            if (c.computed != c.expected) all_ok = false;
            jr.push_back({{"case", c.name}, {"expected", c.expected}, {"computed", c.computed}});
            rows.push_back(c.name + "," + std::to_string(c.expected) + "," +
                           std::to_string(c.computed));
        }
        out["report"] = {{"cases", jr}, {"pass", all_ok}};
        sink.write("data.csv", csv_document("case,expected,computed", rows));
        if (!all_ok) exit_code = 2;
    } else if (cmd == "degree-set-valued") {
        const GalleryEntry cone = make_gallery_entry("koranyi-cone");
        const ScalarField V = *cone.u;
        const ConvexDomain dom = cone.domain;
        const HPlaneFrame frame = slice_frame(Point{0.0, 0.0, 0.0});
        const Box window{{-2.0, -2.0}, {2.0, 2.0}};
        const std::size_t cs = grids.slice_samples;
        const std::uint64_t seed = grids.seed;
        const auto cone_set = [&V, &dom, &frame, &window, cs, seed](const Vec& w) {
            return subdiff_outer_polytope(V, dom, frame.from_plane(w), cs, window, seed);
        };

        json jr = json::array();
        std::vector<std::string> rows;
        bool all_ok = true;
        const auto record = [&](const std::string& name, int expected, int computed) {
            if (computed != expected) all_ok = false;
            jr.push_back({{"case", name}, {"expected", expected}, {"computed", computed}});
            rows.push_back(name + "," + std::to_string(expected) + "," +
                           std::to_string(computed));
        };

        const Polygon square = rect_polygon(Box{{-1.0, -1.0}, {1.0, 1.0}});
        SetValuedMap2D ident;
        ident.values = [](const Vec& w) { return singleton_set(w, 1e-9); };
        record("identity-singleton", 1, sv_degree(ident, square, {0.2, 0.1}));

        const Polygon disk = disk_polygon({0.0, 0.0}, 0.5, 64);
        SetValuedMap2D cone_map;
        cone_map.values = cone_set;
        record("cone-normal-map", 1, sv_degree(cone_map, disk, {0.0, 0.0}));

        for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            SetValuedMap2D blend;
            if (lambda == 0.0) {
                blend.values = [](const Vec& w) { return singleton_set(w, 1e-9); };
            } else {
                blend.values = [cone_set, lambda](const Vec& w) {
                    Vec shift = {(1.0 - lambda) * w[0], (1.0 - lambda) * w[1]};
                    return cone_set(w).affine_image(lambda, shift);
                };
            }
            record("homotopy-" + fmt(lambda), 1, sv_degree(blend, disk, {0.0, 0.0}));
        }
        out["report"] = {{"cases", jr}, {"pass", all_ok}};
        sink.write("data.csv", csv_document("case,expected,computed", rows));
        if (!all_ok) exit_code = 2;
    } else {
        throw std::invalid_argument("config: unknown command '" + cmd + "'");
    }

    out["grids"] = {{"cell", grids.cell},
                    {"slice_samples", grids.slice_samples},
                    {"base_grid", grids.base_grid},
                    {"seed", grids.seed}};
    out["exit_code"] = exit_code;

    RunResult result;
    result.exit_code = exit_code;
    json files = json::array();
    for (const auto& f : sink.written) files.push_back(f);
    out["files"] = files;
    result.report_json = out.dump(2) + "\n";
    sink.write("report.json", result.report_json);
    result.files_written = sink.written;
    return result;
}

}  // namespace heis

// Command-line front end: builds a canonical JSON config from flags and
// hands it to run_config. Identical config + seed => byte-identical outputs.
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "heisconvex/runner.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string gallery;
    std::vector<std::string> params;
    std::string out_dir;
    std::string config_path;
    std::string field;
    std::string mode;
    double cell = 0.05;
    double slice_samples = 256;
    double base_grid = 128;
    double seed = 1;
    double threads = 0;
    double R = 0;
    double lambda = 2.0;
    double exponent = 0;
    double levels = 0;
    double k_max = 0;
    double growth_cell = 0;
    double pairs = 0;
    std::vector<double> xi0;
    bool print_json = false;

    bool cell_set = false, ss_set = false, bg_set = false, seed_set = false;
    bool r_set = false, lambda_set = false, exponent_set = false;
    bool levels_set = false, kmax_set = false, pairs_set = false, threads_set = false;
    bool growth_cell_set = false;
};

void add_common(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--gallery", f.gallery, "gallery entry name");
    sub->add_option("--param", f.params, "gallery parameter override key=value (repeatable)");
    sub->add_option("--out", f.out_dir, "directory for report.json and CSV outputs");
    sub->add_option("--config", f.config_path, "JSON config file (flags are ignored if given)");
    sub->add_option("--field", f.field, "which field to use: u or v");
    sub->add_option("--mode", f.mode, "mode string (e.g. full / per-plane)");
    sub->add_option("--cell", f.cell)->each([&f](const std::string&) { f.cell_set = true; });
    sub->add_option("--slice-samples", f.slice_samples)
        ->each([&f](const std::string&) { f.ss_set = true; });
    sub->add_option("--base-grid", f.base_grid)
        ->each([&f](const std::string&) { f.bg_set = true; });
    sub->add_option("--seed", f.seed)->each([&f](const std::string&) { f.seed_set = true; });
    sub->add_option("--threads", f.threads)
        ->each([&f](const std::string&) { f.threads_set = true; });
    sub->add_option("--R", f.R)->each([&f](const std::string&) { f.r_set = true; });
    sub->add_option("--lambda", f.lambda)
        ->each([&f](const std::string&) { f.lambda_set = true; });
    sub->add_option("--exponent", f.exponent)
        ->each([&f](const std::string&) { f.exponent_set = true; });
    sub->add_option("--levels", f.levels)
        ->each([&f](const std::string&) { f.levels_set = true; });
    sub->add_option("--k-max", f.k_max)->each([&f](const std::string&) { f.kmax_set = true; });
    sub->add_option("--growth-cell", f.growth_cell, "raster cell for the slice-growth ladder")
        ->each([&f](const std::string&) { f.growth_cell_set = true; });
    sub->add_option("--pairs", f.pairs)->each([&f](const std::string&) { f.pairs_set = true; });
    sub->add_option("--xi0", f.xi0, "ball center as x y t")->expected(3);
    sub->add_flag("--json", f.print_json, "print the full JSON report to stdout");
}

json build_config(const std::string& command, const CommonFlags& f) {
    json cfg;
    cfg["command"] = command;
    if (!f.gallery.empty()) {
        json g;
        g["name"] = f.gallery;
        if (!f.params.empty()) {
            json p;
            for (const std::string& kv : f.params) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("--param expects key=value, got: " + kv);
                p[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            }
            g["params"] = p;
        }
        cfg["gallery"] = g;
    }
    json grids;
    if (f.cell_set) grids["cell"] = f.cell;
    if (f.ss_set) grids["slice_samples"] = f.slice_samples;
    if (f.bg_set) grids["base_grid"] = f.base_grid;
    if (f.seed_set) grids["seed"] = f.seed;
    if (!grids.empty()) cfg["grids"] = grids;
    if (f.threads_set) cfg["threads"] = f.threads;
    if (!f.out_dir.empty()) cfg["output_dir"] = f.out_dir;
    if (!f.field.empty()) cfg["field"] = f.field;
    if (!f.mode.empty()) cfg["mode"] = f.mode;
    if (f.r_set) cfg["R"] = f.R;
    if (f.lambda_set) cfg["lambda"] = f.lambda;
    if (f.exponent_set) cfg["exponent"] = f.exponent;
    if (f.levels_set) cfg["levels"] = f.levels;
    if (f.kmax_set) cfg["k_max"] = f.k_max;
    if (f.growth_cell_set) cfg["growth_cell"] = f.growth_cell;
    if (f.pairs_set) cfg["pairs"] = f.pairs;
    if (!f.xi0.empty()) cfg["xi0"] = f.xi0;
    return cfg;
}

int dispatch(const std::string& command, const CommonFlags& f) {
    std::string config_text;
    if (!f.config_path.empty()) {
        std::FILE* fp = std::fopen(f.config_path.c_str(), "rb");
        if (!fp) {
            std::cerr << "error: cannot read config file: " << f.config_path << "\n";
            return 1;
        }
        std::string text;
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof(buf), fp)) > 0) text.append(buf, got);
        std::fclose(fp);
        config_text = text;
    } else {
        config_text = build_config(command, f).dump();
    }

    const heis::RunResult result = heis::run_config(config_text);
    if (f.print_json) {
        std::cout << result.report_json;
    } else {
        const json rep = json::parse(result.report_json);
        std::cout << rep.at("command").get<std::string>() << ": exit "
                  << result.exit_code << (result.exit_code == 0 ? " (consistent)" : "")
                  << (result.exit_code == 2 ? " (violation witnessed)" : "") << "\n";
        if (rep.contains("report") && rep.at("report").is_object()) {
            const json& r = rep.at("report");
            for (const char* key : {"verdict", "statistic", "measure", "pass", "min_ratio",
                                    "max_ratio", "analytic_constant", "diam_hs"})
                if (r.contains(key)) std::cout << "  " << key << ": " << r.at(key).dump() << "\n";
        }
        for (const std::string& path : result.files_written)
            std::cout << "  wrote " << path << "\n";
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heisconvex: numerical toolkit for H-convex analysis on the Heisenberg group"};
    app.require_subcommand(1);

    struct Entry {
        std::string group;
        std::string name;
        std::string help;
    };
    const std::vector<Entry> entries = {
        {"verify", "comparison", "inclusion-based comparison principle check"},
        {"verify", "boundary-min", "boundary minimum principle check"},
        {"verify", "aleksandrov", "Aleksandrov-type ratio survey"},
        {"verify", "geometric", "slice distance vs gauge distance ratio survey"},
        {"verify", "scaling", "dilation covariance identities"},
        {"verify", "harnack", "ball Harnack inequality check"},
        {"verify", "convexity", "midpoint H-convexity sampling"},
        {"measure", "normal-map", "raster measure of the horizontal normal map"},
        {"measure", "slicing", "per-plane slicing measure"},
        {"measure", "diam-hs", "horizontal slice diameter"},
        {"experiment", "sharpness", "boundary decay exponent sweep"},
        {"experiment", "prop-ma", "Monge-Ampere style integral and slice growth"},
        {"degree", "brouwer", "planar Brouwer degree demos"},
        {"degree", "set-valued", "set-valued degree and homotopy demos"},
    };

    std::map<std::string, CLI::App*> groups;
    for (const char* g : {"verify", "measure", "experiment", "degree"}) {
        groups[g] = app.add_subcommand(g, std::string(g) + " commands");
        groups[g]->require_subcommand(1);
    }

    std::vector<std::unique_ptr<CommonFlags>> flag_store;
    std::vector<std::pair<CLI::App*, std::string>> pending;
    for (const Entry& e : entries) {
        CLI::App* sub = groups[e.group]->add_subcommand(e.name, e.help);
        flag_store.push_back(std::make_unique<CommonFlags>());
        add_common(sub, *flag_store.back());
        pending.emplace_back(sub, e.group + "-" + e.name);
        sub->parse_complete_callback([]() {});
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Pin the exit-code contract: 0 for --help, 1 for any usage error
        // (CLI11's own codes vary by error kind).
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (std::size_t i = 0; i < pending.size(); ++i) {
        if (pending[i].first->parsed()) {
            try {
                return dispatch(pending[i].second, *flag_store[i]);
            } catch (const std::exception& ex) {
                std::cerr << "error: " << ex.what() << "\n";
                return 1;
            }
        }
    }
    std::cerr << "error: no subcommand selected\n";
    return 1;
}

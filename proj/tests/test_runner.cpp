#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "heisconvex/runner.hpp"
#include "json.hpp"

using namespace heis;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("config validation errors") {
    CHECK_THROWS_AS(run_config("not json"), std::invalid_argument);
    CHECK_THROWS_AS(run_config("{}"), std::invalid_argument);
    CHECK_THROWS_AS(run_config(R"({"command": "no-such-command"})"), std::invalid_argument);
    CHECK_THROWS_AS(run_config(R"({"command": "verify-geometric"})"), std::invalid_argument);
    CHECK_THROWS_AS(
        run_config(R"({"command": "verify-geometric", "gallery": {"name": "nope"}})"),
        std::invalid_argument);
    // Field-selecting command on an entry without that field.
    CHECK_THROWS_AS(
        run_config(R"({"command": "verify-scaling", "gallery": {"name": "cylinder"}})"),
        std::invalid_argument);
}

TEST_CASE("degree command runs all reference cases exactly") {
    const RunResult r = run_config(R"({"command": "degree-brouwer"})");
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.report_json);
    CHECK(rep.at("report").at("pass").get<bool>());
    REQUIRE(rep.at("report").at("cases").size() == 3);
    for (const auto& c : rep.at("report").at("cases"))
        CHECK(c.at("expected").get<int>() == c.at("computed").get<int>());
}

TEST_CASE("command names accept spaces and underscores") {
    const RunResult a = run_config(R"({"command": "degree brouwer"})");
    const RunResult b = run_config(R"({"command": "degree_brouwer"})");
    CHECK(a.exit_code == 0);
    CHECK(a.report_json == b.report_json);
}

TEST_CASE("violation witnessing maps to exit code 2") {
    const RunResult r = run_config(R"({
        "command": "verify-comparison",
        "gallery": {"name": "cylinder-bump"},
        "grids": {"cell": 0.05, "slice_samples": 128, "base_grid": 64, "seed": 1}
    })");
    CHECK(r.exit_code == 2);
    const json rep = json::parse(r.report_json);
    CHECK(rep.at("report").at("verdict").get<std::string>() == "violated");
    CHECK(rep.at("exit_code").get<int>() == 2);
}

TEST_CASE("witness cap is configurable through the grids block") {
    const RunResult r = run_config(R"({
        "command": "verify-comparison",
        "gallery": {"name": "cylinder-bump"},
        "grids": {"cell": 0.05, "slice_samples": 128, "base_grid": 64, "seed": 1,
                   "max_witnesses": 3}
    })");
    const json rep = json::parse(r.report_json);
    CHECK(rep.at("report").at("witnesses").size() == 3);
}

TEST_CASE("identical configs produce byte-identical reports and files") {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "heis-runner-determinism";
    fs::remove_all(base);
    const std::string d1 = (base / "a").string();
    const std::string d2 = (base / "b").string();
    const std::string cfg = R"({
        "command": "verify-geometric",
        "gallery": {"name": "ball", "params": {"R": 1.0}},
        "grids": {"cell": 0.1, "slice_samples": 64, "base_grid": 24, "seed": 7},
        "output_dir": ")";
    const RunResult r1 = run_config(cfg + d1 + "\"}");
    const RunResult r2 = run_config(cfg + d2 + "\"}");
    CHECK(r1.exit_code == r2.exit_code);
    REQUIRE(r1.files_written.size() == r2.files_written.size());
    REQUIRE(!r1.files_written.empty());
    // report_json embeds no paths except the files list; compare parsed
    // reports minus that list, then the data files byte for byte.
    json j1 = json::parse(r1.report_json);
    json j2 = json::parse(r2.report_json);
    j1.erase("files");
    j2.erase("files");
    CHECK(j1.dump() == j2.dump());
    for (std::size_t i = 0; i < r1.files_written.size(); ++i) {
        const std::string n1 = fs::path(r1.files_written[i]).filename().string();
        const std::string n2 = fs::path(r2.files_written[i]).filename().string();
        CHECK(n1 == n2);
        if (n1 == "report.json") continue;  // differs only in the embedded paths
        CHECK(slurp(r1.files_written[i]) == slurp(r2.files_written[i]));
    }
    fs::remove_all(base);
}

TEST_CASE("measurement run writes its raster artifact") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "heis-runner-raster";
    fs::remove_all(dir);
    const RunResult r = run_config(R"({
        "command": "measure-normal-map",
        "gallery": {"name": "cylinder-bump"},
        "field": "v",
        "grids": {"cell": 0.2, "slice_samples": 64, "base_grid": 256, "seed": 1},
        "output_dir": ")" + dir.string() + "\"}");
    CHECK(r.exit_code == 0);
    bool has_raster = false;
    for (const auto& f : r.files_written)
        if (fs::path(f).filename() == "raster.csv") has_raster = true;
    CHECK(has_raster);
    const json rep = json::parse(r.report_json);
    CHECK(rep.at("report").at("measure").get<double>() > 0.0);
    fs::remove_all(dir);
}

}  // TEST_SUITE

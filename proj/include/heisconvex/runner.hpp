// Config-driven command runner behind the CLI and the Python bindings: one
// call executes a verifier, measurement, experiment, or degree computation on
// a gallery configuration and (optionally) writes the JSON report and CSV
// plot data into an output directory.
//
// Config schema (JSON object):
//   command     "verify-comparison" | "verify-boundary-min" | "verify-aleksandrov"
//               | "verify-geometric" | "verify-scaling" | "verify-harnack"
//               | "verify-convexity" | "measure-normal-map" | "measure-slicing"
//               | "measure-diam-hs" | "experiment-sharpness" | "experiment-prop-ma"
//               | "degree-brouwer" | "degree-set-valued"   (spaces accepted for '-')
//   gallery     { "name": <entry>, "params": {<name>: <double>, ...} }
//   grids       { "cell": 0.05, "slice_samples": 256, "base_grid": 128, "seed": 1 }
//   threads     worker count (0 = HEISCONVEX_THREADS env or 1)
//   output_dir  directory for report.json + CSV data ("" = no files)
//   field       "u" | "v" (field-selecting commands; default "u")
//   R, lambda, mode, exponent, levels, k_max, pairs   command-specific knobs
//
// Exit codes: 0 = consistent/success, 2 = violation or expectation failure
// witnessed, and config/usage errors surface as exceptions (the CLI maps
// them to exit code 1). Identical config (including seed) produces
// byte-identical report and CSV files.
#pragma once

#include <string>
#include <vector>

namespace heis {

struct RunResult {
    int exit_code = 0;
    std::string report_json;  // full report document (also written as report.json)
    std::vector<std::string> files_written;
};

RunResult run_config(const std::string& config_text);

}  // namespace heis

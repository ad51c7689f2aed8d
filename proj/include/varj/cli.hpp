#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varj/distributions.hpp"

namespace varj {

enum class OutputFormat { text, json, csv };

struct RunConfig {
    std::string command;                    // measures | compare | bounds | genfun | order-stats | repro
    std::string dataset;                    // path or fixture name ("locomotive", "bearings")
    std::vector<Family> families;           // families fitted by MLE (compare)
    std::vector<std::string> candidates;    // fixed-parameter specs, "family:p1,p2" (compare)
    std::string x_spec;                     // distribution specs, "family:p1,p2"
    std::string y_spec;
    std::string parent_spec;                // order-stats parent
    int order_i = 1;
    int order_n = 1;
    std::vector<double> t_values;           // genfun evaluation points
    int series_n = 5;
    std::optional<double> cheb_eps;
    bool weighted = false;
    double tol = 1e-10;
    std::optional<double> bandwidth;
    int gridpoints = 512;
    long mc_draws = 0;                      // optional sampling cross-check
    long seed = 1;
    std::string output;                     // empty = stdout
    std::string plot;                       // optional SVG path
    OutputFormat format = OutputFormat::text;
    std::string example;                    // repro fixture name
};

// Parses "family:p1,p2" (e.g. "exp:5", "gamma:4.0255,0.0557").
Distribution parse_distribution_spec(const std::string& spec);

// Parses argv (without the program name). Throws Error("usage-error") on
// malformed input; help requests throw Error("help") with the text.
RunConfig parse_args(const std::vector<std::string>& args);

// One value per line, or comma/whitespace separated; blank lines and lines
// starting with '#' are ignored. The name may also be an embedded fixture.
Sample load_dataset(const std::string& source);

// Full entry point: parse, run, render. Returns the process exit code
// (0 on success, 2 for usage errors, 1 otherwise).
int run_cli(int argc, char** argv);

}  // namespace varj

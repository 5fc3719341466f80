#pragma once

#include <iosfwd>
#include <string>

namespace pathsum {

/// One command-line invocation. Empty strings mean "not given"; alpha and
/// omega are 1-based vertex labels with 0 meaning "not given".
struct JobSpec {
    std::string function;        // inverse|exp|log|power|resolvent|cost|graph
    std::string matrix_path;
    std::string partition_spec;
    std::string t;               // exp parameter
    std::string q;               // power exponent
    std::string s;               // resolvent point
    std::string mode;            // ""(follow the file) | "exact" | "float"
    double lift_tol = 1e-12;     // float-to-rational lifting tolerance
    int quad_order = 32;         // logarithm quadrature order
    int alpha = 0;               // cost job source vertex
    int omega = 0;               // cost job target vertex, defaults to alpha
    std::string out_path;
};

/// Runs the job, writes the result file, and reports problems on diag.
/// Returns 0 on success, 1 on a usage or input error, 2 on a numerical
/// failure (singular inverse, no analytic continuation, no convergence).
int run_job(const JobSpec& job, std::ostream& diag);

}  // namespace pathsum

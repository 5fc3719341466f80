#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "pathsum/matrix.hpp"
#include "pathsum/types.hpp"

namespace testutil {

using pathsum::GaussianRational;
using pathsum::Mat;
using pathsum::MatF;
using pathsum::MatX;

/// "p/q" or "p" as an exact real scalar.
inline GaussianRational q(const std::string& s) {
    mpq_class v(s);
    v.canonicalize();
    return GaussianRational(v);
}

/// Exact complex scalar from "p/q" strings.
inline GaussianRational qi(const std::string& re, const std::string& im) {
    mpq_class r(re), i(im);
    r.canonicalize();
    i.canonicalize();
    return GaussianRational(r, i);
}

/// Dense exact matrix from row-major "p/q" strings.
inline MatX exact_matrix(int rows, int cols, const std::vector<std::string>& entries) {
    MatX m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = q(entries[static_cast<size_t>(i * cols + j)]);
    return m;
}

/// Random exact matrix with small integer entries (deterministic seed).
inline MatX random_int_matrix(int rows, int cols, std::mt19937& rng, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> d(lo, hi);
    MatX m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = GaussianRational(d(rng));
    return m;
}

/// Random complex float matrix with entries in the unit box.
inline MatF random_float_matrix(int rows, int cols, std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    MatF m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = std::complex<double>(d(rng), d(rng));
    return m;
}

// ---- Shared fixture matrices (entries frozen from the worked examples the
// test suite is calibrated against). ----

/// Singular defective 5x5 with known fractional powers; partition groups
/// {0,1},{2,3,4}.
inline MatX power_example_matrix() {
    return exact_matrix(5, 5,
                        {"-4", "0",  "-1", "0",  "-1",
                         "-2", "-2", "6",  "-2", "4",
                         "6",  "2",  "1",  "-2", "3",
                         "0",  "0",  "-1", "-4", "-1",
                         "-6", "-2", "-5", "2",  "-7"});
}

inline MatX power_example_drazin() {
    MatX m = exact_matrix(5, 5,
                          {"-4", "0",  "1",  "0",  "1",
                           "6",  "-2", "4",  "-2", "2",
                           "-2", "2",  "3",  "-2", "5",
                           "0",  "0",  "1",  "-4", "1",
                           "2",  "-2", "-7", "2",  "-9"});
    return MatX(q("1/16") * m);
}

inline MatX power_example_projector() {
    MatX m = exact_matrix(5, 5,
                          {"8",  "0",  "0",   "0",  "0",
                           "-4", "4",  "-11", "4",  "-7",
                           "-4", "-4", "-3",  "4",  "-7",
                           "0",  "0",  "0",   "8",  "0",
                           "4",  "4",  "11",  "-4", "15"});
    return MatX(q("1/8") * m);
}

/// 5x5 with characteristic polynomial x^5 - x - 1; partition
/// {0},{2,4},{1,3} splits it into a chain.
inline MatX chain_example_matrix() {
    return exact_matrix(5, 5,
                        {"-1", "0",  "0",   "0",  "-1/2",
                         "0",  "2",  "5/2", "2",  "-1",
                         "-4", "0",  "0",   "0",  "-1",
                         "0",  "-1", "0",   "-2", "7/4",
                         "0",  "1",  "2",   "0",  "1"});
}

inline MatX chain_example_inverse() {
    MatX m = exact_matrix(5, 5,
                          {"8",   "0",   "-4", "0",   "0",
                           "64",  "-32", "-16", "-32", "40",
                           "-16", "16",  "4",  "16",  "-16",
                           "-60", "16",  "15", "12",  "-20",
                           "-32", "0",   "8",  "0",   "0"});
    return MatX(q("1/8") * m);
}

/// Complex 4x4 whose exponential is known; tensor dims (2,2) split after
/// the first factor gives groups {0,1},{2,3}.
inline MatX exp_example_matrix() {
    MatX m(4, 4);
    m << qi("1", "-1"), q("0"), qi("0", "-1"), q("0"),
         q("0"), qi("2", "-1"), q("-1/3"), q("0"),
         qi("0", "1"), q("0"), qi("0", "-1"), q("0"),
         q("3"), q("-7/2"), q("1"), q("-1");
    return m;
}

/// Defective 5x5 with single eigenvalue 6 and known principal logarithm;
/// groups {0,2,3},{1,4}.
inline MatX log_example_matrix() {
    return exact_matrix(5, 5,
                        {"4",  "1",  "1",  "2", "-1",
                         "-2", "7",  "1",  "0", "-1",
                         "0",  "-1", "5",  "2", "1",
                         "-2", "0",  "0",  "8", "0",
                         "-2", "-4", "-4", "6", "6"});
}

/// Principal logarithm of log_example_matrix(): log(6) I + (1/324) * integer matrix.
inline MatF log_example_result() {
    MatX m = exact_matrix(5, 5,
                          {"-108", "41",   "41",   "130", "-63",
                           "-126", "42",   "42",   "41",  "-65",
                           "18",   "-37",  "-37",  "71",  "56",
                           "-108", "5",    "5",    "112", "-9",
                           "-108", "-211", "-211", "328", "-9"});
    MatF r = pathsum::to_float(m) / 324.0;
    for (int i = 0; i < 5; ++i) r(i, i) += std::log(6.0);
    return r;
}

}  // namespace testutil

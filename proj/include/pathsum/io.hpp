#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pathsum/partition.hpp"
#include "pathsum/types.hpp"

namespace pathsum {

/// A matrix read from the text format. The header mode decides which member
/// is authoritative: exact files fill xmat (fmat is its rounding), float
/// files fill fmat only.
struct ParsedMatrix {
    bool exact = true;
    MatX xmat;
    MatF fmat;

    Eigen::Index rows() const { return exact ? xmat.rows() : fmat.rows(); }
    Eigen::Index cols() const { return exact ? xmat.cols() : fmat.cols(); }
};

/// Text format: header "matrix R C mode" with mode in {exact, float}, then R
/// lines of C whitespace-separated entries. An entry is `re`, `re+imi`, or
/// `re-imi`; each part is an integer, a `p/q` rational, or a decimal with an
/// optional exponent. Exact files parse losslessly (decimals become exact
/// rationals); float entries go through strtod so serialized doubles round
/// trip bitwise.
ParsedMatrix parse_matrix_text(const std::string& text);
ParsedMatrix parse_matrix(const std::string& path);

std::string serialize_matrix(const MatX& m);
std::string serialize_matrix(const MatF& m);

/// Scalar literal in the entry grammar above, parsed losslessly.
GaussianRational parse_exact_scalar(const std::string& text);
/// Same grammar; parts read as doubles (rationals fall back to exact).
std::complex<double> parse_float_scalar(const std::string& text);

/// Index groups from a partition spec over a D-dimensional index set. Forms:
///   "trivial"                 one group
///   "singletons"              D groups
///   "tensor:d1xd2x...:s"      tensor_groups(dims, s, D)
///   "{1,3,4},{2}"             explicit 1-based groups
/// Any other spec naming a readable file is replaced by that file's content.
/// Groups must cover 1..D without overlap. Throws BadGroups.
std::vector<std::vector<int>> parse_partition(const std::string& spec, Eigen::Index D);

/// Edge list of a partition graph: header "graph n", a "dims d1 ... dn"
/// line, then one line per edge in (from, to) row-major order, "u -> v" with
/// 1-based vertices and a "loop" suffix on diagonal edges.
template <class S>
std::string serialize_graph(const PartitionGraph<S>& g) {
    const int n = g.size();
    std::string out = "graph " + std::to_string(n) + "\ndims";
    for (int v = 0; v < n; ++v) out += " " + std::to_string(g.dim(v));
    out += "\n";
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v ? !g.has_loop(u) : !g.has_link(u, v)) continue;
            out += std::to_string(u + 1) + " -> " + std::to_string(v + 1);
            if (u == v) out += " loop";
            out += "\n";
        }
    return out;
}

}  // namespace pathsum

#pragma once

#include <cstdint>
#include <vector>

#include "pathsum/errors.hpp"
#include "pathsum/types.hpp"

namespace pathsum {

/// A matrix with its index set split into disjoint groups, plus the full
/// n x n table of blocks: block(mu, nu)[k, l] = source[groups[mu][k], groups[nu][l]].
/// Diagonal blocks are the statics M_mu, off-diagonal ones the flips M_{mu nu}.
template <class S>
struct Partition {
    Eigen::Index D = 0;
    std::vector<std::vector<int>> groups;
    Mat<S> source;
    std::vector<Mat<S>> blocks;  // row-major n*n table

    int group_count() const { return static_cast<int>(groups.size()); }
    int dim(int mu) const { return static_cast<int>(groups[static_cast<size_t>(mu)].size()); }

    const Mat<S>& block(int mu, int nu) const {
        return blocks[static_cast<size_t>(mu) * groups.size() + static_cast<size_t>(nu)];
    }
};

/// Split M along explicit (0-based) index groups.
template <class S>
Partition<S> general_partition(const Mat<S>& m, std::vector<std::vector<int>> groups) {
    if (m.rows() != m.cols()) throw NonSquare("general_partition: matrix is not square");
    const Eigen::Index D = m.rows();
    std::vector<bool> seen(static_cast<size_t>(D), false);
    Eigen::Index covered = 0;
    for (const auto& g : groups) {
        if (g.empty()) throw BadGroups("general_partition: empty group");
        for (int idx : g) {
            if (idx < 0 || idx >= D) throw BadGroups("general_partition: index out of range");
            if (seen[static_cast<size_t>(idx)]) throw BadGroups("general_partition: groups overlap");
            seen[static_cast<size_t>(idx)] = true;
            ++covered;
        }
    }
    if (covered != D) throw BadGroups("general_partition: groups leave a gap");

    Partition<S> p;
    p.D = D;
    p.groups = std::move(groups);
    p.source = m;
    const size_t n = p.groups.size();
    p.blocks.resize(n * n);
    for (size_t mu = 0; mu < n; ++mu)
        for (size_t nu = 0; nu < n; ++nu) {
            const auto& gm = p.groups[mu];
            const auto& gn = p.groups[nu];
            Mat<S> b(static_cast<Eigen::Index>(gm.size()), static_cast<Eigen::Index>(gn.size()));
            for (size_t k = 0; k < gm.size(); ++k)
                for (size_t l = 0; l < gn.size(); ++l)
                    b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = m(gm[k], gn[l]);
            p.blocks[mu * n + nu] = std::move(b);
        }
    return p;
}

/// Index groups of the tensor-product partition of a D-dimensional space of
/// shape dims (row-major) keeping subsystem s (1-based position) free: one
/// group per multi-index over the other subsystems, each of dimension dims[s-1].
inline std::vector<std::vector<int>> tensor_groups(const std::vector<int>& dims, int s, Eigen::Index D) {
    const int N = static_cast<int>(dims.size());
    if (N == 0 || s < 1 || s > N) throw BadDims("tensor_groups: subsystem index out of range");
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw BadDims("tensor_groups: dimensions must be positive");
        total *= d;
    }
    if (total != D) throw BadDims("tensor_groups: dimensions do not multiply to the matrix size");

    std::vector<long> stride(static_cast<size_t>(N), 1);
    for (int k = N - 2; k >= 0; --k)
        stride[static_cast<size_t>(k)] = stride[static_cast<size_t>(k + 1)] * dims[static_cast<size_t>(k + 1)];

    const int si = s - 1;
    std::vector<std::vector<int>> groups;
    std::vector<int> multi(static_cast<size_t>(N), 0);  // multi[si] stays 0
    while (true) {
        long base = 0;
        for (int k = 0; k < N; ++k)
            if (k != si) base += multi[static_cast<size_t>(k)] * stride[static_cast<size_t>(k)];
        std::vector<int> g;
        g.reserve(static_cast<size_t>(dims[static_cast<size_t>(si)]));
        for (int v = 0; v < dims[static_cast<size_t>(si)]; ++v)
            g.push_back(static_cast<int>(base + v * stride[static_cast<size_t>(si)]));
        groups.push_back(std::move(g));

        // advance the reduced multi-index in row-major order
        int k = N - 1;
        for (; k >= 0; --k) {
            if (k == si) continue;
            if (++multi[static_cast<size_t>(k)] < dims[static_cast<size_t>(k)]) break;
            multi[static_cast<size_t>(k)] = 0;
        }
        if (k < 0) break;
    }
    return groups;
}

/// Partition induced by a tensor-product index space; see tensor_groups.
template <class S>
Partition<S> tensor_partition(const Mat<S>& m, const std::vector<int>& dims, int s) {
    if (m.rows() != m.cols()) throw NonSquare("tensor_partition: matrix is not square");
    return general_partition(m, tensor_groups(dims, s, m.rows()));
}

/// Scatter an n x n block table back into a dense matrix along groups.
template <class S>
Mat<S> scatter_blocks(const std::vector<std::vector<int>>& groups, Eigen::Index D,
                      const std::vector<Mat<S>>& table) {
    const size_t n = groups.size();
    Mat<S> m = Mat<S>::Zero(D, D);
    for (size_t mu = 0; mu < n; ++mu)
        for (size_t nu = 0; nu < n; ++nu) {
            const Mat<S>& b = table[mu * n + nu];
            for (size_t k = 0; k < groups[mu].size(); ++k)
                for (size_t l = 0; l < groups[nu].size(); ++l)
                    m(groups[mu][k], groups[nu][l]) = b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
        }
    return m;
}

/// Reassembled source; identity on a partition built by general_partition.
template <class S>
Mat<S> reassemble(const Partition<S>& p) {
    return scatter_blocks(p.groups, p.D, p.blocks);
}

/// Which matrix gates edge existence: M itself (resolvent-family graphs) or
/// M - I (inverse/power/log graphs). Weights always come from M; off-diagonal
/// blocks of M and M-I coincide, so the variants differ only in loop flags.
enum class GraphVariant { OfM, OfMMinusI };

/// Weighted directed graph over partition groups. Links are encoded as
/// successor bit masks (vertex count capped at 64); loops are flags. Edge
/// (nu -> mu) exists iff block(mu, nu) is nonzero; loop presence follows the
/// variant rule. Zero tests are exact in exact mode and use the entrywise
/// threshold 1e-14 * ||M||_max in float mode.
template <class S>
struct PartitionGraph {
    GraphVariant variant = GraphVariant::OfM;
    Partition<S> partition;
    std::vector<std::uint64_t> out_links;  // out_links[v] bit u: link v -> u
    std::vector<std::uint64_t> in_links;   // in_links[v] bit u: link u -> v
    std::vector<bool> loops;

    int size() const { return partition.group_count(); }
    int dim(int v) const { return partition.dim(v); }

    bool has_link(int from, int to) const {
        return (out_links[static_cast<size_t>(from)] >> to) & 1u;
    }
    bool has_loop(int v) const { return loops[static_cast<size_t>(v)]; }

    /// Weight of the step from vertex `from` to vertex `to`: block(to, from).
    const Mat<S>& weight(int to, int from) const { return partition.block(to, from); }
};

namespace detail {

template <class S>
bool block_is_zero(const Mat<S>& b, double tol) {
    if constexpr (ScalarTraits<S>::is_exact) {
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            for (Eigen::Index i = 0; i < b.rows(); ++i)
                if (!b(i, j).is_zero()) return false;
        return true;
    } else {
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            for (Eigen::Index i = 0; i < b.rows(); ++i)
                if (abs_approx(b(i, j)) > tol) return false;
        return true;
    }
}

template <class S>
bool block_is_identity(const Mat<S>& b, double tol) {
    Mat<S> d = b - Mat<S>::Identity(b.rows(), b.cols());
    return block_is_zero(d, tol);
}

}  // namespace detail

template <class S>
PartitionGraph<S> partition_graph(Partition<S> p, GraphVariant variant) {
    const int n = p.group_count();
    if (n > 64) throw TooManyGroups("partition_graph: more than 64 groups");
    PartitionGraph<S> g;
    g.variant = variant;
    g.out_links.assign(static_cast<size_t>(n), 0);
    g.in_links.assign(static_cast<size_t>(n), 0);
    g.loops.assign(static_cast<size_t>(n), false);
    const double tol = ScalarTraits<S>::is_exact ? 0.0 : 1e-14 * max_abs(p.source);
    for (int mu = 0; mu < n; ++mu) {
        if (variant == GraphVariant::OfM) {
            g.loops[static_cast<size_t>(mu)] = !detail::block_is_zero(p.block(mu, mu), tol);
        } else {
            g.loops[static_cast<size_t>(mu)] = !detail::block_is_identity(p.block(mu, mu), tol);
        }
        for (int nu = 0; nu < n; ++nu) {
            if (nu == mu) continue;
            if (!detail::block_is_zero(p.block(mu, nu), tol)) {
                // link nu -> mu
                g.out_links[static_cast<size_t>(nu)] |= (1ull << mu);
                g.in_links[static_cast<size_t>(mu)] |= (1ull << nu);
            }
        }
    }
    g.partition = std::move(p);
    return g;
}

/// Permutation concatenating the groups; permute_symmetric with it makes
/// every block a contiguous sub-matrix.
template <class S>
std::vector<int> block_permutation(const Partition<S>& p) {
    std::vector<int> perm;
    perm.reserve(static_cast<size_t>(p.D));
    for (const auto& g : p.groups) perm.insert(perm.end(), g.begin(), g.end());
    return perm;
}

}  // namespace pathsum

#pragma once

#include <cstdint>
#include <vector>

#include "pathsum/partition.hpp"

namespace pathsum {

/// Set of graph vertices as a 64-bit mask.
struct VertexSet {
    std::uint64_t bits = 0;

    bool contains(int v) const { return (bits >> v) & 1u; }
    void insert(int v) { bits |= (1ull << v); }
    void erase(int v) { bits &= ~(1ull << v); }
    bool empty() const { return bits == 0; }
    VertexSet with(int v) const {
        VertexSet s = *this;
        s.insert(v);
        return s;
    }
    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits == b.bits; }
    friend bool operator!=(const VertexSet& a, const VertexSet& b) { return a.bits != b.bits; }
    friend bool operator<(const VertexSet& a, const VertexSet& b) { return a.bits < b.bits; }
};

/// Self-avoiding walk alpha, v2, ..., omega; length = edge count, so a
/// single vertex is the zero-length path.
struct Path {
    std::vector<int> vertices;
    int length() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Closed walk alpha, mu2, ..., mu_m, alpha whose internal vertices are
/// distinct and differ from alpha; stored with the closing vertex, so
/// length = vertices.size() - 1 >= 2. Loops are never bare cycles here.
struct BareCycle {
    std::vector<int> vertices;
    int length() const { return static_cast<int>(vertices.size()) - 1; }
};

namespace detail {

template <class S>
void path_dfs(const PartitionGraph<S>& g, int v, int omega, std::uint64_t blocked,
              std::vector<int>& stack, std::vector<Path>& out) {
    if (v == omega) {
        out.push_back(Path{stack});
        return;
    }
    const int n = g.size();
    for (int u = 0; u < n; ++u) {
        if (!g.has_link(v, u)) continue;
        if ((blocked >> u) & 1u) continue;
        stack.push_back(u);
        path_dfs(g, u, omega, blocked | (1ull << u), stack, out);
        stack.pop_back();
    }
}

template <class S>
void cycle_dfs(const PartitionGraph<S>& g, int v, int alpha, std::uint64_t blocked,
               std::vector<int>& stack, std::vector<BareCycle>& out) {
    const int n = g.size();
    for (int u = 0; u < n; ++u) {
        if (!g.has_link(v, u)) continue;
        if (u == alpha) {
            stack.push_back(alpha);
            out.push_back(BareCycle{stack});
            stack.pop_back();
            continue;
        }
        if ((blocked >> u) & 1u) continue;
        stack.push_back(u);
        cycle_dfs(g, u, alpha, blocked | (1ull << u), stack, out);
        stack.pop_back();
    }
}

}  // namespace detail

/// All simple paths alpha -> omega through live vertices, in lexicographic
/// order of the vertex sequence. alpha = omega yields the zero-length path.
template <class S>
std::vector<Path> simple_paths(const PartitionGraph<S>& g, VertexSet removed, int alpha, int omega) {
    if (removed.contains(alpha)) throw VertexRemoved("simple_paths: start vertex was deleted");
    if (removed.contains(omega)) throw VertexRemoved("simple_paths: end vertex was deleted");
    std::vector<Path> out;
    std::vector<int> stack{alpha};
    detail::path_dfs(g, alpha, omega, removed.bits | (1ull << alpha), stack, out);
    return out;
}

/// All bare cycles (length >= 2) off alpha among live vertices; graph loops
/// are excluded by construction since only links are walked.
template <class S>
std::vector<BareCycle> bare_cycles(const PartitionGraph<S>& g, VertexSet removed, int alpha) {
    if (removed.contains(alpha)) throw VertexRemoved("bare_cycles: vertex was deleted");
    std::vector<BareCycle> out;
    std::vector<int> stack{alpha};
    detail::cycle_dfs(g, alpha, alpha, removed.bits | (1ull << alpha), stack, out);
    return out;
}

namespace detail {

template <class S>
void walk_power_dfs(const PartitionGraph<S>& g, int v, int omega, int steps_left,
                    const Mat<S>& prod, Mat<S>& acc) {
    if (steps_left == 0) {
        if (v == omega) acc += prod;
        return;
    }
    const int n = g.size();
    for (int u = 0; u < n; ++u) {
        const bool step = (u == v) ? g.has_loop(v) : g.has_link(v, u);
        if (!step) continue;
        Mat<S> next = g.weight(u, v) * prod;
        walk_power_dfs(g, u, omega, steps_left - 1, next, acc);
    }
}

}  // namespace detail

/// Sum over all length-k walks alpha -> omega of the right-to-left products
/// of step weights; equals the (omega, alpha) block of M^k. Exponential in
/// k, intended as a cross-check oracle for the graph layer only.
template <class S>
Mat<S> walk_contributions_power(const PartitionGraph<S>& g, int alpha, int omega, int k) {
    const Eigen::Index da = g.partition.dim(alpha);
    const Eigen::Index dw = g.partition.dim(omega);
    Mat<S> acc = Mat<S>::Zero(dw, da);
    Mat<S> start = Mat<S>::Identity(da, da);
    detail::walk_power_dfs(g, alpha, omega, k, start, acc);
    return acc;
}

}  // namespace pathsum

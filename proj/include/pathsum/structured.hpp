#pragma once

#include <queue>
#include <utility>
#include <vector>

#include "pathsum/errors.hpp"
#include "pathsum/matrix.hpp"
#include "pathsum/partition.hpp"
#include "pathsum/ratfn.hpp"
#include "pathsum/transforms.hpp"

namespace pathsum {

/// Blocks of a chain-structured (block tridiagonal up to permutation) matrix:
/// square statics M_1..M_N plus the super/sub flips between neighbours.
/// Block dimensions may differ per vertex.
template <typename S>
struct LnBlocks {
    std::vector<Mat<S>> statics;  // M_k, k = 0..n-1
    std::vector<Mat<S>> super;    // M_{k,k+1}, k = 0..n-2
    std::vector<Mat<S>> sub;      // M_{k+1,k}, k = 0..n-2

    int size() const { return static_cast<int>(statics.size()); }
    int dim(int k) const { return static_cast<int>(statics[static_cast<size_t>(k)].rows()); }
    int total_dim() const {
        int d = 0;
        for (const auto& b : statics) d += static_cast<int>(b.rows());
        return d;
    }
};

/// Extract chain blocks from a partition whose groups, in order, form a chain.
/// Every block with |k-k'| > 1 must be zero.
template <typename S>
LnBlocks<S> ln_blocks(const Partition<S>& p) {
    const int n = p.group_count();
    LnBlocks<S> b;
    for (int k = 0; k < n; ++k) b.statics.push_back(p.block(k, k));
    for (int k = 0; k + 1 < n; ++k) {
        b.super.push_back(p.block(k, k + 1));
        b.sub.push_back(p.block(k + 1, k));
    }
    const double tol = ScalarTraits<S>::is_exact ? 0.0 : 1e-14 * max_abs(p.source);
    for (int k = 0; k < n; ++k)
        for (int kp = 0; kp < n; ++kp)
            if (std::abs(k - kp) > 1 && !detail::block_is_zero(p.block(k, kp), tol))
                throw BadGroups("ln_blocks: matrix is not chain structured on these groups");
    return b;
}

template <typename S>
LnBlocks<S> ln_blocks(const Mat<S>& m, const std::vector<std::vector<int>>& groups) {
    return ln_blocks(general_partition(m, groups));
}

/// Assemble the contiguous block tridiagonal matrix the blocks describe.
template <typename S>
Mat<S> assemble_chain(const LnBlocks<S>& b) {
    const int n = b.size();
    std::vector<int> offset(static_cast<size_t>(n) + 1, 0);
    for (int k = 0; k < n; ++k) offset[static_cast<size_t>(k) + 1] = offset[static_cast<size_t>(k)] + b.dim(k);
    Mat<S> m = Mat<S>::Zero(b.total_dim(), b.total_dim());
    for (int k = 0; k < n; ++k) {
        m.block(offset[static_cast<size_t>(k)], offset[static_cast<size_t>(k)], b.dim(k), b.dim(k)) =
            b.statics[static_cast<size_t>(k)];
        if (k + 1 < n) {
            m.block(offset[static_cast<size_t>(k)], offset[static_cast<size_t>(k) + 1], b.dim(k), b.dim(k + 1)) =
                b.super[static_cast<size_t>(k)];
            m.block(offset[static_cast<size_t>(k) + 1], offset[static_cast<size_t>(k)], b.dim(k + 1), b.dim(k)) =
                b.sub[static_cast<size_t>(k)];
        }
    }
    return m;
}

namespace detail {

/// Shared chain solver. Given already-transformed statics A_k and the flips
/// of M, produces the n^2 block table of the inverse of the tridiagonal
/// matrix with diagonal A_k and off-diagonal -M_{k,k+1} / -M_{k+1,k}.
/// negate_paths flips the sign of every off-diagonal step (the path sign of
/// the plain-inverse expansion).
template <typename R>
std::vector<Mat<R>> chain_table(const std::vector<Mat<R>>& statics,
                                const std::vector<Mat<R>>& super,
                                const std::vector<Mat<R>>& sub,
                                bool negate_paths) {
    const int n = static_cast<int>(statics.size());
    auto inv = [](const Mat<R>& a) { return field_inverse<R, SingularChain>(a, "chain step"); };

    // X[k] dresses k against k+1..n-1, Y[k] against 0..k-1; keep the
    // brackets too, the diagonal combination reuses them
    std::vector<Mat<R>> X(static_cast<size_t>(n)), Y(static_cast<size_t>(n));
    std::vector<Mat<R>> xbr(static_cast<size_t>(n)), ybr(static_cast<size_t>(n));
    xbr[static_cast<size_t>(n) - 1] = statics[static_cast<size_t>(n) - 1];
    X[static_cast<size_t>(n) - 1] = inv(xbr[static_cast<size_t>(n) - 1]);
    for (int k = n - 2; k >= 0; --k) {
        xbr[static_cast<size_t>(k)] =
            statics[static_cast<size_t>(k)] -
            super[static_cast<size_t>(k)] * X[static_cast<size_t>(k) + 1] * sub[static_cast<size_t>(k)];
        X[static_cast<size_t>(k)] = inv(xbr[static_cast<size_t>(k)]);
    }
    ybr[0] = statics[0];
    Y[0] = inv(ybr[0]);
    for (int k = 1; k < n; ++k) {
        ybr[static_cast<size_t>(k)] =
            statics[static_cast<size_t>(k)] -
            sub[static_cast<size_t>(k) - 1] * Y[static_cast<size_t>(k) - 1] * super[static_cast<size_t>(k) - 1];
        Y[static_cast<size_t>(k)] = inv(ybr[static_cast<size_t>(k)]);
    }

    std::vector<Mat<R>> table(static_cast<size_t>(n) * static_cast<size_t>(n));
    auto at = [&](int row, int col) -> Mat<R>& { return table[static_cast<size_t>(row * n + col)]; };
    for (int k = 0; k < n; ++k)
        at(k, k) = inv(Mat<R>(xbr[static_cast<size_t>(k)] + ybr[static_cast<size_t>(k)] -
                              statics[static_cast<size_t>(k)]));
    for (int kp = 0; kp < n; ++kp) {
        Mat<R> down = at(kp, kp);
        for (int k = kp + 1; k < n; ++k) {
            down = Mat<R>(X[static_cast<size_t>(k)] * sub[static_cast<size_t>(k) - 1] * down);
            if (negate_paths) down = Mat<R>(-down);
            at(k, kp) = down;
        }
        Mat<R> up = at(kp, kp);
        for (int k = kp - 1; k >= 0; --k) {
            up = Mat<R>(Y[static_cast<size_t>(k)] * super[static_cast<size_t>(k)] * up);
            if (negate_paths) up = Mat<R>(-up);
            at(k, kp) = up;
        }
    }
    return table;
}

}  // namespace detail

/// Block table of (sI - M)^{-1} by the two-sided continued-fraction
/// recursions; table[k*n + k'] is the (k,k') block.
template <typename S>
std::vector<Mat<S>> ln_resolvent(const LnBlocks<S>& b, const S& s) {
    const int n = b.size();
    std::vector<Mat<S>> statics;
    statics.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        statics.push_back(Mat<S>(s * Mat<S>::Identity(b.dim(k), b.dim(k)) - b.statics[static_cast<size_t>(k)]));
    return detail::chain_table(statics, b.super, b.sub, false);
}

/// Same recursions over the rational-function field, s left symbolic.
inline std::vector<RatMat> ln_resolvent_symbolic(const LnBlocks<GaussianRational>& b) {
    const int n = b.size();
    const RatFnX z = RatFnX::variable();
    std::vector<RatMat> statics, super, sub;
    for (int k = 0; k < n; ++k)
        statics.push_back(RatMat(z * RatMat::Identity(b.dim(k), b.dim(k)) -
                                 lift_to_ratfn(b.statics[static_cast<size_t>(k)])));
    for (int k = 0; k + 1 < n; ++k) {
        super.push_back(lift_to_ratfn(b.super[static_cast<size_t>(k)]));
        sub.push_back(lift_to_ratfn(b.sub[static_cast<size_t>(k)]));
    }
    return detail::chain_table(statics, super, sub, false);
}

/// Block table of M^{-1}: statics stay M_k (every bare cycle on a chain has
/// even length, so cycle signs vanish) and each off-diagonal step carries -1.
template <typename S>
std::vector<Mat<S>> ln_inverse(const LnBlocks<S>& b) {
    return detail::chain_table(b.statics, b.super, b.sub, true);
}

/// Literal "statics become I - M_k" substitution with unchanged flips. The
/// tridiagonal matrix this inverts is I - M, not M; feeding it the blocks of
/// I - M recovers ln_inverse (each flip of I - M carries the -1 that the
/// path sign otherwise supplies). Kept for the cross-check tests.
template <typename S>
std::vector<Mat<S>> ln_shifted_inverse(const LnBlocks<S>& b) {
    const int n = b.size();
    std::vector<Mat<S>> statics;
    statics.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        statics.push_back(Mat<S>(Mat<S>::Identity(b.dim(k), b.dim(k)) - b.statics[static_cast<size_t>(k)]));
    return detail::chain_table(statics, b.super, b.sub, false);
}

/// exp(tM) for an exact chain: symbolic resolvent, then entrywise inverse
/// Laplace transform evaluated at t.
inline std::vector<MatF> ln_exp(const LnBlocks<GaussianRational>& b, double t) {
    std::vector<RatMat> sym = ln_resolvent_symbolic(b);
    std::vector<MatF> table(sym.size());
    for (size_t idx = 0; idx < sym.size(); ++idx) {
        const RatMat& blk = sym[idx];
        MatF out(blk.rows(), blk.cols());
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j) out(i, j) = invert_Laplace(blk(i, j)).eval(t);
        table[idx] = out;
    }
    return table;
}

/// Scatter an n^2 block table back onto the index groups of the partition it
/// came from.
template <typename S>
Mat<S> scatter_chain_table(const std::vector<Mat<S>>& table, const std::vector<std::vector<int>>& groups, int D) {
    return scatter_blocks(groups, D, table);
}

/// Operation counts of d x d block arithmetic; flops treats an inversion or
/// multiplication as d^3 work and an addition as d^2.
struct CostReport {
    long inversions = 0;
    long multiplications = 0;
    long additions = 0;

    long flops(long d) const { return (inversions + multiplications) * d * d * d + additions * d * d; }
};

namespace detail {

struct TreeAdjacency {
    int n = 0;
    std::vector<std::vector<int>> nbrs;
};

inline TreeAdjacency checked_tree(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n <= 0) throw NotATree("tree_cost: empty vertex set");
    if (static_cast<int>(edges.size()) != n - 1)
        throw NotATree("tree_cost: a tree on n vertices has exactly n-1 edges");
    TreeAdjacency t;
    t.n = n;
    t.nbrs.assign(static_cast<size_t>(n), {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw NotATree("tree_cost: edge endpoint out of range");
        if (u == v) throw NotATree("tree_cost: self edge");
        t.nbrs[static_cast<size_t>(u)].push_back(v);
        t.nbrs[static_cast<size_t>(v)].push_back(u);
    }
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        ++count;
        for (int u : t.nbrs[static_cast<size_t>(v)])
            if (!seen[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = 1;
                q.push(u);
            }
    }
    if (count != n) throw NotATree("tree_cost: graph is disconnected");
    return t;
}

/// Size of the connected component of v with `gone` vertices removed.
inline int live_component_size(const TreeAdjacency& t, const std::vector<char>& gone, int v) {
    std::vector<char> seen(static_cast<size_t>(t.n), 0);
    std::queue<int> q;
    q.push(v);
    seen[static_cast<size_t>(v)] = 1;
    int count = 0;
    while (!q.empty()) {
        int w = q.front();
        q.pop();
        ++count;
        for (int u : t.nbrs[static_cast<size_t>(w)])
            if (!seen[static_cast<size_t>(u)] && !gone[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = 1;
                q.push(u);
            }
    }
    return count;
}

inline bool tree_path(const TreeAdjacency& t, int v, int target, std::vector<char>& seen, std::vector<int>& out) {
    out.push_back(v);
    if (v == target) return true;
    seen[static_cast<size_t>(v)] = 1;
    for (int u : t.nbrs[static_cast<size_t>(v)]) {
        if (seen[static_cast<size_t>(u)]) continue;
        if (tree_path(t, u, target, seen, out)) return true;
    }
    out.pop_back();
    return false;
}

}  // namespace detail

/// Predicted block-operation counts for one partition element of a matrix
/// function on a tree: dressing a vertex costs (N, 2(N-1), N-1) on its
/// N-vertex live component; an off-diagonal element adds two multiplications
/// per path step and re-dresses each successive vertex on the tree pruned of
/// its predecessors.
inline CostReport tree_cost(int n, const std::vector<std::pair<int, int>>& edges, int alpha, int omega) {
    detail::TreeAdjacency t = detail::checked_tree(n, edges);
    if (alpha < 0 || alpha >= n || omega < 0 || omega >= n)
        throw NotATree("tree_cost: vertex out of range");

    auto dressing = [&](const std::vector<char>& gone, int v) {
        const int live = detail::live_component_size(t, gone, v);
        CostReport r;
        r.inversions = live;
        r.multiplications = 2 * (live - 1);
        r.additions = live - 1;
        return r;
    };

    std::vector<char> gone(static_cast<size_t>(n), 0);
    CostReport total;
    if (alpha == omega) return dressing(gone, alpha);

    std::vector<int> path;
    std::vector<char> seen(static_cast<size_t>(n), 0);
    detail::tree_path(t, alpha, omega, seen, path);
    const long ell = static_cast<long>(path.size()) - 1;
    total.multiplications += 2 * ell;
    for (size_t i = 0; i < path.size(); ++i) {
        CostReport r = dressing(gone, path[i]);
        total.inversions += r.inversions;
        total.multiplications += r.multiplications;
        total.additions += r.additions;
        gone[static_cast<size_t>(path[i])] = 1;
    }
    return total;
}

}  // namespace pathsum

#pragma once

#include <functional>
#include <map>
#include <utility>

#include "pathsum/matrix.hpp"
#include "pathsum/ratfn.hpp"
#include "pathsum/walks.hpp"

namespace pathsum {

/// One functional flavor of the dressing recursion. S is the scalar of the
/// partitioned matrix, R the entry ring of the dressed blocks (R = S for
/// pointwise runs, R = RatFn<S> for symbolic ones). Flip weights are always
/// blocks of M; the flavor chooses the vertex base term and the sign each
/// bare cycle (length m) and each path (length ell) carries. path_sign(0)
/// is 1 in every flavor: the zero-length path passes the dressed weight
/// through unchanged.
template <class S, class R>
struct DressVariant {
    std::function<Mat<R>(const Mat<S>&)> base;  // diagonal block -> B_alpha
    std::function<Mat<R>(const Mat<S>&)> lift;  // flip block into the ring
    std::function<R(int)> cycle_sign;
    std::function<R(int)> path_sign;
};

namespace detail {

template <class S>
Mat<S> lift_same(const Mat<S>& b) {
    return b;
}

}  // namespace detail

/// Plain inverse: B_alpha = M_alpha, cycle sign (-1)^m, path sign (-1)^ell.
template <class S>
DressVariant<S, S> inverse_variant() {
    return DressVariant<S, S>{
        detail::lift_same<S>,
        detail::lift_same<S>,
        [](int m) { return (m % 2 == 0) ? ScalarTraits<S>::from_int(1) : ScalarTraits<S>::from_int(-1); },
        [](int ell) { return (ell % 2 == 0) ? ScalarTraits<S>::from_int(1) : ScalarTraits<S>::from_int(-1); },
    };
}

/// Resolvent at a point: B_alpha = s I - M_alpha, all signs +1.
template <class S>
DressVariant<S, S> resolvent_variant(const S& s) {
    return DressVariant<S, S>{
        [s](const Mat<S>& d) { return Mat<S>(s * Mat<S>::Identity(d.rows(), d.cols()) - d); },
        detail::lift_same<S>,
        [](int) { return ScalarTraits<S>::one(); },
        [](int) { return ScalarTraits<S>::one(); },
    };
}

/// Resolvent with the point left symbolic: entries are rational functions
/// of the resolvent variable.
template <class S>
DressVariant<S, RatFn<S>> resolvent_symbolic_variant() {
    return DressVariant<S, RatFn<S>>{
        [](const Mat<S>& d) {
            const RatFn<S> z = RatFn<S>::variable();
            Mat<RatFn<S>> b = Mat<RatFn<S>>::Identity(d.rows(), d.cols());
            b *= z;
            b -= lift_to_ratfn(d);
            return b;
        },
        [](const Mat<S>& b) { return lift_to_ratfn(b); },
        [](int) { return RatFn<S>(1); },
        [](int) { return RatFn<S>(1); },
    };
}

/// Power-series flavor: B_alpha = I z^{-1} - M_alpha over rational
/// functions of z, all signs +1.
template <class S>
DressVariant<S, RatFn<S>> power_z_variant() {
    return DressVariant<S, RatFn<S>>{
        [](const Mat<S>& d) {
            const RatFn<S> zinv = RatFn<S>::variable().reciprocal();
            Mat<RatFn<S>> b = Mat<RatFn<S>>::Identity(d.rows(), d.cols());
            b *= zinv;
            b -= lift_to_ratfn(d);
            return b;
        },
        [](const Mat<S>& b) { return lift_to_ratfn(b); },
        [](int) { return RatFn<S>(1); },
        [](int) { return RatFn<S>(1); },
    };
}

/// Logarithm integrand flavor at a quadrature point x:
/// B_alpha = I - x(I - M_alpha), cycle sign (-x)^m, path sign (-x)^(ell-1).
/// The diagonal's x^{-1}(I - F) form is applied by the caller.
template <class S>
DressVariant<S, S> log_x_variant(const S& x) {
    auto pow_neg_x = [x](int k) {
        S r = ScalarTraits<S>::one();
        for (int i = 0; i < k; ++i) r = r * (-x);
        return r;
    };
    return DressVariant<S, S>{
        [x](const Mat<S>& d) {
            Mat<S> eye = Mat<S>::Identity(d.rows(), d.cols());
            return Mat<S>(eye - x * Mat<S>(eye - d));
        },
        detail::lift_same<S>,
        [pow_neg_x](int m) { return pow_neg_x(m); },
        [pow_neg_x](int ell) { return ell == 0 ? ScalarTraits<S>::one() : pow_neg_x(ell - 1); },
    };
}

/// Running tally of the block operations a context performed.
struct OpCounts {
    long inversions = 0;
    long multiplications = 0;
    long additions = 0;
};

/// Evaluation state for one dressing run: the graph, the flavor, and the
/// memo of dressed weights keyed by (vertex, removed set). Single-writer;
/// give each evaluation point its own context.
template <class S, class R>
struct DressContext {
    const PartitionGraph<S>* graph = nullptr;
    DressVariant<S, R> variant;
    bool use_memo = true;
    std::map<std::pair<int, std::uint64_t>, Mat<R>> memo;
    OpCounts counts;
    int depth = 0;
    int max_depth = 0;
};

template <class S, class R>
DressContext<S, R> make_context(const PartitionGraph<S>& g, DressVariant<S, R> v, bool use_memo = true) {
    DressContext<S, R> ctx;
    ctx.graph = &g;
    ctx.variant = std::move(v);
    ctx.use_memo = use_memo;
    return ctx;
}

/// Dressed vertex weight F_{G \ removed}[alpha]:
/// [B_alpha - sum over bare cycles of sign * M_{alpha mu_m} F[mu_m] ... F[mu_2] M_{mu_2 alpha}]^{-1}
/// where each F is dressed on the graph with all earlier cycle vertices
/// removed. Throws SingularDressing when the bracket has no inverse.
template <class S, class R>
Mat<R> dress(DressContext<S, R>& ctx, VertexSet removed, int alpha) {
    if (removed.contains(alpha)) throw VertexRemoved("dress: vertex was deleted");
    const auto key = std::make_pair(alpha, removed.bits);
    if (ctx.use_memo) {
        auto it = ctx.memo.find(key);
        if (it != ctx.memo.end()) return it->second;
    }
    ++ctx.depth;
    ctx.max_depth = std::max(ctx.max_depth, ctx.depth);

    const PartitionGraph<S>& g = *ctx.graph;
    Mat<R> acc = ctx.variant.base(g.partition.block(alpha, alpha));
    const R one = ScalarTraits<R>::one();
    for (const BareCycle& c : bare_cycles(g, removed, alpha)) {
        const int m = c.length();
        // right-to-left: M_{mu_2 alpha} first, M_{alpha mu_m} last
        Mat<R> t = ctx.variant.lift(g.weight(c.vertices[1], alpha));
        VertexSet blocked = removed.with(alpha);
        for (size_t i = 1; i + 1 < c.vertices.size(); ++i) {
            const int v = c.vertices[i];
            Mat<R> f = dress(ctx, blocked, v);
            t = Mat<R>(f * t);
            ++ctx.counts.multiplications;
            const int next = c.vertices[i + 1];
            t = Mat<R>(ctx.variant.lift(g.weight(next, v)) * t);
            ++ctx.counts.multiplications;
            blocked.insert(v);
        }
        const R sign = ctx.variant.cycle_sign(m);
        if (!(sign == one)) t = Mat<R>(sign * t);
        acc -= t;
        ++ctx.counts.additions;
    }
    Mat<R> f = detail::field_inverse<R, SingularDressing>(acc, "dress");
    ++ctx.counts.inversions;

    --ctx.depth;
    if (ctx.use_memo) ctx.memo.emplace(key, f);
    return f;
}

/// Path-sum block (omega, alpha):
/// sum over simple paths alpha -> omega of
/// sign(ell) * F_{G\{alpha..nu_ell}}[omega] M_{omega nu_ell} ... F_{G\{alpha}}[nu_2] M_{nu_2 alpha} F_G[alpha].
/// For alpha = omega the single zero-length path contributes F_G[alpha].
template <class S, class R>
Mat<R> path_sum_block(DressContext<S, R>& ctx, int alpha, int omega) {
    const PartitionGraph<S>& g = *ctx.graph;
    const R one = ScalarTraits<R>::one();
    Mat<R> acc = Mat<R>::Zero(g.partition.dim(omega), g.partition.dim(alpha));
    bool first = true;
    for (const Path& p : simple_paths(g, VertexSet{}, alpha, omega)) {
        Mat<R> t = dress(ctx, VertexSet{}, alpha);
        VertexSet blocked;
        blocked.insert(alpha);
        for (size_t i = 1; i < p.vertices.size(); ++i) {
            const int prev = p.vertices[i - 1];
            const int v = p.vertices[i];
            t = Mat<R>(ctx.variant.lift(g.weight(v, prev)) * t);
            ++ctx.counts.multiplications;
            t = Mat<R>(dress(ctx, blocked, v) * t);
            ++ctx.counts.multiplications;
            blocked.insert(v);
        }
        const R sign = ctx.variant.path_sign(p.length());
        if (!(sign == one)) t = Mat<R>(sign * t);
        if (first) {
            acc = std::move(t);
            first = false;
        } else {
            acc += t;
            ++ctx.counts.additions;
        }
    }
    return acc;
}

/// All path-sum blocks as an n x n table indexed (omega, alpha), ready for
/// scatter_blocks.
template <class S, class R>
std::vector<Mat<R>> path_sum_table(DressContext<S, R>& ctx, int n) {
    std::vector<Mat<R>> table(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int omega = 0; omega < n; ++omega)
        for (int alpha = 0; alpha < n; ++alpha)
            table[static_cast<size_t>(omega) * static_cast<size_t>(n) + static_cast<size_t>(alpha)] =
                path_sum_block(ctx, alpha, omega);
    return table;
}

}  // namespace pathsum

#pragma once

#include <complex>
#include <mutex>
#include <vector>

#include "pathsum/dressing.hpp"
#include "pathsum/quadrature.hpp"
#include "pathsum/reference.hpp"
#include "pathsum/transforms.hpp"

namespace pathsum {

using Groups = std::vector<std::vector<int>>;

/// Inverse via path sums over the graph gated by M - I; equals M^{-1}.
template <class S>
Mat<S> ps_inverse(const Mat<S>& m, const Groups& groups) {
    auto p = general_partition(m, groups);
    auto g = partition_graph(p, GraphVariant::OfMMinusI);
    auto ctx = make_context(g, inverse_variant<S>());
    return scatter_blocks(p.groups, p.D, path_sum_table(ctx, p.group_count()));
}

/// Full resolvent (sI - M)^{-1} over the rational-function field in s.
inline RatMat ps_resolvent_symbolic(const MatX& m, const Groups& groups) {
    auto p = general_partition(m, groups);
    auto g = partition_graph(p, GraphVariant::OfM);
    auto ctx = make_context(g, resolvent_symbolic_variant<GaussianRational>());
    try {
        return scatter_blocks(p.groups, p.D, path_sum_table(ctx, p.group_count()));
    } catch (const SingularDressing& e) {
        throw SingularOverField(e.what());
    }
}

/// Resolvent (sI - M)^{-1} at the point s. Intermediate continued
/// fractions can be singular at an s where the resolvent itself is fine;
/// exact runs then fall back to the symbolic route (which has no such
/// poles), float runs nudge s off the real axis by 1e-9(1+|s|) and retry
/// once.
template <class S>
Mat<S> ps_resolvent(const Mat<S>& m, const Groups& groups, const S& s) {
    auto p = general_partition(m, groups);
    auto g = partition_graph(p, GraphVariant::OfM);
    auto run = [&](const S& point) {
        auto ctx = make_context(g, resolvent_variant<S>(point));
        return scatter_blocks(p.groups, p.D, path_sum_table(ctx, p.group_count()));
    };
    try {
        return run(s);
    } catch (const SingularDressing&) {
        if constexpr (ScalarTraits<S>::is_exact) {
            return eval_ratmat(ps_resolvent_symbolic(m, groups), s);
        } else {
            const S nudged = s + S(0.0, 1e-9 * (1.0 + std::abs(s)));
            return run(nudged);
        }
    }
}

/// exp(tM) by the symbolic resolvent: partial fractions of each entry of
/// (sI - M)^{-1}, each pole term c/(s-a)^{j+1} mapped to c t^j e^{at}/j!.
inline MatF ps_exp(const MatX& m, const Groups& groups, std::complex<double> t = 1.0) {
    RatMat r = ps_resolvent_symbolic(m, groups);
    MatF out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = invert_Laplace(r(i, j)).eval(t);
    return out;
}

/// Float input goes through the same exact route on rationalized entries.
inline MatF ps_exp(const MatF& m, const Groups& groups, std::complex<double> t = 1.0) {
    return ps_exp(rationalize(m), groups, t);
}

namespace detail {

template <class Fn>
void loopless_walks(const PartitionGraph<std::complex<double>>& g, int v, int omega, int left,
                    std::vector<int>& stack, Fn&& emit) {
    if (v == omega) emit(stack);
    if (left == 0) return;
    for (int u = 0; u < g.size(); ++u) {
        if (!g.has_link(v, u)) continue;
        stack.push_back(u);
        loopless_walks(g, u, omega, left - 1, stack, emit);
        stack.pop_back();
    }
}

/// Nested convolution of one walk as the top-right corner of the
/// exponential of a block-bidiagonal matrix: diagonal blocks are the
/// statics of the walk's vertices ordered from omega down to alpha, the
/// superdiagonal holds the flips.
inline MatF walk_convolution(const PartitionGraph<std::complex<double>>& g,
                             const std::vector<int>& walk, std::complex<double> t) {
    const int m = static_cast<int>(walk.size()) - 1;
    Eigen::Index total = 0;
    std::vector<Eigen::Index> offset(walk.size());
    for (int i = 0; i <= m; ++i) {
        offset[static_cast<size_t>(i)] = total;
        total += g.partition.dim(walk[static_cast<size_t>(m - i)]);
    }
    MatF c = MatF::Zero(total, total);
    for (int i = 0; i <= m; ++i) {
        const int v = walk[static_cast<size_t>(m - i)];
        const Eigen::Index d = g.partition.dim(v);
        c.block(offset[static_cast<size_t>(i)], offset[static_cast<size_t>(i)], d, d) =
            g.partition.block(v, v);
        if (i < m) {
            const int prev = walk[static_cast<size_t>(m - i - 1)];
            c.block(offset[static_cast<size_t>(i)], offset[static_cast<size_t>(i + 1)],
                    d, g.partition.dim(prev)) = g.weight(v, prev);
        }
    }
    MatF e = ref_exp(c, t);
    const Eigen::Index dw = g.partition.dim(walk.back());
    const Eigen::Index da = g.partition.dim(walk.front());
    return e.block(0, offset[static_cast<size_t>(m)], dw, da);
}

}  // namespace detail

/// Partial walk sum for exp(tM): contributions of all loopless walks of
/// length <= max_len, each computed exactly as a nested convolution.
/// Converges to ps_exp as max_len grows.
inline MatF ps_walk_exp(const MatF& m, const Groups& groups, std::complex<double> t, int max_len) {
    auto p = general_partition(m, groups);
    auto g = partition_graph(p, GraphVariant::OfM);
    const int n = p.group_count();
    std::vector<MatF> table(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int omega = 0; omega < n; ++omega)
        for (int alpha = 0; alpha < n; ++alpha) {
            MatF acc = MatF::Zero(p.dim(omega), p.dim(alpha));
            std::vector<int> stack{alpha};
            detail::loopless_walks(g, alpha, omega, max_len, stack,
                                   [&](const std::vector<int>& walk) {
                                       acc += detail::walk_convolution(g, walk, t);
                                   });
            table[static_cast<size_t>(omega) * static_cast<size_t>(n) + static_cast<size_t>(alpha)] =
                std::move(acc);
        }
    return scatter_blocks(p.groups, p.D, table);
}

inline MatF ps_walk_exp(const MatX& m, const Groups& groups, std::complex<double> t, int max_len) {
    return ps_walk_exp(to_float(m), groups, t, max_len);
}

/// Principal logarithm: diagonal blocks integrate x^{-1}(I - F_G[alpha](x))
/// over (0,1), off-diagonal blocks integrate the signed path sums; each
/// node gets its own dressing context. The rule order doubles from
/// quad_order until two successive results agree to 1e-11 (cap 512).
inline MatF ps_log(const MatF& m, const Groups& groups, int quad_order = 32) {
    auto p = general_partition(m, groups);
    auto g = partition_graph(p, GraphVariant::OfMMinusI);
    const int n = p.group_count();

    auto integrand = [&](std::complex<double> x) {
        auto ctx = make_context(g, log_x_variant<std::complex<double>>(x));
        std::vector<MatF> table(static_cast<size_t>(n) * static_cast<size_t>(n));
        for (int omega = 0; omega < n; ++omega)
            for (int alpha = 0; alpha < n; ++alpha) {
                MatF b;
                if (alpha == omega) {
                    MatF f = dress(ctx, VertexSet{}, alpha);
                    b = MatF(MatF::Identity(f.rows(), f.cols()) - f) / x;
                } else {
                    b = path_sum_block(ctx, alpha, omega);
                }
                table[static_cast<size_t>(omega) * static_cast<size_t>(n) + static_cast<size_t>(alpha)] =
                    std::move(b);
            }
        return scatter_blocks(p.groups, p.D, table);
    };
    auto node_value = [&](double x) {
        try {
            return integrand(std::complex<double>(x, 0.0));
        } catch (const SingularDressing&) {
            // an intermediate fraction is singular at this node; nudge it
            // off the axis and retry once
            return integrand(std::complex<double>(x, 1e-9 * (1.0 + x)));
        }
    };

    MatF prev;
    bool have_prev = false;
    for (int order = quad_order; order <= 512; order *= 2) {
        QuadratureRule rule = gauss_legendre_01(order);
        MatF acc = MatF::Zero(p.D, p.D);
        for (int i = 0; i < order; ++i)
            acc += rule.weights[static_cast<size_t>(i)] * node_value(rule.nodes[static_cast<size_t>(i)]);
        if (have_prev && max_abs_diff(acc, prev) < 1e-11) return acc;
        prev = std::move(acc);
        have_prev = true;
    }
    throw NonConvergence("ps_log: quadrature did not stabilize by order 512");
}

inline MatF ps_log(const MatX& m, const Groups& groups, int quad_order = 32) {
    return ps_log(to_float(m), groups, quad_order);
}

namespace detail {

/// The z-domain matrix of the power theorem: blocks of z(I - zM)^{-1},
/// whose z^{n+1} series coefficient is M^n. Rejects globally nilpotent
/// input (every entry would be a plain polynomial).
inline RatMat power_z_matrix(const MatX& m, const Groups& groups) {
    auto p = general_partition(m, groups);
    auto g = partition_graph(p, GraphVariant::OfMMinusI);
    auto ctx = make_context(g, power_z_variant<GaussianRational>());
    RatMat r = scatter_blocks(p.groups, p.D, path_sum_table(ctx, p.group_count()));
    bool any_pole = false;
    for (Eigen::Index i = 0; i < r.rows() && !any_pole; ++i)
        for (Eigen::Index j = 0; j < r.cols() && !any_pole; ++j)
            if (r(i, j).den().degree() > 0) any_pole = true;
    if (!any_pole) throw NilpotentUnsupported("ps_power: matrix is nilpotent");
    return r;
}

/// Calibration check, run once per process: the coefficient function of
/// z/(1+4z) is (-4)^n, so its continuation at q=1 must be -4 and the
/// first series coefficient must be 1.
inline void power_calibration_selftest() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        RatFnX r(Poly<GaussianRational>{GaussianRational(0), GaussianRational(1)},
                 Poly<GaussianRational>{GaussianRational(1), GaussianRational(4)});
        ZCoefficientForm f = invert_Z(r);
        if (std::abs(f.continue_at({1.0, 0.0}) - std::complex<double>(-4.0, 0.0)) > 1e-10 ||
            std::abs(f.series_coeff(0) - std::complex<double>(1.0, 0.0)) > 1e-10)
            throw Error("ps_power: inverse-Z calibration self-test failed");
    });
}

}  // namespace detail

/// M^q at an integer exponent, exactly. q >= 1 reads the z^{q+1} series
/// coefficient straight off the z-domain matrix; q = 0 removes the
/// finite-support correction so the core projector comes out; q <= -1
/// continues the pole terms, which needs every pole to reconstruct
/// exactly (NonConvergence otherwise; the complex-q overload still works).
inline MatX ps_power(const MatX& m, const Groups& groups, long q) {
    detail::power_calibration_selftest();
    RatMat r = detail::power_z_matrix(m, groups);
    MatX out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const RatFnX& e = r(i, j);
            if (q >= 0) {
                GaussianRational c = detail::taylor_coeff(e, q + 1);
                if (q == 0) {
                    auto qr = divmod(e.num(), e.den());
                    c = c - qr.first.coeff(1);
                }
                out(i, j) = c;
            } else {
                ZCoefficientForm f = invert_Z(e);
                if (!f.all_exact())
                    throw NonConvergence("ps_power: exact pole reconstruction failed for negative exponent");
                out(i, j) = f.continue_at_exact_int(q);
            }
        }
    return out;
}

/// M^q by analytic continuation at a complex exponent, principal branch
/// for all base powers.
inline MatF ps_power(const MatX& m, const Groups& groups, std::complex<double> q) {
    detail::power_calibration_selftest();
    RatMat r = detail::power_z_matrix(m, groups);
    MatF out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = invert_Z(r(i, j)).continue_at(q);
    return out;
}

inline MatF ps_power(const MatF& m, const Groups& groups, std::complex<double> q) {
    return ps_power(rationalize(m), groups, q);
}

}  // namespace pathsum

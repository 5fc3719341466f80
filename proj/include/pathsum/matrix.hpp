#pragma once

#include <vector>

#include "pathsum/errors.hpp"
#include "pathsum/ratfn.hpp"
#include "pathsum/types.hpp"

namespace pathsum {

/// Product with an explicit shape check (Eigen asserts only in debug builds).
template <class S>
Mat<S> mat_mul(const Mat<S>& a, const Mat<S>& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul: inner dimensions differ");
    return a * b;
}

namespace detail {

/// Pivot selection per coefficient field. Returns the chosen row in
/// [col, n) or -1 when no admissible pivot exists.
template <class S>
struct PivotPolicy {
    // Exact scalar field: any nonzero entry is an exact pivot.
    static double scale_hint(const Mat<S>&) { return 0.0; }
    static Eigen::Index choose(const Mat<S>& m, Eigen::Index col, double /*scale*/) {
        for (Eigen::Index r = col; r < m.rows(); ++r)
            if (!ScalarTraits<S>::is_zero(m(r, col))) return r;
        return -1;
    }
};

template <>
struct PivotPolicy<std::complex<double>> {
    // Partial pivoting; pivots below 1e-13 * ||A|| are declared singular.
    static double scale_hint(const Mat<std::complex<double>>& m) { return max_abs(m); }
    static Eigen::Index choose(const Mat<std::complex<double>>& m, Eigen::Index col, double scale) {
        Eigen::Index best = -1;
        double best_mag = 0.0;
        for (Eigen::Index r = col; r < m.rows(); ++r) {
            double mag = std::abs(m(r, col));
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        if (best < 0 || best_mag < 1e-13 * (scale > 0.0 ? scale : 1.0)) return -1;
        return best;
    }
};

template <class S>
struct PivotPolicy<RatFn<S>> {
    // Rational-function field: among nonzero candidates prefer the smallest
    // num+den degree; keeps intermediate degrees from blowing up.
    static double scale_hint(const Mat<RatFn<S>>&) { return 0.0; }
    static Eigen::Index choose(const Mat<RatFn<S>>& m, Eigen::Index col, double /*scale*/) {
        Eigen::Index best = -1;
        int best_deg = 0;
        for (Eigen::Index r = col; r < m.rows(); ++r) {
            if (m(r, col).is_zero()) continue;
            int deg = m(r, col).total_degree();
            if (best < 0 || deg < best_deg) {
                best = r;
                best_deg = deg;
            }
        }
        return best;
    }
};

/// Gauss-Jordan inverse over any field with the given pivot policy.
/// Throws E when a column has no admissible pivot.
template <class S, class E>
Mat<S> field_inverse(const Mat<S>& a, const char* who) {
    if (a.rows() != a.cols()) throw NonSquare(std::string(who) + ": matrix is not square");
    const Eigen::Index n = a.rows();
    const double scale = PivotPolicy<S>::scale_hint(a);
    Mat<S> m = a;
    Mat<S> inv = Mat<S>::Identity(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index piv = PivotPolicy<S>::choose(m, col, scale);
        if (piv < 0) throw E(std::string(who) + ": no admissible pivot");
        if (piv != col) {
            m.row(piv).swap(m.row(col));
            inv.row(piv).swap(inv.row(col));
        }
        S d = m(col, col);
        S dinv = S(1) / d;
        for (Eigen::Index j = 0; j < n; ++j) {
            m(col, j) = m(col, j) * dinv;
            inv(col, j) = inv(col, j) * dinv;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col) continue;
            S f = m(r, col);
            if (ScalarTraits<S>::is_zero(f)) continue;
            for (Eigen::Index j = 0; j < n; ++j) {
                m(r, j) = m(r, j) - f * m(col, j);
                inv(r, j) = inv(r, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

}  // namespace detail

/// Inverse over the scalar field. Exact mode: any nonzero pivot, result
/// exact. Float mode: partial pivoting, Singular when the best pivot falls
/// below 1e-13 * ||A||.
template <class S>
Mat<S> dense_inverse(const Mat<S>& a) {
    return detail::field_inverse<S, Singular>(a, "dense_inverse");
}

/// Inverse over the rational-function field; entries stay normalized.
template <class S>
RatMatT<S> ratmat_inverse(const RatMatT<S>& a) {
    return detail::field_inverse<RatFn<S>, SingularOverField>(a, "ratmat_inverse");
}

/// P * M * P^T for the permutation matrix P of perm (0-based):
/// result(i, j) = M(perm[i], perm[j]). Conjugation by P preserves the
/// characteristic polynomial and maps partition blocks onto contiguous
/// index ranges when perm concatenates the groups.
template <class S>
Mat<S> permute_symmetric(const Mat<S>& m, const std::vector<int>& perm) {
    if (m.rows() != m.cols()) throw NonSquare("permute_symmetric: matrix is not square");
    const Eigen::Index n = m.rows();
    if (static_cast<Eigen::Index>(perm.size()) != n)
        throw InvalidPermutation("permute_symmetric: permutation length differs from matrix size");
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[static_cast<size_t>(p)])
            throw InvalidPermutation("permute_symmetric: not a bijection on the index set");
        seen[static_cast<size_t>(p)] = true;
    }
    Mat<S> r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) r(i, j) = m(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
    return r;
}

}  // namespace pathsum

#pragma once

#include <complex>

#include <Eigen/Core>

#include "pathsum/scalar.hpp"

namespace Eigen {

// GaussianRational is registered as an opaque ring scalar: IsComplex is left
// off, so Eigen never calls real()/imag()/conj() on it. Exact matrices must
// use transpose(), not adjoint(), and no norm-based reductions; the library
// funnels all exact comparisons through pathsum::exact_equal.
template <>
struct NumTraits<pathsum::GaussianRational> {
    typedef pathsum::GaussianRational Real;
    typedef pathsum::GaussianRational NonInteger;
    typedef pathsum::GaussianRational Nested;
    typedef pathsum::GaussianRational Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 120
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace pathsum {

/// Dense dynamic matrix over a scalar ring.
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using MatF = Mat<std::complex<double>>;
using MatX = Mat<GaussianRational>;

/// Entrywise exact equality (any scalar with operator==).
template <class S>
bool exact_equal(const Mat<S>& a, const Mat<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

/// max over entries of |entry| (double approximation for exact scalars).
template <class S>
double max_abs(const Mat<S>& a) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            m = std::max(m, abs_approx(a(i, j)));
    return m;
}

/// max over entries of |a - b| (complex modulus).
template <class S>
double max_abs_diff(const Mat<S>& a, const Mat<S>& b) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            m = std::max(m, abs_approx(S(a(i, j) - b(i, j))));
    return m;
}

/// max over entries and parts of |re(a-b)|, |im(a-b)|: the right metric for
/// values printed as separately rounded decimal parts.
template <class A, class B>
double max_part_diff(const Mat<A>& a, const Mat<B>& b) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            std::complex<double> d = to_float_scalar(a(i, j)) - to_float_scalar(b(i, j));
            m = std::max(m, std::max(std::abs(d.real()), std::abs(d.imag())));
        }
    return m;
}

/// Exact matrix projected entrywise to floating complex.
inline MatF to_float(const MatX& a) {
    MatF r(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) r(i, j) = a(i, j).to_complex();
    return r;
}
inline const MatF& to_float(const MatF& a) { return a; }

/// Float matrix lifted entrywise to nearby exact rationals.
MatX rationalize(const MatF& a, double tol = 1e-12);

}  // namespace pathsum

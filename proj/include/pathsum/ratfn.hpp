#pragma once

#include <Eigen/Core>

#include "pathsum/poly.hpp"
#include "pathsum/scalar.hpp"
#include "pathsum/types.hpp"

namespace pathsum {

/// Rational function num/den over a scalar field. Normal form: den monic
/// and nonzero; in exact mode gcd(num, den) = 1. Normalization runs after
/// every arithmetic operation, which is what keeps degrees bounded during
/// elimination over the rational-function field.
template <class S>
class RatFn {
public:
    RatFn() : num_(), den_(Poly<S>::one()) {}
    RatFn(int v) : num_{S(v)}, den_(Poly<S>::one()) { normalize(); }  // NOLINT(google-explicit-constructor)
    explicit RatFn(const S& v) : num_{v}, den_(Poly<S>::one()) { normalize(); }
    explicit RatFn(Poly<S> num) : num_(std::move(num)), den_(Poly<S>::one()) { normalize(); }
    RatFn(Poly<S> num, Poly<S> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    /// The transform variable itself (z, s, or x depending on context).
    static RatFn variable() { return RatFn(Poly<S>::variable()); }

    const Poly<S>& num() const { return num_; }
    const Poly<S>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    /// Value of the constant rational function (pre: is_constant()).
    S constant_value() const {
        if (!is_constant()) throw Error("rational function is not constant");
        if (num_.is_zero()) return S(0);
        return num_.coeff(0) / den_.coeff(0);
    }

    S eval(const S& x) const {
        S d = den_.eval(x);
        if (ScalarTraits<S>::is_zero(d)) throw Error("rational function evaluated at a pole");
        return num_.eval(x) / d;
    }

    RatFn reciprocal() const {
        if (num_.is_zero()) throw Error("reciprocal of the zero rational function");
        return RatFn(den_, num_);
    }

    RatFn operator-() const { return RatFn(-num_, den_, already_normalized_tag{}); }

    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.num_.is_zero()) throw Error("division by the zero rational function");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

    /// Representation equality of normal forms; exact semantic equality in
    /// exact mode.
    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

    /// Combined degree num+den: the pivot-quality measure for elimination
    /// over the rational-function field.
    int total_degree() const { return std::max(num_.degree(), 0) + den_.degree(); }

private:
    struct already_normalized_tag {};
    RatFn(Poly<S> num, Poly<S> den, already_normalized_tag) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_.is_zero()) throw Error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly<S>::one();
            return;
        }
        if constexpr (ScalarTraits<S>::is_exact) {
            Poly<S> g = poly_gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = divmod(num_, g).first;
                den_ = divmod(den_, g).first;
            }
        }
        S lead = den_.leading();
        if (!(lead == S(1))) {
            S inv = S(1) / lead;
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }

    Poly<S> num_, den_;
};

using RatFnX = RatFn<GaussianRational>;

/// Matrix over the rational-function field.
template <class S>
using RatMatT = Mat<RatFn<S>>;
using RatMat = RatMatT<GaussianRational>;

/// Constant matrix lifted entrywise into the rational-function field.
template <class S>
RatMatT<S> lift_to_ratfn(const Mat<S>& a) {
    RatMatT<S> r(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) r(i, j) = RatFn<S>(a(i, j));
    return r;
}

/// Rational matrix evaluated entrywise at a point of the base field.
template <class S>
Mat<S> eval_ratmat(const RatMatT<S>& a, const S& x) {
    Mat<S> r(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) r(i, j) = a(i, j).eval(x);
    return r;
}

template <class S>
struct ScalarTraits<RatFn<S>> {
    static constexpr bool is_exact = ScalarTraits<S>::is_exact;

    static RatFn<S> zero() { return RatFn<S>(); }
    static RatFn<S> one() { return RatFn<S>(1); }
    static RatFn<S> from_int(long v) { return RatFn<S>(S(static_cast<long>(v))); }

    static bool is_zero(const RatFn<S>& v, double /*tol*/ = 0.0) { return v.is_zero(); }
};

}  // namespace pathsum

namespace Eigen {

// Rational functions as an opaque Eigen scalar, so block elimination and
// dressing run unchanged over the transform-domain field.
template <class S>
struct NumTraits<pathsum::RatFn<S>> {
    typedef pathsum::RatFn<S> Real;
    typedef pathsum::RatFn<S> NonInteger;
    typedef pathsum::RatFn<S> Nested;
    typedef pathsum::RatFn<S> Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 32,
        AddCost = 512,
        MulCost = 1024
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

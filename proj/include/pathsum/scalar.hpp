#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>

#include <gmpxx.h>

#include "pathsum/errors.hpp"

namespace pathsum {

/// Complex number with arbitrary-precision rational real and imaginary
/// parts. The exact scalar mode of the library: arithmetic is closed, and
/// equality is decidable, so exact-mode results can be compared entrywise
/// with no tolerance.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(int v) : re_(v), im_(0) {}          // NOLINT(google-explicit-constructor)
    GaussianRational(long v) : re_(v), im_(0) {}         // NOLINT(google-explicit-constructor)
    GaussianRational(const mpq_class& re) : re_(re), im_(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    /// re = p/q, exact.
    static GaussianRational fraction(long p, long q) {
        if (q == 0) throw Error("fraction with zero denominator");
        mpq_class r(p, q);
        r.canonicalize();
        return GaussianRational(r, mpq_class(0));
    }

    const mpq_class& real() const { return re_; }
    const mpq_class& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conjugate() const { return GaussianRational(re_, -im_); }

    /// |z|^2 as an exact rational.
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        mpq_class n2 = o.norm2();
        if (sgn(n2) == 0) throw Error("division by zero scalar");
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / n2;
        mpq_class i = (im_ * o.re_ - re_ * o.im_) / n2;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// Serialized as "p/q", "p/q+r/s i", or "p/q-r/s i"; integer parts drop
    /// the "/1". Matches the CLI file format.
    std::string str() const;

private:
    mpq_class re_, im_;
};

/// i (the imaginary unit) as an exact scalar.
inline GaussianRational gaussian_i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

/// Double-precision magnitude estimate (used for pivoting diagnostics only;
/// never for exact-mode comparisons).
inline double abs_approx(const GaussianRational& v) { return std::abs(v.to_complex()); }
inline double abs_approx(const std::complex<double>& v) { return std::abs(v); }

/// Compile-time description of a scalar mode. The whole library is generic
/// over S via this trait: S = GaussianRational (exact) or
/// std::complex<double> (float).
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool is_exact = true;

    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational from_int(long v) { return GaussianRational(v); }
    static GaussianRational fraction(long p, long q) { return GaussianRational::fraction(p, q); }

    static bool is_zero(const GaussianRational& v, double /*tol*/ = 0.0) { return v.is_zero(); }
    static std::complex<double> to_complex(const GaussianRational& v) { return v.to_complex(); }
    static GaussianRational conj(const GaussianRational& v) { return v.conjugate(); }
};

template <>
struct ScalarTraits<std::complex<double>> {
    static constexpr bool is_exact = false;

    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static std::complex<double> fraction(long p, long q) {
        return {static_cast<double>(p) / static_cast<double>(q), 0.0};
    }

    static bool is_zero(const std::complex<double>& v, double tol = 0.0) { return std::abs(v) <= tol; }
    static std::complex<double> to_complex(const std::complex<double>& v) { return v; }
    static std::complex<double> conj(const std::complex<double>& v) { return std::conj(v); }
};

/// Nearest rational with denominator small enough that |x - p/q| <= tol,
/// by continued-fraction expansion. Used to lift float inputs into the
/// exact transform pipeline.
mpq_class rationalize(double x, double tol = 1e-12);

/// Both parts rationalized.
GaussianRational rationalize(const std::complex<double>& z, double tol = 1e-12);

/// Lossless lift / lossy projection between the two scalar modes.
inline std::complex<double> to_float_scalar(const GaussianRational& v) { return v.to_complex(); }
inline std::complex<double> to_float_scalar(const std::complex<double>& v) { return v; }

}  // namespace pathsum

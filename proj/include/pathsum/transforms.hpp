#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "pathsum/partial_fractions.hpp"

namespace pathsum {

namespace detail {

/// Polynomial in n (ascending coefficients) equal to binom(n+j, j-1)
/// = (n+j)(n+j-1)...(n+2) / (j-1)!, which has degree j-1.
template <class R>
std::vector<R> binom_poly(int j) {
    std::vector<R> p{ScalarTraits<R>::one()};
    for (int i = 2; i <= j; ++i) {
        std::vector<R> q(p.size() + 1, ScalarTraits<R>::zero());
        for (size_t k = 0; k < p.size(); ++k) {
            q[k + 1] = q[k + 1] + p[k];
            q[k] = q[k] + ScalarTraits<R>::from_int(i) * p[k];
        }
        p = std::move(q);
    }
    R fact = ScalarTraits<R>::one();
    for (int i = 2; i <= j - 1; ++i) fact = fact * ScalarTraits<R>::from_int(i);
    for (auto& c : p) c = c / fact;
    return p;
}

template <class R>
R poly_in_n_eval(const std::vector<R>& poly, const R& x) {
    R acc = ScalarTraits<R>::zero();
    for (size_t k = poly.size(); k-- > 0;) acc = acc * x + poly[k];
    return acc;
}

/// Exact Taylor coefficient [z^k] of a rational function analytic at 0.
inline GaussianRational taylor_coeff(const RatFn<GaussianRational>& r, long k) {
    const Poly<GaussianRational>& num = r.num();
    const Poly<GaussianRational>& den = r.den();
    GaussianRational d0 = den.coeff(0);
    if (d0.is_zero()) throw Error("taylor_coeff: function has a pole at the origin");
    std::vector<GaussianRational> c(static_cast<size_t>(k + 1));
    for (long t = 0; t <= k; ++t) {
        GaussianRational acc = num.coeff(static_cast<int>(t));
        for (long j = 1; j <= t && j <= den.degree(); ++j)
            acc = acc - den.coeff(static_cast<int>(j)) * c[static_cast<size_t>(t - j)];
        c[static_cast<size_t>(t)] = acc / d0;
    }
    return c[static_cast<size_t>(k)];
}

}  // namespace detail

/// One P(n) * base^n summand of a coefficient sequence; base = 1/a for a
/// pole of the generating function at z = a. Exact mirrors are filled in
/// when the pole has an exact witness.
struct ZPowerTerm {
    std::complex<double> base;
    std::vector<std::complex<double>> poly;  // P(n), ascending
    std::optional<GaussianRational> base_exact;
    std::vector<GaussianRational> poly_exact;
};

/// Finite-support summand: contributes `value` to the coefficient of
/// z^{index+1} and nothing anywhere else.
struct ZKronecker {
    long index = 0;
    std::complex<double> value;
    std::optional<GaussianRational> value_exact;
};

/// Closed form of the coefficients of a rational function's series about
/// z = 0, addressed so that entry n is the coefficient of z^{n+1}.
struct ZCoefficientForm {
    std::vector<ZPowerTerm> terms;
    std::vector<ZKronecker> kroneckers;

    /// Coefficient of z^{n+1}, n >= 0; includes every matching Kronecker.
    std::complex<double> series_coeff(long n) const {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& t : terms)
            acc += detail::poly_in_n_eval(t.poly, std::complex<double>(static_cast<double>(n), 0.0)) *
                   std::pow(t.base, static_cast<double>(n));
        for (const auto& k : kroneckers)
            if (k.index == n) acc += k.value;
        return acc;
    }

    /// Analytic continuation in n, evaluated at q. Base powers use the
    /// principal branch. Kronecker terms are finitely supported, so their
    /// continuation is zero except at matching integer indices n >= 1; the
    /// n = 0 Kronecker is the finite-support correction that turns the
    /// continued value into the exact coefficient, and is dropped here so
    /// integer q = 0 lands on the continued (core) value.
    std::complex<double> continue_at(std::complex<double> q) const {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& t : terms) acc += detail::poly_in_n_eval(t.poly, q) * std::pow(t.base, q);
        const double rq = std::round(q.real());
        const bool integer = std::abs(q.imag()) <= 1e-9 && std::abs(q.real() - rq) <= 1e-9;
        if (integer && rq >= 0.5) {
            const long n = std::lround(rq);
            for (const auto& k : kroneckers)
                if (k.index == n) acc += k.value;
        }
        return acc;
    }

    bool all_exact() const {
        for (const auto& t : terms)
            if (!t.base_exact) return false;
        for (const auto& k : kroneckers)
            if (!k.value_exact) return false;
        return true;
    }

    /// Exact continuation at an integer index (same Kronecker rule as
    /// continue_at); requires all_exact().
    GaussianRational continue_at_exact_int(long q) const {
        if (!all_exact()) throw Error("ZCoefficientForm: exact continuation unavailable");
        GaussianRational acc;
        const GaussianRational qn(q);
        for (const auto& t : terms) {
            GaussianRational pw(1);
            const GaussianRational& b = *t.base_exact;
            for (long i = 0; i < std::abs(q); ++i) pw = pw * b;
            if (q < 0) pw = GaussianRational(1) / pw;
            acc = acc + detail::poly_in_n_eval(t.poly_exact, qn) * pw;
        }
        if (q >= 1)
            for (const auto& k : kroneckers)
                if (k.index == q) acc = acc + *k.value_exact;
        return acc;
    }
};

/// Inverse unilateral Z-transform: closed-form coefficient function of r's
/// series about z = 0. A pole at z = a of multiplicity p contributes a
/// degree-(p-1) polynomial in n times (1/a)^n; the polynomial part of r
/// becomes Kronecker terms.
inline ZCoefficientForm invert_Z(const RatFn<GaussianRational>& r, double tol = 1e-8) {
    ZCoefficientForm out;
    PoleExpansion<GaussianRational> pe = partial_fractions(r, tol);

    for (int j = 0; j <= pe.polynomial_part.degree(); ++j) {
        const GaussianRational& c = pe.polynomial_part.coeff(j);
        if (c.is_zero()) continue;
        out.kroneckers.push_back(ZKronecker{j - 1, c.to_complex(), c});
    }

    for (const auto& pt : pe.poles) {
        if (std::abs(pt.pole) == 0.0) throw Error("invert_Z: pole at the origin");
        ZPowerTerm term;
        term.base = 1.0 / pt.pole;
        // complex division can leave a -0.0 imaginary part, which would flip
        // the principal branch of pow() for bases on the negative real axis
        if (term.base.imag() == 0.0) term.base = std::complex<double>(term.base.real(), 0.0);
        // C_j/(z-a)^j contributes C_j (-1)^j a^{-j-1} binom(n+j, j-1) (1/a)^n
        std::vector<std::complex<double>> poly(static_cast<size_t>(pt.multiplicity), {0.0, 0.0});
        for (int j = 1; j <= pt.multiplicity; ++j) {
            std::complex<double> c = pt.coeffs[static_cast<size_t>(j - 1)];
            if (std::abs(c) == 0.0) continue;
            std::complex<double> scale = c * (j % 2 == 0 ? 1.0 : -1.0) *
                                         std::pow(pt.pole, -static_cast<double>(j) - 1.0);
            auto bp = detail::binom_poly<std::complex<double>>(j);
            for (size_t k = 0; k < bp.size(); ++k) poly[k] += scale * bp[k];
        }
        term.poly = std::move(poly);

        if (pt.pole_exact && !pt.coeffs_exact.empty()) {
            const GaussianRational& a = *pt.pole_exact;
            term.base_exact = GaussianRational(1) / a;
            std::vector<GaussianRational> pex(static_cast<size_t>(pt.multiplicity));
            GaussianRational apw = a * a;  // a^{j+1} running, j = 1 first
            for (int j = 1; j <= pt.multiplicity; ++j) {
                const GaussianRational& c = pt.coeffs_exact[static_cast<size_t>(j - 1)];
                if (!c.is_zero()) {
                    GaussianRational scale =
                        c * GaussianRational(j % 2 == 0 ? 1 : -1) / apw;
                    auto bp = detail::binom_poly<GaussianRational>(j);
                    for (size_t k = 0; k < bp.size(); ++k)
                        pex[k] = pex[k] + scale * bp[k];
                }
                apw = apw * a;
            }
            term.poly_exact = std::move(pex);
        }
        out.terms.push_back(std::move(term));
    }
    return out;
}

/// One c * t^j * e^{at} / j! summand of an inverse Laplace transform.
struct LaplaceTerm {
    std::complex<double> pole;
    int tpow = 0;
    std::complex<double> coeff;
};

struct LaplaceCoefficientForm {
    std::vector<LaplaceTerm> terms;

    std::complex<double> eval(std::complex<double> t) const {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& term : terms) {
            double fact = 1.0;
            std::complex<double> tp(1.0, 0.0);
            for (int i = 1; i <= term.tpow; ++i) {
                fact *= i;
                tp *= t;
            }
            acc += term.coeff * tp * std::exp(term.pole * t) / fact;
        }
        return acc;
    }
};

/// Inverse Laplace transform of a strictly proper rational function:
/// C_j/(s-a)^j maps to C_j t^{j-1} e^{at} / (j-1)!.
inline LaplaceCoefficientForm invert_Laplace(const RatFn<GaussianRational>& r, double tol = 1e-8) {
    if (!r.is_zero() && r.num().degree() >= r.den().degree())
        throw NotStrictlyProper("invert_Laplace: numerator degree must be below denominator degree");
    LaplaceCoefficientForm out;
    PoleExpansion<GaussianRational> pe = partial_fractions(r, tol);
    for (const auto& pt : pe.poles)
        for (int j = 1; j <= pt.multiplicity; ++j) {
            std::complex<double> c = pt.coeffs[static_cast<size_t>(j - 1)];
            if (std::abs(c) == 0.0) continue;
            out.terms.push_back(LaplaceTerm{pt.pole, j - 1, c});
        }
    return out;
}

}  // namespace pathsum

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "pathsum/ratfn.hpp"
#include "pathsum/roots.hpp"

namespace pathsum {

/// Terms C_1/(x-a) + ... + C_p/(x-a)^p of one pole. Numeric coefficients
/// are always present; exact ones only when the pole itself has an exact
/// witness (then reassembly is exact).
template <class S>
struct PoleTerm {
    std::complex<double> pole;
    std::optional<S> pole_exact;
    int multiplicity = 1;
    std::vector<std::complex<double>> coeffs;
    std::vector<S> coeffs_exact;
};

template <class S>
struct PoleExpansion {
    std::vector<PoleTerm<S>> poles;
    Poly<S> polynomial_part;

    /// Numeric reassembly Q(x) + sum of pole terms.
    std::complex<double> eval(std::complex<double> x) const {
        std::complex<double> acc(0.0, 0.0);
        for (int k = 0; k <= polynomial_part.degree(); ++k) {
            std::complex<double> c = ScalarTraits<S>::to_complex(polynomial_part.coeff(k));
            acc += c * std::pow(x, k);
        }
        for (const auto& t : poles) {
            std::complex<double> dx = x - t.pole;
            std::complex<double> pw(1.0, 0.0);
            for (int j = 1; j <= t.multiplicity; ++j) {
                pw *= dx;
                acc += t.coeffs[static_cast<size_t>(j - 1)] / pw;
            }
        }
        return acc;
    }

    /// Exact reassembly as a rational function; available only when every
    /// pole carries an exact witness.
    std::optional<RatFn<S>> to_ratfn() const {
        for (const auto& t : poles)
            if (!t.pole_exact) return std::nullopt;
        RatFn<S> acc(polynomial_part);
        for (const auto& t : poles) {
            Poly<S> lin{-(*t.pole_exact), S(1)};
            Poly<S> pw = Poly<S>::one();
            for (int j = 1; j <= t.multiplicity; ++j) {
                pw = pw * lin;
                acc += RatFn<S>(Poly<S>(t.coeffs_exact[static_cast<size_t>(j - 1)]), pw);
            }
        }
        return acc;
    }
};

namespace detail {

/// Coefficients C_1..C_p at a pole of multiplicity p, by Taylor shift and
/// truncated series division; R is the coefficient ring of the computation.
template <class R>
std::vector<R> local_coefficients(const Poly<R>& rem, const Poly<R>& den, const R& pole, int p) {
    Poly<R> rem_sh = rem.shifted(pole);
    Poly<R> den_sh = den.shifted(pole);
    std::vector<R> b(static_cast<size_t>(p)), g(static_cast<size_t>(p));
    for (int t = 0; t < p; ++t) b[static_cast<size_t>(t)] = den_sh.coeff(p + t);
    if (ScalarTraits<R>::is_zero(b[0]))
        throw Error("partial_fractions: pole multiplicity inconsistent with denominator");
    for (int t = 0; t < p; ++t) {
        R acc = rem_sh.coeff(t);
        for (int j = 1; j <= t; ++j) acc = acc - b[static_cast<size_t>(j)] * g[static_cast<size_t>(t - j)];
        g[static_cast<size_t>(t)] = acc / b[0];
    }
    // C_j = g_{p-j}
    std::vector<R> c(static_cast<size_t>(p));
    for (int j = 1; j <= p; ++j) c[static_cast<size_t>(j - 1)] = g[static_cast<size_t>(p - j)];
    return c;
}

}  // namespace detail

/// Pole/multiplicity/coefficient decomposition with polynomial part from
/// Euclidean division: r = Q + sum_k sum_j C_{k,j}/(x - a_k)^j.
template <class S>
PoleExpansion<S> partial_fractions(const RatFn<S>& r, double tol = 1e-8) {
    PoleExpansion<S> out;
    auto [quo, rem] = divmod(r.num(), r.den());
    out.polynomial_part = quo;
    if (rem.is_zero() || r.den().degree() == 0) return out;

    const Poly<std::complex<double>> rem_f = detail::to_float_poly(rem);
    const Poly<std::complex<double>> den_f = detail::to_float_poly(r.den());

    for (const auto& root : poly_roots(r.den(), tol)) {
        PoleTerm<S> term;
        term.pole = root.value;
        term.pole_exact = root.exact;
        term.multiplicity = root.multiplicity;
        if constexpr (ScalarTraits<S>::is_exact) {
            if (root.exact) {
                term.coeffs_exact =
                    detail::local_coefficients<S>(rem, r.den(), *root.exact, root.multiplicity);
                term.coeffs.reserve(term.coeffs_exact.size());
                for (const auto& c : term.coeffs_exact) term.coeffs.push_back(ScalarTraits<S>::to_complex(c));
                out.poles.push_back(std::move(term));
                continue;
            }
        }
        term.coeffs = detail::local_coefficients<std::complex<double>>(rem_f, den_f, root.value,
                                                                       root.multiplicity);
        out.poles.push_back(std::move(term));
    }
    return out;
}

}  // namespace pathsum

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "pathsum/poly.hpp"

namespace pathsum {

/// One root of a polynomial. The numeric location is always present; the
/// exact witness is set when (exact mode only) the root was reconstructed
/// as a Gaussian rational and verified by exact back-substitution.
template <class S>
struct RootInfo {
    std::complex<double> value;
    int multiplicity = 1;
    std::optional<S> exact;
};

namespace detail {

inline Poly<std::complex<double>> to_float_poly(const Poly<GaussianRational>& p) {
    std::vector<std::complex<double>> c(static_cast<size_t>(p.degree() + 1));
    for (int k = 0; k <= p.degree(); ++k) c[static_cast<size_t>(k)] = p.coeff(k).to_complex();
    return Poly<std::complex<double>>(std::move(c));
}
inline const Poly<std::complex<double>>& to_float_poly(const Poly<std::complex<double>>& p) { return p; }

/// Aberth-Ehrlich simultaneous iteration. Pre: degree >= 1. Returns one
/// approximant per root (with multiplicity, approximants collide).
std::vector<std::complex<double>> aberth_roots(const Poly<std::complex<double>>& p);

/// Collapse Aberth approximant groups that verify as multiple roots onto
/// their polished common value (float mode pre-pass before clustering).
void refine_multiple_roots(const Poly<std::complex<double>>& p, std::vector<std::complex<double>>& roots);

/// Square-free decomposition over an exact field (Yun): factors f_i,
/// pairwise coprime and square-free, with p ~ prod f_i^{m_i}.
template <class S>
std::vector<std::pair<Poly<S>, int>> square_free_factors(const Poly<S>& p) {
    static_assert(ScalarTraits<S>::is_exact, "square-free decomposition needs exact gcd");
    std::vector<std::pair<Poly<S>, int>> out;
    Poly<S> f = p.monic();
    if (f.degree() < 1) return out;
    Poly<S> fp = f.derivative();
    Poly<S> a = poly_gcd(f, fp);
    Poly<S> b = divmod(f, a).first;
    Poly<S> c = divmod(fp, a).first;
    Poly<S> d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        Poly<S> g = poly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = c - b.derivative();
    }
    return out;
}

/// Try to recognize a numeric root of an exact polynomial as a Gaussian
/// rational; only a verified exact back-substitution counts.
std::optional<GaussianRational> reconstruct_root(const Poly<GaussianRational>& factor,
                                                 std::complex<double> approx);

}  // namespace detail

/// All complex roots with multiplicities (sum of multiplicities = degree).
/// Exact mode: multiplicities from exact square-free decomposition, each
/// distinct root then located numerically and upgraded to an exact witness
/// when it verifies. Float mode: simultaneous iteration on p itself, then
/// clustering within tol*(1+|root|) decides multiplicities.
template <class S>
std::vector<RootInfo<S>> poly_roots(const Poly<S>& p, double tol = 1e-8);

template <>
inline std::vector<RootInfo<GaussianRational>> poly_roots(const Poly<GaussianRational>& p, double /*tol*/) {
    if (p.degree() < 1) throw Error("poly_roots: degree must be at least 1");
    std::vector<RootInfo<GaussianRational>> out;
    for (const auto& [factor, mult] : detail::square_free_factors(p)) {
        if (factor.degree() == 1) {
            GaussianRational r = -(factor.coeff(0) / factor.coeff(1));
            out.push_back({r.to_complex(), mult, r});
            continue;
        }
        for (std::complex<double> r : detail::aberth_roots(detail::to_float_poly(factor))) {
            RootInfo<GaussianRational> info{r, mult, detail::reconstruct_root(factor, r)};
            if (info.exact) info.value = info.exact->to_complex();
            out.push_back(info);
        }
    }
    return out;
}

template <>
inline std::vector<RootInfo<std::complex<double>>> poly_roots(const Poly<std::complex<double>>& p, double tol) {
    if (p.degree() < 1) throw Error("poly_roots: degree must be at least 1");
    std::vector<std::complex<double>> roots = detail::aberth_roots(p);
    detail::refine_multiple_roots(p, roots);
    std::vector<RootInfo<std::complex<double>>> out;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::complex<double> sum = roots[i];
        int count = 1;
        used[i] = true;
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(roots[j] - roots[i]) <= tol * (1.0 + std::abs(roots[i]))) {
                sum += roots[j];
                ++count;
                used[j] = true;
            }
        }
        out.push_back({sum / static_cast<double>(count), count, std::nullopt});
    }
    return out;
}

}  // namespace pathsum

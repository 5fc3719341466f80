#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "pathsum/errors.hpp"
#include "pathsum/scalar.hpp"

namespace pathsum {

/// Univariate polynomial over a scalar field, coefficients lowest degree
/// first. Normal form: no trailing zero coefficients; the zero polynomial
/// has an empty coefficient sequence and degree -1.
template <class S>
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<S> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(const S& constant) : c_{constant} { trim(); }

    /// The monomial z.
    static Poly variable() { return Poly{S(0), S(1)}; }
    static Poly one() { return Poly{S(1)}; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    /// Coefficient of z^k; zero beyond the stored degree.
    const S coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return S(0);
        return c_[static_cast<size_t>(k)];
    }
    const std::vector<S>& coeffs() const { return c_; }

    S leading() const {
        if (c_.empty()) throw Error("leading coefficient of the zero polynomial");
        return c_.back();
    }

    S eval(const S& x) const {
        S acc = S(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<S> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * S(static_cast<long>(k));
        return Poly(std::move(d));
    }

    Poly operator-() const {
        std::vector<S> d(c_.size());
        for (size_t k = 0; k < c_.size(); ++k) d[k] = -c_[k];
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<S> d(std::max(a.c_.size(), b.c_.size()), S(0));
        for (size_t k = 0; k < a.c_.size(); ++k) d[k] = d[k] + a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) d[k] = d[k] + b.c_[k];
        return Poly(std::move(d));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<S> d(a.c_.size() + b.c_.size() - 1, S(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] = d[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(d));
    }

    friend Poly operator*(const S& s, const Poly& p) {
        std::vector<S> d(p.c_.size());
        for (size_t k = 0; k < p.c_.size(); ++k) d[k] = s * p.c_[k];
        return Poly(std::move(d));
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t k = 0; k < a.c_.size(); ++k)
            if (!(a.c_[k] == b.c_[k])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Quotient and remainder of field long division: a = q*b + r with
    /// degree(r) < degree(b).
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw Error("polynomial division by zero");
        std::vector<S> rem = a.c_;
        const int db = b.degree();
        const int da = a.degree();
        if (da < db) return {Poly(), a};
        std::vector<S> quo(static_cast<size_t>(da - db + 1), S(0));
        const S lead = b.c_.back();
        for (int k = da - db; k >= 0; --k) {
            S q = rem[static_cast<size_t>(k + db)] / lead;
            quo[static_cast<size_t>(k)] = q;
            if (ScalarTraits<S>::is_zero(q)) continue;
            for (int j = 0; j <= db; ++j)
                rem[static_cast<size_t>(k + j)] = rem[static_cast<size_t>(k + j)] - q * b.c_[static_cast<size_t>(j)];
        }
        rem.resize(static_cast<size_t>(db));
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    /// Leading coefficient scaled to one.
    Poly monic() const {
        if (is_zero()) return *this;
        S inv = S(1) / c_.back();
        return inv * *this;
    }

    /// p(z + a): Taylor shift, exact in any field.
    Poly shifted(const S& a) const {
        Poly result;
        Poly base = Poly::one();
        Poly lin{a, S(1)};
        for (size_t k = 0; k < c_.size(); ++k) {
            result = result + c_[k] * base;
            if (k + 1 < c_.size()) base = base * lin;
        }
        return result;
    }

private:
    void trim() {
        while (!c_.empty() && ScalarTraits<S>::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<S> c_;
};

/// Product wrapper with the library-wide operation name.
template <class S>
Poly<S> poly_mul(const Poly<S>& p, const Poly<S>& q) {
    return p * q;
}

/// Monic greatest common divisor by the Euclidean algorithm; exact scalars
/// only (float coefficient noise makes the degree of the gcd undecidable).
/// gcd(p, 0) = monic(p).
template <class S>
Poly<S> poly_gcd(const Poly<S>& p, const Poly<S>& q) {
    if (!ScalarTraits<S>::is_exact)
        throw FloatModeUnsupported("poly_gcd requires exact scalars");
    Poly<S> a = p, b = q;
    while (!b.is_zero()) {
        auto [quo, rem] = divmod(a, b);
        (void)quo;
        a = std::move(b);
        b = std::move(rem);
    }
    return a.monic();
}

}  // namespace pathsum

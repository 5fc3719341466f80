#include "pathsum/roots.hpp"

#include <cmath>

namespace pathsum {
namespace detail {

namespace {

// Relative residual bound: |p(z)| measured against the coefficient mass at |z|.
double residual_scale(const Poly<std::complex<double>>& p, std::complex<double> z) {
    double az = std::abs(z);
    double pw = 1.0;
    double scale = 0.0;
    for (int k = 0; k <= p.degree(); ++k) {
        scale += std::abs(p.coeff(k)) * pw;
        pw *= az;
    }
    return scale > 0.0 ? scale : 1.0;
}

}  // namespace

std::vector<std::complex<double>> aberth_roots(const Poly<std::complex<double>>& p) {
    const int n = p.degree();
    if (n < 1) throw Error("aberth_roots: degree must be at least 1");
    const Poly<std::complex<double>> d = p.derivative();

    // Cauchy-style bound: all roots inside |z| <= 1 + max |c_k / c_n|.
    double bound = 0.0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(p.coeff(k) / p.leading()));
    double radius = 1.0 + bound;

    std::vector<std::complex<double>> z(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double angle = 2.0 * M_PI * k / n + 0.4;
        z[static_cast<size_t>(k)] = std::polar(radius * 0.8 + 0.1, angle);
    }

    constexpr int kMaxIterations = 200;
    constexpr double kResidualTarget = 1e-14;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        bool all_converged = true;
        for (int k = 0; k < n; ++k) {
            std::complex<double> zk = z[static_cast<size_t>(k)];
            std::complex<double> pv = p.eval(zk);
            if (std::abs(pv) <= kResidualTarget * residual_scale(p, zk)) continue;
            all_converged = false;
            std::complex<double> dv = d.eval(zk);
            std::complex<double> w;
            if (dv == std::complex<double>(0.0, 0.0)) {
                w = std::complex<double>(1e-8, 1e-8);  // nudge off a critical point
            } else {
                w = pv / dv;
            }
            std::complex<double> rep(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                std::complex<double> diff = zk - z[static_cast<size_t>(j)];
                if (std::abs(diff) < 1e-300) diff = std::complex<double>(1e-300, 0.0);
                rep += 1.0 / diff;
            }
            std::complex<double> denom = 1.0 - w * rep;
            if (std::abs(denom) < 1e-300) denom = std::complex<double>(1e-300, 0.0);
            z[static_cast<size_t>(k)] = zk - w / denom;
        }
        if (all_converged) return z;
    }
    // Accept if every approximant meets a relaxed backward-error bound;
    // multiple roots converge linearly and may sit slightly above target.
    for (int k = 0; k < n; ++k) {
        std::complex<double> zk = z[static_cast<size_t>(k)];
        if (std::abs(p.eval(zk)) > 1e-10 * residual_scale(p, zk))
            throw NonConvergence("aberth_roots: iteration cap reached before residual target");
    }
    return z;
}

void refine_multiple_roots(const Poly<std::complex<double>>& p, std::vector<std::complex<double>>& roots) {
    // Aberth approximants of an m-fold root stop ~(residual)^(1/m) away from
    // it, far outside the final clustering tolerance. Group coarsely, then
    // polish each group's center with Newton on p^(m-1) (simple root there);
    // only a center passing the derivative-residual test collapses its group.
    const size_t n = roots.size();
    std::vector<bool> grouped(n, false);
    for (size_t i = 0; i < n; ++i) {
        if (grouped[i]) continue;
        std::vector<size_t> group{i};
        for (size_t j = i + 1; j < n; ++j) {
            if (grouped[j]) continue;
            if (std::abs(roots[j] - roots[i]) <= 1e-5 * (1.0 + std::abs(roots[i]))) group.push_back(j);
        }
        if (group.size() < 2) continue;
        const int m = static_cast<int>(group.size());
        std::complex<double> center(0.0, 0.0);
        for (size_t idx : group) center += roots[idx];
        center /= static_cast<double>(m);

        std::vector<Poly<std::complex<double>>> derivs(static_cast<size_t>(m) + 1);
        derivs[0] = p;
        for (int k = 1; k <= m; ++k) derivs[static_cast<size_t>(k)] = derivs[static_cast<size_t>(k - 1)].derivative();
        const auto& pm = derivs[static_cast<size_t>(m - 1)];
        const auto& pm1 = derivs[static_cast<size_t>(m)];
        std::complex<double> x = center;
        for (int it = 0; it < 60; ++it) {
            std::complex<double> dv = pm1.eval(x);
            if (std::abs(dv) < 1e-300) break;
            std::complex<double> step = pm.eval(x) / dv;
            x -= step;
            if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
        }
        bool verified = std::abs(x - center) <= 1e-4 * (1.0 + std::abs(center));
        for (int j = 0; j < m && verified; ++j)
            if (std::abs(derivs[static_cast<size_t>(j)].eval(x)) >
                1e-8 * residual_scale(derivs[static_cast<size_t>(j)], x))
                verified = false;
        if (!verified) continue;
        for (size_t idx : group) {
            roots[idx] = x;
            grouped[idx] = true;
        }
    }
}

std::optional<GaussianRational> reconstruct_root(const Poly<GaussianRational>& factor,
                                                 std::complex<double> approx) {
    const double tol = 1e-9 * (1.0 + std::abs(approx));
    GaussianRational candidate(rationalize(approx.real(), tol), rationalize(approx.imag(), tol));
    if (factor.eval(candidate).is_zero()) return candidate;
    return std::nullopt;
}

}  // namespace detail
}  // namespace pathsum

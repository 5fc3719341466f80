#include "pathsum/quadrature.hpp"

#include <cmath>

#include "pathsum/errors.hpp"

namespace pathsum {

namespace {

/// Legendre P_n(x) and its derivative by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre_01(int order) {
    if (order < 1) throw Error("gauss_legendre_01: order must be positive");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<size_t>(order));
    rule.weights.resize(static_cast<size_t>(order));
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(order, x, p, dp);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(order, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map (-1,1) -> (0,1); keep nodes ascending
        rule.nodes[static_cast<size_t>(i)] = (1.0 - x) / 2.0;
        rule.weights[static_cast<size_t>(i)] = w / 2.0;
        rule.nodes[static_cast<size_t>(order - 1 - i)] = (1.0 + x) / 2.0;
        rule.weights[static_cast<size_t>(order - 1 - i)] = w / 2.0;
    }
    return rule;
}

}  // namespace pathsum

#pragma once

#include <vector>

namespace pathsum {

/// Nodes and weights of a quadrature rule on the open interval (0,1).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule mapped to (0,1); all nodes are strictly interior.
QuadratureRule gauss_legendre_01(int order);

}  // namespace pathsum

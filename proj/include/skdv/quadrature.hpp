#pragma once

#include <vector>

namespace skdv {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Gauss-Lobatto-Legendre rule with n + 1 nodes on [-1, 1], endpoints included, ascending.
QuadratureRule gauss_lobatto(int n);

/// Legendre polynomial P_n(x) and its derivative.
void legendre(int n, double x, double& p, double& dp);

}  // namespace skdv

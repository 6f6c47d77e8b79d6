#include "skdv/quadrature.hpp"

#include <cmath>

#include "skdv/errors.hpp"
#include "skdv/spectral_core.hpp"

namespace skdv {

void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    // Derivative from the three-term relation; the endpoints use the closed form.
    if (std::abs(std::abs(x) - 1.0) < 1e-15) {
        dp = 0.5 * n * (n + 1.0);
        if (x < 0 && n % 2 == 0) dp = -dp;
    } else {
        dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw ParameterError("Gauss-Legendre rule needs n >= 1");
    QuadratureRule r;
    r.nodes.resize(static_cast<size_t>(n));
    r.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p = 0, dp = 1;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        legendre(n, x, p, dp);
        r.nodes[static_cast<size_t>(n - 1 - i)] = x;
        r.weights[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

QuadratureRule gauss_lobatto(int n) {
    if (n < 1) throw ParameterError("Gauss-Lobatto rule needs n >= 1");
    QuadratureRule r;
    r.nodes.resize(static_cast<size_t>(n + 1));
    r.weights.resize(static_cast<size_t>(n + 1));
    // Interior nodes are the roots of P'_n; Newton on (1 - x^2) P'_n starting from
    // the Chebyshev-Lobatto points.
    for (int i = 0; i <= n; ++i) {
        double x = -std::cos(kPi * i / n);
        if (i != 0 && i != n) {
            for (int it = 0; it < 100; ++it) {
                double p, dp;
                legendre(n, x, p, dp);
                // d/dx [(1-x^2) P'_n] = -n(n+1) P_n
                const double f = (1.0 - x * x) * dp;
                const double df = -n * (n + 1.0) * p;
                const double step = f / df;
                x -= step;
                if (std::abs(step) < 1e-16) break;
            }
        }
        double p, dp;
        legendre(n, x, p, dp);
        r.nodes[static_cast<size_t>(i)] = x;
        r.weights[static_cast<size_t>(i)] = 2.0 / (n * (n + 1.0) * p * p);
    }
    return r;
}

}  // namespace skdv

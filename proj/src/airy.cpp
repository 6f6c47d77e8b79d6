#include "skdv/airy.hpp"

#include <array>
#include <cmath>
#include <cstddef>

#include "skdv/spectral_core.hpp"

namespace skdv::airy {
namespace {

constexpr long double kAi0 = 0.355028053887817239260L;   // Ai(0)
constexpr long double kDAi0 = 0.258819403792806798405L;  // -Ai'(0)
constexpr double kPositiveSwitch = 8.0;
constexpr double kNegativeSwitch = -7.0;

/// Extended precision absorbs the cancellation between the two series, which
/// grows like exp(2/3 x^{3/2}) for positive x.
double maclaurin(double xd) {
    const long double x = xd, x3 = x * x * x;
    long double f = 1.0L, g = x;
    long double a = 1.0L, b = x;
    for (int k = 1; k < 300; ++k) {
        a *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
        b *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
        f += a;
        g += b;
        if (std::abs(a) < 1e-21L * std::abs(f) && std::abs(b) < 1e-21L * (std::abs(g) + 1e-300L)) break;
    }
    return static_cast<double>(kAi0 * f - kDAi0 * g);
}

/// u_k coefficients of the asymptotic expansions.
const std::array<double, 122>& u_table() {
    static const std::array<double, 122> table = [] {
        std::array<double, 122> t{};
        t[0] = 1.0;
        for (size_t j = 1; j < t.size(); ++j) {
            const double k = static_cast<double>(j);
            t[j] = t[j - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
                   ((2.0 * k - 1.0) * 216.0 * k);
        }
        return t;
    }();
    return table;
}

double positive_tail(double x) {
    const auto& u = u_table();
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double sum = 0.0, prev = INFINITY, zk = 1.0;
    for (size_t k = 0; k < 60; ++k) {
        const double term = ((k % 2 == 0) ? 1.0 : -1.0) * u[k] / zk;
        if (std::abs(term) > prev) break;
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-17 * std::abs(sum)) break;
        zk *= zeta;
    }
    return std::exp(-zeta) / (2.0 * std::sqrt(kPi) * std::pow(x, 0.25)) * sum;
}

double negative_tail(double x) {
    const auto& u = u_table();
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    double even = 0.0, odd = 0.0, prev = INFINITY, z2k = 1.0;
    for (size_t k = 0; k < 60; ++k) {
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        const double te = sgn * u[2 * k] / z2k;
        const double to = sgn * u[2 * k + 1] / (z2k * zeta);
        const double mag = std::abs(te) + std::abs(to);
        if (mag > prev) break;
        even += te;
        odd += to;
        prev = mag;
        if (prev < 1e-17) break;
        z2k *= zeta * zeta;
    }
    const double ph = zeta - 0.25 * kPi;
    return (std::cos(ph) * even + std::sin(ph) * odd) / (std::sqrt(kPi) * std::pow(z, 0.25));
}

}  // namespace

double ai(double x) {
    if (std::isnan(x)) return x;
    if (x >= kPositiveSwitch) return positive_tail(x);
    if (x <= kNegativeSwitch) return negative_tail(x);
    return maclaurin(x);
}

}  // namespace skdv::airy

#include "skdv/linear_groups.hpp"

#include <cmath>
#include <string>

#include "skdv/airy.hpp"
#include "skdv/quadrature.hpp"

namespace skdv {

const char* to_string(GroupKind k) { return k == GroupKind::schrodinger ? "schrodinger" : "airy"; }

CVec group_multiplier(const Grid1D& g, double t, GroupKind kind) {
    const auto& xi = g.frequencies();
    CVec m(xi.size());
    if (kind == GroupKind::schrodinger) {
        for (size_t k = 0; k < xi.size(); ++k) {
            const double ph = -t * xi[k] * xi[k];
            m[k] = cplx(std::cos(ph), std::sin(ph));
        }
    } else {
        for (size_t k = 0; k < xi.size(); ++k) {
            const double ph = t * xi[k] * xi[k] * xi[k];
            m[k] = cplx(std::cos(ph), std::sin(ph));
        }
        m[static_cast<size_t>(g.nyquist_index())] = 1.0;
    }
    return m;
}

Field evolve(const Field& f, double t, GroupKind kind) {
    require_finite(f, "evolve");
    if (!std::isfinite(t)) throw ParameterError("evolution time must be finite");
    if (t == 0.0) return f;
    return apply_multiplier(f, group_multiplier(*f.grid, t, kind), kind == GroupKind::airy);
}

double airy_kernel(double x, double t) {
    if (t == 0.0) throw ParameterError("the Airy kernel at t = 0 is a delta");
    const double s = std::cbrt(3.0 * std::abs(t));
    const double y = (t > 0.0) ? x / s : -x / s;
    return airy::ai(y) / s;
}

Field airy_kernel_field(const GridPtr& g, double t) {
    if (t == 0.0) throw ParameterError("the Airy kernel at t = 0 is a delta");
    return Field::from_function(g, [t](double x) { return cplx(airy_kernel(x, t), 0.0); },
                                FieldTag::real);
}

Field airy_convolve(const GridPtr& g, double t, const std::function<double(double)>& f,
                    const std::vector<double>& breaks, int nodes_per_panel, double max_panel) {
    if (t == 0.0) throw ParameterError("the Airy kernel at t = 0 is a delta");
    if (breaks.size() < 2) throw ParameterError("convolution support needs two endpoints");
    const QuadratureRule rule = gauss_legendre(nodes_per_panel);
    std::vector<double> ys, ws;
    for (size_t b = 0; b + 1 < breaks.size(); ++b) {
        const double a = breaks[b], c = breaks[b + 1];
        if (!(c > a)) throw ParameterError("breakpoints must increase");
        const int panels = std::max(1, static_cast<int>(std::ceil((c - a) / max_panel)));
        const double h = (c - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double lo = a + p * h;
            for (size_t i = 0; i < rule.nodes.size(); ++i) {
                const double y = lo + 0.5 * h * (rule.nodes[i] + 1.0);
                ys.push_back(y);
                ws.push_back(0.5 * h * rule.weights[i] * f(y));
            }
        }
    }
    CVec out(static_cast<size_t>(g->n_points()));
    for (int j = 0; j < g->n_points(); ++j) {
        const double x = g->x(j);
        double acc = 0.0;
        for (size_t i = 0; i < ys.size(); ++i) acc += ws[i] * airy_kernel(x - ys[i], t);
        out[static_cast<size_t>(j)] = acc;
    }
    return Field(g, std::move(out), FieldTag::real);
}

Field abs_weight(const Field& f, double beta) {
    Field out = f;
    const Grid1D& g = *f.grid;
    for (int j = 0; j < g.n_points(); ++j) {
        const double x = g.x(j);
        out.values[static_cast<size_t>(j)] *= std::pow(std::abs(x), beta);
    }
    return out;
}

RemainderField weighted_remainder(const Field& f, double beta, double t, GroupKind kind,
                                  double contamination_max) {
    if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
    require_finite(f, "weighted_remainder");
    const double c = boundary_contamination(f, 0.05);
    if (c >= contamination_max)
        throw DomainTooSmall("data not decaying in the monitored margin: contamination " +
                                 std::to_string(c),
                             c);
    RemainderField r;
    r.beta = beta;
    r.time = t;
    r.kind = kind;
    const Field a = abs_weight(evolve(f, t, kind), beta);
    const Field b = evolve(abs_weight(f, beta), t, kind);
    r.field = evolve(a - b, -t, kind);
    return r;
}

}  // namespace skdv

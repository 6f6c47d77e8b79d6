#include "skdv/initial_data.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace skdv {

double schrodinger_focus_time(const SchrodingerDatumParams& p) { return 1.0 / (4.0 * p.alpha); }

Field schrodinger_datum(const SchrodingerDatumParams& p, const GridPtr& g) {
    if (!(p.alpha > 0.0)) throw ParameterError("chirp rate alpha must be > 0");
    const double a = p.alpha, x0 = p.x0;
    Field u = Field::from_function(g, [a, x0](double x) {
        const double ph = -a * (x - x0) * (x - x0);
        return cplx(std::cos(ph), std::sin(ph)) / std::pow(1.0 + x * x, 1.25);
    });
    const double c = boundary_contamination(u, 0.05);
    if (c >= p.contamination_max)
        throw DomainTooSmall("Schrodinger datum reaches the box edge: contamination " +
                                 std::to_string(c),
                             c);
    return u;
}

double kdv_lambda(const KdvDatumParams& p, int j) {
    return p.c * std::exp(-p.alpha * p.alpha * static_cast<double>(j) * j);
}

double kdv_tail(const KdvDatumParams& p, int j_max) {
    double tail = 0.0;
    for (int j = j_max + 1;; ++j) {
        const double l = kdv_lambda(p, j);
        tail += l;
        if (l < 1e-30 * (tail + 1e-300) || l == 0.0) break;
    }
    return tail * phi_l2_norm();
}

int kdv_required_j_max(const KdvDatumParams& p) {
    int j = 1;
    while (kdv_tail(p, j) >= kKdvTailBound) ++j;
    return j;
}

Field phi(const GridPtr& g) {
    return Field::from_function(g, [](double x) { return cplx(std::exp(-2.0 * std::abs(x)), 0.0); },
                                FieldTag::real);
}

double phi_l2_norm() { return std::sqrt(0.5); }

namespace {

int resolve_j_max(const KdvDatumParams& p) {
    if (!(p.alpha > 0.0)) throw ParameterError("data alpha must be > 0");
    if (!(p.c > 0.0)) throw ParameterError("amplitude c must be > 0");
    if (p.j_max < 0) throw ParameterError("j_max must be >= 0");
    const int required = kdv_required_j_max(p);
    if (p.j_max != 0 && p.strict_tail && kdv_tail(p, p.j_max) >= kKdvTailBound)
        throw TruncationError("series tail exceeds the bound; need j_max >= " +
                                  std::to_string(required),
                              required);
    return p.j_max == 0 ? required : p.j_max;
}

/// Sums the series; contamination[j - 1] receives the weighted edge level of term j.
CVec kdv_series(const KdvDatumParams& p, const GridPtr& g, int j_max,
                std::vector<double>& contamination) {
    const CVec phat = fft::forward(phi(g).values);
    CVec acc(phat.size(), cplx(0.0, 0.0));
    double lead = 0.0;
    for (int j = 1; j <= j_max; ++j) {
        const CVec m = group_multiplier(*g, -p.alpha * j, GroupKind::airy);
        const double l = kdv_lambda(p, j);
        CVec term(phat.size());
        for (size_t k = 0; k < phat.size(); ++k) term[k] = m[k] * phat[k];
        Field tj(g, fft::inverse(term), FieldTag::complex);
        tj.make_real();
        const double peak = l * tj.max_abs();
        if (j == 1) lead = peak;
        // Wrapped tail of term j, weighted by lambda_j and measured against the leading term.
        contamination.push_back(boundary_contamination(tj, 0.05) * peak / lead);
        for (size_t k = 0; k < phat.size(); ++k) acc[k] += l * term[k];
    }
    return acc;
}

}  // namespace

std::vector<double> kdv_term_contamination(const KdvDatumParams& p, const GridPtr& g) {
    std::vector<double> c;
    kdv_series(p, g, resolve_j_max(p), c);
    return c;
}

Field kdv_datum(const KdvDatumParams& p, const GridPtr& g) {
    std::vector<double> c;
    const CVec acc = kdv_series(p, g, resolve_j_max(p), c);
    for (size_t j = 0; j < c.size(); ++j)
        if (c[j] >= p.contamination_max)
            throw DomainTooSmall("backward Airy term j = " + std::to_string(j + 1) +
                                     " reaches the box edge: contamination " + std::to_string(c[j]),
                                 c[j]);
    Field v(g, fft::inverse(acc), FieldTag::complex);
    v.make_real();
    return v;
}

}  // namespace skdv

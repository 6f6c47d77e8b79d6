#include "skdv/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace skdv {

Grid1D::Grid1D(int n, double length) : n_(n), length_(length), xi_(static_cast<size_t>(n)) {
    const double dk = 2.0 * kPi / length;
    for (int k = 0; k < n; ++k) {
        const int m = (k < n / 2) ? k : k - n;
        xi_[static_cast<size_t>(k)] = dk * m;
    }
}

std::vector<double> Grid1D::coordinates() const {
    std::vector<double> xs(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j) xs[static_cast<size_t>(j)] = x(j);
    return xs;
}

GridPtr make_grid(int n_points, double length) {
    if (n_points <= 0 || n_points % 2 != 0)
        throw InvalidGrid("grid size must be a positive even integer, got " +
                          std::to_string(n_points));
    if (!(length > 0.0) || !std::isfinite(length))
        throw InvalidGrid("grid length must be positive, got " + std::to_string(length));
    return GridPtr(new Grid1D(n_points, length));
}

Field::Field(GridPtr g, CVec v, FieldTag t) : grid(std::move(g)), values(std::move(v)), tag(t) {
    if (!grid) throw ParameterError("field without grid");
    if (static_cast<int>(values.size()) != grid->n_points())
        throw ParameterError("field length does not match grid size");
}

Field Field::zeros(GridPtr g, FieldTag t) {
    const auto n = static_cast<size_t>(g->n_points());
    return Field(std::move(g), CVec(n, cplx(0.0, 0.0)), t);
}

Field Field::from_function(GridPtr g, const std::function<cplx(double)>& f, FieldTag t) {
    CVec v(static_cast<size_t>(g->n_points()));
    for (int j = 0; j < g->n_points(); ++j) v[static_cast<size_t>(j)] = f(g->x(j));
    Field out(std::move(g), std::move(v), t);
    if (t == FieldTag::real) out.make_real();
    return out;
}

Field Field::from_real(GridPtr g, const std::vector<double>& v) {
    CVec c(v.begin(), v.end());
    return Field(std::move(g), std::move(c), FieldTag::real);
}

std::vector<double> Field::real_part() const {
    std::vector<double> r(values.size());
    for (size_t j = 0; j < values.size(); ++j) r[j] = values[j].real();
    return r;
}

double Field::max_abs() const {
    double m = 0.0;
    for (const auto& z : values) m = std::max(m, std::abs(z));
    return m;
}

Field& Field::make_real() {
    for (auto& z : values) z = cplx(z.real(), 0.0);
    tag = FieldTag::real;
    return *this;
}

namespace {

void require_same_grid(const Field& a, const Field& b) {
    if (a.grid != b.grid && (a.grid->n_points() != b.grid->n_points() ||
                             a.grid->length() != b.grid->length()))
        throw ParameterError("fields live on different grids");
}

FieldTag join(FieldTag a, FieldTag b) {
    return (a == FieldTag::real && b == FieldTag::real) ? FieldTag::real : FieldTag::complex;
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    for (size_t j = 0; j < out.values.size(); ++j) out.values[j] += b.values[j];
    out.tag = join(a.tag, b.tag);
    return out;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    for (size_t j = 0; j < out.values.size(); ++j) out.values[j] -= b.values[j];
    out.tag = join(a.tag, b.tag);
    return out;
}

Field operator*(double s, const Field& a) {
    Field out = a;
    for (auto& z : out.values) z *= s;
    return out;
}

Field operator*(cplx s, const Field& a) {
    Field out = a;
    for (auto& z : out.values) z *= s;
    if (s.imag() != 0.0) out.tag = FieldTag::complex;
    return out;
}

Field pointwise(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    for (size_t j = 0; j < out.values.size(); ++j) out.values[j] *= b.values[j];
    out.tag = join(a.tag, b.tag);
    return out;
}

void require_finite(const Field& f, const char* where) {
    for (const auto& z : f.values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NanError(std::string("non-finite sample passed to ") + where);
}

CVec spectrum(const Field& f) {
    CVec out = fft::forward(f.values);
    const double dx = f.grid->dx();
    for (auto& z : out) z *= dx;
    return out;
}

Field from_spectrum(const GridPtr& g, const CVec& fhat, FieldTag t) {
    CVec v = fft::inverse(fhat);
    const double s = 1.0 / g->dx();
    for (auto& z : v) z *= s;
    Field out(g, std::move(v), t);
    if (t == FieldTag::real) out.make_real();
    return out;
}

Field apply_multiplier(const Field& f, const CVec& m, bool keeps_real) {
    CVec F = fft::forward(f.values);
    for (size_t k = 0; k < F.size(); ++k) F[k] *= m[k];
    Field out(f.grid, fft::inverse(F), FieldTag::complex);
    if (keeps_real && f.is_real()) out.make_real();
    return out;
}

Field apply_multiplier(const Field& f, const std::vector<double>& m, bool keeps_real) {
    CVec F = fft::forward(f.values);
    for (size_t k = 0; k < F.size(); ++k) F[k] *= m[k];
    Field out(f.grid, fft::inverse(F), FieldTag::complex);
    if (keeps_real && f.is_real()) out.make_real();
    return out;
}

Field fractional_derivative(const Field& f, double s) {
    if (!(s >= 0.0)) throw ParameterError("fractional derivative order must be >= 0");
    require_finite(f, "fractional_derivative");
    if (s == 0.0) return f;
    const auto& xi = f.grid->frequencies();
    std::vector<double> m(xi.size());
    for (size_t k = 0; k < xi.size(); ++k) m[k] = std::pow(std::abs(xi[k]), s);
    return apply_multiplier(f, m, true);
}

Field bessel_potential(const Field& f, double s) {
    if (!std::isfinite(s)) throw ParameterError("Bessel potential order must be finite");
    require_finite(f, "bessel_potential");
    if (s == 0.0) return f;
    const auto& xi = f.grid->frequencies();
    std::vector<double> m(xi.size());
    for (size_t k = 0; k < xi.size(); ++k) m[k] = std::pow(1.0 + xi[k] * xi[k], 0.5 * s);
    return apply_multiplier(f, m, true);
}

Field derivative(const Field& f, int order) {
    if (order < 0) throw ParameterError("derivative order must be >= 0");
    require_finite(f, "derivative");
    if (order == 0) return f;
    const auto& xi = f.grid->frequencies();
    CVec m(xi.size());
    for (size_t k = 0; k < xi.size(); ++k) m[k] = std::pow(cplx(0.0, xi[k]), order);
    if (order % 2 == 1) m[static_cast<size_t>(f.grid->nyquist_index())] = 0.0;
    return apply_multiplier(f, m, true);
}

NormSpec NormSpec::sobolev(double s) {
    NormSpec n;
    n.kind = Kind::sobolev;
    n.s = s;
    return n;
}

NormSpec NormSpec::homogeneous(double s) {
    NormSpec n;
    n.kind = Kind::homogeneous;
    n.s = s;
    return n;
}

NormSpec NormSpec::weighted_bracket(double r) {
    NormSpec n;
    n.kind = Kind::weighted_bracket;
    n.r = r;
    return n;
}

NormSpec NormSpec::weighted_abs(double r) {
    NormSpec n;
    n.kind = Kind::weighted_abs;
    n.r = r;
    return n;
}

NormSpec NormSpec::mixed(double p, double q, MixOrder order) {
    NormSpec n;
    n.kind = Kind::mixed;
    n.p = p;
    n.q = q;
    n.order = order;
    return n;
}

void SpaceTimeField::validate() const {
    if (!grid) throw ParameterError("space-time field without grid");
    if (times.empty()) throw ParameterError("space-time field has no times");
    if (times.size() != slices.size()) throw ParameterError("times and slices differ in count");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw ParameterError("times must be strictly increasing");
    for (const auto& s : slices)
        if (s.grid->n_points() != grid->n_points() || s.grid->length() != grid->length())
            throw ParameterError("slices must share the grid");
}

double norm(const Field& f, const NormSpec& spec) {
    const Grid1D& g = *f.grid;
    switch (spec.kind) {
        case NormSpec::Kind::sobolev:
        case NormSpec::Kind::homogeneous: {
            if (!(spec.s >= 0.0)) throw ParameterError("Sobolev order must be >= 0");
            const CVec F = fft::forward(f.values);
            const auto& xi = g.frequencies();
            double acc = 0.0;
            for (size_t k = 0; k < F.size(); ++k) {
                const double w = (spec.kind == NormSpec::Kind::sobolev)
                                     ? std::pow(1.0 + xi[k] * xi[k], spec.s)
                                     : std::pow(std::abs(xi[k]), 2.0 * spec.s);
                acc += w * std::norm(F[k]);
            }
            return std::sqrt(acc * g.dx() / g.n_points());
        }
        case NormSpec::Kind::weighted_bracket:
        case NormSpec::Kind::weighted_abs: {
            if (!(spec.r >= 0.0)) throw ParameterError("weight exponent must be >= 0");
            double acc = 0.0;
            for (int j = 0; j < g.n_points(); ++j) {
                const double x = g.x(j);
                const double w = (spec.kind == NormSpec::Kind::weighted_bracket)
                                     ? std::pow(1.0 + x * x, spec.r)
                                     : std::pow(std::abs(x), 2.0 * spec.r);
                acc += w * std::norm(f.values[static_cast<size_t>(j)]);
            }
            return std::sqrt(acc * g.dx());
        }
        case NormSpec::Kind::mixed:
            throw ParameterError("mixed norms need a space-time field");
    }
    throw InternalError("unknown norm kind");
}

double norm(const SpaceTimeField& f, const NormSpec& spec) {
    if (spec.kind != NormSpec::Kind::mixed)
        throw ParameterError("only mixed norms apply to space-time fields");
    return mixed_norm(f, spec.p, spec.q, spec.order);
}

namespace {

void check_exponent(double p, const char* name) {
    if (!(p >= 1.0)) throw ParameterError(std::string("exponent ") + name + " must lie in [1, inf]");
}

/// (sum w_i |a_i|^p)^{1/p}, or max |a_i| for p = inf.
double weighted_lp(const std::vector<double>& a, const std::vector<double>& w, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : a) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    if (p == 2.0) {
        for (size_t i = 0; i < a.size(); ++i) acc += w[i] * a[i] * a[i];
        return std::sqrt(acc);
    }
    for (size_t i = 0; i < a.size(); ++i) acc += w[i] * std::pow(a[i], p);
    return std::pow(acc, 1.0 / p);
}

}  // namespace

double lp_norm(const Field& f, double p) {
    check_exponent(p, "p");
    std::vector<double> a(f.values.size());
    for (size_t j = 0; j < a.size(); ++j) a[j] = std::abs(f.values[j]);
    std::vector<double> w(a.size(), f.grid->dx());
    return weighted_lp(a, w, p);
}

std::vector<double> trapezoid_weights(const std::vector<double>& t) {
    std::vector<double> w(t.size(), 0.0);
    for (size_t i = 1; i < t.size(); ++i) {
        const double h = 0.5 * (t[i] - t[i - 1]);
        w[i - 1] += h;
        w[i] += h;
    }
    return w;
}

double mixed_norm(const SpaceTimeField& F, double p, double q, MixOrder order) {
    check_exponent(p, "p");
    check_exponent(q, "q");
    F.validate();
    const int n = F.grid->n_points();
    const size_t nt = F.times.size();
    const std::vector<double> wt = trapezoid_weights(F.times);
    const std::vector<double> wx(static_cast<size_t>(n), F.grid->dx());
    if (order == MixOrder::x_then_t) {
        std::vector<double> g(static_cast<size_t>(n));
        std::vector<double> col(nt);
        for (int j = 0; j < n; ++j) {
            for (size_t i = 0; i < nt; ++i) col[i] = std::abs(F.slices[i].values[static_cast<size_t>(j)]);
            g[static_cast<size_t>(j)] = weighted_lp(col, wt, q);
        }
        return weighted_lp(g, wx, p);
    }
    std::vector<double> h(nt);
    for (size_t i = 0; i < nt; ++i) h[i] = lp_norm(F.slices[i], p);
    return weighted_lp(h, wt, q);
}

double boundary_contamination(const Field& f, double margin_fraction) {
    if (!(margin_fraction > 0.0 && margin_fraction < 0.5))
        throw ParameterError("margin fraction must lie in (0, 0.5)");
    const Grid1D& g = *f.grid;
    const double half = 0.5 * g.length();
    const double inner = half - margin_fraction * g.length();
    double all = 0.0, edge = 0.0;
    for (int j = 0; j < g.n_points(); ++j) {
        const double a = std::abs(f.values[static_cast<size_t>(j)]);
        all = std::max(all, a);
        if (std::abs(g.x(j)) >= inner) edge = std::max(edge, a);
    }
    if (all == 0.0) return 0.0;
    return edge / all;
}

}  // namespace skdv

#include "skdv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "skdv/parallel.hpp"

namespace skdv {

const char* to_string(Trend t) {
    switch (t) {
        case Trend::diverging: return "diverging";
        case Trend::saturating: return "saturating";
        case Trend::stable: return "stable";
    }
    return "?";
}

Trend classify_trend(const std::vector<double>& values, double stable_tol) {
    if (values.size() < 2) throw ParameterError("classify_trend needs at least two values");
    std::vector<double> rel;
    for (size_t i = 1; i < values.size(); ++i) {
        const double base = std::max(std::abs(values[i - 1]), 1e-300);
        rel.push_back(std::abs(values[i] - values[i - 1]) / base);
    }
    if (*std::max_element(rel.begin(), rel.end()) <= stable_tol) return Trend::stable;
    if (rel.size() >= 2 && rel.back() <= 0.5 * rel.front()) return Trend::saturating;
    return Trend::diverging;
}

RegularityEstimate sobolev_index(const Field& f, const IndexOptions& opt) {
    require_finite(f, "sobolev_index");
    if (opt.n_bands < 4) throw ParameterError("sobolev_index needs at least 4 bands");
    const Grid1D& g = *f.grid;
    double hi = opt.band_hi > 0.0 ? opt.band_hi : opt.top_fraction * g.kmax();
    if (hi > 0.9 * g.kmax())
        throw InsufficientResolution("fit band reaches into the top 10% of frequencies");
    const CVec fh = spectrum(f);
    double amax = 0.0;
    for (const auto& z : fh) amax = std::max(amax, std::abs(z));

    RegularityEstimate r;
    r.band_hi = hi;
    std::vector<double> xs, ys;
    bool smooth = amax == 0.0;
    for (int b = 0; b < opt.n_bands; ++b) {
        const double lo = 0.5 * hi;
        double acc = 0.0;
        int count = 0;
        for (int k = 0; k < g.n_points(); ++k) {
            const double a = std::abs(g.xi(k));
            if (a >= lo && a < hi) {
                acc += std::abs(fh[static_cast<size_t>(k)]);
                ++count;
            }
        }
        if (count == 0)
            throw InsufficientResolution("dyadic band [" + std::to_string(lo) + ", " +
                                         std::to_string(hi) + ") holds no grid frequency");
        const double mean = acc / count;
        if (!(mean > opt.smooth_floor * amax)) smooth = true;
        if (!smooth) {
            xs.push_back(std::log(std::sqrt(lo * hi)));
            ys.push_back(std::log(mean));
        }
        hi = lo;
    }
    r.band_lo = hi;
    r.smooth = smooth;
    if (smooth) return r;

    const double nb = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= nb;
    my /= nb;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double res = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (my + slope * (xs[i] - mx));
        res += e * e;
    }
    r.fit_residual = std::sqrt(res / nb);
    r.sobolev_index = -slope - 0.5;
    return r;
}

RegularityEstimate sobolev_index_refined(const std::vector<Field>& fields,
                                         const IndexOptions& opt) {
    if (fields.empty()) throw ParameterError("sobolev_index_refined needs fields");
    std::vector<double> idx;
    RegularityEstimate last;
    for (const auto& f : fields) {
        last = sobolev_index(f, opt);
        if (last.smooth) return last;
        idx.push_back(last.sobolev_index);
    }
    if (idx.size() >= 2) {
        last.refinement_trend = classify_trend(idx);
        last.trend_evaluated = true;
    }
    return last;
}

Field half_resolution(const Field& f) {
    const int n = f.grid->n_points();
    if (n % 4 != 0) throw InvalidGrid("half_resolution needs n divisible by 4");
    const int h = n / 2, q = n / 4;
    const CVec F = fft::forward(f.values);
    CVec C(static_cast<size_t>(h), cplx(0.0, 0.0));
    for (int k = 0; k < q; ++k) C[static_cast<size_t>(k)] = 0.5 * F[static_cast<size_t>(k)];
    for (int k = 1; k < q; ++k) C[static_cast<size_t>(h - k)] = 0.5 * F[static_cast<size_t>(n - k)];
    Field out(make_grid(h, f.grid->length()), fft::inverse(C), f.tag);
    if (f.is_real()) out.make_real();
    return out;
}

HolderReport holder_quotient(const Field& f, double beta, double window,
                             std::optional<double> center, const HolderOptions& opt) {
    require_finite(f, "holder_modulus");
    if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("holder_modulus: beta must be in (0, 1]");
    const Grid1D& g = *f.grid;
    const double dx = g.dx();
    if (!(window >= 4.0 * dx * (1.0 - 1e-12)))
        throw ParameterError("holder_modulus: window must be >= 4 dx");
    const Field d = derivative(f, 1);
    const int n = g.n_points();
    int lo = 0, hi = n - 1;
    if (center) {
        lo = std::max(0, static_cast<int>(std::ceil((*center - window - g.x(0)) / dx - 1e-9)));
        hi = std::min(n - 1, static_cast<int>(std::floor((*center + window - g.x(0)) / dx + 1e-9)));
    }
    const int max_lag = std::min(static_cast<int>(std::floor(window / dx + 1e-9)), hi - lo);
    long total = 0;
    for (int l = 1; l <= max_lag; ++l) total += hi - lo + 1 - l;
    const long stride = total <= opt.pair_budget ? 1 : (total + opt.pair_budget - 1) / opt.pair_budget;
    std::mt19937_64 rng(opt.seed);

    HolderReport r;
    r.beta = beta;
    for (int l = 1; l <= max_lag; ++l) {
        const double denom = std::pow(l * dx, beta);
        const long offset = stride > 1 ? static_cast<long>(rng() % static_cast<unsigned long>(stride)) : 0;
        for (long i = lo + offset; i + l <= hi; i += stride) {
            const double q =
                std::abs(d.values[static_cast<size_t>(i)] - d.values[static_cast<size_t>(i + l)]) /
                denom;
            if (q > r.quotient_max) {
                r.quotient_max = q;
                r.location = g.x(static_cast<int>(i)) + 0.5 * l * dx;
            }
        }
    }
    return r;
}

HolderReport holder_modulus(const Field& f, double beta, double window,
                            std::optional<double> center, const HolderOptions& opt) {
    HolderReport r = holder_quotient(f, beta, window, center, opt);
    const Field c = half_resolution(f);
    const double w = std::max(window, 4.0 * c.grid->dx());
    const HolderReport rc = holder_quotient(c, beta, w, center, opt);
    r.growth_ratio = rc.quotient_max > 0.0 ? r.quotient_max / rc.quotient_max : 1.0;
    return r;
}

namespace {

void max_derivative(const Field& f, double& value, double& where) {
    const Field d = derivative(f, 1);
    value = 0.0;
    where = 0.0;
    for (int j = 0; j < d.size(); ++j) {
        const double a = std::abs(d.values[static_cast<size_t>(j)]);
        if (a > value) {
            value = a;
            where = f.grid->x(j);
        }
    }
}

}  // namespace

std::vector<FocusEvent> focusing_scan(const SpaceTimeField& F, double beta,
                                      const FocusOptions& opt) {
    F.validate();
    const size_t m = F.slices.size();
    std::vector<FocusEvent> per(m);
    parallel_for(m, [&](size_t i) {
        FocusEvent e;
        e.t = F.times[i];
        if (opt.kind == FocusKind::holder) {
            const HolderReport h = holder_modulus(F.slices[i], beta, opt.window, std::nullopt,
                                                  opt.holder);
            e.x = h.location;
            e.value = h.quotient_max;
            e.strength = h.growth_ratio;
        } else {
            double where = 0.0, coarse = 0.0, ignore = 0.0;
            max_derivative(F.slices[i], e.value, where);
            max_derivative(half_resolution(F.slices[i]), coarse, ignore);
            e.x = where;
            e.strength = coarse > 0.0 ? e.value / coarse : 1.0;
        }
        per[i] = e;
    });
    std::vector<FocusEvent> out;
    for (size_t i = 1; i + 1 < m; ++i)
        if (per[i].value > per[i - 1].value && per[i].value >= per[i + 1].value)
            out.push_back(per[i]);
    std::stable_sort(out.begin(), out.end(),
                     [](const FocusEvent& a, const FocusEvent& b) { return a.value > b.value; });
    return out;
}

std::pair<SmoothingGapReport, SmoothingGapReport> smoothing_gap(const Trajectory& traj,
                                                                double time,
                                                                const IndexOptions& opt) {
    const auto [I, II] = duhamel_split(traj);
    size_t best = 0;
    for (size_t i = 1; i < I.times.size(); ++i)
        if (std::abs(I.times[i] - time) < std::abs(I.times[best] - time)) best = i;

    auto measure = [&](const Field& lin, const Field& duh, GapComponent c) {
        const RegularityEstimate a = sobolev_index(lin, opt);
        const RegularityEstimate b = sobolev_index(duh, opt);
        if (a.smooth && b.smooth)
            throw NotApplicable("smoothing gap: both the linear and the Duhamel parts are smooth");
        SmoothingGapReport r;
        r.component = c;
        r.time = I.times[best];
        r.index_linear = a.smooth ? kInf : a.sobolev_index;
        r.index_duhamel = b.smooth ? kInf : b.sobolev_index;
        r.gap = a.smooth ? -kInf : (b.smooth ? kInf : r.index_duhamel - r.index_linear);
        return r;
    };
    return {measure(traj.linear_u[best], I.slices[best], GapComponent::I_schrodinger),
            measure(traj.linear_v[best], II.slices[best], GapComponent::II_kdv)};
}

}  // namespace skdv

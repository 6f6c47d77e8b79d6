#include "skdv/ensembles.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace skdv {

const char* to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::gaussian_mixture: return "gaussian_mixture";
        case EnsembleKind::chirped: return "chirped";
        case EnsembleKind::band_limited: return "band_limited";
        case EnsembleKind::exponential_bump: return "exponential_bump";
    }
    return "?";
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
    for (auto k : {EnsembleKind::gaussian_mixture, EnsembleKind::chirped,
                   EnsembleKind::band_limited, EnsembleKind::exponential_bump})
        if (name == to_string(k)) return k;
    throw ParameterError("unknown ensemble kind: " + name);
}

namespace {

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// Gaussian window centred on the band with the band edges at 4 standard deviations.
double band_window(double xi, double lo, double hi) {
    const double z = (xi - 0.5 * (lo + hi)) / (0.125 * (hi - lo));
    return std::exp(-0.5 * z * z);
}

std::mt19937_64 member_rng(std::uint64_t seed, int index, int stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(kEnsembleVersion)};
    return std::mt19937_64(seq);
}

Field generate(const Ensemble& e, int index, int stream) {
    auto rng = member_rng(e.seed, index, stream);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * U(rng); };
    const cplx I(0.0, 1.0);
    const GridPtr& g = e.grid;
    Field f;
    switch (e.kind) {
        case EnsembleKind::gaussian_mixture: {
            const int m = 1 + static_cast<int>(rng() % 3);
            f = Field::zeros(g);
            for (int c = 0; c < m; ++c) {
                const cplx amp = uni(0.5, 1.5) * std::exp(I * uni(0.0, 2.0 * kPi));
                const double x0 = uni(e.center - e.spread, e.center + e.spread);
                const double w = uni(0.5, 2.0);
                const double k = uni(-2.0, 2.0);
                f = f + Field::from_function(g, [=](double x) {
                        const double y = x - x0;
                        return amp * std::exp(I * k * x) * std::exp(-y * y / (2.0 * w * w));
                    });
            }
            break;
        }
        case EnsembleKind::chirped: {
            const cplx amp = uni(0.5, 1.5) * std::exp(I * uni(0.0, 2.0 * kPi));
            const double x0 = uni(e.center - e.spread, e.center + e.spread);
            const double w = uni(1.0, 3.0);
            const double a = uni(0.1, 1.0);
            f = Field::from_function(g, [=](double x) {
                const double y = x - x0;
                return amp * std::exp(-y * y / (2.0 * w * w)) * std::exp(-I * a * y * y);
            });
            break;
        }
        case EnsembleKind::band_limited: {
            cplx amp[3];
            double pos[3];
            for (int c = 0; c < 3; ++c) {
                amp[c] = uni(0.5, 1.5) * std::exp(I * uni(0.0, 2.0 * kPi));
                pos[c] = uni(e.center - e.spread, e.center + e.spread);
            }
            const double lo = e.band_lo, hi = e.band_hi;
            CVec fh(static_cast<size_t>(g->n_points()));
            for (int k = 0; k < g->n_points(); ++k) {
                const double xi = g->xi(k);
                auto side = [&](double z) {
                    cplx acc = 0.0;
                    for (int c = 0; c < 3; ++c) acc += amp[c] * std::exp(-I * z * pos[c]);
                    return band_window(z, lo, hi) * acc;
                };
                if (xi > 0.0) fh[static_cast<size_t>(k)] = side(xi);
                else if (xi < 0.0 && !e.one_sided) fh[static_cast<size_t>(k)] = std::conj(side(-xi));
            }
            f = from_spectrum(g, fh);
            break;
        }
        case EnsembleKind::exponential_bump: {
            const cplx amp = uni(0.5, 1.5) * std::exp(I * uni(0.0, 2.0 * kPi));
            const double x0 = uni(e.center - e.spread, e.center + e.spread);
            const double b = uni(1.0, 3.0);
            f = Field::from_function(g, [=](double x) { return amp * std::exp(-b * std::abs(x - x0)); });
            break;
        }
    }
    if (e.real) f.make_real();
    const double c = boundary_contamination(f, 0.05);
    if (c >= e.contamination_max)
        throw DomainTooSmall("ensemble " + e.version() + " member " + std::to_string(index) +
                                 " reaches the box edge",
                             c);
    return f;
}

}  // namespace

std::string Ensemble::version() const {
    std::string v = std::string(to_string(kind)) + ".v" + std::to_string(kEnsembleVersion) + ".n" +
                    std::to_string(size) + ".seed" + std::to_string(seed) + ".N" +
                    std::to_string(grid ? grid->n_points() : 0) + ".L" +
                    fmt_num(grid ? grid->length() : 0.0) + ".T" + fmt_num(horizon);
    if (center != 0.0) v += ".c" + fmt_num(center);
    if (spread != 4.0) v += ".w" + fmt_num(spread);
    if (kind == EnsembleKind::band_limited) v += ".b" + fmt_num(band_lo) + "-" + fmt_num(band_hi);
    if (one_sided) v += ".os";
    if (real) v += ".re";
    return v;
}

void Ensemble::validate() const {
    if (!grid) throw ParameterError("ensemble needs a grid");
    if (size < 1) throw ParameterError("ensemble size must be >= 1");
    if (!(horizon >= 0.0)) throw ParameterError("ensemble horizon must be >= 0");
    if (!(spread >= 0.0)) throw ParameterError("ensemble spread must be >= 0");
    if (kind == EnsembleKind::band_limited && !(band_hi > band_lo && band_lo >= 0.0))
        throw ParameterError("band_limited ensemble needs 0 <= band_lo < band_hi");
    if (one_sided && real) throw ParameterError("a one-sided spectrum cannot be real");
}

Field Ensemble::member(int i) const {
    if (i < 0 || i >= size) throw ParameterError("ensemble member index out of range");
    if (i == zero_member) return Field::zeros(grid, real ? FieldTag::real : FieldTag::complex);
    return generate(*this, i, 0);
}

Field Ensemble::partner(int i) const {
    if (i < 0 || i >= size) throw ParameterError("ensemble member index out of range");
    return generate(*this, i, 1);
}

}  // namespace skdv

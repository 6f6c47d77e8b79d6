#include "skdv/contraction_probe.hpp"

#include <algorithm>
#include <cmath>

#include "skdv/initial_data.hpp"
#include "skdv/parallel.hpp"

namespace skdv {

double measured_contraction_factor(const PicardResult& r) {
    if (r.diverged) return kInf;
    const auto& d = r.differences;
    if (d.empty() || d.front() == 0.0) return 0.0;
    const double floor = 1e-13 * d.front();
    double worst = 0.0;
    for (size_t k = 1; k < d.size(); ++k) {
        if (d[k - 1] <= floor || d[k] <= floor) break;
        worst = std::max(worst, d[k] / d[k - 1]);
    }
    return worst;
}

ProbeResult contraction_probe(double data_scale, double s, const std::vector<double>& T_grid,
                              const ProbeOptions& opt) {
    if (!(data_scale >= 0.0)) throw ParameterError("contraction_probe: data_scale must be >= 0");
    const GridPtr g = make_grid(opt.n_points, opt.length);
    SchrodingerDatumParams sp;
    sp.alpha = opt.data_alpha;
    KdvDatumParams kp;
    kp.alpha = 1.0 / (4.0 * opt.data_alpha);
    const Field u0 = data_scale * schrodinger_datum(sp, g);
    Field v0 = data_scale * kdv_datum(kp, g);
    v0.make_real();

    ProbeResult out;
    out.data_scale = data_scale;
    out.data_norm = norm(u0, NormSpec::sobolev(s + 0.5)) + norm(v0, NormSpec::sobolev(s));
    out.cells.resize(T_grid.size());
    PicardOptions po;
    po.degree = opt.degree;
    po.throw_on_divergence = false;
    parallel_for(T_grid.size(), [&](size_t i) {
        ProbeCell c;
        c.T = T_grid[i];
        const PicardResult r = picard_solve(u0, v0, c.T, opt.couplings, opt.n_iter, po);
        c.diverged = r.diverged;
        c.factor = measured_contraction_factor(r);
        out.cells[i] = c;
    });
    for (const auto& c : out.cells)
        if (!c.diverged && c.factor < 0.5) out.admissible_T = std::max(out.admissible_T, c.T);
    return out;
}

}  // namespace skdv

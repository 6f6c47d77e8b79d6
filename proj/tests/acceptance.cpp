// Acceptance run: one PASS/FAIL line per criterion, exit status = number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "skdv/constants_store.hpp"
#include "skdv/contraction_probe.hpp"
#include "skdv/diagnostics.hpp"
#include "skdv/estimates.hpp"
#include "skdv/initial_data.hpp"

using namespace skdv;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double l2(const Field& f) { return norm(f, NormSpec::sobolev(0.0)); }

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string join(const std::vector<double>& v, const char* f = "%.4g") {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + fmt(f, x);
    return "[" + s + "]";
}

struct Verdict {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " (failed)");
    }
};

int failures = 0;

void report(int id, const char* title, const std::function<Verdict()>& body) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail = std::string("error: ") + e.what();
    }
    if (!v.pass) ++failures;
    std::printf("criterion %d %s %s: %s [%.1f s]\n", id, v.pass ? "PASS" : "FAIL", title,
                v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
}

// Shared data: chirp rate 1 for u, rate 1/4 for v in coupled runs.
Field u_datum(const GridPtr& g) { return schrodinger_datum({}, g); }

Field v_datum(const GridPtr& g, double alpha) {
    KdvDatumParams p;
    p.alpha = alpha;
    Field v = kdv_datum(p, g);
    v.make_real();
    return v;
}

Verdict schrodinger_focusing() {
    constexpr double kGrowth = 1.2, kStableLo = 0.95, kStableHi = 1.05, kBudget = 60.0;
    constexpr double kBeta = 0.6, kWindow = 0.5, kL = 200.0;
    const double t_star = schrodinger_focus_time({});
    std::vector<double> q_star, q_half, cost;
    for (int n : {8192, 16384, 32768}) {
        const auto t0 = Clock::now();
        const Field u0 = u_datum(make_grid(n, kL));
        q_star.push_back(holder_quotient(evolve(u0, t_star, GroupKind::schrodinger), kBeta, kWindow, 0.0)
                             .quotient_max);
        q_half.push_back(holder_quotient(evolve(u0, t_star / 2, GroupKind::schrodinger), kBeta, kWindow,
                                         0.0)
                             .quotient_max);
        cost.push_back(seconds_since(t0));
    }
    Verdict v;
    std::vector<double> g_star, g_half;
    for (size_t i = 1; i < q_star.size(); ++i) {
        g_star.push_back(q_star[i] / q_star[i - 1]);
        g_half.push_back(q_half[i] / q_half[i - 1]);
    }
    v.check(std::all_of(g_star.begin(), g_star.end(), [&](double r) { return r > kGrowth; }),
            "growth at t* " + join(g_star) + " > 1.2");
    v.check(std::all_of(g_half.begin(), g_half.end(),
                        [&](double r) { return r >= kStableLo && r <= kStableHi; }),
            "growth at t*/2 " + join(g_half) + " in [0.95, 1.05]");
    v.check(*std::max_element(cost.begin(), cost.end()) < kBudget,
            "max seconds per resolution " + fmt("%.2f", *std::max_element(cost.begin(), cost.end())));
    return v;
}

Verdict kdv_focusing() {
    constexpr double kGrowth = 1.2, kStable = 0.05, kBudget = 120.0, kL = 400.0;
    const auto t0 = Clock::now();
    KdvDatumParams p;
    p.alpha = 1.0;
    p.c = 0.1;
    std::vector<double> d_focus, d_half;
    for (int n : {8192, 16384, 32768}) {
        const Field v0 = v_datum(make_grid(n, kL), p.alpha);
        d_focus.push_back(derivative(evolve(v0, 1.0, GroupKind::airy), 1).max_abs());
        d_half.push_back(derivative(evolve(v0, 0.5, GroupKind::airy), 1).max_abs());
    }
    Verdict v;
    std::vector<double> g_focus, c_half;
    for (size_t i = 1; i < d_focus.size(); ++i) {
        g_focus.push_back(d_focus[i] / d_focus[i - 1]);
        c_half.push_back(std::abs(d_half[i] / d_half[i - 1] - 1.0));
    }
    v.check(std::all_of(g_focus.begin(), g_focus.end(), [&](double r) { return r > kGrowth; }),
            "max|v_x| growth at t=1 " + join(g_focus) + " > 1.2");
    v.check(std::all_of(c_half.begin(), c_half.end(), [&](double r) { return r <= kStable; }),
            "relative change at t=0.5 " + join(c_half) + " <= 0.05");
    v.check(seconds_since(t0) < kBudget, "seconds " + fmt("%.2f", seconds_since(t0)));
    return v;
}

Verdict group_exactness() {
    constexpr double kUnitary = 1e-12, kGroupLaw = 1e-11, kKernel = 1e-5;
    const GridPtr g = make_grid(2048, 200.0);
    const Field f = Field::from_function(g, [](double x) {
        return std::exp(-x * x / 4) * std::exp(cplx(0.0, 1.5 * x)) + cplx(0.0, 0.5 / (1 + x * x));
    });
    double unit = 0.0, law = 0.0;
    for (auto kind : {GroupKind::schrodinger, GroupKind::airy})
        for (double t : {0.1, 0.5, 1.0, 5.0, -2.0}) {
            unit = std::max(unit, std::abs(l2(evolve(f, t, kind)) / l2(f) - 1.0));
            for (double s : {0.3, -1.7})
                law = std::max(law, l2(evolve(evolve(f, s, kind), t, kind) - evolve(f, s + t, kind)) / l2(f));
        }
    const auto gauss = [](double x) { return std::exp(-x * x); };
    const Field h = Field::from_function(g, [&](double x) { return cplx(gauss(x), 0.0); }, FieldTag::real);
    const Field conv = airy_convolve(g, 0.5, gauss, {-12.0, 12.0});
    const double kernel = l2(conv - evolve(h, 0.5, GroupKind::airy)) / l2(conv);
    Verdict v;
    v.check(unit <= kUnitary, "unitarity drift " + fmt("%.2e", unit));
    v.check(law <= kGroupLaw, "group law " + fmt("%.2e", law));
    v.check(kernel <= kKernel, "kernel vs multiplier " + fmt("%.2e", kernel));
    return v;
}

Verdict solver_correctness() {
    constexpr double kOrderLo = 12.0, kOrderHi = 20.0, kDrift = 1e-8, kPicard = 1e-6;
    Verdict v;
    {
        const GridPtr g = make_grid(16384, 400.0);
        const Field u0 = u_datum(g), v0 = v_datum(g, 0.25);
        const double T = 0.05, dt = 0.005;
        auto run = [&](double h) {
            SolverOptions o;
            o.fixed_dt = h;
            return evolve_trajectory(u0, v0, T, {}, {T}, o).states.back();
        };
        const SKdVState a = run(dt), b = run(dt / 2), r = run(dt / 16);
        const double ratio = (l2(a.u - r.u) + l2(a.v - r.v)) / (l2(b.u - r.u) + l2(b.v - r.v));
        v.check(ratio >= kOrderLo && ratio <= kOrderHi,
                "self-convergence ratio " + fmt("%.3g", ratio) + " in [12, 20]");

        const Trajectory t = evolve_trajectory(u0, v0, 0.5, {}, {0.25, 0.5});
        const auto& log = t.conserved_log;
        double dm = 0.0, dv = 0.0;
        for (const auto& e : log) {
            dm = std::max(dm, std::abs(e.mass_u / log[0].mass_u - 1.0));
            dv = std::max(dv, std::abs(e.mean_v / log[0].mean_v - 1.0));
        }
        v.check(dm <= kDrift, "mass drift " + fmt("%.2e", dm));
        v.check(dv <= kDrift, "mean drift " + fmt("%.2e", dv));
    }
    {
        const GridPtr g = make_grid(4096, 200.0);
        const Field u0 = 0.01 * u_datum(g);
        Field v0 = 0.01 * v_datum(g, 0.25);
        v0.make_real();
        const PicardResult pr = picard_solve(u0, v0, 0.05, {}, 30);
        const auto times = pr.trajectory.times();
        const Trajectory tr = evolve_trajectory(u0, v0, 0.05, {}, times);
        double worst = 0.0;
        for (size_t i = 0; i < times.size(); ++i)
            worst = std::max({worst, l2(pr.trajectory.states[i].u - tr.states[i].u),
                              l2(pr.trajectory.states[i].v - tr.states[i].v)});
        v.check(pr.converged && worst <= kPicard, "Picard vs stepper " + fmt("%.2e", worst));
    }
    return v;
}

Verdict smoothing_gaps() {
    constexpr double kGapI = 0.2, kGapII = 0.1, kStable = 0.05, kL = 400.0;
    IndexOptions o;
    o.band_hi = 64.0;
    o.n_bands = 5;
    const double t = schrodinger_focus_time({}) / 2;
    std::vector<double> gi, gii;
    for (int n : {16384, 32768}) {
        const GridPtr g = make_grid(n, kL);
        const Trajectory traj = evolve_trajectory(u_datum(g), v_datum(g, 0.25), t, {1.0, 1.0}, {t});
        const auto [a, b] = smoothing_gap(traj, t, o);
        gi.push_back(a.gap);
        gii.push_back(b.gap);
    }
    Verdict v;
    v.check(gi.back() >= kGapI, "gap(I) " + join(gi, "%.3f") + " >= 0.2");
    v.check(gii.back() >= kGapII, "gap(II) " + join(gii, "%.3f") + " >= 0.1");
    v.check(std::abs(gi[1] - gi[0]) <= kStable && std::abs(gii[1] - gii[0]) <= kStable,
            "doubling change within 0.05");
    return v;
}

Field synthetic(const GridPtr& g, double p) {
    CVec fh(static_cast<size_t>(g->n_points()));
    for (int k = 0; k < g->n_points(); ++k) fh[k] = std::pow(1.0 + g->xi(k) * g->xi(k), -p / 2.0);
    fh[static_cast<size_t>(g->nyquist_index())] = 0.0;
    return from_spectrum(g, fh, FieldTag::real);
}

Verdict index_calibration() {
    constexpr double kTol = 0.1;
    double worst = 0.0;
    for (int n : {4096, 16384})
        for (double s : {1.0, 1.5, 2.0, 2.5})
            worst = std::max(worst, std::abs(sobolev_index(synthetic(make_grid(n, 200.0), s + 0.5))
                                                 .sobolev_index -
                                             s));
    std::vector<double> iu, iv;
    for (int n : {8192, 16384, 32768, 65536}) iu.push_back(sobolev_index(u_datum(make_grid(n, 400.0))).sobolev_index);
    for (int n : {32768, 65536}) iv.push_back(sobolev_index(v_datum(make_grid(n, 400.0), 1.0)).sobolev_index);
    Verdict v;
    v.check(worst <= kTol, "synthetic worst error " + fmt("%.3f", worst));
    v.check(std::all_of(iu.begin(), iu.end(), [](double s) { return s >= 1.8 && s <= 2.1; }),
            "u0 index " + join(iu, "%.3f") + " in [1.8, 2.1]");
    v.check(std::all_of(iv.begin(), iv.end(), [](double s) { return s >= 1.4 && s <= 1.6; }),
            "v0 index " + join(iv, "%.3f") + " in [1.4, 1.6]");
    return v;
}

/// Exact ratio of every catalog entry on a case where both sides are known in closed form.
double trivial_error(EstimateId id) {
    const GridPtr g = make_grid(256, 64.0);
    const Field c = Field::from_function(g, [](double) { return cplx(1.5, 0.0); }, FieldTag::real);
    const Field bump = Field::from_function(
        g, [](double x) { return cplx(std::exp(-(x - 2) * (x - 2)), 0.0); }, FieldTag::real);
    const double L = g->length(), k = 2.0 * kPi * 5 / L;
    const Field wave = Field::from_function(g, [k](double x) { return std::exp(cplx(0.0, k * x)); });
    EstimateParams p = default_params(id);
    auto ratio = [&](const Field& f, const Field* h = nullptr) {
        return evaluate_estimate(id, f, h, p).ratio;
    };
    switch (id) {
        case EstimateId::KATO_KDV:
        case EstimateId::DUAL_KATO_KDV:
        case EstimateId::KATO_SCH:
        case EstimateId::DUAL_KATO_SCH_L2X:
        case EstimateId::DUAL_KATO_SCH_SUPX: p.T = 0.25; return std::abs(ratio(c));
        case EstimateId::STRICHARTZ_SCH:
            p.p = 2.0;
            p.q = kInf;
            p.T = 0.5;
            return std::abs(ratio(bump) - 1.0);
        case EstimateId::STRICHARTZ_KDV:
            p.theta = 0.0;
            p.T = 0.5;
            return std::abs(ratio(bump) - 1.0);
        case EstimateId::MAX_SCH_L2:
        case EstimateId::MAX_KDV_L2: p.T = 0.75; return std::abs(ratio(c) - std::pow(1.75, -p.rho));
        case EstimateId::MAX_SCH_L4:
            p.T = 0.5;
            return std::abs(ratio(wave) / (std::pow(L, -0.25) * std::pow(1 + k * k, -p.s / 2)) - 1.0);
        case EstimateId::MAX_KDV_L4:
            p.T = 0.5;
            return std::abs(ratio(wave) / (std::pow(L, -0.25) * std::pow(k, -0.25)) - 1.0);
        case EstimateId::INTER_KDV_1:
            p.T = 0.5;
            return std::abs(ratio(wave) / (std::pow(L, -0.3) * std::pow(0.5, 0.1)) - 1.0);
        case EstimateId::INTER_KDV_2:
            p.T = 0.5;
            return std::abs(ratio(wave) / (std::pow(k, 0.25) * std::pow(L, -0.35) * std::pow(0.5, 0.2)) - 1.0);
        case EstimateId::INTERP_WEIGHT_1:
        case EstimateId::INTERP_WEIGHT_2: p.theta = 0.0; return std::abs(ratio(bump) - 1.0);
        case EstimateId::COMMUTATOR_LP: return std::abs(ratio(c, &bump));
        case EstimateId::LEIBNITZ_L1L2:
            p.T = 0.25;
            p.alpha = 0.5;
            p.alpha1 = 0.0;
            p.alpha2 = 0.5;
            return std::abs(ratio(c, &bump));
        case EstimateId::WEIGHTED_REM_KDV:
        case EstimateId::WEIGHTED_REM_SCH: p.t = 0.0; return std::abs(ratio(bump));
        case EstimateId::WEIGHTED_STRICHARTZ_SCH: {
            p.T = 0.0;
            p.p = 2.0;
            p.q = kInf;
            const double a = norm(bump, NormSpec::weighted_abs(p.beta));
            const double b = l2(bump) + norm(bump, NormSpec::homogeneous(p.beta));
            return std::abs(ratio(bump) - a / (a + b));
        }
        case EstimateId::CONTRACTION_SMALLNESS: {
            const Field z = Field::zeros(g);
            const EstimateReport r = evaluate_estimate(id, z, &z, p);
            return r.skipped && r.ratio == 0.0 ? 0.0 : 1.0;
        }
    }
    return 1.0;
}

Verdict estimates_catalog() {
    constexpr double kExact = 1e-10, kOracle = 0.02;
    Verdict v;
    double worst_trivial = 0.0;
    for (auto id : all_estimates()) worst_trivial = std::max(worst_trivial, trivial_error(id));
    v.check(worst_trivial <= kExact, "trivial cases worst error " + fmt("%.2e", worst_trivial));

    const ConstantStore store = ConstantStore::load("data/recorded_constants.txt");
    int regressions = 0, missing = 0, count = 0;
    auto entries = default_campaign();
    const CampaignEntry kk = kato_kdv_oracle_entry(), ks = kato_sch_oracle_entry();
    entries.push_back(kk);
    entries.push_back(ks);
    double kato_kdv = 0.0, kato_sch = 0.0;
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        const double worst = run_trials(e.id, e.ensemble, e.params).worst.ratio;
        const auto rec = store.lookup(estimate_label(e.id, e.params), e.ensemble.version());
        ++count;
        if (!rec) ++missing;
        else if (worst > *rec * kConstantDrift) ++regressions;
        if (i == entries.size() - 2) kato_kdv = worst;
        if (i == entries.size() - 1) kato_sch = worst;
    }
    v.check(regressions == 0 && missing == 0,
            std::to_string(count) + " ensembles, " + std::to_string(regressions) + " above recorded x 1.02, " +
                std::to_string(missing) + " unrecorded");
    const double ek = std::abs(kato_kdv / kato_kdv_oracle() - 1.0);
    const double es = std::abs(kato_sch / kato_sch_oracle() - 1.0);
    v.check(ek <= kOracle, "KATO_KDV vs 1/sqrt(3) " + fmt("%.2e", ek));
    v.check(es <= kOracle, "KATO_SCH vs 1/sqrt(2) " + fmt("%.2e", es));
    return v;
}

Verdict contraction() {
    // Dyadic horizons long enough that the largest scales stop contracting inside the grid.
    std::vector<double> T_grid;
    for (int k = 0; k <= 11; ++k) T_grid.push_back(0.01 * std::ldexp(1.0, k));
    std::vector<double> admissible;
    for (double scale : {1.0, 0.5, 0.25, 0.125})
        admissible.push_back(contraction_probe(scale, 1.0, T_grid).admissible_T);
    Verdict v;
    v.check(std::is_sorted(admissible.begin(), admissible.end()),
            "admissible T over scales 1..1/8 " + join(admissible) + " nondecreasing");
    return v;
}

}  // namespace

int main() {
    report(1, "linear Schrodinger focusing", schrodinger_focusing);
    report(2, "linear KdV focusing", kdv_focusing);
    report(3, "group exactness", group_exactness);
    report(4, "solver correctness", solver_correctness);
    report(5, "Duhamel smoothing gaps", smoothing_gaps);
    report(6, "Sobolev index calibration", index_calibration);
    report(7, "estimates catalog", estimates_catalog);
    report(8, "contraction probe", contraction);
    report(9, "excluded items", [] {
        Verdict v;
        v.detail = "exact non-membership at t* and endpoint exponents are out of reach on finite grids; "
                   "criteria 1 and 2 carry the measurable trend";
        return v;
    });
    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}

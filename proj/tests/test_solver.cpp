#include <doctest.h>

#include <cmath>

#include "skdv/initial_data.hpp"
#include "skdv/solver.hpp"

using namespace skdv;

namespace {

double l2(const Field& f) { return norm(f, NormSpec::sobolev(0.0)); }

Field packet_u(const GridPtr& g, double amp = 0.8) {
    return Field::from_function(
        g, [amp](double x) { return amp * std::exp(-x * x / 2) * std::exp(cplx(0, x)); });
}

Field bump_v(const GridPtr& g, double amp = 0.8) {
    return Field::from_function(g, [amp](double x) { return cplx(amp * std::exp(-x * x / 3), 0.0); },
                                FieldTag::real);
}

SKdVState state(const Field& u, const Field& v) {
    SKdVState s;
    s.u = u;
    s.v = v;
    return s;
}

}  // namespace

TEST_CASE("zero data stays zero") {
    const GridPtr g = make_grid(128, 40.0);
    const Field z = Field::zeros(g);
    const Field zr = Field::zeros(g, FieldTag::real);
    const SKdVState s = step(state(z, zr), 0.01, {});
    CHECK(s.u.max_abs() == 0.0);
    CHECK(s.v.max_abs() == 0.0);
    const Trajectory t = evolve_trajectory(z, zr, 0.2, {}, {0.1, 0.2});
    REQUIRE(t.states.size() == 3);
    CHECK(t.states[0].time == 0.0);
    for (const auto& st : t.states) {
        CHECK(st.u.max_abs() == 0.0);
        CHECK(st.v.max_abs() == 0.0);
    }
}

TEST_CASE("u = 0 persists and v follows KdV") {
    const GridPtr g = make_grid(256, 40.0);
    const Field v0 = bump_v(g, 0.05);
    const Trajectory t = evolve_trajectory(Field::zeros(g), v0, 0.3, {0.0, 0.0}, {0.3});
    CHECK(t.states.back().u.max_abs() == 0.0);
    CHECK(t.states.back().v.is_real());
    const Trajectory c = evolve_trajectory(Field::zeros(g), v0, 0.3, {1.0, 1.0}, {0.3});
    CHECK(c.states.back().u.max_abs() == 0.0);
    CHECK(l2(c.states.back().v - t.states.back().v) == 0.0);
    // small amplitude: nearly the free Airy flow
    const Field lin = evolve(v0, 0.3, GroupKind::airy);
    CHECK(l2(t.states.back().v - lin) < 1e-2 * l2(lin));
    CHECK(l2(t.states.back().v - lin) > 0.0);
}

TEST_CASE("linear hook: one step is the exact group") {
    const GridPtr g = make_grid(256, 40.0);
    SolverOptions o;
    o.nonlinear = false;
    const Field u0 = packet_u(g), v0 = bump_v(g);
    const SKdVState s = step(state(u0, v0), 0.037, {}, o);
    const Field eu = evolve(u0, 0.037, GroupKind::schrodinger);
    const Field ev = evolve(v0, 0.037, GroupKind::airy);
    CHECK(l2(s.u - eu) <= 1e-13 * l2(eu));
    CHECK(l2(s.v - ev) <= 1e-13 * l2(ev));
}

TEST_CASE("linear core is time reversible") {
    const GridPtr g = make_grid(256, 40.0);
    SolverOptions o;
    o.nonlinear = false;
    o.fixed_dt = 0.01;
    const Field u0 = packet_u(g), v0 = bump_v(g);
    const Trajectory t = evolve_trajectory(u0, v0, 0.5, {}, {0.5}, o);
    const Field u = evolve(t.states.back().u, -0.5, GroupKind::schrodinger);
    const Field v = evolve(t.states.back().v, -0.5, GroupKind::airy);
    CHECK(l2(u - u0) <= 1e-12 * l2(u0));
    CHECK(l2(v - v0) <= 1e-12 * l2(v0));
}

TEST_CASE("fourth-order self-convergence on smooth data") {
    const GridPtr g = make_grid(256, 40.0);
    const Field u0 = packet_u(g), v0 = bump_v(g);
    auto run = [&](double dt) {
        SolverOptions o;
        o.fixed_dt = dt;
        return evolve_trajectory(u0, v0, 0.5, {}, {0.5}, o).states.back();
    };
    const double dt = 0.02;
    const SKdVState a = run(dt), b = run(dt / 2), r = run(dt / 8);
    const double ea = l2(a.u - r.u) + l2(a.v - r.v);
    const double eb = l2(b.u - r.u) + l2(b.v - r.v);
    CHECK(ea / eb >= 12.0);
    CHECK(ea / eb <= 20.0);
}

TEST_CASE("mass and mean conservation") {
    const GridPtr g = make_grid(512, 40.0);
    const Trajectory t = evolve_trajectory(packet_u(g), bump_v(g), 0.5, {}, {0.25, 0.5});
    const auto& log = t.conserved_log;
    REQUIRE(log.size() == 3);
    for (const auto& e : log) {
        CHECK(std::abs(e.mass_u / log[0].mass_u - 1.0) < 1e-8);
        CHECK(std::abs(e.mean_v / log[0].mean_v - 1.0) < 1e-8);
    }
    CHECK(log[0].mass_u == doctest::Approx(mass(packet_u(g))));
    CHECK(t.steps_taken > 0);
}

TEST_CASE("trajectory validation and blow-up signalling") {
    const GridPtr g = make_grid(128, 40.0);
    const Field u0 = packet_u(g), v0 = bump_v(g);
    CHECK_THROWS_AS(evolve_trajectory(u0, v0, 0.5, {}, {0.7}), ParameterError);
    CHECK_THROWS_AS(evolve_trajectory(u0, v0, 0.5, {}, {0.2, 0.2}), ParameterError);
    CHECK_THROWS_AS(evolve_trajectory(u0, v0, 0.0, {}, {}), ParameterError);
    CHECK_THROWS_AS(step(state(u0, v0), -0.1, {}), ParameterError);
    CHECK_THROWS_AS(step(state(u0, bump_v(make_grid(128, 30.0))), 0.1, {}), ParameterError);
    SolverOptions o;
    o.blowup_norm = 1e-3;
    CHECK_THROWS_AS(evolve_trajectory(u0, v0, 0.1, {}, {0.1}, o), BlowUpDetected);
    SolverOptions c;
    c.contamination_u = 1e-12;
    CHECK_THROWS_AS(evolve_trajectory(packet_u(g), v0, 0.1, {}, {0.1}, c), DomainTooSmall);
}

TEST_CASE("Duhamel split") {
    const GridPtr g = make_grid(256, 40.0);
    const Trajectory t = evolve_trajectory(packet_u(g), bump_v(g), 0.2, {}, {0.1, 0.2});
    const auto [I, II] = duhamel_split(t);
    CHECK(I.slices[0].max_abs() <= 1e-12 * packet_u(g).max_abs());
    CHECK(II.slices[0].max_abs() <= 1e-12 * bump_v(g).max_abs());
    CHECK(I.slices.back().max_abs() > 0.0);

    const Trajectory z = evolve_trajectory(Field::zeros(g), bump_v(g), 0.2, {}, {0.2});
    const auto [Iz, IIz] = duhamel_split(z);
    CHECK(Iz.slices.back().max_abs() == 0.0);
    CHECK(IIz.slices.back().max_abs() > 0.0);

    Trajectory bare = t;
    bare.linear_u.clear();
    CHECK_THROWS_AS(duhamel_split(bare), InternalError);
}

TEST_CASE("Duhamel term of u shrinks quadratically with the data") {
    const GridPtr g = make_grid(256, 40.0);
    std::vector<double> n;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const Trajectory t =
            evolve_trajectory(packet_u(g, eps), bump_v(g, eps), 0.2, {}, {0.2});
        n.push_back(l2(duhamel_split(t).first.slices.back()));
    }
    for (size_t i = 1; i < n.size(); ++i) CHECK(std::log10(n[i - 1] / n[i]) >= 1.9);
}

TEST_CASE("Picard solver") {
    const GridPtr g = make_grid(256, 40.0);
    const Field z = Field::zeros(g);
    const PicardResult pz = picard_solve(z, Field::zeros(g, FieldTag::real), 0.05, {}, 5);
    CHECK(pz.converged);
    CHECK(pz.differences.size() <= 1);
    for (const auto& s : pz.trajectory.states) {
        CHECK(s.u.max_abs() == 0.0);
        CHECK(s.v.max_abs() == 0.0);
    }

    const Field u0 = packet_u(g, 0.1), v0 = bump_v(g, 0.1);
    PicardOptions po;
    po.degree = 12;
    const PicardResult pr = picard_solve(u0, v0, 0.05, {}, 30, po);
    CHECK(pr.converged);
    for (size_t k = 1; k < pr.contraction_factors.size(); ++k)
        CHECK(pr.contraction_factors[k] < 0.5);
    const auto times = pr.trajectory.times();
    CHECK(times.size() == 13);
    SolverOptions so;
    so.fixed_dt = 1e-3;
    const Trajectory tr = evolve_trajectory(u0, v0, 0.05, {}, times, so);
    double worst = 0.0;
    for (size_t i = 0; i < times.size(); ++i)
        worst = std::max({worst, l2(pr.trajectory.states[i].u - tr.states[i].u),
                          l2(pr.trajectory.states[i].v - tr.states[i].v)});
    CHECK(worst < 1e-6);

    CHECK_THROWS_AS(picard_solve(packet_u(g, 40.0), bump_v(g, 40.0), 1.0, {}, 20, po),
                    ContractionFailure);
    PicardOptions soft = po;
    soft.throw_on_divergence = false;
    CHECK(picard_solve(packet_u(g, 40.0), bump_v(g, 40.0), 1.0, {}, 20, soft).diverged);
}

TEST_CASE("norm bundle") {
    const GridPtr g = make_grid(256, 40.0);
    const Trajectory z = evolve_trajectory(Field::zeros(g), Field::zeros(g, FieldTag::real), 0.1,
                                           {}, {0.05, 0.1});
    const NormBundle nz = norm_bundle(z, 1.0, 0.5, 0.25);
    CHECK(nz.mu1 == 0.0);
    CHECK(nz.mu2 == 0.0);
    CHECK(nz.mu3 == 0.0);
    CHECK(nz.mu4 == 0.0);

    std::vector<double> times;
    for (int i = 1; i <= 16; ++i) times.push_back(0.1 * i / 16);
    const Trajectory t = evolve_trajectory(packet_u(g), bump_v(g), 0.1, {}, times);
    const double s = 1.0;
    const NormBundle nb = norm_bundle(t, s, 0.5, 0.25);
    double u_sum = 0.0, v_sum = 0.0;
    for (const auto& [name, value] : nb.components) {
        CHECK(value >= 0.0);
        if (name.rfind("u_", 0) == 0 && name != "u_weight") u_sum += value;
        if (name.rfind("v_", 0) == 0 && name != "v_weight") v_sum += value;
    }
    CHECK(nb.mu1 == doctest::Approx(u_sum).epsilon(1e-12));
    CHECK(nb.mu2 == doctest::Approx(v_sum).epsilon(1e-12));
    CHECK(nb.mu3 == doctest::Approx(nb.mu1 + nb.component("u_weight")).epsilon(1e-12));
    CHECK(nb.mu4 == doctest::Approx(nb.mu2 + nb.component("v_weight")).epsilon(1e-12));
    CHECK_THROWS(nb.component("nope"));

    // independent recomputation of the Kato component of u
    SpaceTimeField D;
    D.grid = g;
    D.times = t.times();
    for (const auto& st : t.states) D.slices.push_back(fractional_derivative(st.u, s + 0.5));
    CHECK(std::abs(nb.component("u_kato") - mixed_norm(D, kInf, 2.0, MixOrder::x_then_t)) <=
          1e-10 * nb.component("u_kato"));

    CHECK_THROWS_AS(norm_bundle(t, 0.5, 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(norm_bundle(t, 1.0, 2.0, 0.0), ParameterError);
    CHECK_THROWS_AS(norm_bundle(t, 1.0, 0.0, 0.75), ParameterError);
}

TEST_CASE("norm bundle of the blow-up data is refinement stable") {
    // The Kato entries integrate Airy phases in time, so the snapshots must be dense.
    std::vector<NormBundle> b;
    for (int n : {8192, 16384}) {
        const GridPtr g = make_grid(n, 400.0);
        KdvDatumParams p;
        p.alpha = 0.25;
        Field v0 = kdv_datum(p, g);
        v0.make_real();
        std::vector<double> times;
        for (int i = 1; i <= 512; ++i) times.push_back(0.25 * i / 512);
        b.push_back(norm_bundle(evolve_trajectory(schrodinger_datum({}, g), v0, 0.25, {}, times),
                                1.0, 0.5, 0.25));
    }
    REQUIRE(b[0].components.size() == b[1].components.size());
    for (size_t i = 0; i < b[0].components.size(); ++i) {
        const double a = b[0].components[i].second, c = b[1].components[i].second;
        CHECK(std::isfinite(c));
        CHECK(std::abs(c / a - 1.0) < 0.05);
    }
}

#include <algorithm>
#include <cmath>
#include <string>

#include "skdv/solver.hpp"
#include "solver_internal.hpp"

namespace skdv {
namespace detail {

Nonlinearity::Nonlinearity(const GridPtr& g, const SKdVParams& p)
    : grid_(g), params_(p), n_(g->n_points()), m_(2 * g->n_points()), xi_(g->frequencies()) {
    lin_u_.resize(xi_.size());
    lin_v_.resize(xi_.size());
    for (size_t k = 0; k < xi_.size(); ++k) {
        lin_u_[k] = -xi_[k] * xi_[k];
        lin_v_[k] = xi_[k] * xi_[k] * xi_[k];
    }
    lin_v_[static_cast<size_t>(g->nyquist_index())] = 0.0;
    const auto m = static_cast<size_t>(m_);
    pu_.resize(m);
    pv_.resize(m);
    tu_.resize(m);
    tv_.resize(m);
    fu_.resize(m);
    fv_.resize(m);
}

void Nonlinearity::pad(const CVec& src, CVec& dst) const {
    std::fill(dst.begin(), dst.end(), cplx(0.0, 0.0));
    const int h = n_ / 2;
    for (int k = 0; k < h; ++k) dst[static_cast<size_t>(k)] = src[static_cast<size_t>(k)];
    for (int k = 1; k < h; ++k)
        dst[static_cast<size_t>(m_ - k)] = src[static_cast<size_t>(n_ - k)];
}

void Nonlinearity::unpad(const CVec& src, CVec& dst) const {
    const int h = n_ / 2;
    for (int k = 0; k < h; ++k) dst[static_cast<size_t>(k)] = src[static_cast<size_t>(k)];
    dst[static_cast<size_t>(h)] = 0.0;
    for (int k = 1; k < h; ++k)
        dst[static_cast<size_t>(n_ - k)] = src[static_cast<size_t>(m_ - k)];
}

void Nonlinearity::evaluate(const CVec& U, const CVec& V, CVec& nu, CVec& nv) {
    // Zero-padding to 2n keeps every product up to cubic order alias-free.
    pad(U, pu_);
    pad(V, pv_);
    fft::inverse(pu_.data(), tu_.data(), m_);
    fft::inverse(pv_.data(), tv_.data(), m_);
    const double up = static_cast<double>(m_) / n_;
    const double a = params_.coupling_alpha, g = params_.coupling_gamma;
    const cplx I(0.0, 1.0);
    for (int j = 0; j < m_; ++j) {
        const cplx u = tu_[static_cast<size_t>(j)] * up;
        const double v = tv_[static_cast<size_t>(j)].real() * up;
        const double u2 = std::norm(u);
        fu_[static_cast<size_t>(j)] = I * (u2 * u - a * u * v);
        fv_[static_cast<size_t>(j)] = cplx(-0.5 * v * v + g * u2, 0.0);
    }
    fft::forward(fu_.data(), pu_.data(), m_);
    fft::forward(fv_.data(), pv_.data(), m_);
    const double down = static_cast<double>(n_) / m_;
    for (auto& z : pu_) z *= down;
    for (auto& z : pv_) z *= down;
    unpad(pu_, nu);
    unpad(pv_, nv);
    for (int k = 0; k < n_; ++k) nv[static_cast<size_t>(k)] *= cplx(0.0, xi_[static_cast<size_t>(k)]);
    nv[static_cast<size_t>(n_ / 2)] = 0.0;
}

double coeff_l2(const CVec& F, double dx) {
    double acc = 0.0;
    for (const auto& z : F) acc += std::norm(z);
    return std::sqrt(acc * dx / static_cast<double>(F.size()));
}

void hermitian_project(CVec& F) {
    const size_t n = F.size();
    F[0] = cplx(F[0].real(), 0.0);
    F[n / 2] = cplx(F[n / 2].real(), 0.0);
    for (size_t k = 1; k < n / 2; ++k) {
        const cplx avg = 0.5 * (F[k] + std::conj(F[n - k]));
        F[k] = avg;
        F[n - k] = std::conj(avg);
    }
}

}  // namespace detail

namespace {

/// phi_1, phi_2, phi_3 of z; Taylor series near the origin avoids cancellation.
void phi_functions(cplx z, cplx& p1, cplx& p2, cplx& p3) {
    if (std::abs(z) < 0.5) {
        cplx a1 = 0.0, a2 = 0.0, a3 = 0.0, zn = 1.0;
        double f1 = 1.0, f2 = 2.0, f3 = 6.0;  // (n+1)!, (n+2)!, (n+3)!
        for (int n = 0; n < 22; ++n) {
            a1 += zn / f1;
            a2 += zn / f2;
            a3 += zn / f3;
            zn *= z;
            f1 *= n + 2.0;
            f2 *= n + 3.0;
            f3 *= n + 4.0;
        }
        p1 = a1;
        p2 = a2;
        p3 = a3;
        return;
    }
    const cplx e = std::exp(z);
    p1 = (e - 1.0) / z;
    p2 = (e - 1.0 - z) / (z * z);
    p3 = (e - 1.0 - z - 0.5 * z * z) / (z * z * z);
}

cplx unit_phase(double ph) { return cplx(std::cos(ph), std::sin(ph)); }

/// ETDRK4 coefficient arrays for one linear symbol L = i omega and step h.
struct EtdCoefficients {
    CVec e, e2, q, f1, f2, f3;

    void build(const std::vector<double>& omega, double h) {
        const size_t n = omega.size();
        e.resize(n);
        e2.resize(n);
        q.resize(n);
        f1.resize(n);
        f2.resize(n);
        f3.resize(n);
        for (size_t k = 0; k < n; ++k) {
            e[k] = unit_phase(h * omega[k]);
            e2[k] = unit_phase(0.5 * h * omega[k]);
            cplx p1h, p2h, p3h, p1, p2, p3;
            phi_functions(cplx(0.0, 0.5 * h * omega[k]), p1h, p2h, p3h);
            phi_functions(cplx(0.0, h * omega[k]), p1, p2, p3);
            q[k] = 0.5 * h * p1h;
            f1[k] = h * (p1 - 3.0 * p2 + 4.0 * p3);
            f2[k] = h * (2.0 * p2 - 4.0 * p3);
            f3[k] = h * (-p2 + 4.0 * p3);
        }
    }
};

class Stepper {
public:
    Stepper(const GridPtr& g, const SKdVParams& p, const SolverOptions& o)
        : grid_(g), opt_(o), nl_(g, p) {
        const auto n = static_cast<size_t>(g->n_points());
        for (CVec* a : {&nu0_, &nv0_, &nua_, &nva_, &nub_, &nvb_, &nuc_, &nvc_, &ua_, &va_, &ub_, &vb_,
                        &uc_, &vc_})
            a->resize(n);
    }

    void advance(CVec& U, CVec& V, double h) {
        if (h != h_) {
            cu_.build(nl_.lin_u(), h);
            cv_.build(nl_.lin_v(), h);
            h_ = h;
        }
        const size_t n = U.size();
        if (!opt_.nonlinear) {
            for (size_t k = 0; k < n; ++k) {
                U[k] *= cu_.e[k];
                V[k] *= cv_.e[k];
            }
            return;
        }
        nl_.evaluate(U, V, nu0_, nv0_);
        for (size_t k = 0; k < n; ++k) {
            ua_[k] = cu_.e2[k] * U[k] + cu_.q[k] * nu0_[k];
            va_[k] = cv_.e2[k] * V[k] + cv_.q[k] * nv0_[k];
        }
        nl_.evaluate(ua_, va_, nua_, nva_);
        for (size_t k = 0; k < n; ++k) {
            ub_[k] = cu_.e2[k] * U[k] + cu_.q[k] * nua_[k];
            vb_[k] = cv_.e2[k] * V[k] + cv_.q[k] * nva_[k];
        }
        nl_.evaluate(ub_, vb_, nub_, nvb_);
        for (size_t k = 0; k < n; ++k) {
            uc_[k] = cu_.e2[k] * ua_[k] + cu_.q[k] * (2.0 * nub_[k] - nu0_[k]);
            vc_[k] = cv_.e2[k] * va_[k] + cv_.q[k] * (2.0 * nvb_[k] - nv0_[k]);
        }
        nl_.evaluate(uc_, vc_, nuc_, nvc_);
        for (size_t k = 0; k < n; ++k) {
            U[k] = cu_.e[k] * U[k] + cu_.f1[k] * nu0_[k] + cu_.f2[k] * (nua_[k] + nub_[k]) +
                   cu_.f3[k] * nuc_[k];
            V[k] = cv_.e[k] * V[k] + cv_.f1[k] * nv0_[k] + cv_.f2[k] * (nva_[k] + nvb_[k]) +
                   cv_.f3[k] * nvc_[k];
        }
        detail::hermitian_project(V);
    }

    double controller_dt(const CVec& U, const CVec& V) const {
        const CVec u = fft::inverse(U);
        const CVec v = fft::inverse(V);
        double su = 0.0, sv = 0.0;
        for (const auto& z : u) su = std::max(su, std::norm(z));
        for (const auto& z : v) sv = std::max(sv, std::abs(z.real()));
        return opt_.c_cfl / std::max({1.0, sv, su});
    }

    void check_blowup(const CVec& U, const CVec& V, double t) const {
        const double dx = grid_->dx();
        const double nu = detail::coeff_l2(U, dx), nv = detail::coeff_l2(V, dx);
        const double worst = std::max(nu, nv);
        if (!std::isfinite(nu) || !std::isfinite(nv) || worst > opt_.blowup_norm)
            throw BlowUpDetected("solution norm left the finite range at t = " + std::to_string(t),
                                 t, worst);
    }

private:
    GridPtr grid_;
    SolverOptions opt_;
    detail::Nonlinearity nl_;
    double h_ = -1.0;
    EtdCoefficients cu_, cv_;
    CVec nu0_, nv0_, nua_, nva_, nub_, nvb_, nuc_, nvc_, ua_, va_, ub_, vb_, uc_, vc_;
};

void check_state(const SKdVState& s) {
    if (!s.u.grid || !s.v.grid) throw ParameterError("state fields need a grid");
    if (s.u.grid->n_points() != s.v.grid->n_points() || s.u.grid->length() != s.v.grid->length())
        throw ParameterError("u and v must share one grid");
}

void check_contamination(const Field& u, const Field& v, const SolverOptions& o, double t) {
    if (std::isfinite(o.contamination_u)) {
        const double c = boundary_contamination(u, 0.05);
        if (c > o.contamination_u)
            throw DomainTooSmall("u reaches the box edge at t = " + std::to_string(t) +
                                     ": contamination " + std::to_string(c),
                                 c);
    }
    if (std::isfinite(o.contamination_v)) {
        const double c = boundary_contamination(v, 0.05);
        if (c > o.contamination_v)
            throw DomainTooSmall("v reaches the box edge at t = " + std::to_string(t) +
                                     ": contamination " + std::to_string(c),
                                 c);
    }
}

}  // namespace

double mass(const Field& u) {
    double acc = 0.0;
    for (const auto& z : u.values) acc += std::norm(z);
    return acc * u.grid->dx();
}

double integral(const Field& v) {
    double acc = 0.0;
    for (const auto& z : v.values) acc += z.real();
    return acc * v.grid->dx();
}

std::vector<double> Trajectory::times() const {
    std::vector<double> t;
    t.reserve(states.size());
    for (const auto& s : states) t.push_back(s.time);
    return t;
}

SpaceTimeField Trajectory::u_field() const {
    SpaceTimeField f;
    f.grid = states.front().u.grid;
    f.times = times();
    for (const auto& s : states) f.slices.push_back(s.u);
    return f;
}

SpaceTimeField Trajectory::v_field() const {
    SpaceTimeField f;
    f.grid = states.front().v.grid;
    f.times = times();
    for (const auto& s : states) f.slices.push_back(s.v);
    return f;
}

SKdVState step(const SKdVState& state, double dt, const SKdVParams& params,
               const SolverOptions& options) {
    check_state(state);
    if (!(dt > 0.0)) throw ParameterError("time step must be > 0");
    require_finite(state.u, "step");
    require_finite(state.v, "step");
    Stepper st(state.u.grid, params, options);
    CVec U = fft::forward(state.u.values);
    CVec V = fft::forward(state.v.values);
    st.advance(U, V, dt);
    st.check_blowup(U, V, state.time + dt);
    SKdVState out;
    out.u = Field(state.u.grid, fft::inverse(U), FieldTag::complex);
    out.v = Field(state.v.grid, fft::inverse(V), FieldTag::complex);
    out.v.make_real();
    out.time = state.time + dt;
    return out;
}

Trajectory evolve_trajectory(const Field& u0, const Field& v0, double T, const SKdVParams& params,
                             const std::vector<double>& snapshot_times,
                             const SolverOptions& options) {
    if (!(T > 0.0)) throw ParameterError("horizon T must be > 0");
    SKdVState s0{u0, v0, 0.0};
    check_state(s0);
    require_finite(u0, "evolve_trajectory");
    require_finite(v0, "evolve_trajectory");
    std::vector<double> times = snapshot_times;
    std::sort(times.begin(), times.end());
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || times[i] > T * (1.0 + 1e-12))
            throw ParameterError("snapshot times must lie in [0, T]");
        if (i > 0 && times[i] == times[i - 1])
            throw ParameterError("snapshot times must be distinct");
    }
    if (times.empty() || times.front() != 0.0) times.insert(times.begin(), 0.0);

    const GridPtr& g = u0.grid;
    Stepper st(g, params, options);
    CVec U = fft::forward(u0.values);
    CVec V = fft::forward(v0.values);
    detail::hermitian_project(V);

    Trajectory traj;
    traj.params = params;
    auto record = [&](double t) {
        SKdVState s;
        s.u = Field(g, fft::inverse(U), FieldTag::complex);
        s.v = Field(g, fft::inverse(V), FieldTag::complex);
        s.v.make_real();
        s.time = t;
        check_contamination(s.u, s.v, options, t);
        traj.conserved_log.push_back({mass(s.u), integral(s.v)});
        traj.linear_u.push_back(evolve(u0, t, GroupKind::schrodinger));
        Field lv = evolve(v0, t, GroupKind::airy);
        lv.make_real();
        traj.linear_v.push_back(std::move(lv));
        traj.states.push_back(std::move(s));
    };
    record(0.0);
    double t = 0.0;
    for (size_t i = 1; i < times.size(); ++i) {
        const double target = times[i];
        if (options.fixed_dt > 0.0) {
            const double span = target - t;
            const long steps = std::max(1L, static_cast<long>(std::ceil(span / options.fixed_dt - 1e-9)));
            const double h = span / static_cast<double>(steps);
            for (long k = 0; k < steps; ++k) {
                st.advance(U, V, h);
                ++traj.steps_taken;
                st.check_blowup(U, V, t + (k + 1) * h);
            }
        } else {
            while (t < target) {
                double h = st.controller_dt(U, V);
                if (t + h >= target - 1e-12 * std::max(1.0, target)) h = target - t;
                st.advance(U, V, h);
                ++traj.steps_taken;
                t += h;
                st.check_blowup(U, V, t);
            }
        }
        t = target;
        record(target);
    }
    return traj;
}

std::pair<SpaceTimeField, SpaceTimeField> duhamel_split(const Trajectory& traj) {
    if (traj.states.empty()) throw InternalError("empty trajectory");
    if (traj.linear_u.size() != traj.states.size() || traj.linear_v.size() != traj.states.size())
        throw InternalError("trajectory lacks the stored linear evolutions");
    SpaceTimeField I, II;
    I.grid = II.grid = traj.states.front().u.grid;
    I.times = II.times = traj.times();
    for (size_t i = 0; i < traj.states.size(); ++i) {
        I.slices.push_back(traj.states[i].u - traj.linear_u[i]);
        Field d = traj.states[i].v - traj.linear_v[i];
        d.make_real();
        II.slices.push_back(std::move(d));
    }
    return {std::move(I), std::move(II)};
}

}  // namespace skdv

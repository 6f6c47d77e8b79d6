#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "skdv/quadrature.hpp"
#include "skdv/solver.hpp"
#include "solver_internal.hpp"

namespace skdv {
namespace {

/// W(m, j) = integral from 0 to t_m of the j-th Lagrange basis polynomial on the nodes.
Eigen::MatrixXd integration_matrix(const std::vector<double>& tau, double T) {
    const int m = static_cast<int>(tau.size());
    const int deg = m - 1;
    Eigen::MatrixXd vand(m, m);
    Eigen::MatrixXd prim(m, m);  // prim(i, n) = integral_{-1}^{tau_i} P_n
    std::vector<double> p(static_cast<size_t>(deg + 2));
    for (int i = 0; i < m; ++i) {
        for (int n = 0; n <= deg + 1; ++n) {
            double dp;
            legendre(n, tau[static_cast<size_t>(i)], p[static_cast<size_t>(n)], dp);
        }
        for (int n = 0; n <= deg; ++n) {
            vand(i, n) = p[static_cast<size_t>(n)];
            prim(i, n) = n == 0 ? tau[static_cast<size_t>(i)] + 1.0
                                : (p[static_cast<size_t>(n + 1)] - p[static_cast<size_t>(n - 1)]) /
                                      (2.0 * n + 1.0);
        }
    }
    // Basis coefficients: l_j = sum_n C(n, j) P_n with C = vand^{-1}.
    const Eigen::MatrixXd coef = vand.partialPivLu().inverse();
    return 0.5 * T * prim * coef;
}

void rotate(const CVec& in, const std::vector<double>& omega, double t, CVec& out) {
    for (size_t k = 0; k < in.size(); ++k)
        out[k] = in[k] * cplx(std::cos(t * omega[k]), std::sin(t * omega[k]));
}

}  // namespace

PicardResult picard_solve(const Field& u0, const Field& v0, double T, const SKdVParams& params,
                          int n_iter, const PicardOptions& options) {
    if (!(T > 0.0)) throw ParameterError("picard_solve: T must be > 0");
    if (n_iter < 1) throw ParameterError("picard_solve: n_iter must be >= 1");
    if (options.degree < 2) throw ParameterError("picard_solve: degree must be >= 2");
    if (!u0.grid || !v0.grid || u0.grid->n_points() != v0.grid->n_points())
        throw ParameterError("picard_solve: u0 and v0 must share one grid");
    require_finite(u0, "picard_solve");
    require_finite(v0, "picard_solve");

    const GridPtr& g = u0.grid;
    const size_t n = static_cast<size_t>(g->n_points());
    const double dx = g->dx();
    const QuadratureRule lob = gauss_lobatto(options.degree);
    const size_t m = lob.nodes.size();
    std::vector<double> t(m);
    for (size_t i = 0; i < m; ++i) t[i] = 0.5 * T * (lob.nodes[i] + 1.0);
    t.front() = 0.0;
    t.back() = T;
    const Eigen::MatrixXd W = integration_matrix(lob.nodes, T);

    detail::Nonlinearity nl(g, params);
    const auto& wu = nl.lin_u();
    const auto& wv = nl.lin_v();
    std::vector<double> mwu(wu.size()), mwv(wv.size());
    for (size_t k = 0; k < wu.size(); ++k) {
        mwu[k] = -wu[k];
        mwv[k] = -wv[k];
    }

    const CVec U0 = fft::forward(u0.values);
    CVec V0 = fft::forward(v0.values);
    detail::hermitian_project(V0);

    // Interaction-picture iterates: tilde U(t) = exp(-tL) U(t); the free flow is constant.
    std::vector<CVec> tu(m, U0), tv(m, V0);
    std::vector<CVec> gu(m, CVec(n)), gv(m, CVec(n));
    CVec U(n), V(n), nu(n), nv(n);

    PicardResult res;
    const double scale = detail::coeff_l2(U0, dx) + detail::coeff_l2(V0, dx);
    int growing = 0;
    for (int it = 0; it < n_iter; ++it) {
        for (size_t j = 0; j < m; ++j) {
            rotate(tu[j], wu, t[j], U);
            rotate(tv[j], wv, t[j], V);
            nl.evaluate(U, V, nu, nv);
            rotate(nu, mwu, t[j], gu[j]);
            rotate(nv, mwv, t[j], gv[j]);
        }
        double diff = 0.0;
        for (size_t i = 0; i < m; ++i) {
            CVec nu_i = U0, nv_i = V0;
            for (size_t j = 0; j < m; ++j) {
                const double w = W(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                if (w == 0.0) continue;
                for (size_t k = 0; k < n; ++k) {
                    nu_i[k] += w * gu[j][k];
                    nv_i[k] += w * gv[j][k];
                }
            }
            detail::hermitian_project(nv_i);
            CVec du(n), dv(n);
            for (size_t k = 0; k < n; ++k) {
                du[k] = nu_i[k] - tu[i][k];
                dv[k] = nv_i[k] - tv[i][k];
            }
            const double a = detail::coeff_l2(du, dx), b = detail::coeff_l2(dv, dx);
            diff = std::max(diff, std::sqrt(a * a + b * b));
            tu[i] = std::move(nu_i);
            tv[i] = std::move(nv_i);
        }
        if (!std::isfinite(diff)) {
            res.diverged = true;
            res.differences.push_back(diff);
            break;
        }
        if (!res.differences.empty()) {
            const double prev = res.differences.back();
            res.contraction_factors.push_back(prev > 0.0 ? diff / prev : 0.0);
            growing = diff > prev ? growing + 1 : 0;
        }
        res.differences.push_back(diff);
        if (growing >= 3) {
            res.diverged = true;
            break;
        }
        if (diff <= options.tol * scale) {
            res.converged = true;
            break;
        }
    }

    Trajectory& traj = res.trajectory;
    traj.params = params;
    for (size_t i = 0; i < m; ++i) {
        rotate(tu[i], wu, t[i], U);
        rotate(tv[i], wv, t[i], V);
        SKdVState s;
        s.u = Field(g, fft::inverse(U), FieldTag::complex);
        s.v = Field(g, fft::inverse(V), FieldTag::complex);
        s.v.make_real();
        s.time = t[i];
        traj.conserved_log.push_back({mass(s.u), integral(s.v)});
        rotate(U0, wu, t[i], U);
        rotate(V0, wv, t[i], V);
        traj.linear_u.emplace_back(g, fft::inverse(U), FieldTag::complex);
        Field lv(g, fft::inverse(V), FieldTag::complex);
        lv.make_real();
        traj.linear_v.push_back(std::move(lv));
        traj.states.push_back(std::move(s));
    }

    if (res.diverged && options.throw_on_divergence) {
        double mu1 = kInf, mu2 = kInf;
        if (std::isfinite(res.differences.back())) {
            const NormBundle nb = norm_bundle(traj, 1.0, 0.0, 0.0);
            mu1 = nb.mu1;
            mu2 = nb.mu2;
        }
        throw ContractionFailure("Picard iteration diverged on [0, " + std::to_string(T) + "]", T,
                                 mu1, mu2);
    }
    return res;
}

}  // namespace skdv

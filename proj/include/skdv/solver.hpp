#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skdv/linear_groups.hpp"

namespace skdv {

/// Couplings of i u_t + u_xx + |u|^2 u = a u v,  v_t + v_xxx + (v^2/2)_x = g (|u|^2)_x.
struct SKdVParams {
    double coupling_alpha = 1.0;
    double coupling_gamma = 1.0;
};

struct SKdVState {
    Field u;
    Field v;
    double time = 0.0;
};

struct ConservedEntry {
    double mass_u = 0.0;  ///< integral of |u|^2
    double mean_v = 0.0;  ///< integral of v
};

struct Trajectory {
    std::vector<SKdVState> states;
    std::vector<Field> linear_u;  ///< S(t) u0 at each snapshot
    std::vector<Field> linear_v;  ///< V(t) v0 at each snapshot
    SKdVParams params;
    std::vector<ConservedEntry> conserved_log;
    long steps_taken = 0;

    std::vector<double> times() const;
    SpaceTimeField u_field() const;
    SpaceTimeField v_field() const;
};

struct SolverOptions {
    /// Step controller: dt = c_cfl / max(1, sup|v|, sup|u|^2).
    double c_cfl = 0.0025;
    /// When positive, each snapshot interval is split into equal steps no longer than this.
    double fixed_dt = 0.0;
    /// Test hook: false integrates only the linear parts.
    bool nonlinear = true;
    double blowup_norm = 1e12;
    /// Snapshot-time limits on boundary_contamination(., 0.05); infinite disables the check.
    double contamination_u = kInf;
    double contamination_v = kInf;
};

double mass(const Field& u);
double integral(const Field& v);

/// One fourth-order exponential Runge-Kutta (Cox-Matthews ETDRK4) step of size dt.
SKdVState step(const SKdVState& state, double dt, const SKdVParams& params,
               const SolverOptions& options = {});

/// Integrates from (u0, v0) to T, storing states at snapshot_times (0 is always included).
Trajectory evolve_trajectory(const Field& u0, const Field& v0, double T, const SKdVParams& params,
                             const std::vector<double>& snapshot_times,
                             const SolverOptions& options = {});

/// I(t) = u(t) - S(t) u0 and II(t) = v(t) - V(t) v0 on the snapshot times.
std::pair<SpaceTimeField, SpaceTimeField> duhamel_split(const Trajectory& traj);

struct PicardOptions {
    /// Polynomial degree in time; the iterate lives on degree + 1 Gauss-Lobatto nodes.
    int degree = 16;
    /// Stop once the iterate difference falls below tol * (||u0|| + ||v0||).
    double tol = 1e-14;
    /// When false a diverging iteration returns with diverged set instead of throwing.
    bool throw_on_divergence = true;
};

struct PicardResult {
    Trajectory trajectory;
    std::vector<double> differences;          ///< sup over nodes of ||X_{k+1} - X_k||_2
    std::vector<double> contraction_factors;  ///< differences[k] / differences[k - 1]
    bool converged = false;
    bool diverged = false;
};

/// Fixed-point iteration of the integral equations in the interaction picture,
/// collocated on Gauss-Lobatto nodes in [0, T], starting from the free evolution.
PicardResult picard_solve(const Field& u0, const Field& v0, double T, const SKdVParams& params,
                          int n_iter, const PicardOptions& options = {});

struct NormBundle {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double mu3 = 0.0;
    double mu4 = 0.0;
    std::vector<std::pair<std::string, double>> components;

    double component(const std::string& name) const;
};

/// Sub-norms of the solution spaces evaluated on the trajectory snapshots.
NormBundle norm_bundle(const Trajectory& traj, double s, double r1, double r2);

}  // namespace skdv

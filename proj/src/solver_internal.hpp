#pragma once

#include <vector>

#include "skdv/solver.hpp"

namespace skdv::detail {

/// Spectral right-hand side shared by the time stepper and the Picard solver.
/// Arrays hold unnormalized DFT coefficients of u and v on the base grid.
class Nonlinearity {
public:
    Nonlinearity(const GridPtr& g, const SKdVParams& p);

    /// Dealiased nonlinear terms: nu = F[i|u|^2 u - i a u v], nv = i xi F[-v^2/2 + g |u|^2].
    void evaluate(const CVec& U, const CVec& V, CVec& nu, CVec& nv);

    const std::vector<double>& lin_u() const { return lin_u_; }  ///< symbol of the u linear part / i
    const std::vector<double>& lin_v() const { return lin_v_; }

private:
    void pad(const CVec& src, CVec& dst) const;
    void unpad(const CVec& src, CVec& dst) const;

    GridPtr grid_;
    SKdVParams params_;
    int n_;
    int m_;
    std::vector<double> xi_;
    std::vector<double> lin_u_;
    std::vector<double> lin_v_;
    CVec pu_, pv_, tu_, tv_, fu_, fv_;
};

/// Physical-space L2 norm from unnormalized DFT coefficients.
double coeff_l2(const CVec& F, double dx);

/// Enforces F_{-k} = conj(F_k) so the represented field stays real.
void hermitian_project(CVec& F);

}  // namespace skdv::detail

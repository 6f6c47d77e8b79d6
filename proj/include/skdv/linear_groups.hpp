#pragma once

#include <functional>
#include <vector>

#include "skdv/spectral_core.hpp"

namespace skdv {

/// S(t) = exp(it d_xx) has multiplier exp(-i t xi^2); V(t) = exp(-t d_xxx) has exp(i t xi^3).
enum class GroupKind { schrodinger, airy };

const char* to_string(GroupKind k);

/// Multiplier of the group at time t on the grid frequencies.  The Airy phase
/// t xi^3 is odd, so it is dropped at the unpaired Nyquist mode (multiplier 1);
/// this keeps the group law and realness exact.
CVec group_multiplier(const Grid1D& g, double t, GroupKind kind);

/// Applies the group for time t.
Field evolve(const Field& f, double t, GroupKind kind);

/// Fundamental solution of v_t + v_xxx = 0: K_t(x) = (3t)^{-1/3} Ai(x / (3t)^{1/3}),
/// with K_{-t}(x) = K_t(-x).
double airy_kernel(double x, double t);

/// Grid samples of airy_kernel(., t).
Field airy_kernel_field(const GridPtr& g, double t);

/// Whole-line convolution (K_t * f)(x_j) by composite Gauss-Legendre quadrature.
/// f is taken to vanish outside [breaks.front(), breaks.back()]; interior breaks
/// mark points where f is not smooth.  Panels are subdivided to width <= max_panel.
Field airy_convolve(const GridPtr& g, double t, const std::function<double(double)>& f,
                    const std::vector<double>& breaks, int nodes_per_panel = 16,
                    double max_panel = 0.5);

/// |x|^beta f(x) on the centered grid coordinate.
Field abs_weight(const Field& f, double beta);

/// Remainder of commuting |x|^beta with a group (Phi for airy, Lambda for schrodinger).
struct RemainderField {
    Field field;
    double beta = 0.0;
    double time = 0.0;
    GroupKind kind = GroupKind::airy;
};

/// evolve(|x|^beta evolve(f, t) - evolve(|x|^beta f, t), -t).  The input must be
/// decaying: boundary_contamination(f, 0.05) below contamination_max.
RemainderField weighted_remainder(const Field& f, double beta, double t, GroupKind kind,
                                  double contamination_max = 1e-4);

}  // namespace skdv

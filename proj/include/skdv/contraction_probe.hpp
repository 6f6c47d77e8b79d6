#pragma once

#include <vector>

#include "skdv/solver.hpp"

namespace skdv {

/// Largest ratio of successive Picard differences, ignoring differences already
/// at the roundoff floor.  0 for zero data, infinite for a diverged run.
double measured_contraction_factor(const PicardResult& r);

struct ProbeOptions {
    int n_points = 2048;
    double length = 200.0;
    /// Chirp rate of the Schrodinger datum; the KdV datum uses 1 / (4 data_alpha).
    double data_alpha = 1.0;
    SKdVParams couplings;
    int n_iter = 30;
    int degree = 16;
};

struct ProbeCell {
    double T = 0.0;
    double factor = 0.0;
    bool diverged = false;
};

struct ProbeResult {
    double data_scale = 0.0;
    /// ||u0||_{s+1/2} + ||v0||_s of the scaled data.
    double data_norm = 0.0;
    std::vector<ProbeCell> cells;
    /// Largest T of the grid with factor < 1/2; 0 when none qualifies.
    double admissible_T = 0.0;
};

/// Picard contraction factors of the scaled blow-up data over a grid of horizons.
ProbeResult contraction_probe(double data_scale, double s, const std::vector<double>& T_grid,
                              const ProbeOptions& opt = {});

}  // namespace skdv

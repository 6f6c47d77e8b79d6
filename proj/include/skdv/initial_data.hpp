#pragma once

#include <vector>

#include "skdv/linear_groups.hpp"

namespace skdv {

/// Chirped algebraic datum exp(-i a (x - x0)^2) / (1 + x^2)^{5/4}.  The linear
/// Schrodinger flow focuses it at (x0, 1 / (4 a)).
struct SchrodingerDatumParams {
    double alpha = 1.0;
    double x0 = 0.0;
    /// Maximum accepted boundary_contamination(u0, 0.05).
    double contamination_max = 1e-4;
};

double schrodinger_focus_time(const SchrodingerDatumParams& p);

Field schrodinger_datum(const SchrodingerDatumParams& p, const GridPtr& g);

/// v0 = sum_{j=1}^{j_max} lambda_j V(-alpha j) phi with lambda_j = c exp(-alpha^2 j^2).
/// The linear KdV flow focuses each term at t = alpha j.
struct KdvDatumParams {
    double alpha = 1.0;
    double c = 0.1;
    /// 0 selects the smallest j_max meeting the tail bound.
    int j_max = 0;
    /// When false an explicit j_max is used even if the tail bound fails.
    bool strict_tail = true;
    /// Maximum accepted contamination of each evolved term: its boundary_contamination
    /// scaled by lambda_j max|term_j| / (lambda_1 max|term_1|).
    double contamination_max = 5e-2;
};

inline constexpr double kKdvTailBound = 1e-14;

double kdv_lambda(const KdvDatumParams& p, int j);
/// Tail sum_{j > j_max} lambda_j ||phi||_2.
double kdv_tail(const KdvDatumParams& p, int j_max);
/// Smallest j_max with kdv_tail below kKdvTailBound.
int kdv_required_j_max(const KdvDatumParams& p);

Field kdv_datum(const KdvDatumParams& p, const GridPtr& g);
/// Per-term contamination levels checked by kdv_datum, without the check.
std::vector<double> kdv_term_contamination(const KdvDatumParams& p, const GridPtr& g);

/// phi(x) = exp(-2 |x|).
Field phi(const GridPtr& g);

/// ||phi||_2 on the line, (1/2)^{1/2}.
double phi_l2_norm();

}  // namespace skdv

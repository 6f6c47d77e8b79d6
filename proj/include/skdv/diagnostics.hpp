#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "skdv/solver.hpp"

namespace skdv {

enum class Trend { diverging, saturating, stable };
const char* to_string(Trend t);

/// Classifies a sequence of values taken on successively refined grids.
/// stable: every relative change <= stable_tol; saturating: the changes shrink
/// by at least half from first to last; diverging otherwise.
Trend classify_trend(const std::vector<double>& values, double stable_tol = 0.02);

struct IndexOptions {
    /// Top of the fit band as a fraction of kmax (ignored when band_hi > 0).
    double top_fraction = 0.6;
    /// Number of dyadic bands [hi/2, hi), [hi/4, hi/2), ... below the top.
    int n_bands = 4;
    /// Explicit band top in frequency units; keeps the band fixed across grids.
    double band_hi = 0.0;
    /// A band whose mean amplitude falls below smooth_floor * max|f^| marks the field smooth.
    double smooth_floor = 1e-13;
};

struct RegularityEstimate {
    /// s* from |f^(xi)| ~ |xi|^{-(s* + 1/2)}; meaningless when smooth is set.
    double sobolev_index = 0.0;
    bool smooth = false;
    double band_lo = 0.0;
    double band_hi = 0.0;
    /// RMS residual of the log-log fit.
    double fit_residual = 0.0;
    Trend refinement_trend = Trend::stable;
    /// False when only one grid was analysed and the trend field carries no information.
    bool trend_evaluated = false;
};

/// Least-squares slope of log band-mean |f^| against log band-centre frequency.
RegularityEstimate sobolev_index(const Field& f, const IndexOptions& opt = {});

/// Index of the finest field with the trend of the index across the sequence
/// (coarse to fine).  Use a fixed band_hi so every grid fits the same band.
RegularityEstimate sobolev_index_refined(const std::vector<Field>& fields,
                                         const IndexOptions& opt = {});

struct HolderOptions {
    /// Pairs enumerated exhaustively up to this count; beyond it each lag keeps a
    /// seeded, evenly strided subset of positions.
    long pair_budget = 4000000;
    unsigned long long seed = 20240611ULL;
};

struct HolderReport {
    int order = 1;
    double beta = 0.0;
    double quotient_max = 0.0;
    double location = 0.0;
    /// quotient_max on the grid over quotient_max of the N/2 spectral truncation.
    double growth_ratio = 1.0;
};

/// max |f'(x) - f'(y)| / |x - y|^beta over grid pairs with 0 < |x - y| <= window,
/// f' by spectral differentiation.  With a center only points within window of it are used.
HolderReport holder_modulus(const Field& f, double beta, double window,
                            std::optional<double> center = std::nullopt,
                            const HolderOptions& opt = {});

/// The same quotient without the truncation comparison (growth_ratio left at 1).
HolderReport holder_quotient(const Field& f, double beta, double window,
                             std::optional<double> center = std::nullopt,
                             const HolderOptions& opt = {});

/// Spectral truncation to n/2 points on the same box (every other grid point).
Field half_resolution(const Field& f);

enum class FocusKind { holder, derivative };

struct FocusEvent {
    double x = 0.0;
    double t = 0.0;
    /// Hölder quotient or max |f'| at the event.
    double value = 0.0;
    /// Refinement growth of value against the N/2 truncation.
    double strength = 0.0;
};

struct FocusOptions {
    FocusKind kind = FocusKind::holder;
    /// Pair window for the Hölder quotient.
    double window = 0.05;
    HolderOptions holder;
};

/// Local maxima in t of the per-snapshot quantity, sorted by value, largest first.
std::vector<FocusEvent> focusing_scan(const SpaceTimeField& F, double beta,
                                      const FocusOptions& opt = {});

enum class GapComponent { I_schrodinger, II_kdv };

struct SmoothingGapReport {
    double index_linear = 0.0;
    double index_duhamel = 0.0;
    double gap = 0.0;
    GapComponent component = GapComponent::I_schrodinger;
    double time = 0.0;
};

/// Gaps at the snapshot nearest to time: index(I) - index(S(t)u0) and
/// index(II) - index(V(t)v0), both on the trajectory grid with one fit protocol.
/// A smooth Duhamel term against a rough linear part gives an infinite gap.
std::pair<SmoothingGapReport, SmoothingGapReport> smoothing_gap(const Trajectory& traj,
                                                                double time,
                                                                const IndexOptions& opt = {});

}  // namespace skdv

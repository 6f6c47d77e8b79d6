#pragma once

#include <cstdint>
#include <string>

#include "skdv/spectral_core.hpp"

namespace skdv {

enum class EnsembleKind { gaussian_mixture, chirped, band_limited, exponential_bump };

const char* to_string(EnsembleKind k);
EnsembleKind ensemble_kind_from_string(const std::string& name);

/// Version tag of the member generators; bump it whenever any generator changes.
inline constexpr int kEnsembleVersion = 1;

/// Deterministic family of decaying test functions.  Member i depends only on
/// (kind, seed, i, grid, shape parameters), never on scheduling.
struct Ensemble {
    EnsembleKind kind = EnsembleKind::gaussian_mixture;
    int size = 50;
    std::uint64_t seed = 1;
    GridPtr grid;
    double horizon = 1.0;

    /// Members are centred in [center - spread, center + spread].
    double center = 0.0;
    double spread = 4.0;
    /// Band of band_limited members: a Gaussian spectral window with the band edges
    /// at 4 standard deviations.  one_sided keeps only positive xi.
    double band_lo = 0.0;
    double band_hi = 3.0;
    bool one_sided = false;
    /// Take the real part of every member.
    bool real = false;
    /// Test hook: this member index is replaced by the zero field.
    int zero_member = -1;
    /// Required boundary_contamination(member, 0.05) bound.
    double contamination_max = 1e-4;

    /// <kind>.v<version>.n<size>.seed<seed>.N<n>.L<L>.T<T>
    std::string version() const;
    void validate() const;
    Field member(int i) const;
    /// Independent second function for bilinear estimates.
    Field partner(int i) const;
};

}  // namespace skdv

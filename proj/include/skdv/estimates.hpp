#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skdv/ensembles.hpp"
#include "skdv/solver.hpp"

namespace skdv {

/// One entry per displayed linear estimate plus the contraction smallness probe.
enum class EstimateId {
    KATO_KDV,
    DUAL_KATO_KDV,
    KATO_SCH,
    DUAL_KATO_SCH_L2X,
    DUAL_KATO_SCH_SUPX,
    STRICHARTZ_SCH,
    STRICHARTZ_KDV,
    MAX_SCH_L2,
    MAX_SCH_L4,
    MAX_KDV_L2,
    MAX_KDV_L4,
    INTER_KDV_1,
    INTER_KDV_2,
    INTERP_WEIGHT_1,
    INTERP_WEIGHT_2,
    COMMUTATOR_LP,
    LEIBNITZ_L1L2,
    WEIGHTED_REM_KDV,
    WEIGHTED_REM_SCH,
    WEIGHTED_STRICHARTZ_SCH,
    CONTRACTION_SMALLNESS,
};

const char* to_string(EstimateId id);
EstimateId estimate_from_string(const std::string& name);
const std::vector<EstimateId>& all_estimates();

struct EstimateInfo {
    EstimateId id;
    /// Short label of the inequality and its statement, LHS <= c * RHS.
    const char* anchor;
    const char* statement;
    bool bilinear;
};
const EstimateInfo& estimate_info(EstimateId id);

/// Union of the parameters used across the catalog; each entry reads its own subset.
struct EstimateParams {
    double T = 1.0;      ///< horizon of time norms
    int n_times = 0;     ///< time samples; 0 selects max(65, 256 T + 1)
    double s = 1.0;      ///< Sobolev order on the right-hand side
    double p = 2.0;      ///< space exponent
    double q = kInf;     ///< time exponent
    double alpha = 0.5;  ///< Strichartz KdV derivative parameter
    double theta = 2.0 / 3.0;
    double rho = 0.3;    ///< growth exponent of the maximal estimates
    double beta = 0.5;   ///< weight exponent
    double t = 1.0;      ///< time of the commutation remainders
    double a = 1.0;      ///< interpolation smoothness
    double b = 1.0;      ///< interpolation weight
    double alpha1 = 0.25, alpha2 = 0.25;
    double p1 = 2.0, p2 = 2.0, q1 = 4.0, q2 = 4.0;
    int picard_degree = 12;
    int picard_iter = 12;
};

EstimateParams default_params(EstimateId id);

/// Throws ParameterError naming the violated predicate.
void validate_params(EstimateId id, const EstimateParams& p);

/// Id with the parameters that change the inequality, e.g. STRICHARTZ_SCH[p=6,q=6].
std::string estimate_label(EstimateId id, const EstimateParams& p);

struct EstimateReport {
    EstimateId id = EstimateId::KATO_KDV;
    double lhs = 0.0;
    double rhs_core = 0.0;
    double ratio = 0.0;
    std::uint64_t trial_seed = 0;
    EstimateParams params;
    /// Set for 0/0 trials; ratio is then 0 and excluded from the worst case.
    bool skipped = false;
};

/// Evaluates one trial.  Bilinear entries require g; CONTRACTION_SMALLNESS reads
/// f as u0 and the real part of g as v0.
EstimateReport evaluate_estimate(EstimateId id, const Field& f, const Field* g,
                                 const EstimateParams& params, std::uint64_t trial_seed = 0);

struct TrialSummary {
    EstimateReport worst;
    std::vector<EstimateReport> all;
    int skipped = 0;
};

/// Runs every member of the ensemble in parallel; reports are ordered by member index.
TrialSummary run_trials(EstimateId id, const Ensemble& ensemble, const EstimateParams& params);

struct CampaignEntry {
    EstimateId id;
    EstimateParams params;
    Ensemble ensemble;
};

/// The regression campaign: every entry on a size-member ensemble.
std::vector<CampaignEntry> default_campaign(int size = 50, std::uint64_t seed = 7);

/// Closed-form sharp constants of the two Kato estimates on the line:
/// sup_x ||d_x V(t) f||_{L^2_t} = ||f||_2 / sqrt(3) for every f, and
/// sup_x ||D^{1/2} S(t) f||_{L^2_t} = ||f||_2 / sqrt(2) when f^ lives on one half-line.
double kato_kdv_oracle();
double kato_sch_oracle();

/// Packet ensembles on which the finite-horizon Kato ratios approach the oracles.
CampaignEntry kato_kdv_oracle_entry(int size = 50, std::uint64_t seed = 11);
CampaignEntry kato_sch_oracle_entry(int size = 50, std::uint64_t seed = 13);

}  // namespace skdv

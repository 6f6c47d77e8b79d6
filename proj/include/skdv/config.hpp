#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace skdv {

enum class Experiment {
    linear_schrodinger,
    linear_kdv,
    nonlinear_skdv,
    picard_crosscheck,
    estimates,
    diagnose_field,
};

const char* to_string(Experiment e);

/// Flat key = value configuration.  Every key has a default; see config_keys().
struct ExperimentConfig {
    Experiment experiment = Experiment::nonlinear_skdv;
    int n_points = 16384;
    double length = 400.0;
    double T = 0.5;
    int snapshots = 101;

    double data_alpha = 1.0;     ///< chirp rate; the KdV datum rate in linear_kdv runs
    double data_alpha_kdv = 0.0; ///< 0: 1/(4 data_alpha) in coupled runs, data_alpha in linear_kdv
    double x0 = 0.0;
    double c = 0.1;
    int j_max = 0;               ///< 0: automatic from the tail bound

    double coupling_alpha = 1.0;
    double coupling_gamma = 1.0;
    double c_cfl = 0.0025;
    double fixed_dt = 0.0;

    std::vector<double> betas{0.6};
    double holder_window = 0.5;
    double fit_band_hi = 0.0;    ///< 0: relative band top
    int fit_bands = 4;
    double sobolev_s = 1.0;

    double picard_T = 0.05;
    double picard_scale = 0.01;
    int picard_iter = 30;
    int picard_degree = 16;

    std::uint64_t seed = 7;
    int ensemble_size = 50;
    std::vector<std::string> estimate_ids{"all"};
    std::string constants_file = "data/recorded_constants.txt";
    bool record = false;

    std::string snapshot_path;
    std::string output_dir = "skdv_out";
    bool write_snapshots = true;
};

/// Parses key = value lines; '#' starts a comment.  Unknown keys and malformed
/// values raise ConfigError carrying the line number.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Fully resolved configuration in the same key = value syntax.
std::string to_text(const ExperimentConfig& cfg);

/// Names of all accepted keys in output order.
std::vector<std::string> config_keys();

/// Range checks shared by the runner and grid-check; throws ConfigError.
void validate(const ExperimentConfig& cfg);

}  // namespace skdv

#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "skdv/config.hpp"
#include "skdv/diagnostics.hpp"

namespace skdv {

inline constexpr const char* kLibraryVersion = "skdv 1.0.0";

/// Executes the configured experiment, writing snapshots, CSV series and
/// manifest.json into cfg.output_dir.  Module errors propagate.
void run_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// Estimates campaign; record = true stores the worst ratios in cfg.constants_file.
/// Returns the number of entries above their recorded constant times the drift budget.
int run_estimates(const ExperimentConfig& cfg, std::ostream& log, bool record);

/// Regularity diagnostics of a snapshot file as one CSV header line and one row.
std::string diagnose_snapshot(const std::string& path, const std::vector<double>& betas,
                              double window, const IndexOptions& fit = {});

/// Contamination and truncation report of the configured data; evolves nothing.
std::string grid_check(const ExperimentConfig& cfg);

/// Wraps a command: prints any skdv error message verbatim to err and returns 1.
int guarded(std::ostream& err, const std::function<int()>& body);

}  // namespace skdv

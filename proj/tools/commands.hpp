#pragma once

// Subcommands of fmo-heom. Each writes its files into `out_dir` (created if
// needed) and returns the paths written, in order.

#include "run_config.hpp"

#include <filesystem>
#include <vector>

namespace fmo::cli {

using Paths = std::vector<std::filesystem::path>;

/// populations.csv, measures_<m>_<n>.csv per pair, run_manifest.txt.
Paths simulate(const RunConfig& config, const std::filesystem::path& out_dir);

/// convergence.csv with log10 D(N, N+1) for N in [n_min, n_max].
Paths converge(const RunConfig& config, const std::filesystem::path& out_dir);

/// sudden_death.csv with one report row per pair.
Paths sudden_death(const RunConfig& config, const std::filesystem::path& out_dir);

/// short_time_oracle.csv for x = initial.site and dominant_pair.csv for all x.
Paths oracle(const RunConfig& config, const std::filesystem::path& out_dir);

/// fret_report.txt for x = initial.site.
Paths fret_report(const RunConfig& config, const std::filesystem::path& out_dir);

/// Fixed scientific notation with 12 significant digits.
std::string format_number(double v);

}  // namespace fmo::cli

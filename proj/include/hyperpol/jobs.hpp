#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hyperpol/config.hpp"

namespace hyperpol {

enum class Subcommand {
    permittivity,
    emt,
    band_edges,
    reflectivity,
    map,
    dips,
    sweep,
    modes,
    fit_resonance,
    estimate,
};

/// Accepts the CLI spellings ("band-edges", "fit-resonance", ...).
Subcommand parse_subcommand(std::string_view name);
std::string_view to_string(Subcommand sub);

/// Execute one subcommand: write its data files plus summary.json under
/// out_dir (created if needed) and return the summary. The summary carries
/// the subcommand, the FNV-1a hash of the raw config text, tool/schema
/// versions, worker count, wall time and the list of files written; data
/// files are byte-stable across runs and worker counts.
nlohmann::json run_job(const JobConfig& cfg, Subcommand sub, const std::string& out_dir,
                       int n_workers, std::string_view config_text);

}  // namespace hyperpol

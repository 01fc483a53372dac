#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyperpol/errors.hpp"
#include "hyperpol/spectra.hpp"
#include "hyperpol/tmm.hpp"

namespace hyperpol {

// Config units are nm / degrees / molar; everything becomes SI at the module
// boundaries (build_stack, lambda_grid, theta_grid).

using MaterialEntry = std::variant<DispersionModel, DyeModel>;

struct EmtRef {
    std::string metal;
    std::string dielectric;
    double fill_fraction = 0.0;
};

struct UniaxialRef {
    std::string perp;
    std::string par;
};

/// One of: a named isotropic material, an EMT slab, an explicit uniaxial pair.
struct MediumConfig {
    std::optional<std::string> material;
    std::optional<EmtRef> emt;
    std::optional<UniaxialRef> uniaxial;
};

struct LayerConfig {
    MediumConfig medium;
    double thickness_nm = 0.0;
};

struct StackConfig {
    std::string incidence;  ///< material name; must not be a dye
    std::vector<LayerConfig> layers;
    MediumConfig substrate;
};

struct LambdaRangeNm {
    double min_nm = 0.0;
    double max_nm = 0.0;
    double step_nm = 0.0;
};

struct ThetaRangeDeg {
    double min_deg = 0.0;
    double max_deg = 0.0;
    double step_deg = 0.0;
};

struct SweepConfig {
    LambdaRangeNm lambda;
    ThetaRangeDeg theta;
    Polarization pol = Polarization::p;
    std::vector<double> concentrations_molar;  ///< sorted, nonnegative
};

struct AnalysisConfig {
    double prominence = 0.02;
    std::optional<double> window_min_nm;  ///< defaults to the sweep lambda range
    std::optional<double> window_max_nm;
};

struct ModesConfig {
    std::optional<double> omega_0;    ///< defaults to the substrate dye's omega_0
    std::optional<double> gamma_vac;  ///< defaults to vacuum_decay_rate(omega_0)
    bool fit_from_stack = false;      ///< fit the resonance to the bare stack
    std::optional<double> omega_c;    ///< required (with kappa_c, chi) unless fitting
    std::optional<double> kappa_c;
    std::optional<double> chi;
};

struct EstimateConfig {
    Observable observable = Observable::r_min;
    double value = 0.0;
};

struct JobConfig {
    int schema_version = 1;
    std::map<std::string, MaterialEntry> materials;
    StackConfig stack;
    SweepConfig sweep;
    AnalysisConfig analysis;
    std::optional<ModesConfig> modes;
    std::optional<EstimateConfig> estimate;
    std::string output_dir = "out";
};

/// Validate and load a JSON config document. Collects every schema violation
/// (unknown field, missing material reference, malformed number, bad range —
/// each with its field path) and throws a single ConfigError carrying the
/// list. base_dir resolves relative tabulated-CSV paths.
JobConfig parse_config(const std::string& text, const std::string& base_dir = ".");

/// Canonical JSON serialization; parse_config(serialize_config(c)) round-trips
/// the validated structure.
std::string serialize_config(const JobConfig& cfg);

/// Resolve material references into a simulation-ready Stack.
Stack build_stack(const JobConfig& cfg);

/// Inclusive sampling grids in SI units.
std::vector<double> lambda_grid(const SweepConfig& sweep);  ///< [m]
std::vector<double> theta_grid(const SweepConfig& sweep);   ///< [rad]

/// Analysis window in metres (falling back to the sweep lambda range).
std::pair<double, double> analysis_window(const JobConfig& cfg);

}  // namespace hyperpol

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperpol/constants.hpp"
#include "hyperpol/tmm.hpp"

namespace hyperpol {

struct SpectrumMetadata {
    double theta = 0.0;  ///< [rad]
    Polarization pol = Polarization::p;
    std::string stack_id;
    double concentration = 0.0;  ///< [mol/l]
};

/// Reflectivity sampled on a strictly increasing wavelength grid.
struct Spectrum {
    std::vector<double> lambda;  ///< [m]
    std::vector<double> R;
    SpectrumMetadata meta;
};

struct Dip {
    double lambda_min;  ///< parabola-refined position [m]
    double R_min;       ///< parabola value at the vertex
    double prominence;  ///< depth below the lower of the surrounding maxima
};

struct DipReport {
    std::vector<Dip> dips;  ///< sorted by wavelength
    std::size_t count() const { return dips.size(); }
};

/// Local minima by the discrete 3-point test inside [window_min, window_max],
/// kept when prominence >= threshold, each refined by the parabola through
/// the three neighbouring samples. Needs >= 5 grid points in the window.
/// No dips is an empty report, not an error.
DipReport find_dips(const Spectrum& spec, double prominence_threshold, double window_min,
                    double window_max);

/// Delta E = (2 pi hbar c / e)(1/lambda_1 - 1/lambda_2) * 1e3 meV for a
/// report with exactly 2 dips. Throws InvalidInput otherwise.
double splitting_energy(const DipReport& dips, const PhysicalConstants& k = codata);

/// Same formula on raw wavelengths [m]; requires 0 < lambda_1 < lambda_2 so
/// the splitting comes out positive.
double splitting_energy_lambda(double lambda_1, double lambda_2,
                               const PhysicalConstants& k = codata);

/// One concentration's observables; lambda_2/splitting present iff dip_count
/// is exactly 2, lambda_1/R_min_1 present iff at least one dip. A row whose
/// simulation failed carries the message in `error` with everything else empty.
struct SensingRow {
    double C = 0.0;  ///< [mol/l]
    int dip_count = 0;
    std::optional<double> lambda_1;       ///< [m]
    std::optional<double> lambda_2;       ///< [m]
    std::optional<double> R_min_1;
    std::optional<double> splitting_meV;
    std::optional<std::string> error;
};

struct SensingCurve {
    std::vector<SensingRow> rows;  ///< sorted by C
};

/// One spectrum per concentration through `tmm` (substrate must be a DyeModel;
/// its concentration is replaced per row), one dip report per spectrum.
/// Rows are computed in parallel over n_workers but assembled in C order, so
/// the result is deterministic. Per-row failures are recorded, not thrown.
SensingCurve concentration_sweep(const Stack& stack_template, const std::vector<double>& C_list,
                                 double theta, const std::vector<double>& lambda_grid,
                                 double prominence_threshold = 0.02, int n_workers = 1);

enum class Observable { r_min, lambda_1, splitting };

struct ConcentrationEstimate {
    double C;           ///< [mol/l]
    double bracket_lo;  ///< grid concentrations bounding the inversion
    double bracket_hi;
};

/// Monotone piecewise-linear inversion of the chosen observable against C.
/// Rows lacking the observable are skipped; the remaining column must be
/// strictly monotone and must bracket `value`, else InvalidInput naming the
/// valid range.
ConcentrationEstimate estimate_concentration(Observable observable, double value,
                                             const SensingCurve& curve);

}  // namespace hyperpol

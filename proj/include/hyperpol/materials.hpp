#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "hyperpol/constants.hpp"

namespace hyperpol {

using cplx = std::complex<double>;

// Sign convention used throughout: fields go as e^{-i omega t}, so passive
// media have Im eps >= 0 and decaying waves have Im kz >= 0.

/// Frequency-independent permittivity.
struct ConstantModel {
    cplx eps;
};

/// eps(w) = eps_inf - omega_p^2 / (w^2 + i gamma w)
struct DrudeModel {
    double eps_inf;
    double omega_p;  ///< [rad/s]
    double gamma;    ///< [rad/s], >= 0
};

/// eps(w) = eps_b + omega_p^2 / (omega_0^2 - w^2 - i w gamma)
struct LorentzModel {
    double eps_b;
    double omega_p;  ///< [rad/s]
    double omega_0;  ///< [rad/s]
    double gamma;    ///< [rad/s], >= 0
};

/// Measured data, linearly interpolated in wavelength on Re and Im separately.
/// Wavelengths in metres, strictly increasing.
struct TabulatedModel {
    std::vector<double> lambda;
    std::vector<cplx> eps;
};

using DispersionModel = std::variant<ConstantModel, DrudeModel, LorentzModel, TabulatedModel>;

/// R6G-style molecular ensemble: a Lorentz oscillator whose plasma frequency
/// follows from the molar concentration, omega_p^2 = C*1000*N_A * h e^2/(m eps0).
struct DyeModel {
    double omega_0;        ///< transition frequency [rad/s]
    double gamma;          ///< linewidth [rad/s], > 0
    double h;              ///< oscillator strength factor, in (0, 1]
    double concentration;  ///< [mol/l], >= 0
    double host_eps;       ///< background (solvent) permittivity
};

/// Evaluate eps(omega) for the model variant. Throws InvalidInput for
/// omega <= 0 or a tabulated wavelength outside the table range.
cplx evaluate_permittivity(const DispersionModel& model, double omega);

/// Collective plasma frequency of the dye ensemble; 0 when concentration = 0.
double dye_plasma_frequency(const DyeModel& dye, const PhysicalConstants& k = codata);

/// host_eps + omega_p^2 / (omega_0^2 - w^2 - i w gamma); reduces to host_eps at C=0.
cplx dye_permittivity(const DyeModel& dye, double omega, const PhysicalConstants& k = codata);

/// The dye as an explicit Lorentz model (same evaluation to machine precision).
LorentzModel lorentz_from_dye(const DyeModel& dye, const PhysicalConstants& k = codata);

}  // namespace hyperpol

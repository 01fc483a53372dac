#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "hyperpol/homogenization.hpp"
#include "hyperpol/materials.hpp"

namespace hyperpol {

enum class Polarization { p, s };

/// Uniaxial medium given by two independent dispersion models.
struct UniaxialMedium {
    DispersionModel perp;
    DispersionModel par;
};

/// Anything that can fill a layer or half-space: an isotropic model, an
/// EMT-homogenized multilayer, an explicit uniaxial pair, or a dye ensemble.
using Medium = std::variant<DispersionModel, HomogenizationSpec, UniaxialMedium, DyeModel>;

/// Evaluate the medium at omega; isotropic media yield eps_perp == eps_par.
UniaxialPermittivity evaluate_medium(const Medium& medium, double omega);

struct Layer {
    Medium medium;
    double thickness;  ///< [m], > 0
};

/// incidence | layers... | substrate. The incidence medium must be lossless
/// with real eps > 0 so the angle of incidence is well defined.
struct Stack {
    DispersionModel incidence;
    std::vector<Layer> layers;
    Medium substrate;
};

struct PlaneWaveState {
    double lambda0;    ///< vacuum wavelength [m]
    double theta;      ///< angle in the incidence medium [rad], in [0, pi/2)
    Polarization pol;
    double k0;         ///< 2 pi / lambda0 [1/m]
    double kx;         ///< n_prism k0 sin(theta) [1/m], conserved across layers
};

/// Validates the incidence medium and angle, then fills k0 and kx.
PlaneWaveState make_plane_wave(const Stack& stack, double lambda0, double theta,
                               Polarization pol);

/// Out-of-plane wavevector component with the branch Im kz >= 0
/// (Re kz >= 0 as tiebreak when Im kz == 0):
///   isotropic        kz^2 = eps k0^2 - kx^2
///   uniaxial, p-pol  kz^2 = eps_perp k0^2 - (eps_perp/eps_par) kx^2   (extraordinary)
///   uniaxial, s-pol  kz^2 = eps_perp k0^2 - kx^2                      (ordinary)
/// The medium is evaluated at omega = c k0. Throws NumericError when
/// eps_par == 0 exactly for the p-pol extraordinary wave.
cplx layer_kz(const Medium& medium, double kx, double k0, Polarization pol);

/// Same dispersion relations on an already evaluated tensor.
cplx layer_kz(const UniaxialPermittivity& eps, double kx, double k0, Polarization pol);

struct FresnelCoeffs {
    cplx r;
    cplx t;
};

/// Single-interface Fresnel coefficients between half-spaces a and b.
/// Amplitude convention: tangential H for p, tangential E for s; with it,
///   p:  r = (eps_b_perp kz_a - eps_a_perp kz_b) / (eps_b_perp kz_a + eps_a_perp kz_b)
///   s:  r = (kz_a - kz_b) / (kz_a + kz_b)
/// and t = 1 + r in both cases (kz extraordinary for p, ordinary for s).
/// Throws NumericError when the denominator vanishes.
FresnelCoeffs interface_r_t(const Medium& a, const Medium& b, double kx, double k0,
                            Polarization pol);

struct ReflectivityResult {
    cplx r;    ///< complex reflection amplitude
    double R;  ///< |r|^2
    double T;  ///< power transmissivity into the substrate; 0 when evanescent
};

/// Reflection of the full stack via scattering-matrix (Redheffer star)
/// composition; phase factors e^{i kz d} have |.| <= 1 on the chosen branch,
/// so evanescent layers cannot overflow. Transmissivity from the z Poynting
/// flux: T_p = Re(kz_sub/eps_sub_perp)/Re(kz_in/eps_in) |t|^2,
/// T_s = Re(kz_sub)/Re(kz_in) |t|^2.
/// Errors raised by a layer are rethrown with the layer index attached.
ReflectivityResult stack_reflection(const Stack& stack, const PlaneWaveState& wave);

/// R over a rectangular wavelength x angle grid. Storage is row-major with
/// lambda as the outer index: R[i_lambda * n_theta + i_theta].
struct ReflectivityMap {
    std::vector<double> lambda;  ///< [m], strictly increasing
    std::vector<double> theta;   ///< [rad], strictly increasing
    Polarization pol = Polarization::p;
    std::vector<double> R;

    struct CellError {
        std::size_t i_lambda;
        std::size_t i_theta;
        std::string message;
    };
    std::vector<CellError> errors;  ///< cells recorded as NaN, sorted by flat index

    double at(std::size_t i_lambda, std::size_t i_theta) const {
        return R[i_lambda * theta.size() + i_theta];
    }
};

/// Evaluates every grid point; embarrassingly parallel over cells with one
/// writer per cell, so the result is independent of n_workers. A failing cell
/// becomes NaN plus an entry in the error ledger; the run continues.
ReflectivityMap reflectivity_map(const Stack& stack, const std::vector<double>& lambda_grid,
                                 const std::vector<double>& theta_grid, Polarization pol,
                                 int n_workers = 1);

}  // namespace hyperpol

#pragma once

#include <utility>
#include <vector>

#include "hyperpol/constants.hpp"
#include "hyperpol/materials.hpp"

namespace hyperpol {

/// Pole approximation of the scattered Green function at a surface resonance,
///   G(omega) ~ -chi / (omega - omega_c + i kappa_c).
/// Convention for chi: the magnitude |b| of the reflection-coefficient pole
/// residue r(omega) ~ a + b/(omega - omega_c + i kappa_c), units rad/s. The
/// coupling constant follows as g^2 = e^2 omega_0 chi / (2 m c^2 eps0).
struct SurfaceResonance {
    double omega_c;  ///< resonance frequency [rad/s]
    double kappa_c;  ///< damping [rad/s], > 0
    double chi;      ///< oscillator strength [rad/s], > 0
};

struct AtomModel {
    double omega_0;    ///< transition frequency [rad/s]
    double gamma_vac;  ///< vacuum emission rate [rad/s], >= 0
};

enum class CouplingRegime { weak, strong };

std::string_view to_string(CouplingRegime r);

struct CoupledModeResult {
    cplx omega_plus;   ///< upper branch (Re omega_plus >= Re omega_minus)
    cplx omega_minus;
    double g;          ///< coupling constant [rad/s]
    CouplingRegime regime;
    double splitting_meV;  ///< hbar Re(omega_plus - omega_minus) / e * 1e3
};

/// gamma = omega^2 e^2 / (12 pi eps0 m c^3): half the classical Lorentz linewidth.
double vacuum_decay_rate(double omega, const PhysicalConstants& k = codata);

/// g = sqrt(e^2 omega_0 chi / (2 m c^2 eps0)).
double coupling_from_strength(double chi, double omega_0, const PhysicalConstants& k = codata);

/// Near-resonance closed form (valid for omega_c ~ omega_0):
///   omega_pm = omega_0 - i(gamma + kappa_c)/2 +- sqrt(g^2 - (gamma - kappa_c)^2/4).
/// The principal square root puts the +-branches in the right order and
/// collapses g = 0 to the decoupled pair {omega_0 - i gamma, omega_0 - i kappa_c}.
CoupledModeResult coupled_eigenfrequencies(const AtomModel& atom, const SurfaceResonance& res,
                                           double g, const PhysicalConstants& k = codata);

/// Strong iff 2g > max(kappa_c, gamma_vac). The paper's criterion is a
/// "much greater than"; the threshold factor here is 1 — use coupling_margin
/// to apply a stricter factor.
CouplingRegime classify_coupling(double g, double gamma_vac, double kappa_c);

/// 2g / max(kappa_c, gamma_vac); infinity when both rates are zero and g > 0.
double coupling_margin(double g, double gamma_vac, double kappa_c);

/// Search rectangle for solve_azz_roots, in the lower half-plane.
struct RootWindow {
    double re_min;
    double re_max;
    double im_min;
    double im_max;
};

/// Default window: Re in [0.5, 1.5] omega_0, Im in [-10(gamma+kappa_c), 0].
RootWindow default_root_window(const AtomModel& atom, const SurfaceResonance& res);

/// The zz dispersion function whose zeros are the coupled eigenfrequencies:
///   A_zz(w) = omega_0^2 - w^2 - 2 i gamma_vac w + K w^2 / (w - omega_c + i kappa_c)
/// with K = coupling_prefactor = e^2 chi / (c^2 eps0 m) = 2 g^2 / omega_0.
cplx azz(const AtomModel& atom, const SurfaceResonance& res, double coupling_prefactor,
         cplx omega);

/// All roots of A_zz inside the window (slightly inflated so boundary roots
/// are not lost), restricted to Re omega > 0, Im omega <= 0, sorted by real
/// part. Found by argument-principle counting on the pole-cleared polynomial
/// followed by Newton polishing to |A_zz| < 1e-8 omega_0^2, or to the
/// rounding-noise floor of the pole-cleared polynomial for roots so close to
/// the pole (small K) that the absolute bound is not representable. Throws
/// NumericError when the winding count and the polished roots disagree.
std::vector<cplx> solve_azz_roots(const AtomModel& atom, const SurfaceResonance& res,
                                  double coupling_prefactor);
std::vector<cplx> solve_azz_roots(const AtomModel& atom, const SurfaceResonance& res,
                                  double coupling_prefactor, const RootWindow& window);

/// Dense-medium estimate omega ~ omega_c +- omega_p/2; returns (plus, minus).
std::pair<double, double> rabi_estimate(double omega_c, double omega_p);

/// Predicted splitting hbar omega_p in meV.
double rabi_splitting_meV(double omega_p, const PhysicalConstants& k = codata);

struct PoleFit {
    SurfaceResonance resonance;  ///< omega_c, kappa_c, chi = |b|
    cplx a;                      ///< background term
    cplx b;                      ///< pole residue
    double residual;             ///< rms misfit relative to rms |r|
};

/// Least-squares fit of r(omega) ~ a + b/(omega - omega_c + i kappa_c) to
/// >= 8 samples (omega, r) spanning a single resonance. The fit is linear in
/// (a, b - a p, p) after clearing the pole; frequencies are affinely rescaled
/// before the solve for conditioning. Throws NumericError on a singular
/// system, kappa_c <= 0, or residual > 0.1.
PoleFit fit_surface_resonance(const std::vector<std::pair<double, cplx>>& samples);

}  // namespace hyperpol

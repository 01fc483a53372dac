#pragma once

#include <string_view>

#include "hyperpol/materials.hpp"

namespace hyperpol {

/// Permittivity tensor diag(eps_perp, eps_perp, eps_par) of a uniaxial medium
/// whose optical axis is the surface normal (z).
struct UniaxialPermittivity {
    cplx eps_perp;  ///< in-plane component
    cplx eps_par;   ///< component along the optical axis
};

/// Metal/dielectric multilayer to be homogenized; f is the metal fill fraction.
struct HomogenizationSpec {
    DispersionModel metal;
    DispersionModel dielectric;
    double fill_fraction = 0.0;  ///< in [0, 1]
};

struct BandEdges {
    double lambda_enz;  ///< zero of Re eps_perp [m]
    double lambda_enp;  ///< pole of eps_par, located as zero of Re(1/eps_par) [m]
};

enum class BandType { dielectric, type_I, type_II, metallic };

std::string_view to_string(BandType t);

/// Layered-medium effective permittivity:
///   eps_perp = f eps_m + (1-f) eps_d,   1/eps_par = f/eps_m + (1-f)/eps_d.
/// Equal constituents short-circuit to (eps_m, eps_m) so the degeneracy
/// identity holds exactly; f = 0 and f = 1 likewise return the pure medium.
/// Throws NumericError when eps_m = eps_d = 0.
UniaxialPermittivity emt_uniaxial(const HomogenizationSpec& spec, double omega);

/// Quadrant classification on the real parts (type I: eps_par < 0 < eps_perp;
/// type II: eps_perp < 0 < eps_par). A zero real part classifies with its
/// sign bit, i.e. +0 counts as positive and -0 as negative.
BandType classify_band(const UniaxialPermittivity& eps);

/// Locate both band edges inside [lambda_min, lambda_max] by sign-change
/// bracketing on a grid of the given resolution, then bisection to 0.01 nm.
/// Throws NumericError naming the missing edge(s) when no sign change exists.
BandEdges find_band_edges(const HomogenizationSpec& spec, double lambda_min,
                          double lambda_max, double resolution);

}  // namespace hyperpol

#pragma once

#include <numbers>

namespace hyperpol {

/// Fundamental constants, CODATA 2018. All strictly positive; e, c, hbar and
/// N_A are exact by definition since the 2019 SI revision.
struct PhysicalConstants {
    double e = 1.602176634e-19;      ///< elementary charge [C]
    double m = 9.1093837015e-31;     ///< electron mass [kg]
    double eps0 = 8.8541878128e-12;  ///< vacuum permittivity [F/m]
    double c = 2.99792458e8;         ///< speed of light [m/s]
    double hbar = 1.054571817e-34;   ///< reduced Planck constant [J s]
    double N_A = 6.02214076e23;      ///< Avogadro constant [1/mol]
};

inline constexpr PhysicalConstants codata{};

inline constexpr double pi = std::numbers::pi;

/// omega = 2 pi c / lambda, lambda in metres.
inline double omega_from_lambda(double lambda, const PhysicalConstants& k = codata) {
    return 2.0 * pi * k.c / lambda;
}

inline double lambda_from_omega(double omega, const PhysicalConstants& k = codata) {
    return 2.0 * pi * k.c / omega;
}

}  // namespace hyperpol

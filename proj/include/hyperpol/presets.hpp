#pragma once

#include "hyperpol/materials.hpp"
#include "hyperpol/homogenization.hpp"
#include "hyperpol/tmm.hpp"

namespace hyperpol::presets {

// Calibrated defaults. Silver's (eps_inf, omega_p) are solved so the f=0.6
// Ag/TiO2 EMT band edges land at 414/513 nm with gamma and eps_TiO2 chosen to
// reproduce the Kretschmann dip depths; see the README for the numbers.

/// Drude silver: eps_inf = 6.551, omega_p = 1.5478e16, gamma = 2.0e14.
DispersionModel silver_drude();

/// Constant eps = 7.5.
DispersionModel titania_constant();

/// Silica prism, constant eps = 2.25 (n = 1.5).
DispersionModel silica_constant();

/// R6G ensemble: omega_0 = 3.5e15, gamma = 2.07e14, h = 0.74, host_eps = 1.
DyeModel r6g(double concentration);

/// Ag/TiO2 multilayer at metal fill fraction 0.6.
HomogenizationSpec hmm_spec();

/// Kretschmann-Raether stack: silica prism / 50 nm EMT slab / semi-infinite
/// dye solution at the given concentration.
Stack kretschmann_stack(double concentration);

}  // namespace hyperpol::presets

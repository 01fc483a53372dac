#include "hyperpol/presets.hpp"

namespace hyperpol::presets {

DispersionModel silver_drude() { return DrudeModel{6.551, 1.5478e16, 2.0e14}; }

DispersionModel titania_constant() { return ConstantModel{cplx(7.5, 0.0)}; }

DispersionModel silica_constant() { return ConstantModel{cplx(2.25, 0.0)}; }

DyeModel r6g(double concentration) {
    return DyeModel{3.5e15, 2.07e14, 0.74, concentration, 1.0};
}

HomogenizationSpec hmm_spec() { return {silver_drude(), titania_constant(), 0.6}; }

Stack kretschmann_stack(double concentration) {
    Stack stack;
    stack.incidence = silica_constant();
    stack.layers.push_back({hmm_spec(), 50e-9});
    stack.substrate = r6g(concentration);
    return stack;
}

}  // namespace hyperpol::presets

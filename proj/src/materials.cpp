#include "hyperpol/materials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperpol/errors.hpp"

namespace hyperpol {

namespace {

void require_positive_omega(double omega) {
    if (!(omega > 0.0))
        throw InvalidInput("evaluate_permittivity: omega must be > 0, got " +
                           std::to_string(omega));
}

cplx eval(const ConstantModel& m, double) { return m.eps; }

cplx eval(const DrudeModel& m, double w) {
    return m.eps_inf - m.omega_p * m.omega_p / (cplx(w * w, m.gamma * w));
}

cplx eval(const LorentzModel& m, double w) {
    return m.eps_b +
           m.omega_p * m.omega_p / cplx(m.omega_0 * m.omega_0 - w * w, -w * m.gamma);
}

cplx eval(const TabulatedModel& m, double w) {
    if (m.lambda.size() < 2 || m.lambda.size() != m.eps.size())
        throw InvalidInput("tabulated model needs >= 2 (lambda, eps) pairs");
    const double lam = lambda_from_omega(w);
    if (lam < m.lambda.front() || lam > m.lambda.back()) {
        std::ostringstream os;
        os << "tabulated permittivity: lambda = " << lam * 1e9
           << " nm outside the table range [" << m.lambda.front() * 1e9 << ", "
           << m.lambda.back() * 1e9 << "] nm";
        throw InvalidInput(os.str());
    }
    auto hi = std::lower_bound(m.lambda.begin(), m.lambda.end(), lam);
    if (hi == m.lambda.begin()) return m.eps.front();
    const auto i = static_cast<std::size_t>(hi - m.lambda.begin());
    const double l0 = m.lambda[i - 1], l1 = m.lambda[i];
    const double t = (lam - l0) / (l1 - l0);
    // Re and Im interpolated separately.
    return {std::lerp(m.eps[i - 1].real(), m.eps[i].real(), t),
            std::lerp(m.eps[i - 1].imag(), m.eps[i].imag(), t)};
}

}  // namespace

cplx evaluate_permittivity(const DispersionModel& model, double omega) {
    require_positive_omega(omega);
    return std::visit([omega](const auto& m) { return eval(m, omega); }, model);
}

double dye_plasma_frequency(const DyeModel& dye, const PhysicalConstants& k) {
    if (dye.concentration < 0.0)
        throw InvalidInput("dye concentration must be >= 0");
    if (!(dye.h > 0.0 && dye.h <= 1.0))
        throw InvalidInput("dye oscillator strength factor h must be in (0, 1]");
    // mol/l -> 1/m^3
    const double n = dye.concentration * 1000.0 * k.N_A;
    return std::sqrt(n * dye.h * k.e * k.e / (k.m * k.eps0));
}

cplx dye_permittivity(const DyeModel& dye, double omega, const PhysicalConstants& k) {
    require_positive_omega(omega);
    const double wp = dye_plasma_frequency(dye, k);
    return dye.host_eps +
           wp * wp / cplx(dye.omega_0 * dye.omega_0 - omega * omega, -omega * dye.gamma);
}

LorentzModel lorentz_from_dye(const DyeModel& dye, const PhysicalConstants& k) {
    return {dye.host_eps, dye_plasma_frequency(dye, k), dye.omega_0, dye.gamma};
}

}  // namespace hyperpol

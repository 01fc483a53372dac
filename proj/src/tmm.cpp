#include "hyperpol/tmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "hyperpol/errors.hpp"

namespace hyperpol {

UniaxialPermittivity evaluate_medium(const Medium& medium, double omega) {
    return std::visit(
        [omega](const auto& m) -> UniaxialPermittivity {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DispersionModel>) {
                const cplx e = evaluate_permittivity(m, omega);
                return {e, e};
            } else if constexpr (std::is_same_v<T, HomogenizationSpec>) {
                return emt_uniaxial(m, omega);
            } else if constexpr (std::is_same_v<T, UniaxialMedium>) {
                return {evaluate_permittivity(m.perp, omega),
                        evaluate_permittivity(m.par, omega)};
            } else {
                const cplx e = dye_permittivity(m, omega);
                return {e, e};
            }
        },
        medium);
}

namespace {

// Branch with Im kz >= 0; Re kz >= 0 as tiebreak on the real axis. The
// principal sqrt already maps negative reals to +i sqrt|.|, so only the
// Im < 0 half needs flipping.
cplx branch_sqrt(cplx kz2) {
    cplx kz = std::sqrt(kz2);
    if (kz.imag() < 0.0 || (kz.imag() == 0.0 && kz.real() < 0.0)) kz = -kz;
    return kz;
}

cplx kz_from_eps(const UniaxialPermittivity& eps, double kx, double k0, Polarization pol) {
    if (pol == Polarization::p) {
        if (eps.eps_par == cplx(0.0))
            throw NumericError("layer_kz: eps_par = 0 exactly (extraordinary wave singular)");
        return branch_sqrt(eps.eps_perp * (k0 * k0) - (eps.eps_perp / eps.eps_par) * (kx * kx));
    }
    return branch_sqrt(eps.eps_perp * (k0 * k0) - cplx(kx * kx));
}

struct EvaluatedMedium {
    UniaxialPermittivity eps;
    cplx kz;
};

EvaluatedMedium evaluate_at(const Medium& medium, double kx, double k0, Polarization pol) {
    const double omega = codata.c * k0;
    const UniaxialPermittivity eps = evaluate_medium(medium, omega);
    return {eps, kz_from_eps(eps, kx, k0, pol)};
}

// Forward/backward amplitude scattering parameters of a building block.
struct ScatterAmps {
    cplx rf, tf, rb, tb;
};

// Redheffer star product: A followed by B.
ScatterAmps star(const ScatterAmps& A, const ScatterAmps& B) {
    const cplx D = 1.0 - A.rb * B.rf;
    return {A.rf + A.tb * B.rf * A.tf / D, B.tf * A.tf / D,
            B.rb + B.tf * A.rb * B.tb / D, A.tb * B.tb / D};
}

ScatterAmps interface_amps(const UniaxialPermittivity& ea, cplx kza,
                           const UniaxialPermittivity& eb, cplx kzb, Polarization pol) {
    cplx r;
    if (pol == Polarization::p) {
        const cplx den = eb.eps_perp * kza + ea.eps_perp * kzb;
        if (den == cplx(0.0))
            throw NumericError("interface_r_t: degenerate interface (vanishing denominator)");
        r = (eb.eps_perp * kza - ea.eps_perp * kzb) / den;
    } else {
        const cplx den = kza + kzb;
        if (den == cplx(0.0))
            throw NumericError("interface_r_t: degenerate interface (vanishing denominator)");
        r = (kza - kzb) / den;
    }
    // Tangential-H (p) / tangential-E (s) amplitudes: t = 1 + r, and the
    // reverse pass has r' = -r, t' = 1 - r (Stokes: t t' + r^2 = 1).
    return {r, 1.0 + r, -r, 1.0 - r};
}

}  // namespace

cplx layer_kz(const UniaxialPermittivity& eps, double kx, double k0, Polarization pol) {
    if (!(k0 > 0.0)) throw InvalidInput("layer_kz: k0 must be > 0");
    return kz_from_eps(eps, kx, k0, pol);
}

cplx layer_kz(const Medium& medium, double kx, double k0, Polarization pol) {
    if (!(k0 > 0.0)) throw InvalidInput("layer_kz: k0 must be > 0");
    return evaluate_at(medium, kx, k0, pol).kz;
}

FresnelCoeffs interface_r_t(const Medium& a, const Medium& b, double kx, double k0,
                            Polarization pol) {
    if (!(k0 > 0.0)) throw InvalidInput("interface_r_t: k0 must be > 0");
    const auto ma = evaluate_at(a, kx, k0, pol);
    const auto mb = evaluate_at(b, kx, k0, pol);
    const ScatterAmps s = interface_amps(ma.eps, ma.kz, mb.eps, mb.kz, pol);
    return {s.rf, s.tf};
}

PlaneWaveState make_plane_wave(const Stack& stack, double lambda0, double theta,
                               Polarization pol) {
    if (!(lambda0 > 0.0)) throw InvalidInput("make_plane_wave: lambda0 must be > 0");
    if (!(theta >= 0.0 && theta < pi / 2.0))
        throw InvalidInput("make_plane_wave: theta must be in [0, pi/2)");
    const double omega = omega_from_lambda(lambda0);
    const cplx eps_in = evaluate_permittivity(stack.incidence, omega);
    if (eps_in.imag() != 0.0 || !(eps_in.real() > 0.0))
        throw InvalidInput(
            "make_plane_wave: incidence medium must be lossless with real eps > 0");
    const double k0 = 2.0 * pi / lambda0;
    const double kx = std::sqrt(eps_in.real()) * k0 * std::sin(theta);
    return {lambda0, theta, pol, k0, kx};
}

ReflectivityResult stack_reflection(const Stack& stack, const PlaneWaveState& wave) {
    const double k0 = wave.k0;
    const double kx = wave.kx;
    const Polarization pol = wave.pol;

    const auto incidence = evaluate_at(Medium{stack.incidence}, kx, k0, pol);
    EvaluatedMedium prev = incidence;

    ScatterAmps total{0.0, 1.0, 0.0, 1.0};
    for (std::size_t i = 0; i < stack.layers.size(); ++i) {
        const Layer& layer = stack.layers[i];
        if (!(layer.thickness > 0.0))
            throw InvalidInput("layer " + std::to_string(i) + ": thickness must be > 0");
        try {
            const auto cur = evaluate_at(layer.medium, kx, k0, pol);
            total = star(total, interface_amps(prev.eps, prev.kz, cur.eps, cur.kz, pol));
            // |phase| <= 1 on the Im kz >= 0 branch: evanescent tails decay,
            // never overflow.
            const cplx phase = std::exp(cplx(0.0, 1.0) * cur.kz * layer.thickness);
            total = star(total, {0.0, phase, 0.0, phase});
            prev = cur;
        } catch (const Error& err) {
            throw NumericError("layer " + std::to_string(i) + ": " + err.what());
        }
    }
    const auto substrate = evaluate_at(stack.substrate, kx, k0, pol);
    total = star(total, interface_amps(prev.eps, prev.kz, substrate.eps, substrate.kz, pol));

    const cplx r = total.rf;
    const cplx t = total.tf;
    // z Poynting flux ratio; Re(kz/eps_perp) (p) or Re(kz) (s) vanishes for
    // an evanescent wave in a lossless substrate, making T exactly 0.
    double flux_in, flux_out;
    if (pol == Polarization::p) {
        flux_in = (incidence.kz / incidence.eps.eps_perp).real();
        flux_out = (substrate.kz / substrate.eps.eps_perp).real();
    } else {
        flux_in = incidence.kz.real();
        flux_out = substrate.kz.real();
    }
    const double R = std::norm(r);
    const double T = flux_out / flux_in * std::norm(t);
    return {r, R, T};
}

ReflectivityMap reflectivity_map(const Stack& stack, const std::vector<double>& lambda_grid,
                                 const std::vector<double>& theta_grid, Polarization pol,
                                 int n_workers) {
    auto strictly_increasing = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] > v[i - 1])) return false;
        return true;
    };
    if (lambda_grid.empty() || theta_grid.empty())
        throw InvalidInput("reflectivity_map: grids must be nonempty");
    if (!strictly_increasing(lambda_grid) || !strictly_increasing(theta_grid))
        throw InvalidInput("reflectivity_map: grids must be strictly increasing");

    ReflectivityMap map;
    map.lambda = lambda_grid;
    map.theta = theta_grid;
    map.pol = pol;
    const std::size_t nl = lambda_grid.size();
    const std::size_t nt = theta_grid.size();
    const std::size_t n = nl * nt;
    map.R.assign(n, std::numeric_limits<double>::quiet_NaN());

    const std::size_t workers =
        std::clamp<std::size_t>(n_workers > 0 ? static_cast<std::size_t>(n_workers) : 1, 1, n);
    std::vector<std::vector<ReflectivityMap::CellError>> worker_errors(workers);

    auto run_range = [&](std::size_t begin, std::size_t end, std::size_t widx) {
        for (std::size_t flat = begin; flat < end; ++flat) {
            const std::size_t il = flat / nt;
            const std::size_t it = flat % nt;
            try {
                const auto wave =
                    make_plane_wave(stack, lambda_grid[il], theta_grid[it], pol);
                map.R[flat] = stack_reflection(stack, wave).R;
            } catch (const std::exception& err) {
                worker_errors[widx].push_back({il, it, err.what()});
            }
        }
    };

    if (workers == 1) {
        run_range(0, n, 0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = n * w / workers;
            const std::size_t end = n * (w + 1) / workers;
            pool.emplace_back(run_range, begin, end, w);
        }
    }
    // Contiguous partitions, so concatenation keeps errors in flat-index order.
    for (auto& errs : worker_errors)
        map.errors.insert(map.errors.end(), errs.begin(), errs.end());
    return map;
}

}  // namespace hyperpol

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "hyperpol/constants.hpp"
#include "hyperpol/errors.hpp"
#include "hyperpol/polariton.hpp"

using namespace hyperpol;

namespace {

bool close(double a, double b, double rtol = 1e-12) {
    return std::abs(a - b) <= rtol * std::max(std::abs(a), std::abs(b));
}

bool close(cplx a, cplx b, double rtol = 1e-12) {
    return std::abs(a - b) <= rtol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_SUITE("polariton") {

TEST_CASE("vacuum decay rate of a classical dipole") {
    CHECK(close(vacuum_decay_rate(3.5e15), 38381851.70534474, 1e-12));
    CHECK(close(vacuum_decay_rate(3.0e15), 28198911.45698797, 1e-12));
    CHECK(vacuum_decay_rate(0.0) == 0.0);
    CHECK_THROWS_AS(vacuum_decay_rate(-1e15), InvalidInput);
}

TEST_CASE("coupling constant from the pole strength") {
    CHECK(close(coupling_from_strength(4.185357244220282e14, 3.5e15), 161048290.46303267,
                1e-6));
    // chi* calibrated so that g = kappa_c/2 at kappa_c = 1e13.
    CHECK(close(coupling_from_strength(4.034226741827371e23, 3.5e15), 5e12, 1e-9));
    CHECK(coupling_from_strength(0.0, 3.5e15) == 0.0);
    CHECK_THROWS_AS(coupling_from_strength(-1.0, 3.5e15), InvalidInput);
    CHECK_THROWS_AS(coupling_from_strength(1.0, 0.0), InvalidInput);
}

TEST_CASE("regime classification and margin") {
    CHECK(classify_coupling(1e13, 1e12, 1e13) == CouplingRegime::strong);   // 2g = 2 kappa
    CHECK(classify_coupling(4e12, 1e12, 1e13) == CouplingRegime::weak);     // 2g < kappa
    CHECK(classify_coupling(5e12, 1e12, 1e13) == CouplingRegime::weak);     // 2g == kappa
    CHECK(classify_coupling(5e12, 2e13, 1e13) == CouplingRegime::weak);     // gamma dominates
    CHECK(close(coupling_margin(1e13, 1e12, 1e13), 2.0, 1e-12));
    CHECK(std::isinf(coupling_margin(1.0, 0.0, 0.0)));
    CHECK(to_string(CouplingRegime::weak) == "weak");
    CHECK(to_string(CouplingRegime::strong) == "strong");
}

TEST_CASE("g = 0 collapses to the decoupled pair") {
    const AtomModel atom{3.5e15, 2e12};
    const SurfaceResonance res{3.5e15, 5e12, 0.0};
    const auto m = coupled_eigenfrequencies(atom, res, 0.0);
    // sqrt(-(gamma-kappa)^2/4) = i|gamma-kappa|/2, so the branches sit at
    // omega_0 - i min and omega_0 - i max.
    CHECK(close(m.omega_plus, cplx(3.5e15, -2e12), 1e-12));
    CHECK(close(m.omega_minus, cplx(3.5e15, -5e12), 1e-12));
    CHECK(m.regime == CouplingRegime::weak);
    CHECK(m.splitting_meV == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("strong-coupling splitting follows the closed form") {
    const double w0 = 3.5e15, gamma = 1e12, kappa = 3e12, g = 5e13;
    const AtomModel atom{w0, gamma};
    const SurfaceResonance res{w0, kappa, 0.0};
    const auto m = coupled_eigenfrequencies(atom, res, g);
    const double rad = std::sqrt(g * g - 0.25 * (gamma - kappa) * (gamma - kappa));
    CHECK(close(m.omega_plus, cplx(w0 + rad, -0.5 * (gamma + kappa)), 1e-12));
    CHECK(close(m.omega_minus, cplx(w0 - rad, -0.5 * (gamma + kappa)), 1e-12));
    CHECK(m.regime == CouplingRegime::strong);
    const double expected_meV = codata.hbar * 2.0 * rad / codata.e * 1e3;
    CHECK(close(m.splitting_meV, expected_meV, 1e-12));
    CHECK(m.g == g);
}

TEST_CASE("ordering invariant: Re omega_plus >= Re omega_minus") {
    std::mt19937 rng(987123);
    std::uniform_real_distribution<double> rate(0.0, 2e14), coupling(0.0, 2e14);
    for (int i = 0; i < 500; ++i) {
        const AtomModel atom{3.5e15, rate(rng)};
        const SurfaceResonance res{3.5e15, rate(rng) + 1.0, 0.0};
        const auto m = coupled_eigenfrequencies(atom, res, coupling(rng));
        CHECK(m.omega_plus.real() >= m.omega_minus.real());
        CHECK(m.omega_plus.imag() <= 0.0);
        CHECK(m.omega_minus.imag() <= 0.0);
    }
}

TEST_CASE("dense-medium Rabi estimate") {
    const auto [plus, minus] = rabi_estimate(3.5e15, 3.766021907464169e14);
    CHECK(close(plus, 3.5e15 + 0.5 * 3.766021907464169e14, 1e-12));
    CHECK(close(minus, 3.5e15 - 0.5 * 3.766021907464169e14, 1e-12));
    CHECK(close(rabi_splitting_meV(3.766021907464169e14), 247.88406481131437, 1e-12));
    CHECK(close(rabi_splitting_meV(1.8830109537320844e14), 123.94203240565719, 1e-12));
}

TEST_CASE("azz evaluates the dispersion function") {
    const AtomModel atom{3.5e15, 1e12};
    const SurfaceResonance res{3.4e15, 2e12, 0.0};
    const double K = 7e13;
    const cplx w(3.45e15, -1e12);
    const cplx expected = atom.omega_0 * atom.omega_0 - w * w -
                          cplx(0.0, 2.0) * atom.gamma_vac * w +
                          K * w * w / (w - cplx(res.omega_c, -res.kappa_c));
    CHECK(close(azz(atom, res, K, w), expected, 1e-12));
    // A root of azz found by the solver really is a zero.
    const auto roots = solve_azz_roots(atom, res, K);
    for (const cplx& root : roots)
        CHECK(std::abs(azz(atom, res, K, root)) < 1e-8 * atom.omega_0 * atom.omega_0);
}

TEST_CASE("azz roots near degeneracy match the closed form") {
    const double w0 = 3.5e15, gamma = 1e12, kappa = 1e12, g = 3e12;
    const AtomModel atom{w0, gamma};
    const SurfaceResonance res{w0, kappa, 0.0};
    const double K = 2.0 * g * g / w0;
    const auto roots = solve_azz_roots(atom, res, K);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].real() < roots[1].real());
    const auto cf = coupled_eigenfrequencies(atom, res, g);
    // The closed form drops O(g/omega_0) corrections, so agreement is only
    // at the per-mille level.
    const double scale = std::abs(cf.omega_plus - cf.omega_minus);
    const double err = std::min(
        std::max(std::abs(roots[1] - cf.omega_plus), std::abs(roots[0] - cf.omega_minus)),
        std::max(std::abs(roots[0] - cf.omega_plus), std::abs(roots[1] - cf.omega_minus)));
    CHECK(err / scale < 5e-3);
}

TEST_CASE("K = 0 reduces azz to the bare-atom quadratic") {
    const double w0 = 3.5e15, gamma = 1e12;
    const AtomModel atom{w0, gamma};
    const SurfaceResonance res{3.4e15, 2e12, 0.0};
    const auto roots = solve_azz_roots(atom, res, 0.0);
    REQUIRE(roots.size() == 1);
    // omega^2 + 2 i gamma omega - omega_0^2 = 0 with Re > 0:
    const cplx expected(std::sqrt(w0 * w0 - gamma * gamma), -gamma);
    CHECK(close(roots[0], expected, 1e-9));
}

TEST_CASE("zero damping keeps the roots on the real axis") {
    const double w0 = 3.5e15, g = 5e13;
    const AtomModel atom{w0, 0.0};
    const SurfaceResonance res{w0, 0.0, 0.0};
    const auto roots = solve_azz_roots(atom, res, 2.0 * g * g / w0);
    REQUIRE(roots.size() == 2);
    for (const cplx& r : roots) CHECK(std::abs(r.imag()) < 1e-9 * w0);
    CHECK(roots[0].real() < w0);
    CHECK(roots[1].real() > w0);
}

TEST_CASE("roots come back sorted by real part") {
    const AtomModel atom{3.5e15, 5e12};
    const SurfaceResonance res{3.45e15, 8e12, 0.0};
    const auto roots = solve_azz_roots(atom, res, 2.0 * 6e13 * 6e13 / 3.5e15);
    REQUIRE(roots.size() >= 2);
    CHECK(std::is_sorted(roots.begin(), roots.end(),
                         [](cplx a, cplx b) { return a.real() < b.real(); }));
}

TEST_CASE("a detuned resonance needs a custom window") {
    const double w0 = 3.5e15;
    const AtomModel atom{w0, 1e12};
    // omega_c = 0.4 omega_0 falls outside the default Re window [0.5, 1.5] omega_0.
    const SurfaceResonance res{0.4 * w0, 2e12, 0.0};
    const double K = 2.0 * 4e13 * 4e13 / w0;
    const auto only_atom = solve_azz_roots(atom, res, K);
    REQUIRE(only_atom.size() == 1);
    CHECK(std::abs(only_atom[0].real() - w0) < 0.01 * w0);
    const RootWindow window{0.3 * w0, 2.0 * w0, -10.0 * 3e12, 0.0};
    const auto roots = solve_azz_roots(atom, res, K, window);
    REQUIRE(roots.size() == 2);
    // Far off resonance the modes stay near the bare frequencies.
    CHECK(std::abs(roots[0].real() - 0.4 * w0) < 0.01 * w0);
    CHECK(std::abs(roots[1].real() - w0) < 0.01 * w0);
}

TEST_CASE("azz roots track the closed form over random guarded draws") {
    // Exclude draws near the exceptional point where the closed form itself
    // is nondifferentiable, and degenerate tiny-parameter draws.
    std::mt19937 rng(5550123);
    const double w0 = 3.5e15;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int tested = 0;
    for (int i = 0; i < 400 && tested < 20; ++i) {
        const double g = unit(rng) * 1e-3 * w0;
        const double gamma = unit(rng) * 1e-3 * w0;
        const double kappa = unit(rng) * 1e-3 * w0;
        const double big = std::max({g, gamma, kappa});
        if (big < 1e-5 * w0) continue;
        if (std::abs(g * g - 0.25 * (gamma - kappa) * (gamma - kappa)) < 0.25 * big * big)
            continue;
        const AtomModel atom{w0, gamma};
        const SurfaceResonance res{w0, kappa, 0.0};
        const auto cf = coupled_eigenfrequencies(atom, res, g);
        const auto roots = solve_azz_roots(atom, res, 2.0 * g * g / w0);
        REQUIRE(roots.size() == 2);
        const double scale = std::max(std::abs(cf.omega_plus - cplx(w0, 0.0)),
                                      std::abs(cf.omega_minus - cplx(w0, 0.0)));
        const double err = std::min(
            std::max(std::abs(roots[1] - cf.omega_plus), std::abs(roots[0] - cf.omega_minus)),
            std::max(std::abs(roots[0] - cf.omega_plus), std::abs(roots[1] - cf.omega_minus)));
        CHECK(err / scale < 5e-3);
        ++tested;
    }
    CHECK(tested == 20);
}

TEST_CASE("pole fit recovers synthetic parameters") {
    const double wc = 3.581e15, kappa = 3.2e14;
    const cplx a(0.31, -0.12), b(4.18e14, 1.1e13);
    std::vector<std::pair<double, cplx>> samples;
    for (int i = 0; i < 41; ++i) {
        const double w = wc - 8e14 + i * 4e13;
        samples.emplace_back(w, a + b / (w - cplx(wc, -kappa)));
    }
    const auto fit = fit_surface_resonance(samples);
    CHECK(close(fit.resonance.omega_c, wc, 1e-9));
    CHECK(close(fit.resonance.kappa_c, kappa, 1e-9));
    CHECK(close(fit.resonance.chi, std::abs(b), 1e-9));
    CHECK(close(fit.a, a, 1e-8));
    CHECK(close(fit.b, b, 1e-9));
    CHECK(fit.residual < 1e-10);
}

TEST_CASE("pole fit rejects an unphysical or hopeless fit") {
    // Pole in the wrong half-plane: fitted kappa_c <= 0.
    const double wc = 3.5e15, kappa = 2e14;
    std::vector<std::pair<double, cplx>> gain;
    for (int i = 0; i < 20; ++i) {
        const double w = wc - 5e14 + i * 5e13;
        gain.emplace_back(w, cplx(0.2, 0.0) + cplx(3e14, 0.0) / (w - cplx(wc, kappa)));
    }
    CHECK_THROWS_AS(fit_surface_resonance(gain), NumericError);

    // An alternating-sign signal has no pole structure: the residual gate
    // (or the half-plane gate) trips.
    std::vector<std::pair<double, cplx>> zigzag;
    for (int i = 0; i < 20; ++i)
        zigzag.emplace_back(3.0e15 + i * 4e13, cplx(i % 2 ? 1.0 : -1.0, 0.0));
    CHECK_THROWS_AS(fit_surface_resonance(zigzag), NumericError);

    // Too few samples.
    std::vector<std::pair<double, cplx>> few(7, {3.5e15, cplx(0.1, 0.0)});
    CHECK_THROWS_AS(fit_surface_resonance(few), InvalidInput);
}

}  // TEST_SUITE

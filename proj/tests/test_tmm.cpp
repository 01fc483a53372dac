#include <cmath>
#include <random>

#include <doctest.h>

#include "hyperpol/constants.hpp"
#include "hyperpol/errors.hpp"
#include "hyperpol/presets.hpp"
#include "hyperpol/tmm.hpp"

using namespace hyperpol;

namespace {

bool close(double a, double b, double rtol = 1e-12) {
    return std::abs(a - b) <= rtol * std::max(std::abs(a), std::abs(b));
}

bool close(cplx a, cplx b, double rtol = 1e-12) {
    return std::abs(a - b) <= rtol * std::max(std::abs(a), std::abs(b));
}

Stack prism_to(Medium substrate) {
    return {ConstantModel{cplx(2.25, 0.0)}, {}, std::move(substrate)};
}

double kretschmann_R(double lambda_nm, double theta_deg, double concentration) {
    const Stack stack = presets::kretschmann_stack(concentration);
    const auto wave =
        make_plane_wave(stack, lambda_nm / 1e9, theta_deg * pi / 180.0, Polarization::p);
    return stack_reflection(stack, wave).R;
}

}  // namespace

TEST_SUITE("tmm") {

TEST_CASE("extraordinary kz on a fixed uniaxial tensor") {
    const UniaxialPermittivity eps{cplx(2.0, 0.3), cplx(-4.0, 0.1)};
    const double k0 = 2.0 * pi / 500e-9;
    const cplx kz = layer_kz(eps, 1.3 * k0, k0, Polarization::p);
    CHECK(close(kz / k0, cplx(1.690810333584327, 0.13241657770784482), 1e-12));
}

TEST_CASE("isotropic kz reduces to sqrt(eps k0^2 - kx^2)") {
    const Medium glass = DispersionModel{ConstantModel{cplx(2.25, 0.0)}};
    const double k0 = 2.0 * pi / 633e-9;
    const double kx = std::sqrt(1.2) * k0;
    for (const auto pol : {Polarization::p, Polarization::s}) {
        const cplx kz = layer_kz(glass, kx, k0, pol);
        CHECK(close(kz, cplx(k0 * std::sqrt(1.05), 0.0), 1e-12));
    }
}

TEST_CASE("kz branch keeps Im >= 0, with Re >= 0 as tiebreak") {
    std::mt19937 rng(7041988);
    std::uniform_real_distribution<double> re(-12.0, 12.0), im(0.0, 3.0), sine(0.0, 1.8);
    const double k0 = 2.0 * pi / 550e-9;
    for (int i = 0; i < 2000; ++i) {
        const UniaxialPermittivity eps{cplx(re(rng), im(rng)), cplx(re(rng), im(rng))};
        if (std::abs(eps.eps_par) < 1e-6) continue;
        const double kx = sine(rng) * k0;
        for (const auto pol : {Polarization::p, Polarization::s}) {
            const cplx kz = layer_kz(eps, kx, k0, pol);
            CHECK(kz.imag() >= 0.0);
            if (kz.imag() == 0.0) CHECK(kz.real() >= 0.0);
        }
    }
}

TEST_CASE("p-pol kz rejects eps_par exactly zero") {
    const UniaxialPermittivity eps{cplx(2.0, 0.0), cplx(0.0, 0.0)};
    const double k0 = 2.0 * pi / 500e-9;
    CHECK_THROWS_AS(layer_kz(eps, 0.5 * k0, k0, Polarization::p), NumericError);
    // The ordinary wave never touches eps_par.
    CHECK_NOTHROW(layer_kz(eps, 0.5 * k0, k0, Polarization::s));
}

TEST_CASE("bare prism-vacuum interface at 30 degrees") {
    const Stack stack = prism_to(DispersionModel{ConstantModel{cplx(1.0, 0.0)}});
    const auto wave = make_plane_wave(stack, 500e-9, pi / 6.0, Polarization::p);
    const auto res = stack_reflection(stack, wave);
    CHECK(close(res.r, cplx(-0.06787888807065606, 0.0), 1e-12));
    CHECK(close(res.R, 0.0046075434457086535, 1e-12));
    CHECK(close(res.T, 0.9953924565542915, 1e-12));
}

TEST_CASE("80 nm eps = 4 slab between prism and vacuum") {
    Stack stack = prism_to(DispersionModel{ConstantModel{cplx(1.0, 0.0)}});
    stack.layers.push_back({DispersionModel{ConstantModel{cplx(4.0, 0.0)}}, 80e-9});
    const auto wave = make_plane_wave(stack, 500e-9, pi / 6.0, Polarization::p);
    const auto res = stack_reflection(stack, wave);
    CHECK(close(res.R, 0.07262178210245712, 1e-12));
    CHECK(close(res.T, 0.9273782178975436, 1e-12));
}

TEST_CASE("Kretschmann reflectivity at pinned points") {
    CHECK(close(kretschmann_R(500.0, 48.0, 0.1), 0.06307364050153913, 1e-10));
    CHECK(close(kretschmann_R(540.0, 48.0, 0.1), 0.3249339691915381, 1e-10));
    CHECK(close(kretschmann_R(600.0, 48.0, 0.1), 0.11490845287092095, 1e-10));
    CHECK(close(kretschmann_R(531.45, 48.0, 0.0), 0.16927899967163446, 1e-10));
}

TEST_CASE("Brewster angle kills the p reflection") {
    const Stack stack{ConstantModel{cplx(1.0, 0.0)}, {},
                      DispersionModel{ConstantModel{cplx(2.25, 0.0)}}};
    const double brewster = std::atan(1.5);
    const auto wave = make_plane_wave(stack, 633e-9, brewster, Polarization::p);
    const auto res = stack_reflection(stack, wave);
    CHECK(std::abs(res.r) < 1e-10);
    CHECK(close(res.T, 1.0, 1e-10));
}

TEST_CASE("total internal reflection is unitary with zero transmission") {
    const Stack stack = prism_to(DispersionModel{ConstantModel{cplx(1.0, 0.0)}});
    // Critical angle is asin(1/1.5) = 41.8 deg; 45 deg is beyond it.
    for (const auto pol : {Polarization::p, Polarization::s}) {
        const auto wave = make_plane_wave(stack, 500e-9, pi / 4.0, pol);
        const auto res = stack_reflection(stack, wave);
        CHECK(close(std::abs(res.r), 1.0, 1e-10));
        CHECK(res.T == 0.0);
    }
}

TEST_CASE("Stokes relation r^2 + t t' = 1 at a lossless interface") {
    const Medium a = DispersionModel{ConstantModel{cplx(2.25, 0.0)}};
    const Medium b = DispersionModel{ConstantModel{cplx(5.5, 0.0)}};
    const double k0 = 2.0 * pi / 520e-9;
    const double kx = 1.5 * std::sin(0.6) * k0;
    for (const auto pol : {Polarization::p, Polarization::s}) {
        const auto f = interface_r_t(a, b, kx, k0, pol);
        const auto g = interface_r_t(b, a, kx, k0, pol);
        CHECK(close(f.r * f.r + f.t * g.t, cplx(1.0, 0.0), 1e-12));
        CHECK(close(f.r, -g.r, 1e-12));
        CHECK(close(f.t, cplx(1.0, 0.0) + f.r, 1e-15));
    }
}

TEST_CASE("an isotropic pair in UniaxialMedium matches the isotropic path") {
    const DispersionModel ag = DrudeModel{6.551, 1.5478e16, 2.0e14};
    Stack iso = prism_to(DispersionModel{ConstantModel{cplx(1.77, 0.0)}});
    iso.layers.push_back({ag, 50e-9});
    Stack uni = iso;
    uni.layers[0].medium = UniaxialMedium{ag, ag};
    for (const auto pol : {Polarization::p, Polarization::s}) {
        const auto wave = make_plane_wave(iso, 532e-9, 1.1, pol);
        const auto a = stack_reflection(iso, wave);
        const auto b = stack_reflection(uni, wave);
        CHECK(close(a.r, b.r, 1e-12));
        CHECK(close(a.R, b.R, 1e-12));
        CHECK(close(a.T, b.T, 1e-12));
    }
}

TEST_CASE("a vanishing layer leaves the response unchanged") {
    Stack bare = prism_to(DispersionModel{ConstantModel{cplx(1.0, 0.0)}});
    Stack thin = bare;
    thin.layers.push_back({DispersionModel{ConstantModel{cplx(4.0, 0.2)}}, 1e-15});
    const auto wave = make_plane_wave(bare, 500e-9, 0.5, Polarization::p);
    const auto a = stack_reflection(bare, wave);
    const auto b = stack_reflection(thin, wave);
    CHECK(std::abs(a.r - b.r) < 1e-6);
}

TEST_CASE("energy is conserved through random lossless stacks") {
    std::mt19937 rng(11235813);
    std::uniform_real_distribution<double> eps(1.0, 9.0), thick(5e-9, 400e-9),
        angle(0.0, 1.4);
    std::uniform_int_distribution<int> n_layers(0, 4);
    for (int i = 0; i < 1000; ++i) {
        Stack stack;
        const double eps_in = eps(rng);
        stack.incidence = ConstantModel{cplx(eps_in, 0.0)};
        const int n = n_layers(rng);
        for (int j = 0; j < n; ++j)
            stack.layers.push_back({DispersionModel{ConstantModel{cplx(eps(rng), 0.0)}},
                                    thick(rng)});
        const double eps_sub = eps(rng);
        stack.substrate = DispersionModel{ConstantModel{cplx(eps_sub, 0.0)}};
        const double theta = angle(rng);
        // Keep the substrate propagating so T is meaningful.
        const double sin2 = eps_in * std::sin(theta) * std::sin(theta);
        if (eps_sub <= 1.02 * sin2) continue;
        for (const auto pol : {Polarization::p, Polarization::s}) {
            const auto wave = make_plane_wave(stack, 500e-9, theta, pol);
            const auto res = stack_reflection(stack, wave);
            CHECK(std::abs(res.R + res.T - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("passive stacks never reflect more than unity") {
    std::mt19937 rng(271828);
    std::uniform_real_distribution<double> re(-15.0, 10.0), im(0.0, 4.0),
        thick(5e-9, 200e-9), angle(0.0, 1.4);
    std::uniform_int_distribution<int> n_layers(0, 3);
    for (int i = 0; i < 500; ++i) {
        Stack stack;
        stack.incidence = ConstantModel{cplx(2.25, 0.0)};
        const int n = n_layers(rng);
        for (int j = 0; j < n; ++j)
            stack.layers.push_back(
                {DispersionModel{ConstantModel{cplx(re(rng), im(rng))}}, thick(rng)});
        stack.substrate = DispersionModel{ConstantModel{cplx(re(rng), im(rng))}};
        for (const auto pol : {Polarization::p, Polarization::s}) {
            const auto wave = make_plane_wave(stack, 532e-9, angle(rng), pol);
            const auto res = stack_reflection(stack, wave);
            CHECK(res.R <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("reflection amplitude stays continuous across the ENP") {
    // eps_par has a pole at the ENP (513 nm); r(lambda) must pass through
    // smoothly because the extraordinary kz stays finite.
    const Stack stack = presets::kretschmann_stack(0.1);
    double max_jump = 0.0;
    cplx prev;
    for (int i = 0; i <= 150; ++i) {
        const double lam = (505.0 + 0.1 * i) / 1e9;
        const auto wave = make_plane_wave(stack, lam, 48.0 * pi / 180.0, Polarization::p);
        const cplx r = stack_reflection(stack, wave).r;
        if (i > 0) max_jump = std::max(max_jump, std::abs(r - prev));
        prev = r;
    }
    CHECK(max_jump < 0.01);
    CHECK(close(max_jump, 0.0029993142155162944, 1e-6));
}

TEST_CASE("make_plane_wave validates the incidence side") {
    Stack stack = prism_to(DispersionModel{ConstantModel{cplx(1.0, 0.0)}});
    CHECK_THROWS_AS(make_plane_wave(stack, 500e-9, -0.1, Polarization::p), InvalidInput);
    CHECK_THROWS_AS(make_plane_wave(stack, 500e-9, pi / 2.0, Polarization::p), InvalidInput);
    CHECK_THROWS_AS(make_plane_wave(stack, 0.0, 0.5, Polarization::p), InvalidInput);
    stack.incidence = ConstantModel{cplx(2.25, 0.1)};
    CHECK_THROWS_AS(make_plane_wave(stack, 500e-9, 0.5, Polarization::p), InvalidInput);
    stack.incidence = ConstantModel{cplx(-1.0, 0.0)};
    CHECK_THROWS_AS(make_plane_wave(stack, 500e-9, 0.5, Polarization::p), InvalidInput);
}

TEST_CASE("reflectivity map on a 1x1 grid equals the direct evaluation") {
    const Stack stack = presets::kretschmann_stack(0.1);
    const auto map = reflectivity_map(stack, {500e-9}, {48.0 * pi / 180.0}, Polarization::p);
    REQUIRE(map.R.size() == 1);
    CHECK(map.errors.empty());
    CHECK(close(map.at(0, 0), kretschmann_R(500.0, 48.0, 0.1), 1e-12));
}

TEST_CASE("reflectivity map is identical for 1 and 4 workers") {
    const Stack stack = presets::kretschmann_stack(0.05);
    std::vector<double> lambda, theta;
    for (int i = 0; i < 24; ++i) lambda.push_back((460.0 + 5.0 * i) / 1e9);
    for (int i = 0; i < 7; ++i) theta.push_back((46.0 + i) * pi / 180.0);
    const auto a = reflectivity_map(stack, lambda, theta, Polarization::p, 1);
    const auto b = reflectivity_map(stack, lambda, theta, Polarization::p, 4);
    REQUIRE(a.R.size() == b.R.size());
    for (std::size_t i = 0; i < a.R.size(); ++i) {
        // Bitwise equality: worker count must not change a single cell.
        CHECK(a.R[i] == b.R[i]);
    }
    CHECK(a.errors.empty());
    CHECK(b.errors.empty());
}

TEST_CASE("failing cells turn into NaN plus a sorted error ledger") {
    // eps_par == 0 makes the p-pol extraordinary wave ill-defined everywhere.
    Stack stack = prism_to(DispersionModel{ConstantModel{cplx(1.0, 0.0)}});
    stack.layers.push_back(
        {UniaxialMedium{ConstantModel{cplx(2.0, 0.0)}, ConstantModel{cplx(0.0, 0.0)}},
         40e-9});
    const std::vector<double> lambda{500e-9, 510e-9};
    const std::vector<double> theta{0.4, 0.5, 0.6};
    const auto map = reflectivity_map(stack, lambda, theta, Polarization::p, 2);
    REQUIRE(map.errors.size() == 6);
    for (std::size_t i = 0; i < map.R.size(); ++i) CHECK(std::isnan(map.R[i]));
    for (std::size_t k = 0; k < map.errors.size(); ++k) {
        const auto& e = map.errors[k];
        CHECK(e.i_lambda * theta.size() + e.i_theta == k);
        CHECK(!e.message.empty());
    }
    // The s-pol ordinary wave never needs eps_par, so the same stack is fine.
    const auto ok = reflectivity_map(stack, lambda, theta, Polarization::s, 2);
    CHECK(ok.errors.empty());
}

TEST_CASE("reflectivity map validates its grids") {
    const Stack stack = presets::kretschmann_stack(0.1);
    CHECK_THROWS_AS(reflectivity_map(stack, {}, {0.5}, Polarization::p), InvalidInput);
    CHECK_THROWS_AS(reflectivity_map(stack, {500e-9}, {}, Polarization::p), InvalidInput);
    CHECK_THROWS_AS(
        reflectivity_map(stack, {510e-9, 500e-9}, {0.5}, Polarization::p), InvalidInput);
    CHECK_THROWS_AS(
        reflectivity_map(stack, {500e-9}, {0.6, 0.5}, Polarization::p), InvalidInput);
    // Nonpositive worker counts are clamped, not rejected.
    CHECK_NOTHROW(reflectivity_map(stack, {500e-9}, {0.5}, Polarization::p, 0));
}

}  // TEST_SUITE

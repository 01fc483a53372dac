#include "hyperpol/homogenization.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "hyperpol/errors.hpp"

namespace hyperpol {

std::string_view to_string(BandType t) {
    switch (t) {
        case BandType::dielectric: return "dielectric";
        case BandType::type_I: return "type_I";
        case BandType::type_II: return "type_II";
        case BandType::metallic: return "metallic";
    }
    return "?";
}

UniaxialPermittivity emt_uniaxial(const HomogenizationSpec& spec, double omega) {
    if (!(spec.fill_fraction >= 0.0 && spec.fill_fraction <= 1.0))
        throw InvalidInput("fill_fraction must be in [0, 1]");
    const cplx em = evaluate_permittivity(spec.metal, omega);
    const cplx ed = evaluate_permittivity(spec.dielectric, omega);
    if (em == cplx(0.0) && ed == cplx(0.0))
        throw NumericError("emt_uniaxial: both constituents have eps = 0");
    // Endpoint and degenerate cases return the pure medium bit-exactly.
    const double f = spec.fill_fraction;
    if (em == ed || f == 1.0) return {em, em};
    if (f == 0.0) return {ed, ed};
    const cplx perp = f * em + (1.0 - f) * ed;
    const cplx par = em * ed / (f * ed + (1.0 - f) * em);
    return {perp, par};
}

BandType classify_band(const UniaxialPermittivity& eps) {
    // +0 classifies as positive, -0 as negative (documented boundary rule).
    const bool perp_neg = std::signbit(eps.eps_perp.real());
    const bool par_neg = std::signbit(eps.eps_par.real());
    if (!perp_neg && !par_neg) return BandType::dielectric;
    if (!perp_neg && par_neg) return BandType::type_I;
    if (perp_neg && !par_neg) return BandType::type_II;
    return BandType::metallic;
}

namespace {

// Re eps_perp and Re(1/eps_par); the inverse form keeps the ENP search away
// from the eps_par pole.
double re_perp(const HomogenizationSpec& s, double lam) {
    const double w = omega_from_lambda(lam);
    const cplx em = evaluate_permittivity(s.metal, w);
    const cplx ed = evaluate_permittivity(s.dielectric, w);
    const double f = s.fill_fraction;
    return (f * em + (1.0 - f) * ed).real();
}

double re_inv_par(const HomogenizationSpec& s, double lam) {
    const double w = omega_from_lambda(lam);
    const cplx em = evaluate_permittivity(s.metal, w);
    const cplx ed = evaluate_permittivity(s.dielectric, w);
    const double f = s.fill_fraction;
    return (f / em + (1.0 - f) / ed).real();
}

template <typename F>
bool first_root(F&& fn, double lo, double hi, double res, double& root) {
    constexpr double tol = 1e-11;  // 0.01 nm
    // Sampling finer than the bisection tolerance adds nothing.
    const auto n = std::min<long long>(
        std::max<long long>(1, static_cast<long long>(std::ceil((hi - lo) / res))), 5'000'000);
    double a = lo;
    double fa = fn(a);
    for (long long i = 1; i <= n; ++i) {
        const double b = (i == n) ? hi : lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(n);
        const double fb = fn(b);
        if (fa == 0.0) {
            root = a;
            return true;
        }
        if ((fa < 0.0) != (fb < 0.0)) {
            double x0 = a, x1 = b, f0 = fa;
            while (x1 - x0 > tol) {
                const double mid = 0.5 * (x0 + x1);
                const double fm = fn(mid);
                if ((fm < 0.0) == (f0 < 0.0)) {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            root = 0.5 * (x0 + x1);
            return true;
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0) {
        root = a;
        return true;
    }
    return false;
}

}  // namespace

BandEdges find_band_edges(const HomogenizationSpec& spec, double lambda_min,
                          double lambda_max, double resolution) {
    if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
        throw InvalidInput("find_band_edges: window must satisfy 0 < lambda_min < lambda_max");
    if (!(resolution > 0.0)) throw InvalidInput("find_band_edges: resolution must be > 0");

    BandEdges edges{};
    const bool got_enz = first_root([&](double l) { return re_perp(spec, l); }, lambda_min,
                                    lambda_max, resolution, edges.lambda_enz);
    const bool got_enp = first_root([&](double l) { return re_inv_par(spec, l); }, lambda_min,
                                    lambda_max, resolution, edges.lambda_enp);
    if (!got_enz || !got_enp) {
        std::ostringstream os;
        os << "find_band_edges: no sign change in [" << lambda_min * 1e9 << ", "
           << lambda_max * 1e9 << "] nm for";
        if (!got_enz) os << " ENZ";
        if (!got_enz && !got_enp) os << " and";
        if (!got_enp) os << " ENP";
        throw NumericError(os.str());
    }
    return edges;
}

}  // namespace hyperpol

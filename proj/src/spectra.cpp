#include "hyperpol/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "hyperpol/errors.hpp"

namespace hyperpol {

namespace {

// Parabola through (x0,y0),(x1,y1),(x2,y2) evaluated at x (Lagrange form).
double parabola_value(double x0, double y0, double x1, double y1, double x2, double y2,
                      double x) {
    return y0 * (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2)) +
           y1 * (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2)) +
           y2 * (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
}

}  // namespace

DipReport find_dips(const Spectrum& spec, double prominence_threshold, double window_min,
                    double window_max) {
    const auto& lam = spec.lambda;
    const auto& R = spec.R;
    if (lam.size() != R.size())
        throw InvalidInput("find_dips: lambda and R sizes differ (" +
                           std::to_string(lam.size()) + " vs " + std::to_string(R.size()) +
                           ")");
    for (std::size_t i = 1; i < lam.size(); ++i)
        if (!(lam[i] > lam[i - 1]))
            throw InvalidInput("find_dips: wavelength grid must be strictly increasing");
    if (!(prominence_threshold > 0.0))
        throw InvalidInput("find_dips: prominence threshold must be > 0");
    if (!(window_min < window_max))
        throw InvalidInput("find_dips: window_min must be < window_max");

    // Window indices [lo, hi], inclusive.
    std::size_t lo = 0;
    while (lo < lam.size() && lam[lo] < window_min) ++lo;
    std::size_t hi = lam.size();
    while (hi > 0 && lam[hi - 1] > window_max) --hi;
    if (hi < lo + 5)
        throw InvalidInput("find_dips: fewer than 5 grid points inside the analysis window");
    --hi;

    DipReport report;
    for (std::size_t i = lo + 1; i < hi; ++i) {
        if (!(R[i] < R[i - 1] && R[i] < R[i + 1])) continue;
        double left_max = R[lo];
        for (std::size_t j = lo; j <= i; ++j) left_max = std::max(left_max, R[j]);
        double right_max = R[i];
        for (std::size_t j = i; j <= hi; ++j) right_max = std::max(right_max, R[j]);
        const double prom = std::min(left_max, right_max) - R[i];
        if (prom < prominence_threshold) continue;

        const double x0 = lam[i - 1], x1 = lam[i], x2 = lam[i + 1];
        const double y0 = R[i - 1], y1 = R[i], y2 = R[i + 1];
        const double d1 = x1 - x0;
        const double d2 = x1 - x2;
        const double num = d1 * d1 * (y1 - y2) - d2 * d2 * (y1 - y0);
        const double den = d1 * (y1 - y2) - d2 * (y1 - y0);
        double lam_star = x1, r_min = y1;
        if (den != 0.0) {
            lam_star = x1 - 0.5 * num / den;
            r_min = parabola_value(x0, y0, x1, y1, x2, y2, lam_star);
        }
        report.dips.push_back({lam_star, r_min, prom});
    }
    return report;
}

double splitting_energy_lambda(double lambda_1, double lambda_2, const PhysicalConstants& k) {
    if (!(lambda_1 > 0.0) || !(lambda_2 > 0.0))
        throw InvalidInput("splitting_energy: wavelengths must be > 0");
    if (!(lambda_1 < lambda_2))
        throw InvalidInput("splitting_energy: wavelengths must be in increasing order");
    return 2.0 * pi * k.hbar * k.c / k.e * (1.0 / lambda_1 - 1.0 / lambda_2) * 1e3;
}

double splitting_energy(const DipReport& dips, const PhysicalConstants& k) {
    if (dips.count() != 2)
        throw InvalidInput("splitting_energy: needs exactly 2 dips, got " +
                           std::to_string(dips.count()));
    return splitting_energy_lambda(dips.dips[0].lambda_min, dips.dips[1].lambda_min, k);
}

namespace {

SensingRow sense_one(const Stack& stack_template, double C, double theta,
                     const std::vector<double>& lambda_grid, double prominence_threshold) {
    SensingRow row;
    row.C = C;
    try {
        Stack stack = stack_template;
        std::get<DyeModel>(stack.substrate).concentration = C;

        Spectrum spec;
        spec.lambda = lambda_grid;
        spec.R.resize(lambda_grid.size());
        spec.meta.theta = theta;
        spec.meta.concentration = C;
        for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
            const auto wave = make_plane_wave(stack, lambda_grid[j], theta, Polarization::p);
            spec.R[j] = stack_reflection(stack, wave).R;
        }

        const DipReport report = find_dips(spec, prominence_threshold, lambda_grid.front(),
                                           lambda_grid.back());
        row.dip_count = static_cast<int>(report.count());
        if (report.count() >= 1) {
            row.lambda_1 = report.dips[0].lambda_min;
            row.R_min_1 = report.dips[0].R_min;
        }
        if (report.count() == 2) {
            row.lambda_2 = report.dips[1].lambda_min;
            row.splitting_meV = splitting_energy(report);
        }
    } catch (const Error& e) {
        row = SensingRow{};
        row.C = C;
        row.error = e.what();
    }
    return row;
}

}  // namespace

SensingCurve concentration_sweep(const Stack& stack_template, const std::vector<double>& C_list,
                                 double theta, const std::vector<double>& lambda_grid,
                                 double prominence_threshold, int n_workers) {
    if (!std::holds_alternative<DyeModel>(stack_template.substrate))
        throw InvalidInput("concentration_sweep: substrate must be a dye model");
    if (C_list.empty())
        throw InvalidInput("concentration_sweep: concentration list must not be empty");
    for (double C : C_list)
        if (!(C >= 0.0))
            throw InvalidInput("concentration_sweep: concentrations must be >= 0");
    if (n_workers < 1) throw InvalidInput("concentration_sweep: n_workers must be >= 1");

    SensingCurve curve;
    curve.rows.resize(C_list.size());
    const std::size_t n = C_list.size();
    const std::size_t workers = std::min<std::size_t>(n_workers, std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            curve.rows[i] =
                sense_one(stack_template, C_list[i], theta, lambda_grid, prominence_threshold);
        return curve;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = n * w / workers;
            const std::size_t end = n * (w + 1) / workers;
            pool.emplace_back([&, begin, end] {
                for (std::size_t i = begin; i < end; ++i)
                    curve.rows[i] = sense_one(stack_template, C_list[i], theta, lambda_grid,
                                              prominence_threshold);
            });
        }
    }
    return curve;
}

namespace {

const char* observable_name(Observable obs) {
    switch (obs) {
        case Observable::r_min: return "R_min";
        case Observable::lambda_1: return "lambda_1";
        default: return "splitting_meV";
    }
}

std::optional<double> observable_value(Observable obs, const SensingRow& row) {
    switch (obs) {
        case Observable::r_min: return row.R_min_1;
        case Observable::lambda_1: return row.lambda_1;
        default: return row.splitting_meV;
    }
}

}  // namespace

ConcentrationEstimate estimate_concentration(Observable observable, double value,
                                             const SensingCurve& curve) {
    std::vector<std::pair<double, double>> pts;  // (C, observable)
    for (const SensingRow& row : curve.rows) {
        if (row.error) continue;
        if (const auto v = observable_value(observable, row)) pts.emplace_back(row.C, *v);
    }
    const std::string name = observable_name(observable);
    if (pts.size() < 2)
        throw InvalidInput("estimate_concentration: need >= 2 rows carrying " + name +
                           ", got " + std::to_string(pts.size()));

    bool increasing = true, decreasing = true;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i].second > pts[i - 1].second)) increasing = false;
        if (!(pts[i].second < pts[i - 1].second)) decreasing = false;
    }
    if (!increasing && !decreasing)
        throw InvalidInput("estimate_concentration: " + name +
                           " is not strictly monotone in concentration");

    for (const auto& [C, v] : pts)
        if (v == value) return {C, C, C};

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto [c_lo, v_lo] = pts[i];
        const auto [c_hi, v_hi] = pts[i + 1];
        if ((value - v_lo) * (value - v_hi) < 0.0) {
            const double t = (value - v_lo) / (v_hi - v_lo);
            return {c_lo + t * (c_hi - c_lo), c_lo, c_hi};
        }
    }
    std::ostringstream os;
    os << "estimate_concentration: " << name << " = " << value
       << " outside the curve's range [" << std::min(pts.front().second, pts.back().second)
       << ", " << std::max(pts.front().second, pts.back().second) << "]";
    throw InvalidInput(os.str());
}

}  // namespace hyperpol

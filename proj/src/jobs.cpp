#include "hyperpol/jobs.hpp"

#include <chrono>
#include <filesystem>
#include <variant>

#include "hyperpol/homogenization.hpp"
#include "hyperpol/io.hpp"
#include "hyperpol/polariton.hpp"
#include "hyperpol/spectra.hpp"
#include "hyperpol/version.hpp"

namespace hyperpol {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct SubName {
    Subcommand sub;
    std::string_view name;
};

constexpr SubName sub_names[] = {
    {Subcommand::permittivity, "permittivity"},
    {Subcommand::emt, "emt"},
    {Subcommand::band_edges, "band-edges"},
    {Subcommand::reflectivity, "reflectivity"},
    {Subcommand::map, "map"},
    {Subcommand::dips, "dips"},
    {Subcommand::sweep, "sweep"},
    {Subcommand::modes, "modes"},
    {Subcommand::fit_resonance, "fit-resonance"},
    {Subcommand::estimate, "estimate"},
};

}  // namespace

Subcommand parse_subcommand(std::string_view name) {
    std::string canon(name);
    for (char& c : canon)
        if (c == '_') c = '-';
    for (const SubName& s : sub_names)
        if (s.name == canon) return s.sub;
    std::string known;
    for (const SubName& s : sub_names) {
        if (!known.empty()) known += ", ";
        known += s.name;
    }
    throw InvalidInput("unknown subcommand '" + std::string(name) + "' (expected one of " +
                       known + ")");
}

std::string_view to_string(Subcommand sub) {
    for (const SubName& s : sub_names)
        if (s.sub == sub) return s.name;
    return "?";
}

namespace {

struct Outputs {
    std::string dir;
    std::vector<std::string> names;

    void write(const std::string& name, std::string_view content) {
        io::write_text_file(dir + "/" + name, content);
        names.push_back(name);
    }
};

double nm(double metres) { return metres * 1e9; }

std::vector<double> window_grid(const std::vector<double>& grid, double lo, double hi) {
    std::vector<double> out;
    for (double v : grid)
        if (v >= lo && v <= hi) out.push_back(v);
    return out;
}

std::vector<double> spectrum_R(const Stack& stack, const std::vector<double>& grid,
                               double theta, Polarization pol) {
    std::vector<double> R(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        R[i] = stack_reflection(stack, make_plane_wave(stack, grid[i], theta, pol)).R;
    return R;
}

// First homogenized layer of the stack; the emt/band-edges subcommands
// operate on it.
const HomogenizationSpec& first_emt_layer(const Stack& stack) {
    for (const Layer& layer : stack.layers)
        if (const auto* spec = std::get_if<HomogenizationSpec>(&layer.medium)) return *spec;
    throw InvalidInput("the stack has no EMT (homogenized) layer");
}

json job_permittivity(const JobConfig& cfg, Outputs& out) {
    const auto grid = lambda_grid(cfg.sweep);
    std::string csv = "material,lambda_nm,eps_re,eps_im\n";
    json names = json::array();
    for (const auto& [name, entry] : cfg.materials) {
        names.push_back(name);
        for (double lam : grid) {
            const double w = omega_from_lambda(lam);
            const cplx e = std::holds_alternative<DyeModel>(entry)
                               ? dye_permittivity(std::get<DyeModel>(entry), w)
                               : evaluate_permittivity(std::get<DispersionModel>(entry), w);
            csv += name;
            csv += ',';
            csv += io::format_g9(nm(lam));
            csv += ',';
            csv += io::format_g9(e.real());
            csv += ',';
            csv += io::format_g9(e.imag());
            csv += '\n';
        }
    }
    out.write("permittivity.csv", csv);
    return {{"materials", names}};
}

json job_emt(const JobConfig& cfg, Outputs& out) {
    const Stack stack = build_stack(cfg);
    const HomogenizationSpec& spec = first_emt_layer(stack);
    const auto grid = lambda_grid(cfg.sweep);
    std::string csv = "lambda_nm,eps_perp_re,eps_perp_im,eps_par_re,eps_par_im,band\n";
    for (double lam : grid) {
        const UniaxialPermittivity eps = emt_uniaxial(spec, omega_from_lambda(lam));
        csv += io::format_g9(nm(lam));
        csv += ',';
        csv += io::format_g9(eps.eps_perp.real());
        csv += ',';
        csv += io::format_g9(eps.eps_perp.imag());
        csv += ',';
        csv += io::format_g9(eps.eps_par.real());
        csv += ',';
        csv += io::format_g9(eps.eps_par.imag());
        csv += ',';
        csv += to_string(classify_band(eps));
        csv += '\n';
    }
    out.write("emt.csv", csv);
    return {{"fill_fraction", spec.fill_fraction}};
}

json job_band_edges(const JobConfig& cfg, Outputs& out) {
    const Stack stack = build_stack(cfg);
    const HomogenizationSpec& spec = first_emt_layer(stack);
    const BandEdges edges =
        find_band_edges(spec, cfg.sweep.lambda.min_nm / 1e9, cfg.sweep.lambda.max_nm / 1e9,
                        cfg.sweep.lambda.step_nm / 1e9);
    json doc = {{"lambda_enz_nm", nm(edges.lambda_enz)}, {"lambda_enp_nm", nm(edges.lambda_enp)}};
    out.write("band_edges.json", doc.dump(2) + "\n");
    return {{"band_edges", doc}};
}

json job_reflectivity(const JobConfig& cfg, Outputs& out) {
    const Stack stack = build_stack(cfg);
    const double theta = theta_grid(cfg.sweep).front();
    const auto grid = lambda_grid(cfg.sweep);
    std::vector<double> R(grid.size()), T(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto result =
            stack_reflection(stack, make_plane_wave(stack, grid[i], theta, cfg.sweep.pol));
        R[i] = result.R;
        T[i] = result.T;
    }
    out.write("reflectivity.csv", io::reflectivity_to_csv(grid, R, T));
    return {{"theta_deg", cfg.sweep.theta.min_deg}};
}

json job_map(const JobConfig& cfg, Outputs& out, int n_workers) {
    const Stack stack = build_stack(cfg);
    const ReflectivityMap map = reflectivity_map(stack, lambda_grid(cfg.sweep),
                                                 theta_grid(cfg.sweep), cfg.sweep.pol, n_workers);
    out.write("map.csv", io::map_to_csv(map));
    json errors = json::array();
    for (std::size_t i = 0; i < map.errors.size() && i < 10; ++i) {
        const auto& e = map.errors[i];
        errors.push_back({{"lambda_nm", nm(map.lambda[e.i_lambda])},
                          {"theta_deg", map.theta[e.i_theta] * 180.0 / pi},
                          {"message", e.message}});
    }
    return {{"n_lambda", map.lambda.size()},
            {"n_theta", map.theta.size()},
            {"cell_error_count", map.errors.size()},
            {"cell_errors", errors}};
}

json dip_report_json(const DipReport& report) {
    json dips = json::array();
    for (const Dip& d : report.dips)
        dips.push_back({{"lambda_nm", nm(d.lambda_min)},
                        {"R_min", d.R_min},
                        {"prominence", d.prominence}});
    json doc = {{"count", report.count()}, {"dips", dips}};
    if (report.count() == 2) doc["splitting_meV"] = splitting_energy(report);
    return doc;
}

json job_dips(const JobConfig& cfg, Outputs& out) {
    const Stack stack = build_stack(cfg);
    const double theta = theta_grid(cfg.sweep).front();
    const auto grid = lambda_grid(cfg.sweep);
    Spectrum spec;
    spec.lambda = grid;
    spec.R = spectrum_R(stack, grid, theta, cfg.sweep.pol);
    spec.meta.theta = theta;
    spec.meta.pol = cfg.sweep.pol;
    const auto [wlo, whi] = analysis_window(cfg);
    json doc = dip_report_json(find_dips(spec, cfg.analysis.prominence, wlo, whi));
    doc["theta_deg"] = cfg.sweep.theta.min_deg;
    doc["window_nm"] = {nm(wlo), nm(whi)};
    if (const auto* dye = std::get_if<DyeModel>(&stack.substrate))
        doc["concentration_molar"] = dye->concentration;
    out.write("dips.json", doc.dump(2) + "\n");
    return {{"dips", doc}};
}

SensingCurve run_sensing(const JobConfig& cfg, int n_workers) {
    if (cfg.sweep.concentrations_molar.empty())
        throw InvalidInput("sweep: the config lists no concentrations_molar");
    const Stack stack = build_stack(cfg);
    if (!std::holds_alternative<DyeModel>(stack.substrate))
        throw InvalidInput("sweep: the stack substrate must be a dye material");
    const auto [wlo, whi] = analysis_window(cfg);
    const auto grid = window_grid(lambda_grid(cfg.sweep), wlo, whi);
    return concentration_sweep(stack, cfg.sweep.concentrations_molar,
                               theta_grid(cfg.sweep).front(), grid, cfg.analysis.prominence,
                               n_workers);
}

json sensing_payload(const SensingCurve& curve) {
    json row_errors = json::array();
    for (const SensingRow& row : curve.rows)
        if (row.error) row_errors.push_back({{"C_molar", row.C}, {"message", *row.error}});
    return {{"rows", curve.rows.size()}, {"row_errors", row_errors}};
}

json job_sweep(const JobConfig& cfg, Outputs& out, int n_workers) {
    const SensingCurve curve = run_sensing(cfg, n_workers);
    out.write("sensing_curve.csv", io::sensing_curve_to_csv(curve));
    return sensing_payload(curve);
}

PoleFit fit_resonance_from_stack(const JobConfig& cfg) {
    Stack stack = build_stack(cfg);
    if (!std::holds_alternative<DyeModel>(stack.substrate))
        throw InvalidInput("fit-resonance: the stack substrate must be a dye material");
    std::get<DyeModel>(stack.substrate).concentration = 0.0;  // bare resonance

    const double theta = theta_grid(cfg.sweep).front();
    const auto grid = lambda_grid(cfg.sweep);
    Spectrum spec;
    spec.lambda = grid;
    spec.R = spectrum_R(stack, grid, theta, Polarization::p);
    const auto [wlo, whi] = analysis_window(cfg);
    const DipReport report = find_dips(spec, cfg.analysis.prominence, wlo, whi);
    if (report.count() == 0)
        throw NumericError("fit-resonance: the bare stack shows no reflectivity dip to fit");

    // 41 complex reflection samples across +-15 nm around the dip.
    const double lam_dip = report.dips[0].lambda_min;
    const double lo = lam_dip - 15e-9;
    const double step = 30e-9 / 40.0;
    std::vector<std::pair<double, cplx>> samples;
    samples.reserve(41);
    for (int j = 0; j < 41; ++j) {
        const double lam = lo + j * step;
        const auto wave = make_plane_wave(stack, lam, theta, Polarization::p);
        samples.emplace_back(omega_from_lambda(lam), stack_reflection(stack, wave).r);
    }
    return fit_surface_resonance(samples);
}

json fit_json(const PoleFit& fit) {
    return {{"omega_c", fit.resonance.omega_c},
            {"kappa_c", fit.resonance.kappa_c},
            {"chi", fit.resonance.chi},
            {"residual", fit.residual}};
}

json job_fit_resonance(const JobConfig& cfg, Outputs& out) {
    const PoleFit fit = fit_resonance_from_stack(cfg);
    const json doc = fit_json(fit);
    out.write("fit.json", doc.dump(2) + "\n");
    return {{"fit", doc}};
}

json job_modes(const JobConfig& cfg, Outputs& out) {
    if (!cfg.modes) throw InvalidInput("modes: the config has no modes section");
    const ModesConfig& mc = *cfg.modes;

    double omega_0 = 0.0;
    if (mc.omega_0) {
        omega_0 = *mc.omega_0;
    } else {
        const Stack stack = build_stack(cfg);
        const auto* dye = std::get_if<DyeModel>(&stack.substrate);
        if (!dye)
            throw InvalidInput(
                "modes: omega_0 not given and the stack substrate is not a dye material");
        omega_0 = dye->omega_0;
    }
    const double gamma_vac = mc.gamma_vac ? *mc.gamma_vac : vacuum_decay_rate(omega_0);
    const AtomModel atom{omega_0, gamma_vac};

    SurfaceResonance res{};
    if (mc.fit_from_stack)
        res = fit_resonance_from_stack(cfg).resonance;
    else
        res = {*mc.omega_c, *mc.kappa_c, *mc.chi};

    const double g = coupling_from_strength(res.chi, omega_0);
    const CoupledModeResult cm = coupled_eigenfrequencies(atom, res, g);
    const json doc = {{"omega_plus_re", cm.omega_plus.real()},
                      {"omega_plus_im", cm.omega_plus.imag()},
                      {"omega_minus_re", cm.omega_minus.real()},
                      {"omega_minus_im", cm.omega_minus.imag()},
                      {"g", cm.g},
                      {"regime", std::string(to_string(cm.regime))},
                      {"splitting_meV", cm.splitting_meV}};
    out.write("modes.json", doc.dump(2) + "\n");

    // Cross-check: the full dispersion roots, for the summary only.
    const double K = 2.0 * g * g / omega_0;
    json roots = json::array();
    for (const cplx& w : solve_azz_roots(atom, res, K)) roots.push_back({w.real(), w.imag()});
    return {{"modes", doc},
            {"resonance",
             {{"omega_c", res.omega_c}, {"kappa_c", res.kappa_c}, {"chi", res.chi}}},
            {"azz_roots", roots}};
}

json job_estimate(const JobConfig& cfg, Outputs& out, int n_workers) {
    if (!cfg.estimate) throw InvalidInput("estimate: the config has no estimate section");
    const SensingCurve curve = run_sensing(cfg, n_workers);
    out.write("sensing_curve.csv", io::sensing_curve_to_csv(curve));

    const EstimateConfig& ec = *cfg.estimate;
    // lambda1 is configured in nm but the curve stores metres.
    const double value_si =
        ec.observable == Observable::lambda_1 ? ec.value / 1e9 : ec.value;
    const ConcentrationEstimate est = estimate_concentration(ec.observable, value_si, curve);
    const char* obs_name = ec.observable == Observable::r_min        ? "R_min"
                           : ec.observable == Observable::lambda_1 ? "lambda1"
                                                                     : "splitting_meV";
    json doc = {{"observable", obs_name},
                {"value", ec.value},
                {"C_molar", est.C},
                {"bracket_lo_molar", est.bracket_lo},
                {"bracket_hi_molar", est.bracket_hi}};
    out.write("estimate.json", doc.dump(2) + "\n");
    json payload = sensing_payload(curve);
    payload["estimate"] = doc;
    return payload;
}

}  // namespace

json run_job(const JobConfig& cfg, Subcommand sub, const std::string& out_dir, int n_workers,
             std::string_view config_text) {
    const auto t0 = std::chrono::steady_clock::now();
    if (n_workers < 1) throw InvalidInput("run_job: n_workers must be >= 1");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

    Outputs out{out_dir, {}};
    json payload;
    switch (sub) {
        case Subcommand::permittivity: payload = job_permittivity(cfg, out); break;
        case Subcommand::emt: payload = job_emt(cfg, out); break;
        case Subcommand::band_edges: payload = job_band_edges(cfg, out); break;
        case Subcommand::reflectivity: payload = job_reflectivity(cfg, out); break;
        case Subcommand::map: payload = job_map(cfg, out, n_workers); break;
        case Subcommand::dips: payload = job_dips(cfg, out); break;
        case Subcommand::sweep: payload = job_sweep(cfg, out, n_workers); break;
        case Subcommand::modes: payload = job_modes(cfg, out); break;
        case Subcommand::fit_resonance: payload = job_fit_resonance(cfg, out); break;
        case Subcommand::estimate: payload = job_estimate(cfg, out, n_workers); break;
    }

    json summary;
    summary["schema_version"] = cfg.schema_version;
    summary["subcommand"] = std::string(to_string(sub));
    summary["config_hash"] = "fnv1a:" + io::hex64(io::fnv1a64(config_text));
    summary["version"] = version;
    summary["threads"] = n_workers;
    for (auto& [key, val] : payload.items()) summary[key] = val;
    summary["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.names.push_back("summary.json");
    summary["outputs"] = out.names;
    io::write_text_file(out_dir + "/summary.json", summary.dump(2) + "\n");
    return summary;
}

}  // namespace hyperpol

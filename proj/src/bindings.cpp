#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperpol/config.hpp"
#include "hyperpol/errors.hpp"
#include "hyperpol/homogenization.hpp"
#include "hyperpol/io.hpp"
#include "hyperpol/jobs.hpp"
#include "hyperpol/materials.hpp"
#include "hyperpol/polariton.hpp"
#include "hyperpol/presets.hpp"
#include "hyperpol/spectra.hpp"
#include "hyperpol/tmm.hpp"
#include "hyperpol/version.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace hyperpol;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Polariton sensing toolkit: dispersive materials, EMT homogenization, "
              "anisotropic transfer matrices, coupled-mode theory";
    m.attr("__version__") = version;

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    // --- constants ------------------------------------------------------
    py::class_<PhysicalConstants>(m, "PhysicalConstants")
        .def(py::init<>())
        .def_readwrite("e", &PhysicalConstants::e)
        .def_readwrite("m", &PhysicalConstants::m)
        .def_readwrite("eps0", &PhysicalConstants::eps0)
        .def_readwrite("c", &PhysicalConstants::c)
        .def_readwrite("hbar", &PhysicalConstants::hbar)
        .def_readwrite("N_A", &PhysicalConstants::N_A);
    m.attr("codata") = codata;
    m.def("omega_from_lambda", &omega_from_lambda, "lambda0"_a, "constants"_a = codata);
    m.def("lambda_from_omega", &lambda_from_omega, "omega"_a, "constants"_a = codata);

    // --- materials ------------------------------------------------------
    py::class_<ConstantModel>(m, "ConstantModel")
        .def(py::init<cplx>(), "eps"_a)
        .def_readwrite("eps", &ConstantModel::eps);
    py::class_<DrudeModel>(m, "DrudeModel")
        .def(py::init<double, double, double>(), "eps_inf"_a, "omega_p"_a, "gamma"_a)
        .def_readwrite("eps_inf", &DrudeModel::eps_inf)
        .def_readwrite("omega_p", &DrudeModel::omega_p)
        .def_readwrite("gamma", &DrudeModel::gamma);
    py::class_<LorentzModel>(m, "LorentzModel")
        .def(py::init<double, double, double, double>(), "eps_b"_a, "omega_p"_a, "omega_0"_a,
             "gamma"_a)
        .def_readwrite("eps_b", &LorentzModel::eps_b)
        .def_readwrite("omega_p", &LorentzModel::omega_p)
        .def_readwrite("omega_0", &LorentzModel::omega_0)
        .def_readwrite("gamma", &LorentzModel::gamma);
    py::class_<TabulatedModel>(m, "TabulatedModel")
        .def(py::init<std::vector<double>, std::vector<cplx>>(), "wavelengths"_a, "eps"_a)
        .def_readwrite("wavelengths", &TabulatedModel::lambda)
        .def_readwrite("eps", &TabulatedModel::eps);
    py::class_<DyeModel>(m, "DyeModel")
        .def(py::init<double, double, double, double, double>(), "omega_0"_a, "gamma"_a, "h"_a,
             "concentration"_a, "host_eps"_a)
        .def_readwrite("omega_0", &DyeModel::omega_0)
        .def_readwrite("gamma", &DyeModel::gamma)
        .def_readwrite("h", &DyeModel::h)
        .def_readwrite("concentration", &DyeModel::concentration)
        .def_readwrite("host_eps", &DyeModel::host_eps);

    m.def("evaluate_permittivity", &evaluate_permittivity, "model"_a, "omega"_a);
    m.def("dye_plasma_frequency", &dye_plasma_frequency, "dye"_a, "constants"_a = codata);
    m.def("dye_permittivity", &dye_permittivity, "dye"_a, "omega"_a, "constants"_a = codata);
    m.def("lorentz_from_dye", &lorentz_from_dye, "dye"_a, "constants"_a = codata);

    // --- homogenization -------------------------------------------------
    py::class_<UniaxialPermittivity>(m, "UniaxialPermittivity")
        .def(py::init<cplx, cplx>(), "eps_perp"_a, "eps_par"_a)
        .def_readwrite("eps_perp", &UniaxialPermittivity::eps_perp)
        .def_readwrite("eps_par", &UniaxialPermittivity::eps_par);
    py::class_<HomogenizationSpec>(m, "HomogenizationSpec")
        .def(py::init<DispersionModel, DispersionModel, double>(), "metal"_a, "dielectric"_a,
             "fill_fraction"_a)
        .def_readwrite("metal", &HomogenizationSpec::metal)
        .def_readwrite("dielectric", &HomogenizationSpec::dielectric)
        .def_readwrite("fill_fraction", &HomogenizationSpec::fill_fraction);
    py::class_<BandEdges>(m, "BandEdges")
        .def_readwrite("lambda_enz", &BandEdges::lambda_enz)
        .def_readwrite("lambda_enp", &BandEdges::lambda_enp);
    py::enum_<BandType>(m, "BandType")
        .value("dielectric", BandType::dielectric)
        .value("type_I", BandType::type_I)
        .value("type_II", BandType::type_II)
        .value("metallic", BandType::metallic);
    m.def("emt_uniaxial", &emt_uniaxial, "spec"_a, "omega"_a);
    m.def("classify_band", &classify_band, "eps"_a);
    m.def("find_band_edges", &find_band_edges, "spec"_a, "lambda_min"_a, "lambda_max"_a,
          "resolution"_a);

    // --- transfer matrices ----------------------------------------------
    py::enum_<Polarization>(m, "Polarization")
        .value("p", Polarization::p)
        .value("s", Polarization::s);
    py::class_<UniaxialMedium>(m, "UniaxialMedium")
        .def(py::init<DispersionModel, DispersionModel>(), "perp"_a, "par"_a)
        .def_readwrite("perp", &UniaxialMedium::perp)
        .def_readwrite("par", &UniaxialMedium::par);
    py::class_<Layer>(m, "Layer")
        .def(py::init<Medium, double>(), "medium"_a, "thickness"_a)
        .def_readwrite("medium", &Layer::medium)
        .def_readwrite("thickness", &Layer::thickness);
    py::class_<Stack>(m, "Stack")
        .def(py::init<>())
        .def_readwrite("incidence", &Stack::incidence)
        .def_readwrite("layers", &Stack::layers)
        .def_readwrite("substrate", &Stack::substrate);
    py::class_<PlaneWaveState>(m, "PlaneWaveState")
        .def_readonly("lambda0", &PlaneWaveState::lambda0)
        .def_readonly("theta", &PlaneWaveState::theta)
        .def_readonly("pol", &PlaneWaveState::pol)
        .def_readonly("k0", &PlaneWaveState::k0)
        .def_readonly("kx", &PlaneWaveState::kx);
    py::class_<FresnelCoeffs>(m, "FresnelCoeffs")
        .def_readonly("r", &FresnelCoeffs::r)
        .def_readonly("t", &FresnelCoeffs::t);
    py::class_<ReflectivityResult>(m, "ReflectivityResult")
        .def_readonly("r", &ReflectivityResult::r)
        .def_readonly("R", &ReflectivityResult::R)
        .def_readonly("T", &ReflectivityResult::T);
    py::class_<ReflectivityMap::CellError>(m, "CellError")
        .def_readonly("i_lambda", &ReflectivityMap::CellError::i_lambda)
        .def_readonly("i_theta", &ReflectivityMap::CellError::i_theta)
        .def_readonly("message", &ReflectivityMap::CellError::message);
    py::class_<ReflectivityMap>(m, "ReflectivityMap")
        .def_readonly("wavelengths", &ReflectivityMap::lambda)
        .def_readonly("thetas", &ReflectivityMap::theta)
        .def_readonly("pol", &ReflectivityMap::pol)
        .def_readonly("R", &ReflectivityMap::R)
        .def_readonly("errors", &ReflectivityMap::errors)
        .def("at", &ReflectivityMap::at, "i_lambda"_a, "i_theta"_a);

    m.def("evaluate_medium", &evaluate_medium, "medium"_a, "omega"_a);
    m.def("make_plane_wave", &make_plane_wave, "stack"_a, "lambda0"_a, "theta"_a, "pol"_a);
    m.def("layer_kz",
          py::overload_cast<const Medium&, double, double, Polarization>(&layer_kz),
          "medium"_a, "kx"_a, "k0"_a, "pol"_a);
    m.def("layer_kz",
          py::overload_cast<const UniaxialPermittivity&, double, double, Polarization>(
              &layer_kz),
          "eps"_a, "kx"_a, "k0"_a, "pol"_a);
    m.def("interface_r_t", &interface_r_t, "a"_a, "b"_a, "kx"_a, "k0"_a, "pol"_a);
    m.def("stack_reflection", &stack_reflection, "stack"_a, "wave"_a);
    m.def(
        "reflectivity",
        [](const Stack& stack, double lambda0, double theta, Polarization pol) {
            return stack_reflection(stack, make_plane_wave(stack, lambda0, theta, pol));
        },
        "stack"_a, "lambda0"_a, "theta"_a, "pol"_a = Polarization::p,
        "Plane-wave setup and stack reflection in one call");
    m.def("reflectivity_map", &reflectivity_map, "stack"_a, "lambda_grid"_a, "theta_grid"_a,
          "pol"_a = Polarization::p, "n_workers"_a = 1,
          py::call_guard<py::gil_scoped_release>());

    // --- polariton ------------------------------------------------------
    py::class_<SurfaceResonance>(m, "SurfaceResonance")
        .def(py::init<double, double, double>(), "omega_c"_a, "kappa_c"_a, "chi"_a)
        .def_readwrite("omega_c", &SurfaceResonance::omega_c)
        .def_readwrite("kappa_c", &SurfaceResonance::kappa_c)
        .def_readwrite("chi", &SurfaceResonance::chi);
    py::class_<AtomModel>(m, "AtomModel")
        .def(py::init<double, double>(), "omega_0"_a, "gamma_vac"_a)
        .def_readwrite("omega_0", &AtomModel::omega_0)
        .def_readwrite("gamma_vac", &AtomModel::gamma_vac);
    py::enum_<CouplingRegime>(m, "CouplingRegime")
        .value("weak", CouplingRegime::weak)
        .value("strong", CouplingRegime::strong);
    py::class_<CoupledModeResult>(m, "CoupledModeResult")
        .def_readonly("omega_plus", &CoupledModeResult::omega_plus)
        .def_readonly("omega_minus", &CoupledModeResult::omega_minus)
        .def_readonly("g", &CoupledModeResult::g)
        .def_readonly("regime", &CoupledModeResult::regime)
        .def_readonly("splitting_meV", &CoupledModeResult::splitting_meV);
    py::class_<RootWindow>(m, "RootWindow")
        .def(py::init<double, double, double, double>(), "re_min"_a, "re_max"_a, "im_min"_a,
             "im_max"_a)
        .def_readwrite("re_min", &RootWindow::re_min)
        .def_readwrite("re_max", &RootWindow::re_max)
        .def_readwrite("im_min", &RootWindow::im_min)
        .def_readwrite("im_max", &RootWindow::im_max);
    py::class_<PoleFit>(m, "PoleFit")
        .def_readonly("resonance", &PoleFit::resonance)
        .def_readonly("a", &PoleFit::a)
        .def_readonly("b", &PoleFit::b)
        .def_readonly("residual", &PoleFit::residual);

    m.def("vacuum_decay_rate", &vacuum_decay_rate, "omega"_a, "constants"_a = codata);
    m.def("coupling_from_strength", &coupling_from_strength, "chi"_a, "omega_0"_a,
          "constants"_a = codata);
    m.def("coupled_eigenfrequencies", &coupled_eigenfrequencies, "atom"_a, "resonance"_a,
          "g"_a, "constants"_a = codata);
    m.def("classify_coupling", &classify_coupling, "g"_a, "gamma_vac"_a, "kappa_c"_a);
    m.def("coupling_margin", &coupling_margin, "g"_a, "gamma_vac"_a, "kappa_c"_a);
    m.def("default_root_window", &default_root_window, "atom"_a, "resonance"_a);
    m.def("azz", &azz, "atom"_a, "resonance"_a, "coupling_prefactor"_a, "omega"_a);
    m.def("solve_azz_roots",
          py::overload_cast<const AtomModel&, const SurfaceResonance&, double>(
              &solve_azz_roots),
          "atom"_a, "resonance"_a, "coupling_prefactor"_a);
    m.def("solve_azz_roots",
          py::overload_cast<const AtomModel&, const SurfaceResonance&, double,
                            const RootWindow&>(&solve_azz_roots),
          "atom"_a, "resonance"_a, "coupling_prefactor"_a, "window"_a);
    m.def("rabi_estimate", &rabi_estimate, "omega_c"_a, "omega_p"_a);
    m.def("rabi_splitting_meV", &rabi_splitting_meV, "omega_p"_a, "constants"_a = codata);
    m.def("fit_surface_resonance", &fit_surface_resonance, "samples"_a);

    // --- spectra --------------------------------------------------------
    py::class_<SpectrumMetadata>(m, "SpectrumMetadata")
        .def(py::init<>())
        .def_readwrite("theta", &SpectrumMetadata::theta)
        .def_readwrite("pol", &SpectrumMetadata::pol)
        .def_readwrite("stack_id", &SpectrumMetadata::stack_id)
        .def_readwrite("concentration", &SpectrumMetadata::concentration);
    py::class_<Spectrum>(m, "Spectrum")
        .def(py::init<>())
        .def_readwrite("wavelengths", &Spectrum::lambda)
        .def_readwrite("R", &Spectrum::R)
        .def_readwrite("meta", &Spectrum::meta);
    py::class_<Dip>(m, "Dip")
        .def_readonly("lambda_min", &Dip::lambda_min)
        .def_readonly("R_min", &Dip::R_min)
        .def_readonly("prominence", &Dip::prominence);
    py::class_<DipReport>(m, "DipReport")
        .def_readonly("dips", &DipReport::dips)
        .def("count", &DipReport::count);
    py::enum_<Observable>(m, "Observable")
        .value("r_min", Observable::r_min)
        .value("lambda_1", Observable::lambda_1)
        .value("splitting", Observable::splitting);
    py::class_<SensingRow>(m, "SensingRow")
        .def_readonly("C", &SensingRow::C)
        .def_readonly("dip_count", &SensingRow::dip_count)
        .def_readonly("lambda_1", &SensingRow::lambda_1)
        .def_readonly("lambda_2", &SensingRow::lambda_2)
        .def_readonly("R_min_1", &SensingRow::R_min_1)
        .def_readonly("splitting_meV", &SensingRow::splitting_meV)
        .def_readonly("error", &SensingRow::error);
    py::class_<SensingCurve>(m, "SensingCurve")
        .def_readonly("rows", &SensingCurve::rows);
    py::class_<ConcentrationEstimate>(m, "ConcentrationEstimate")
        .def_readonly("C", &ConcentrationEstimate::C)
        .def_readonly("bracket_lo", &ConcentrationEstimate::bracket_lo)
        .def_readonly("bracket_hi", &ConcentrationEstimate::bracket_hi);

    m.def("find_dips", &find_dips, "spectrum"_a, "prominence_threshold"_a, "window_min"_a,
          "window_max"_a);
    m.def(
        "find_dips_arrays",
        [](const std::vector<double>& lam, const std::vector<double>& R, double prom,
           double wmin, double wmax) {
            Spectrum spec;
            spec.lambda = lam;
            spec.R = R;
            return find_dips(spec, prom, wmin, wmax);
        },
        "wavelengths"_a, "R"_a, "prominence_threshold"_a, "window_min"_a, "window_max"_a,
        "find_dips on bare wavelength/R arrays");
    m.def("splitting_energy", &splitting_energy, "dips"_a, "constants"_a = codata);
    m.def("splitting_energy_lambda", &splitting_energy_lambda, "lambda_1"_a, "lambda_2"_a,
          "constants"_a = codata);
    m.def("concentration_sweep", &concentration_sweep, "stack_template"_a, "C_list"_a,
          "theta"_a, "lambda_grid"_a, "prominence_threshold"_a = 0.02, "n_workers"_a = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("estimate_concentration", &estimate_concentration, "observable"_a, "value"_a,
          "curve"_a);

    // --- config / jobs --------------------------------------------------
    py::class_<EmtRef>(m, "EmtRef")
        .def(py::init<>())
        .def_readwrite("metal", &EmtRef::metal)
        .def_readwrite("dielectric", &EmtRef::dielectric)
        .def_readwrite("fill_fraction", &EmtRef::fill_fraction);
    py::class_<UniaxialRef>(m, "UniaxialRef")
        .def(py::init<>())
        .def_readwrite("perp", &UniaxialRef::perp)
        .def_readwrite("par", &UniaxialRef::par);
    py::class_<MediumConfig>(m, "MediumConfig")
        .def(py::init<>())
        .def_readwrite("material", &MediumConfig::material)
        .def_readwrite("emt", &MediumConfig::emt)
        .def_readwrite("uniaxial", &MediumConfig::uniaxial);
    py::class_<LayerConfig>(m, "LayerConfig")
        .def(py::init<>())
        .def_readwrite("medium", &LayerConfig::medium)
        .def_readwrite("thickness_nm", &LayerConfig::thickness_nm);
    py::class_<StackConfig>(m, "StackConfig")
        .def(py::init<>())
        .def_readwrite("incidence", &StackConfig::incidence)
        .def_readwrite("layers", &StackConfig::layers)
        .def_readwrite("substrate", &StackConfig::substrate);
    py::class_<LambdaRangeNm>(m, "LambdaRangeNm")
        .def(py::init<>())
        .def_readwrite("min_nm", &LambdaRangeNm::min_nm)
        .def_readwrite("max_nm", &LambdaRangeNm::max_nm)
        .def_readwrite("step_nm", &LambdaRangeNm::step_nm);
    py::class_<ThetaRangeDeg>(m, "ThetaRangeDeg")
        .def(py::init<>())
        .def_readwrite("min_deg", &ThetaRangeDeg::min_deg)
        .def_readwrite("max_deg", &ThetaRangeDeg::max_deg)
        .def_readwrite("step_deg", &ThetaRangeDeg::step_deg);
    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("lambda_range", &SweepConfig::lambda)
        .def_readwrite("theta_range", &SweepConfig::theta)
        .def_readwrite("pol", &SweepConfig::pol)
        .def_readwrite("concentrations_molar", &SweepConfig::concentrations_molar);
    py::class_<AnalysisConfig>(m, "AnalysisConfig")
        .def(py::init<>())
        .def_readwrite("prominence", &AnalysisConfig::prominence)
        .def_readwrite("window_min_nm", &AnalysisConfig::window_min_nm)
        .def_readwrite("window_max_nm", &AnalysisConfig::window_max_nm);
    py::class_<ModesConfig>(m, "ModesConfig")
        .def(py::init<>())
        .def_readwrite("omega_0", &ModesConfig::omega_0)
        .def_readwrite("gamma_vac", &ModesConfig::gamma_vac)
        .def_readwrite("fit_from_stack", &ModesConfig::fit_from_stack)
        .def_readwrite("omega_c", &ModesConfig::omega_c)
        .def_readwrite("kappa_c", &ModesConfig::kappa_c)
        .def_readwrite("chi", &ModesConfig::chi);
    py::class_<EstimateConfig>(m, "EstimateConfig")
        .def(py::init<>())
        .def_readwrite("observable", &EstimateConfig::observable)
        .def_readwrite("value", &EstimateConfig::value);
    py::class_<JobConfig>(m, "JobConfig")
        .def(py::init<>())
        .def_readwrite("schema_version", &JobConfig::schema_version)
        .def_readwrite("materials", &JobConfig::materials)
        .def_readwrite("stack", &JobConfig::stack)
        .def_readwrite("sweep", &JobConfig::sweep)
        .def_readwrite("analysis", &JobConfig::analysis)
        .def_readwrite("modes", &JobConfig::modes)
        .def_readwrite("estimate", &JobConfig::estimate)
        .def_readwrite("output_dir", &JobConfig::output_dir);

    m.def("parse_config", &parse_config, "text"_a, "base_dir"_a = ".");
    m.def("serialize_config", &serialize_config, "config"_a);
    m.def("build_stack", &build_stack, "config"_a);
    m.def("lambda_grid", &lambda_grid, "sweep"_a);
    m.def("theta_grid", &theta_grid, "sweep"_a);
    m.def(
        "analysis_window",
        [](const JobConfig& cfg) { return analysis_window(cfg); }, "config"_a);
    m.def(
        "run_job",
        [](const JobConfig& cfg, const std::string& sub, const std::string& out_dir,
           int n_workers, const std::string& config_text) {
            return run_job(cfg, parse_subcommand(sub), out_dir, n_workers, config_text)
                .dump();
        },
        "config"_a, "subcommand"_a, "out_dir"_a, "n_workers"_a = 1, "config_text"_a = "",
        "Run one subcommand; returns the summary as a JSON string");

    // --- presets --------------------------------------------------------
    auto pm = m.def_submodule("presets", "Calibrated material and stack defaults");
    pm.def("silver_drude", &presets::silver_drude);
    pm.def("titania_constant", &presets::titania_constant);
    pm.def("silica_constant", &presets::silica_constant);
    pm.def("r6g", &presets::r6g, "concentration"_a);
    pm.def("hmm_spec", &presets::hmm_spec);
    pm.def("kretschmann_stack", &presets::kretschmann_stack, "concentration"_a);
}

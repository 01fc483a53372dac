#include "hyperpol/config.hpp"

#include <cmath>
#include <filesystem>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hyperpol/io.hpp"

namespace hyperpol {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class Collector {
  public:
    void add(std::string path, std::string message) {
        violations_.push_back({std::move(path), std::move(message)});
    }
    bool empty() const { return violations_.empty(); }
    std::vector<ConfigViolation> take() { return std::move(violations_); }

  private:
    std::vector<ConfigViolation> violations_;
};

std::string join(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

const json* field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed, Collector& err) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const auto a : allowed)
            if (it.key() == a) known = true;
        if (!known) err.add(join(path, it.key()), "unknown field");
    }
}

std::optional<double> number_at(const json& j, const std::string& path, Collector& err) {
    if (!j.is_number()) {
        err.add(path, "expected a number");
        return std::nullopt;
    }
    return j.get<double>();
}

std::optional<double> require_number(const json& obj, const char* key,
                                     const std::string& parent, Collector& err) {
    const json* f = field(obj, key);
    if (!f) {
        err.add(join(parent, key), "missing required field");
        return std::nullopt;
    }
    return number_at(*f, join(parent, key), err);
}

std::optional<std::string> require_string(const json& obj, const char* key,
                                          const std::string& parent, Collector& err) {
    const json* f = field(obj, key);
    if (!f) {
        err.add(join(parent, key), "missing required field");
        return std::nullopt;
    }
    if (!f->is_string()) {
        err.add(join(parent, key), "expected a string");
        return std::nullopt;
    }
    return f->get<std::string>();
}

// --- materials ---------------------------------------------------------

std::optional<MaterialEntry> parse_material(const json& j, const std::string& path,
                                            const std::string& base_dir, Collector& err) {
    if (!j.is_object()) {
        err.add(path, "expected an object");
        return std::nullopt;
    }
    const auto model = require_string(j, "model", path, err);
    if (!model) return std::nullopt;

    if (*model == "constant") {
        reject_unknown(j, path, {"model", "eps"}, err);
        const json* eps = field(j, "eps");
        if (!eps) {
            err.add(join(path, "eps"), "missing required field");
            return std::nullopt;
        }
        if (!eps->is_array() || eps->size() != 2 || !(*eps)[0].is_number() ||
            !(*eps)[1].is_number()) {
            err.add(join(path, "eps"), "expected a 2-element array [re, im]");
            return std::nullopt;
        }
        const double re = (*eps)[0].get<double>();
        const double im = (*eps)[1].get<double>();
        if (im < 0.0) {
            err.add(join(path, "eps"), "Im eps must be >= 0 (passive medium)");
            return std::nullopt;
        }
        return MaterialEntry{DispersionModel{ConstantModel{cplx(re, im)}}};
    }

    if (*model == "drude") {
        reject_unknown(j, path, {"model", "eps_inf", "omega_p", "gamma"}, err);
        const auto eps_inf = require_number(j, "eps_inf", path, err);
        const auto omega_p = require_number(j, "omega_p", path, err);
        const auto gamma = require_number(j, "gamma", path, err);
        if (!eps_inf || !omega_p || !gamma) return std::nullopt;
        if (*omega_p < 0.0) err.add(join(path, "omega_p"), "must be >= 0");
        if (*gamma < 0.0) err.add(join(path, "gamma"), "must be >= 0");
        if (*omega_p < 0.0 || *gamma < 0.0) return std::nullopt;
        return MaterialEntry{DispersionModel{DrudeModel{*eps_inf, *omega_p, *gamma}}};
    }

    if (*model == "lorentz") {
        reject_unknown(j, path, {"model", "eps_b", "omega_p", "omega_0", "gamma"}, err);
        const auto eps_b = require_number(j, "eps_b", path, err);
        const auto omega_p = require_number(j, "omega_p", path, err);
        const auto omega_0 = require_number(j, "omega_0", path, err);
        const auto gamma = require_number(j, "gamma", path, err);
        if (!eps_b || !omega_p || !omega_0 || !gamma) return std::nullopt;
        bool ok = true;
        if (*omega_p < 0.0) err.add(join(path, "omega_p"), "must be >= 0"), ok = false;
        if (!(*omega_0 > 0.0)) err.add(join(path, "omega_0"), "must be > 0"), ok = false;
        if (*gamma < 0.0) err.add(join(path, "gamma"), "must be >= 0"), ok = false;
        if (!ok) return std::nullopt;
        return MaterialEntry{DispersionModel{LorentzModel{*eps_b, *omega_p, *omega_0, *gamma}}};
    }

    if (*model == "tabulated") {
        reject_unknown(j, path, {"model", "rows", "csv"}, err);
        const json* rows = field(j, "rows");
        const json* csv = field(j, "csv");
        if ((rows != nullptr) == (csv != nullptr)) {
            err.add(path, "tabulated model needs exactly one of rows, csv");
            return std::nullopt;
        }
        if (csv) {
            if (!csv->is_string()) {
                err.add(join(path, "csv"), "expected a string");
                return std::nullopt;
            }
            const auto resolved =
                (std::filesystem::path(base_dir) / csv->get<std::string>()).string();
            try {
                return MaterialEntry{DispersionModel{io::load_tabulated_csv(resolved)}};
            } catch (const InvalidInput& e) {
                err.add(join(path, "csv"), e.what());
                return std::nullopt;
            }
            // IoError (unreadable file) propagates as-is.
        }
        if (!rows->is_array() || rows->size() < 2) {
            err.add(join(path, "rows"), "expected an array of at least 2 rows");
            return std::nullopt;
        }
        TabulatedModel model_out;
        for (std::size_t i = 0; i < rows->size(); ++i) {
            const json& row = (*rows)[i];
            const std::string rpath = join(path, "rows[" + std::to_string(i) + "]");
            if (!row.is_array() || row.size() != 3 || !row[0].is_number() ||
                !row[1].is_number() || !row[2].is_number()) {
                err.add(rpath, "expected [wavelength_nm, eps_re, eps_im]");
                return std::nullopt;
            }
            const double nm = row[0].get<double>();
            const double im = row[2].get<double>();
            if (!(nm > 0.0)) {
                err.add(rpath, "wavelength must be > 0");
                return std::nullopt;
            }
            if (im < 0.0) {
                err.add(rpath, "Im eps must be >= 0 (passive medium)");
                return std::nullopt;
            }
            const double m = nm / 1e9;
            if (!model_out.lambda.empty() && !(m > model_out.lambda.back())) {
                err.add(rpath, "wavelengths must be strictly increasing");
                return std::nullopt;
            }
            model_out.lambda.push_back(m);
            model_out.eps.emplace_back(row[1].get<double>(), im);
        }
        return MaterialEntry{DispersionModel{std::move(model_out)}};
    }

    if (*model == "dye") {
        reject_unknown(j, path, {"model", "omega_0", "gamma", "h", "concentration", "host_eps"},
                       err);
        const auto omega_0 = require_number(j, "omega_0", path, err);
        const auto gamma = require_number(j, "gamma", path, err);
        const auto h = require_number(j, "h", path, err);
        const auto conc = require_number(j, "concentration", path, err);
        const auto host = require_number(j, "host_eps", path, err);
        if (!omega_0 || !gamma || !h || !conc || !host) return std::nullopt;
        bool ok = true;
        if (!(*omega_0 > 0.0)) err.add(join(path, "omega_0"), "must be > 0"), ok = false;
        if (!(*gamma > 0.0)) err.add(join(path, "gamma"), "must be > 0"), ok = false;
        if (!(*h > 0.0 && *h <= 1.0)) err.add(join(path, "h"), "must be in (0, 1]"), ok = false;
        if (*conc < 0.0) err.add(join(path, "concentration"), "must be >= 0"), ok = false;
        if (!(*host > 0.0)) err.add(join(path, "host_eps"), "must be > 0"), ok = false;
        if (!ok) return std::nullopt;
        return MaterialEntry{DyeModel{*omega_0, *gamma, *h, *conc, *host}};
    }

    err.add(join(path, "model"),
            "unknown model '" + *model + "' (expected constant, drude, lorentz, tabulated, dye)");
    return std::nullopt;
}

// --- stack -------------------------------------------------------------

// Parses the material/emt/uniaxial trio shared by layers and the substrate.
MediumConfig parse_medium_forms(const json& j, const std::string& path, Collector& err) {
    MediumConfig mc;
    int forms = 0;
    if (const json* f = field(j, "material")) {
        ++forms;
        if (f->is_string())
            mc.material = f->get<std::string>();
        else
            err.add(join(path, "material"), "expected a string");
    }
    if (const json* f = field(j, "emt")) {
        ++forms;
        const std::string epath = join(path, "emt");
        if (!f->is_object()) {
            err.add(epath, "expected an object");
        } else {
            reject_unknown(*f, epath, {"metal", "dielectric", "fill_fraction"}, err);
            EmtRef ref;
            const auto metal = require_string(*f, "metal", epath, err);
            const auto diel = require_string(*f, "dielectric", epath, err);
            const auto fill = require_number(*f, "fill_fraction", epath, err);
            if (metal && diel && fill) {
                if (!(*fill >= 0.0 && *fill <= 1.0)) {
                    err.add(join(epath, "fill_fraction"), "must be in [0, 1]");
                } else {
                    ref.metal = *metal;
                    ref.dielectric = *diel;
                    ref.fill_fraction = *fill;
                    mc.emt = ref;
                }
            }
        }
    }
    if (const json* f = field(j, "uniaxial")) {
        ++forms;
        const std::string upath = join(path, "uniaxial");
        if (!f->is_object()) {
            err.add(upath, "expected an object");
        } else {
            reject_unknown(*f, upath, {"perp", "par"}, err);
            const auto perp = require_string(*f, "perp", upath, err);
            const auto par = require_string(*f, "par", upath, err);
            if (perp && par) mc.uniaxial = UniaxialRef{*perp, *par};
        }
    }
    if (forms != 1)
        err.add(path, "exactly one of material, emt, uniaxial is required");
    return mc;
}

StackConfig parse_stack(const json& j, const std::string& path, Collector& err) {
    StackConfig sc;
    if (!j.is_object()) {
        err.add(path, "expected an object");
        return sc;
    }
    reject_unknown(j, path, {"incidence", "layers", "substrate"}, err);
    if (const auto inc = require_string(j, "incidence", path, err)) sc.incidence = *inc;

    const json* layers = field(j, "layers");
    if (!layers) {
        err.add(join(path, "layers"), "missing required field");
    } else if (!layers->is_array()) {
        err.add(join(path, "layers"), "expected an array");
    } else {
        for (std::size_t i = 0; i < layers->size(); ++i) {
            const json& lj = (*layers)[i];
            const std::string lpath = path + ".layers[" + std::to_string(i) + "]";
            LayerConfig lc;
            if (!lj.is_object()) {
                err.add(lpath, "expected an object");
                continue;
            }
            reject_unknown(lj, lpath, {"material", "emt", "uniaxial", "thickness_nm"}, err);
            lc.medium = parse_medium_forms(lj, lpath, err);
            if (const auto t = require_number(lj, "thickness_nm", lpath, err)) {
                if (!(*t > 0.0))
                    err.add(join(lpath, "thickness_nm"), "must be > 0");
                else
                    lc.thickness_nm = *t;
            }
            sc.layers.push_back(std::move(lc));
        }
    }

    const json* sub = field(j, "substrate");
    if (!sub) {
        err.add(join(path, "substrate"), "missing required field");
    } else if (sub->is_string()) {
        sc.substrate.material = sub->get<std::string>();
    } else if (sub->is_object()) {
        reject_unknown(*sub, join(path, "substrate"), {"material", "emt", "uniaxial"}, err);
        sc.substrate = parse_medium_forms(*sub, join(path, "substrate"), err);
    } else {
        err.add(join(path, "substrate"), "expected a material name or an object");
    }
    return sc;
}

// --- sweep / analysis / modes / estimate -------------------------------

bool parse_range3(const json& j, const std::string& path, Collector& err, double& mn,
                  double& mx, double& st) {
    if (!j.is_object()) {
        err.add(path, "expected an object {min, max, step}");
        return false;
    }
    reject_unknown(j, path, {"min", "max", "step"}, err);
    const auto jmin = require_number(j, "min", path, err);
    const auto jmax = require_number(j, "max", path, err);
    const auto jstep = require_number(j, "step", path, err);
    if (!jmin || !jmax || !jstep) return false;
    bool ok = true;
    if (!(*jstep > 0.0)) err.add(join(path, "step"), "must be > 0"), ok = false;
    if (!(*jmax >= *jmin)) err.add(join(path, "max"), "must be >= min"), ok = false;
    mn = *jmin;
    mx = *jmax;
    st = *jstep;
    return ok;
}

SweepConfig parse_sweep(const json& j, const std::string& path, Collector& err) {
    SweepConfig sw;
    if (!j.is_object()) {
        err.add(path, "expected an object");
        return sw;
    }
    reject_unknown(j, path, {"lambda_nm", "theta_deg", "polarization", "concentrations_molar"},
                   err);
    if (const json* f = field(j, "lambda_nm")) {
        if (parse_range3(*f, join(path, "lambda_nm"), err, sw.lambda.min_nm,
                         sw.lambda.max_nm, sw.lambda.step_nm) &&
            !(sw.lambda.min_nm > 0.0))
            err.add(join(path, "lambda_nm.min"), "must be > 0");
    } else {
        err.add(join(path, "lambda_nm"), "missing required field");
    }
    if (const json* f = field(j, "theta_deg")) {
        if (parse_range3(*f, join(path, "theta_deg"), err, sw.theta.min_deg,
                         sw.theta.max_deg, sw.theta.step_deg)) {
            if (sw.theta.min_deg < 0.0) err.add(join(path, "theta_deg.min"), "must be >= 0");
            if (sw.theta.max_deg >= 90.0) err.add(join(path, "theta_deg.max"), "must be < 90");
        }
    } else {
        err.add(join(path, "theta_deg"), "missing required field");
    }
    if (const json* f = field(j, "polarization")) {
        if (f->is_string() && f->get<std::string>() == "p")
            sw.pol = Polarization::p;
        else if (f->is_string() && f->get<std::string>() == "s")
            sw.pol = Polarization::s;
        else
            err.add(join(path, "polarization"), "expected \"p\" or \"s\"");
    }
    if (const json* f = field(j, "concentrations_molar")) {
        if (!f->is_array()) {
            err.add(join(path, "concentrations_molar"), "expected an array of numbers");
        } else {
            for (std::size_t i = 0; i < f->size(); ++i) {
                const std::string cpath =
                    path + ".concentrations_molar[" + std::to_string(i) + "]";
                const auto c = number_at((*f)[i], cpath, err);
                if (!c) continue;
                if (*c < 0.0) {
                    err.add(cpath, "must be >= 0");
                    continue;
                }
                if (!sw.concentrations_molar.empty() && !(*c > sw.concentrations_molar.back()))
                    err.add(cpath, "concentrations must be strictly increasing");
                sw.concentrations_molar.push_back(*c);
            }
        }
    }
    return sw;
}

AnalysisConfig parse_analysis(const json& j, const std::string& path, Collector& err) {
    AnalysisConfig ac;
    if (!j.is_object()) {
        err.add(path, "expected an object");
        return ac;
    }
    reject_unknown(j, path, {"prominence", "window_nm"}, err);
    if (const json* f = field(j, "prominence")) {
        if (const auto p = number_at(*f, join(path, "prominence"), err)) {
            if (!(*p > 0.0))
                err.add(join(path, "prominence"), "must be > 0");
            else
                ac.prominence = *p;
        }
    }
    if (const json* f = field(j, "window_nm")) {
        if (!f->is_array() || f->size() != 2 || !(*f)[0].is_number() || !(*f)[1].is_number()) {
            err.add(join(path, "window_nm"), "expected a 2-element array [min, max]");
        } else {
            const double lo = (*f)[0].get<double>();
            const double hi = (*f)[1].get<double>();
            if (!(lo > 0.0 && lo < hi)) {
                err.add(join(path, "window_nm"), "need 0 < min < max");
            } else {
                ac.window_min_nm = lo;
                ac.window_max_nm = hi;
            }
        }
    }
    return ac;
}

ModesConfig parse_modes(const json& j, const std::string& path, bool substrate_is_dye,
                        Collector& err) {
    ModesConfig mc;
    if (!j.is_object()) {
        err.add(path, "expected an object");
        return mc;
    }
    reject_unknown(j, path, {"omega_0", "gamma_vac", "fit_from_stack", "omega_c", "kappa_c", "chi"},
                   err);
    if (const json* f = field(j, "omega_0")) {
        if (const auto v = number_at(*f, join(path, "omega_0"), err)) {
            if (!(*v > 0.0))
                err.add(join(path, "omega_0"), "must be > 0");
            else
                mc.omega_0 = *v;
        }
    }
    if (const json* f = field(j, "gamma_vac")) {
        if (const auto v = number_at(*f, join(path, "gamma_vac"), err)) {
            if (*v < 0.0)
                err.add(join(path, "gamma_vac"), "must be >= 0");
            else
                mc.gamma_vac = *v;
        }
    }
    if (const json* f = field(j, "fit_from_stack")) {
        if (!f->is_boolean())
            err.add(join(path, "fit_from_stack"), "expected a boolean");
        else
            mc.fit_from_stack = f->get<bool>();
    }
    const char* pole_keys[] = {"omega_c", "kappa_c", "chi"};
    std::optional<double>* pole_vals[] = {&mc.omega_c, &mc.kappa_c, &mc.chi};
    for (int i = 0; i < 3; ++i) {
        const json* f = field(j, pole_keys[i]);
        if (mc.fit_from_stack) {
            if (f) err.add(join(path, pole_keys[i]), "mutually exclusive with fit_from_stack");
            continue;
        }
        if (!f) {
            err.add(join(path, pole_keys[i]),
                    "missing required field (or set fit_from_stack)");
            continue;
        }
        if (const auto v = number_at(*f, join(path, pole_keys[i]), err)) {
            const bool ok = i == 2 ? *v >= 0.0 : *v > 0.0;
            if (!ok)
                err.add(join(path, pole_keys[i]), i == 2 ? "must be >= 0" : "must be > 0");
            else
                *pole_vals[i] = *v;
        }
    }
    if (!j.contains("omega_0") && !substrate_is_dye)
        err.add(join(path, "omega_0"),
                "required unless the stack substrate is a dye material");
    return mc;
}

EstimateConfig parse_estimate(const json& j, const std::string& path, Collector& err) {
    EstimateConfig ec;
    if (!j.is_object()) {
        err.add(path, "expected an object");
        return ec;
    }
    reject_unknown(j, path, {"observable", "value"}, err);
    if (const auto obs = require_string(j, "observable", path, err)) {
        if (*obs == "R_min")
            ec.observable = Observable::r_min;
        else if (*obs == "lambda1")
            ec.observable = Observable::lambda_1;
        else if (*obs == "splitting_meV")
            ec.observable = Observable::splitting;
        else
            err.add(join(path, "observable"),
                    "expected \"R_min\", \"lambda1\", or \"splitting_meV\"");
    }
    if (const auto v = require_number(j, "value", path, err)) ec.value = *v;
    return ec;
}

// Reference checks once both the material table and the stack are known.
void check_references(const JobConfig& cfg, const std::set<std::string>& declared,
                      Collector& err) {
    const auto is_dye = [&](const std::string& name) {
        const auto it = cfg.materials.find(name);
        return it != cfg.materials.end() && std::holds_alternative<DyeModel>(it->second);
    };
    const auto check = [&](const std::string& name, const std::string& path, bool allow_dye) {
        if (!declared.count(name)) {
            err.add(path, "unknown material '" + name + "'");
            return;
        }
        if (!allow_dye && is_dye(name))
            err.add(path, "material '" + name + "' must not be a dye model here");
    };
    const auto check_medium = [&](const MediumConfig& mc, const std::string& path) {
        if (mc.material) check(*mc.material, join(path, "material"), true);
        if (mc.emt) {
            check(mc.emt->metal, join(path, "emt.metal"), false);
            check(mc.emt->dielectric, join(path, "emt.dielectric"), false);
        }
        if (mc.uniaxial) {
            check(mc.uniaxial->perp, join(path, "uniaxial.perp"), false);
            check(mc.uniaxial->par, join(path, "uniaxial.par"), false);
        }
    };
    if (!cfg.stack.incidence.empty())
        check(cfg.stack.incidence, "stack.incidence", false);
    for (std::size_t i = 0; i < cfg.stack.layers.size(); ++i)
        check_medium(cfg.stack.layers[i].medium, "stack.layers[" + std::to_string(i) + "]");
    check_medium(cfg.stack.substrate, "stack.substrate");
}

}  // namespace

JobConfig parse_config(const std::string& text, const std::string& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({{"$", std::string("not valid JSON: ") + e.what()}});
    }
    Collector err;
    if (!root.is_object()) {
        err.add("$", "top level must be an object");
        throw ConfigError(err.take());
    }
    reject_unknown(root, "",
                   {"schema_version", "materials", "stack", "sweep", "analysis", "modes",
                    "estimate", "output"},
                   err);

    JobConfig cfg;
    if (const json* f = field(root, "schema_version")) {
        if (!f->is_number_integer())
            err.add("schema_version", "expected an integer");
        else if (f->get<int>() != 1)
            err.add("schema_version",
                    "unsupported schema_version " + std::to_string(f->get<int>()) +
                        " (expected 1)");
        else
            cfg.schema_version = 1;
    } else {
        err.add("schema_version", "missing required field");
    }

    std::set<std::string> declared;
    if (const json* f = field(root, "materials")) {
        if (!f->is_object()) {
            err.add("materials", "expected an object");
        } else {
            if (f->empty()) err.add("materials", "must declare at least one material");
            for (auto it = f->begin(); it != f->end(); ++it) {
                declared.insert(it.key());
                if (auto m = parse_material(*it, join("materials", it.key()), base_dir, err))
                    cfg.materials.emplace(it.key(), std::move(*m));
            }
        }
    } else {
        err.add("materials", "missing required field");
    }

    if (const json* f = field(root, "stack"))
        cfg.stack = parse_stack(*f, "stack", err);
    else
        err.add("stack", "missing required field");

    if (const json* f = field(root, "sweep"))
        cfg.sweep = parse_sweep(*f, "sweep", err);
    else
        err.add("sweep", "missing required field");

    if (const json* f = field(root, "analysis")) cfg.analysis = parse_analysis(*f, "analysis", err);

    const bool substrate_is_dye = [&] {
        if (!cfg.stack.substrate.material) return false;
        const auto it = cfg.materials.find(*cfg.stack.substrate.material);
        return it != cfg.materials.end() && std::holds_alternative<DyeModel>(it->second);
    }();
    if (const json* f = field(root, "modes"))
        cfg.modes = parse_modes(*f, "modes", substrate_is_dye, err);
    if (const json* f = field(root, "estimate"))
        cfg.estimate = parse_estimate(*f, "estimate", err);

    if (const json* f = field(root, "output")) {
        if (!f->is_object()) {
            err.add("output", "expected an object");
        } else {
            reject_unknown(*f, "output", {"dir"}, err);
            if (const auto dir = require_string(*f, "dir", "output", err)) {
                if (dir->empty())
                    err.add("output.dir", "must not be empty");
                else
                    cfg.output_dir = *dir;
            }
        }
    }

    check_references(cfg, declared, err);

    // Window must sit inside a representable range when both are given.
    if (cfg.analysis.window_min_nm && cfg.sweep.lambda.step_nm > 0.0) {
        if (*cfg.analysis.window_max_nm < cfg.sweep.lambda.min_nm ||
            *cfg.analysis.window_min_nm > cfg.sweep.lambda.max_nm)
            err.add("analysis.window_nm", "window does not overlap the sweep lambda range");
    }

    if (!err.empty()) throw ConfigError(err.take());
    return cfg;
}

// --- serialization -----------------------------------------------------

namespace {

ordered_json material_to_json(const MaterialEntry& entry) {
    ordered_json j;
    if (const auto* dye = std::get_if<DyeModel>(&entry)) {
        j["model"] = "dye";
        j["omega_0"] = dye->omega_0;
        j["gamma"] = dye->gamma;
        j["h"] = dye->h;
        j["concentration"] = dye->concentration;
        j["host_eps"] = dye->host_eps;
        return j;
    }
    const auto& disp = std::get<DispersionModel>(entry);
    if (const auto* c = std::get_if<ConstantModel>(&disp)) {
        j["model"] = "constant";
        j["eps"] = {c->eps.real(), c->eps.imag()};
    } else if (const auto* d = std::get_if<DrudeModel>(&disp)) {
        j["model"] = "drude";
        j["eps_inf"] = d->eps_inf;
        j["omega_p"] = d->omega_p;
        j["gamma"] = d->gamma;
    } else if (const auto* l = std::get_if<LorentzModel>(&disp)) {
        j["model"] = "lorentz";
        j["eps_b"] = l->eps_b;
        j["omega_p"] = l->omega_p;
        j["omega_0"] = l->omega_0;
        j["gamma"] = l->gamma;
    } else {
        const auto& t = std::get<TabulatedModel>(disp);
        j["model"] = "tabulated";
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < t.lambda.size(); ++i)
            rows.push_back({t.lambda[i] * 1e9, t.eps[i].real(), t.eps[i].imag()});
        j["rows"] = std::move(rows);
    }
    return j;
}

void medium_to_json(ordered_json& j, const MediumConfig& mc) {
    if (mc.material) {
        j["material"] = *mc.material;
    } else if (mc.emt) {
        j["emt"] = {{"metal", mc.emt->metal},
                    {"dielectric", mc.emt->dielectric},
                    {"fill_fraction", mc.emt->fill_fraction}};
    } else if (mc.uniaxial) {
        j["uniaxial"] = {{"perp", mc.uniaxial->perp}, {"par", mc.uniaxial->par}};
    }
}

ordered_json range3_to_json(double mn, double mx, double st) {
    return {{"min", mn}, {"max", mx}, {"step", st}};
}

}  // namespace

std::string serialize_config(const JobConfig& cfg) {
    ordered_json j;
    j["schema_version"] = cfg.schema_version;
    ordered_json mats = ordered_json::object();
    for (const auto& [name, entry] : cfg.materials) mats[name] = material_to_json(entry);
    j["materials"] = std::move(mats);

    ordered_json stack;
    stack["incidence"] = cfg.stack.incidence;
    ordered_json layers = ordered_json::array();
    for (const auto& lc : cfg.stack.layers) {
        ordered_json lj;
        medium_to_json(lj, lc.medium);
        lj["thickness_nm"] = lc.thickness_nm;
        layers.push_back(std::move(lj));
    }
    stack["layers"] = std::move(layers);
    if (cfg.stack.substrate.material) {
        stack["substrate"] = *cfg.stack.substrate.material;
    } else {
        ordered_json sj;
        medium_to_json(sj, cfg.stack.substrate);
        stack["substrate"] = std::move(sj);
    }
    j["stack"] = std::move(stack);

    ordered_json sweep;
    sweep["lambda_nm"] =
        range3_to_json(cfg.sweep.lambda.min_nm, cfg.sweep.lambda.max_nm, cfg.sweep.lambda.step_nm);
    sweep["theta_deg"] =
        range3_to_json(cfg.sweep.theta.min_deg, cfg.sweep.theta.max_deg, cfg.sweep.theta.step_deg);
    sweep["polarization"] = cfg.sweep.pol == Polarization::p ? "p" : "s";
    sweep["concentrations_molar"] = cfg.sweep.concentrations_molar;
    j["sweep"] = std::move(sweep);

    ordered_json analysis;
    analysis["prominence"] = cfg.analysis.prominence;
    if (cfg.analysis.window_min_nm && cfg.analysis.window_max_nm)
        analysis["window_nm"] = {*cfg.analysis.window_min_nm, *cfg.analysis.window_max_nm};
    j["analysis"] = std::move(analysis);

    if (cfg.modes) {
        ordered_json modes;
        if (cfg.modes->omega_0) modes["omega_0"] = *cfg.modes->omega_0;
        if (cfg.modes->gamma_vac) modes["gamma_vac"] = *cfg.modes->gamma_vac;
        if (cfg.modes->fit_from_stack) {
            modes["fit_from_stack"] = true;
        } else {
            if (cfg.modes->omega_c) modes["omega_c"] = *cfg.modes->omega_c;
            if (cfg.modes->kappa_c) modes["kappa_c"] = *cfg.modes->kappa_c;
            if (cfg.modes->chi) modes["chi"] = *cfg.modes->chi;
        }
        j["modes"] = std::move(modes);
    }
    if (cfg.estimate) {
        const char* obs = cfg.estimate->observable == Observable::r_min ? "R_min"
                          : cfg.estimate->observable == Observable::lambda_1 ? "lambda1"
                                                                             : "splitting_meV";
        j["estimate"] = {{"observable", obs}, {"value", cfg.estimate->value}};
    }
    j["output"] = {{"dir", cfg.output_dir}};
    return j.dump(2) + "\n";
}

// --- resolution --------------------------------------------------------

namespace {

const MaterialEntry& lookup(const JobConfig& cfg, const std::string& name) {
    const auto it = cfg.materials.find(name);
    if (it == cfg.materials.end()) throw InvalidInput("unknown material '" + name + "'");
    return it->second;
}

DispersionModel dispersion_of(const JobConfig& cfg, const std::string& name) {
    const MaterialEntry& entry = lookup(cfg, name);
    if (const auto* d = std::get_if<DispersionModel>(&entry)) return *d;
    throw InvalidInput("material '" + name + "' is a dye model where an isotropic model is required");
}

Medium build_medium(const JobConfig& cfg, const MediumConfig& mc) {
    if (mc.material) {
        const MaterialEntry& entry = lookup(cfg, *mc.material);
        if (const auto* d = std::get_if<DispersionModel>(&entry)) return *d;
        return std::get<DyeModel>(entry);
    }
    if (mc.emt)
        return HomogenizationSpec{dispersion_of(cfg, mc.emt->metal),
                                  dispersion_of(cfg, mc.emt->dielectric),
                                  mc.emt->fill_fraction};
    if (mc.uniaxial)
        return UniaxialMedium{dispersion_of(cfg, mc.uniaxial->perp),
                              dispersion_of(cfg, mc.uniaxial->par)};
    throw InvalidInput("medium config carries none of material, emt, uniaxial");
}

std::size_t grid_count(double mn, double mx, double step, const char* what) {
    if (!(step > 0.0) || !(mx >= mn))
        throw InvalidInput(std::string(what) + " grid: need max >= min and step > 0");
    return static_cast<std::size_t>(std::floor((mx - mn) / step + 1e-9)) + 1;
}

}  // namespace

Stack build_stack(const JobConfig& cfg) {
    Stack stack;
    stack.incidence = dispersion_of(cfg, cfg.stack.incidence);
    for (const LayerConfig& lc : cfg.stack.layers)
        stack.layers.push_back({build_medium(cfg, lc.medium), lc.thickness_nm / 1e9});
    stack.substrate = build_medium(cfg, cfg.stack.substrate);
    return stack;
}

std::vector<double> lambda_grid(const SweepConfig& sweep) {
    const auto& r = sweep.lambda;
    const std::size_t n = grid_count(r.min_nm, r.max_nm, r.step_nm, "lambda");
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = (r.min_nm + static_cast<double>(i) * r.step_nm) / 1e9;
    return grid;
}

std::vector<double> theta_grid(const SweepConfig& sweep) {
    const auto& r = sweep.theta;
    const std::size_t n = grid_count(r.min_deg, r.max_deg, r.step_deg, "theta");
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = (r.min_deg + static_cast<double>(i) * r.step_deg) * pi / 180.0;
    return grid;
}

std::pair<double, double> analysis_window(const JobConfig& cfg) {
    const double lo = cfg.analysis.window_min_nm.value_or(cfg.sweep.lambda.min_nm);
    const double hi = cfg.analysis.window_max_nm.value_or(cfg.sweep.lambda.max_nm);
    return {lo / 1e9, hi / 1e9};
}

}  // namespace hyperpol

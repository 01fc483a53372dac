#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "hyperpol/errors.hpp"
#include "hyperpol/io.hpp"
#include "hyperpol/jobs.hpp"
#include "hyperpol/version.hpp"

namespace {

// --threads N beats HYPERPOL_THREADS beats hardware_concurrency.
int resolve_threads(int cli_threads) {
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("HYPERPOL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct SubcommandDesc {
    const char* name;
    const char* help;
};

constexpr SubcommandDesc subcommands[] = {
    {"permittivity", "Tabulate eps(lambda) for every configured material"},
    {"emt", "Effective-medium tensor and band type of the homogenized layer"},
    {"band-edges", "Locate the ENZ and ENP wavelengths of the homogenized layer"},
    {"reflectivity", "R and T versus wavelength at the first sweep angle"},
    {"map", "Reflectivity over the wavelength x angle grid"},
    {"dips", "Find reflectivity dips in the analysis window"},
    {"sweep", "Sensing curve: dip observables versus dye concentration"},
    {"modes", "Coupled polariton eigenfrequencies and coupling regime"},
    {"fit-resonance", "Fit the bare-stack resonance pole from complex reflection"},
    {"estimate", "Invert a measured observable to a concentration"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polariton sensing toolkit for dye ensembles on hyperbolic metamaterials"};
    app.set_version_flag("--version", hyperpol::version);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 0;
    for (const SubcommandDesc& d : subcommands) {
        CLI::App* sub = app.add_subcommand(d.name, d.help);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir,
                        "output directory (default: the config's output.dir)");
        sub->add_option("--threads", threads,
                        "worker threads; 0 = HYPERPOL_THREADS, then hardware")
            ->check(CLI::NonNegativeNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* parsed = app.get_subcommands().front();
    try {
        const auto cmd = hyperpol::parse_subcommand(parsed->get_name());
        const std::string text = hyperpol::io::read_text_file(config_path);
        const std::string base_dir =
            std::filesystem::path(config_path).parent_path().string();
        const hyperpol::JobConfig cfg =
            hyperpol::parse_config(text, base_dir.empty() ? "." : base_dir);
        const std::string dir =
            parsed->count("--out") > 0 ? out_dir : cfg.output_dir;
        const auto summary =
            hyperpol::run_job(cfg, cmd, dir, resolve_threads(threads), text);
        std::cout << summary.dump(2) << "\n";
        return 0;
    } catch (const hyperpol::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hyperpol::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hyperpol::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hyperpol::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

// bohmsim — command-line front end for the wave-packet trajectory drivers.
//
// Usage: bohmsim <subcommand> --config <file> [--out <dir>] [--seed <u64>]
//                [--threads <n>] [--<key> <value> ...]
//
// Exit codes: 0 success, 2 usage/config error, 1 runtime failure.  No output
// files are left behind on failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bohm/config.hpp"
#include "bohm/csvio.hpp"
#include "bohm/experiments.hpp"
#include "bohm/selftest.hpp"

namespace {

namespace fs = std::filesystem;
using namespace bohm;

constexpr const char* kUsage = R"(usage: bohmsim <subcommand> [options]

subcommands:
  brownian         thermal ensemble of free damped wave packets (diffusion curves)
  diffraction      arrival density behind a suddenly opened shutter
  tunneling        transmission through a driven parabolic repeller
  early-arrivals   arrival statistics with a time-windowed parabolic barrier
  selftest         run the built-in analytic oracle suite

options for experiment subcommands:
  --config <file>   flat "key = value" config file ('#' starts a comment)
  --out <dir>       output root directory (default: current directory)
  --seed <u64>      master seed (same as --<key> override of 'seed')
  --threads <n>     worker threads: a count or 'auto'
  --<key> <value>   override any config key of the experiment

On success the run directory (containing result.csv, scalars.csv,
manifest.txt) is printed to stdout.  manifest.txt is itself a valid config
file; feeding it back with --config reproduces the run byte for byte.
)";

int run_selftest_command() {
    const std::vector<CheckResult> results = run_selftest();
    std::size_t passed = 0;
    for (const CheckResult& r : results) {
        std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        if (r.pass) ++passed;
    }
    std::printf("selftest: %zu/%zu checks passed\n", passed, results.size());
    return passed == results.size() ? 0 : 1;
}

// Resolve "auto"/count thread setting to the EnsembleOptions convention (0 = auto).
unsigned threads_setting(const RunConfig& config) {
    if (config.is_auto("threads")) return 0;
    return static_cast<unsigned>(config.uinteger("threads"));
}

EnsembleOptions ensemble_options(const RunConfig& config) {
    EnsembleOptions opts;
    opts.n_tra = static_cast<std::size_t>(config.uinteger("n_tra"));
    opts.master_seed = config.uinteger("seed");
    opts.threads = threads_setting(config);
    opts.output_stride = static_cast<std::size_t>(config.uinteger("output_stride"));
    return opts;
}

SystemParams system_params(const RunConfig& config) {
    SystemParams params;
    params.mass = config.real("mass");
    params.hbar = config.real("hbar");
    params.epsilon = config.real("epsilon");
    return params;
}

// Reject stochastic-run parameter combinations the integrators would refuse,
// so they surface as config errors rather than runtime failures.
void check_thermal_combination(const Bath& bath, const Friction& friction) {
    if (bath.kind == NoiseKind::none || bath.kT <= 0.0) return;
    if (friction.gamma_r <= 0.0)
        throw ConfigError("thermal noise (kT > 0) requires gamma_r > 0");
}

std::function<ExperimentResult()> prepare_run(const RunConfig& config) {
    const ExperimentKind kind = config.experiment();
    if (kind == ExperimentKind::brownian) {
        const SystemParams params = system_params(config);
        const Friction friction{config.real("gamma_r"), config.real("gamma_i")};
        const Bath bath{config.real("kT"), noise_from_keyword(config.keyword("noise"))};
        const WidthVariant variant = width_variant_from_keyword(config.keyword("width_variant"));
        const GaussianState state0{config.real("q0"), config.real("q_dot0"),
                                   config.real("sigma0"), config.real("sigma_dot0")};
        const TimeGrid grid(0.0, config.real("t_end"), config.real("dt"));
        const EnsembleOptions opts = ensemble_options(config);
        validate_params(params, friction, bath);
        validate_state(state0);
        check_thermal_combination(bath, friction);
        return [=] { return run_brownian(params, friction, bath, variant, state0, grid, opts); };
    }
    if (kind == ExperimentKind::diffraction) {
        const SystemParams params = system_params(config);
        const Friction friction{config.real("gamma_r"), 0.0};
        const double p = config.real("p");
        const double x_obs = config.real("x_obs");
        const TimeGrid grid(0.0, config.real("t_end"), config.real("dt"));
        const std::size_t stride = static_cast<std::size_t>(config.uinteger("output_stride"));
        validate_params(params, friction, Bath{});
        return [=] { return run_diffraction(params, friction, p, x_obs, grid, stride); };
    }
    if (kind == ExperimentKind::tunneling) {
        TunnelingSetup setup;
        setup.params = system_params(config);
        setup.friction = Friction{config.real("gamma_r"), 0.0};
        setup.variant = width_variant_from_keyword(config.keyword("width_variant"));
        const double mass = setup.params.mass;
        setup.state0 = GaussianState{config.real("x0"), config.real("p0") / mass,
                                     config.real("sigma0"), config.real("sigma_dot0")};
        setup.field = QuadraticPotential::driven_repeller(
            mass, config.real("charge"), config.real("E0"), config.real("omega0"),
            config.real("phi"), config.real("omega"));
        const TimeGrid grid(0.0, config.real("t_end"), config.real("dt"));
        TunnelingScan scan;
        const std::string scan_word = config.keyword("scan");
        if (scan_word == "none") scan.kind = ScanKind::none;
        else if (scan_word == "omega0") scan.kind = ScanKind::omega0;
        else if (scan_word == "E0") scan.kind = ScanKind::field_amplitude;
        else if (scan_word == "epsilon") scan.kind = ScanKind::epsilon;
        else scan.kind = ScanKind::gamma_r;
        if (scan.kind != ScanKind::none) {
            scan.lo = config.real("scan_min");
            scan.hi = config.is_auto("scan_max") ? 3.0 * config.real("omega")
                                                 : config.real("scan_max");
            scan.n = static_cast<std::size_t>(config.uinteger("scan_points"));
        }
        const std::size_t stride = static_cast<std::size_t>(config.uinteger("output_stride"));
        validate_params(setup.params, setup.friction, Bath{});
        validate_state(setup.state0);
        return [=] { return run_tunneling(setup, grid, scan, stride); };
    }
    // early arrivals
    EarlyArrivalSetup setup;
    setup.params = system_params(config);
    setup.friction = Friction{config.real("gamma_r"), config.real("gamma_i")};
    setup.bath = Bath{config.real("kT"), noise_from_keyword(config.keyword("noise"))};
    setup.state0 = GaussianState{config.real("q0"), config.real("q_dot0"), config.real("sigma0"),
                                 config.real("sigma_dot0")};
    setup.barrier_omega = config.real("omega");
    setup.window_g = config.real("g");
    setup.switch_time = config.is_auto("t_B")
                            ? early_arrival_switch_time(setup.friction.gamma_r, setup.state0.q,
                                                        setup.state0.q_dot)
                            : config.real("t_B");
    setup.x_d = config.real("x_d");
    const TimeGrid grid(0.0, config.real("t_end"), config.real("dt"));
    const EnsembleOptions opts = ensemble_options(config);
    validate_params(setup.params, setup.friction, setup.bath);
    validate_state(setup.state0);
    check_thermal_combination(setup.bath, setup.friction);
    return [=] { return run_early_arrivals(setup, grid, opts); };
}

int run_experiment_command(ExperimentKind kind, const std::vector<std::string>& args) {
    std::string config_path;
    std::string out_dir = ".";
    std::vector<RawEntry> flag_entries;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& arg = args[i];
        if (arg == "--help" || arg == "-h") {
            std::fputs(kUsage, stdout);
            return 0;
        }
        if (arg.rfind("--", 0) != 0 || arg.size() <= 2) {
            std::fprintf(stderr, "unexpected argument '%s'\n%s", arg.c_str(), kUsage);
            return 2;
        }
        if (i + 1 >= args.size()) {
            std::fprintf(stderr, "flag %s needs a value\n", arg.c_str());
            return 2;
        }
        const std::string value = args[++i];
        const std::string name = arg.substr(2);
        if (name == "config") {
            config_path = value;
        } else if (name == "out") {
            out_dir = value;
        } else {
            flag_entries.push_back(RawEntry{name, value, "flag " + arg});
        }
    }

    std::vector<RawEntry> file_entries;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::fprintf(stderr, "cannot read config file '%s'\n", config_path.c_str());
            return 2;
        }
        std::ostringstream text;
        text << in.rdbuf();
        file_entries = parse_key_value_text(text.str(), config_path);
    }

    const RunConfig config = resolve_config(kind, file_entries, flag_entries);
    std::function<ExperimentResult()> run;
    try {
        run = prepare_run(config);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const ExperimentResult result = run();                              // compute first
    const fs::path dir = write_run_outputs(out_dir, config, result);   // then stage + rename
    std::printf("%s\n", dir.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fputs(kUsage, stderr);
        return 2;
    }
    const std::string subcommand = argv[1];
    if (subcommand == "--help" || subcommand == "-h" || subcommand == "help") {
        std::fputs(kUsage, stdout);
        return 0;
    }
    std::vector<std::string> args(argv + 2, argv + argc);
    try {
        if (subcommand == "selftest") {
            if (!args.empty()) {
                std::fprintf(stderr, "selftest takes no options\n");
                return 2;
            }
            return run_selftest_command();
        }
        ExperimentKind kind;
        try {
            kind = experiment_from_name(subcommand);
        } catch (const ConfigError&) {
            std::fprintf(stderr, "unknown subcommand '%s'\n%s", subcommand.c_str(), kUsage);
            return 2;
        }
        return run_experiment_command(kind, args);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

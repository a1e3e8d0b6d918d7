// spinwell_main.cpp — Command-line driver: evolve, qfunction, sweep, critical
//
// A --preset supplies the base parameter set; any flag given explicitly on
// the command line overrides the preset value.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "spinwell/cli.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitRange = 4;

void print_error(const char* kind, const std::string& message) {
    const nlohmann::json line{{"error", kind}, {"message", message}};
    std::fprintf(stderr, "%s\n", line.dump().c_str());
}

// Raw flag values as parsed; overlaid onto the (possibly preset-initialized)
// config only where the user actually passed the flag.
struct RawFlags {
    int n{0};
    double omega{0.0}, kappa{0.0}, eta{0.0}, epsilon{0.0};
    double theta0{0.0}, phi0{0.0};
    double tmax{0.0}, dt{0.0};
    int grid_theta{0}, grid_phi{0};
    std::vector<int> n_ladder;
    double x_min{0.0}, x_max{0.0}, x_step{0.0};
    std::string preset, output, format{"csv"};
    bool no_timestamp{false}, top_eigenstate{false}, self_test{false};
};

void add_model_flags(CLI::App* cmd, RawFlags& raw) {
    cmd->add_option("--n", raw.n, "Number of particles N");
    cmd->add_option("--omega", raw.omega, "Tunneling parameter Omega");
    cmd->add_option("--kappa", raw.kappa, "Self-collision parameter kappa");
    auto* eta_opt = cmd->add_option("--eta", raw.eta, "Cross-collision eta = kappa epsilon^2");
    auto* eps_opt = cmd->add_option("--epsilon", raw.epsilon, "Mode overlap epsilon");
    eta_opt->excludes(eps_opt);
    eps_opt->excludes(eta_opt);
}

void add_output_flags(CLI::App* cmd, RawFlags& raw) {
    cmd->add_option("--preset", raw.preset, "Named figure preset");
    cmd->add_option("-o,--output", raw.output, "Output file path")->required();
    cmd->add_option("--format", raw.format, "Output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--no-timestamp", raw.no_timestamp,
                  "Omit timestamps from JSON metadata (for golden-file comparison)");
}

void overlay_model(const CLI::App* cmd, const RawFlags& raw, spinwell::cli::ModelConfig& m) {
    if (cmd->count("--n")) m.n = raw.n;
    if (cmd->count("--omega")) m.omega = raw.omega;
    if (cmd->count("--kappa")) m.kappa = raw.kappa;
    if (cmd->count("--eta")) { m.eta = raw.eta; m.epsilon.reset(); }
    if (cmd->count("--epsilon")) { m.epsilon = raw.epsilon; m.eta.reset(); }
}

template <typename Config>
void overlay_output(const RawFlags& raw, Config& cfg) {
    cfg.output = raw.output;
    cfg.format = spinwell::cli::parse_format(raw.format);
    cfg.no_timestamp = raw.no_timestamp;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact spin-J simulation of a two-mode BEC in a symmetric double well:\n"
                 "generalized-purity dynamics, Husimi Q-functions, and finite-size scaling\n"
                 "of the phase transition of the highest-energy eigenstate."};
    app.require_subcommand(1);

    RawFlags raw;

    auto* evolve_cmd = app.add_subcommand("evolve", "Time evolution of GP and Bloch components");
    add_model_flags(evolve_cmd, raw);
    evolve_cmd->add_option("--theta0", raw.theta0, "Initial coherent-state polar angle");
    evolve_cmd->add_option("--phi0", raw.phi0, "Initial coherent-state azimuth");
    evolve_cmd->add_option("--tmax", raw.tmax, "Final dimensionless time Omega*t");
    evolve_cmd->add_option("--dt", raw.dt, "Time step in Omega*t");
    add_output_flags(evolve_cmd, raw);

    auto* q_cmd = app.add_subcommand("qfunction", "Husimi Q-function on the Bloch sphere");
    add_model_flags(q_cmd, raw);
    auto* q_top = q_cmd->add_flag("--top-eigenstate", raw.top_eigenstate,
                                  "Use the highest-energy eigenstate of H");
    auto* q_theta_opt = q_cmd->add_option("--theta0", raw.theta0, "Coherent-state polar angle");
    auto* q_phi_opt = q_cmd->add_option("--phi0", raw.phi0, "Coherent-state azimuth");
    q_top->excludes(q_theta_opt);
    q_top->excludes(q_phi_opt);
    q_cmd->add_option("--grid-theta", raw.grid_theta, "Grid rows in theta");
    q_cmd->add_option("--grid-phi", raw.grid_phi, "Grid columns in phi");
    add_output_flags(q_cmd, raw);

    auto* sweep_cmd = app.add_subcommand("sweep", "GP of the top eigenstate vs x = kappa N / Omega");
    sweep_cmd->add_option("--n-ladder", raw.n_ladder, "Particle numbers to sweep");
    sweep_cmd->add_option("--omega", raw.omega, "Tunneling parameter Omega");
    sweep_cmd->add_option("--epsilon", raw.epsilon, "Fixed mode overlap (default 0)");
    sweep_cmd->add_option("--x-min", raw.x_min, "Sweep start (must be 0)");
    sweep_cmd->add_option("--x-max", raw.x_max, "Sweep end");
    sweep_cmd->add_option("--x-step", raw.x_step, "Sweep step");
    add_output_flags(sweep_cmd, raw);

    auto* crit_cmd = app.add_subcommand("critical", "Critical points per N and power-law fit");
    crit_cmd->add_option("--n-ladder", raw.n_ladder, "Particle numbers for the fit");
    crit_cmd->add_option("--omega", raw.omega, "Tunneling parameter Omega");
    crit_cmd->add_option("--x-min", raw.x_min, "Sweep start (must be 0)");
    crit_cmd->add_option("--x-max", raw.x_max, "Sweep end");
    crit_cmd->add_option("--x-step", raw.x_step, "Sweep step");
    crit_cmd->add_flag("--self-test", raw.self_test,
                       "Fit a planted power law instead of sweeping");
    add_output_flags(crit_cmd, raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("validation", e.what());
        return kExitValidation;
    }

    try {
        if (*evolve_cmd) {
            spinwell::cli::EvolveConfig cfg;
            if (!raw.preset.empty()) spinwell::cli::apply_preset(raw.preset, cfg);
            overlay_model(evolve_cmd, raw, cfg.m);
            if (evolve_cmd->count("--theta0")) cfg.theta0 = raw.theta0;
            if (evolve_cmd->count("--phi0")) cfg.phi0 = raw.phi0;
            if (evolve_cmd->count("--tmax")) cfg.tmax = raw.tmax;
            if (evolve_cmd->count("--dt")) cfg.dt = raw.dt;
            overlay_output(raw, cfg);
            spinwell::cli::run_evolve(cfg);
        } else if (*q_cmd) {
            spinwell::cli::QFunctionConfig cfg;
            if (!raw.preset.empty()) spinwell::cli::apply_preset(raw.preset, cfg);
            overlay_model(q_cmd, raw, cfg.m);
            if (q_cmd->count("--top-eigenstate")) cfg.top_eigenstate = true;
            if (q_cmd->count("--theta0")) { cfg.theta0 = raw.theta0; cfg.top_eigenstate = false; }
            if (q_cmd->count("--phi0")) cfg.phi0 = raw.phi0;
            if (q_cmd->count("--grid-theta")) cfg.grid_theta = raw.grid_theta;
            if (q_cmd->count("--grid-phi")) cfg.grid_phi = raw.grid_phi;
            overlay_output(raw, cfg);
            spinwell::cli::run_qfunction(cfg);
        } else if (*sweep_cmd) {
            spinwell::cli::SweepConfig cfg;
            if (!raw.preset.empty()) spinwell::cli::apply_preset(raw.preset, cfg);
            if (sweep_cmd->count("--n-ladder")) cfg.n_ladder = raw.n_ladder;
            if (sweep_cmd->count("--omega")) cfg.omega = raw.omega;
            if (sweep_cmd->count("--epsilon")) cfg.epsilon = raw.epsilon;
            if (sweep_cmd->count("--x-min")) cfg.x_min = raw.x_min;
            if (sweep_cmd->count("--x-max")) cfg.x_max = raw.x_max;
            if (sweep_cmd->count("--x-step")) cfg.x_step = raw.x_step;
            overlay_output(raw, cfg);
            spinwell::cli::run_sweep(cfg);
        } else if (*crit_cmd) {
            spinwell::cli::CriticalConfig cfg;
            if (!raw.preset.empty())
                throw spinwell::validation_error("preset: critical has no presets");
            if (crit_cmd->count("--n-ladder")) cfg.n_ladder = raw.n_ladder;
            if (crit_cmd->count("--omega")) cfg.omega = raw.omega;
            if (crit_cmd->count("--x-min")) cfg.x_min = raw.x_min;
            if (crit_cmd->count("--x-max")) cfg.x_max = raw.x_max;
            if (crit_cmd->count("--x-step")) cfg.x_step = raw.x_step;
            cfg.self_test = raw.self_test;
            overlay_output(raw, cfg);
            spinwell::cli::run_critical(cfg);
        }
    } catch (const spinwell::validation_error& e) {
        print_error("validation", e.what());
        return kExitValidation;
    } catch (const spinwell::contract_error& e) {
        print_error("contract", e.what());
        return kExitValidation;
    } catch (const spinwell::range_error& e) {
        print_error("range", e.what());
        return kExitRange;
    } catch (const spinwell::numeric_error& e) {
        print_error("numeric", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return kExitNumeric;
    }
    return 0;
}

// cli.hpp — Run configurations, named presets, and plot-ready output files
//
// CSV data files carry the fully resolved parameter set in '#' comment lines
// above the column header, so every figure is reproducible from its own
// artifact. Scalars (fits, maxima, grid metadata) go to JSON. Float columns
// are printed with 9 significant digits and no timestamps ever enter a CSV,
// so identical configs produce byte-identical data files.

#pragma once

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "spinwell/coherent.hpp"
#include "spinwell/errors.hpp"
#include "spinwell/model.hpp"
#include "spinwell/observables.hpp"
#include "spinwell/qpt.hpp"
#include "spinwell/spectral.hpp"

namespace spinwell::cli {

using nlohmann::json;

inline std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

enum class OutputFormat { csv, json };

inline OutputFormat parse_format(const std::string& tag) {
    if (tag == "csv") return OutputFormat::csv;
    if (tag == "json") return OutputFormat::json;
    throw validation_error("format: must be 'csv' or 'json'");
}

inline std::string format_tag(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

// Model parameters as given on the command line; eta and epsilon are the two
// mutually exclusive ways to fix the cross-collision strength.
struct ModelConfig {
    int n{100};
    double omega{1.0};
    double kappa{0.0};
    std::optional<double> eta;
    std::optional<double> epsilon;

    model::ModelParams resolve() const {
        if (eta && epsilon)
            throw validation_error("eta/epsilon: mutually exclusive");
        if (eta) return model::params_from_eta(omega, kappa, *eta, n);
        return model::derive_params(omega, kappa, epsilon.value_or(0.0), n);
    }
};

struct EvolveConfig {
    ModelConfig m;
    double theta0{0.5 * std::numbers::pi};   // |J,J>_x
    double phi0{0.0};
    double tmax{300.0};
    double dt{0.05};
    std::string output;
    OutputFormat format{OutputFormat::csv};
    bool no_timestamp{false};
    std::string preset;
};

struct QFunctionConfig {
    ModelConfig m;
    bool top_eigenstate{false};
    std::optional<double> theta0;
    std::optional<double> phi0;
    int grid_theta{128};
    int grid_phi{256};
    double floor{0.2};
    std::string output;
    OutputFormat format{OutputFormat::csv};
    bool no_timestamp{false};
    std::string preset;
};

struct SweepConfig {
    std::vector<int> n_ladder{100};
    double omega{1.0};
    std::optional<double> epsilon;   // fixed mode overlap; absent means eta = 0
    double x_min{0.0};
    double x_max{2.0};
    double x_step{0.002};
    std::string output;
    OutputFormat format{OutputFormat::csv};
    bool no_timestamp{false};
    std::string preset;
};

struct CriticalConfig {
    std::vector<int> n_ladder{100, 200, 300, 400, 600, 800, 1000};
    double omega{1.0};
    double x_min{0.0};
    double x_max{2.0};
    double x_step{0.002};
    bool self_test{false};
    std::string output;
    OutputFormat format{OutputFormat::csv};
    bool no_timestamp{false};
    std::string preset;
};

// ------------------------------- presets ------------------------------------
// Parameter sets of the reproduced figures, encoded once so tests and users
// cannot drift apart on transcription.

inline void apply_preset(const std::string& name, EvolveConfig& cfg) {
    cfg.m = ModelConfig{100, 1.0, 0.02, {}, {}};
    cfg.theta0 = 0.5 * std::numbers::pi;
    cfg.phi0 = 0.0;
    cfg.tmax = 300.0;
    cfg.dt = 0.05;
    if (name == "fig1-mst") cfg.m.eta = 0.02 / 100.0;
    else if (name == "fig1-jo") cfg.m.eta = 0.02 / 10.0;
    else throw validation_error("preset: '" + name + "' is not an evolve preset");
    cfg.preset = name;
}

inline void apply_preset(const std::string& name, QFunctionConfig& cfg) {
    cfg.m = ModelConfig{100, 1.0, 0.0, {}, {}};
    cfg.top_eigenstate = true;
    cfg.grid_theta = 128;
    cfg.grid_phi = 256;
    if (name == "fig2a") { cfg.m.kappa = 0.0; cfg.m.eta = 0.0; }
    else if (name == "fig2b") { cfg.m.kappa = 1.0 / 200.0; cfg.m.eta = 0.0; }
    else if (name == "fig2c") { cfg.m.kappa = 1.0 / 100.0; cfg.m.eta = 0.0; }
    else if (name == "fig2d") { cfg.m.kappa = 2.0 / 100.0; cfg.m.eta = 0.002; }
    else throw validation_error("preset: '" + name + "' is not a qfunction preset");
    cfg.preset = name;
}

inline void apply_preset(const std::string& name, SweepConfig& cfg) {
    cfg.omega = 1.0;
    cfg.x_min = 0.0;
    cfg.x_max = 2.0;
    cfg.x_step = 0.002;
    cfg.epsilon.reset();
    if (name == "fig3") cfg.n_ladder = {100, 200, 400, 1000};
    else if (name == "fig4") cfg.n_ladder = {50, 100, 200, 400};
    else throw validation_error("preset: '" + name + "' is not a sweep preset");
    cfg.preset = name;
}

// ------------------------------ serialization -------------------------------

namespace detail {

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline json params_json(const model::ModelParams& p) {
    return json{{"n", p.n_particles},     {"omega", p.omega},
                {"kappa", p.kappa},       {"epsilon", p.epsilon},
                {"eta", p.eta},           {"lambda", p.lambda},
                {"omega_eff", p.omega_eff}};
}

inline std::ofstream open_output(const std::string& path) {
    if (path.empty()) throw validation_error("output: required");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("output: cannot open '" + path + "' for writing");
    return out;
}

inline std::string sidecar_path(const std::string& output, const std::string& suffix) {
    std::filesystem::path p(output);
    p.replace_extension("");
    return p.string() + suffix;
}

inline void write_csv_preamble(std::ofstream& out, const std::string& command, const json& config) {
    out << "# spinwell " << command << "\n";
    out << "# config: " << config.dump() << "\n";
}

inline void write_json_doc(const std::string& path, json doc, bool no_timestamp) {
    if (!no_timestamp) doc["generated_utc"] = utc_timestamp();
    std::ofstream out = open_output(path);
    out << doc.dump(2) << "\n";
}

} // namespace detail

// -------------------------------- evolve ------------------------------------

struct EvolveOutcome {
    spectral::TimeSeries series;
    model::ModelParams params;
};

inline EvolveOutcome run_evolve(const EvolveConfig& cfg) {
    const model::ModelParams params = cfg.m.resolve();
    const spin::SpinSpace space = spin::SpinSpace::for_particles(params.n_particles);
    const spin::QuantumState psi0 = spin::coherent_state(space, cfg.theta0, cfg.phi0);
    const std::vector<double> grid = spectral::time_grid(cfg.tmax, cfg.dt);
    spectral::TimeSeries series = spectral::evolve_series(params, space, psi0, grid);

    json config = detail::params_json(params);
    config["command"] = "evolve";
    config["theta0"] = cfg.theta0;
    config["phi0"] = cfg.phi0;
    config["tmax"] = cfg.tmax;
    config["dt"] = cfg.dt;
    config["format"] = format_tag(cfg.format);
    if (!cfg.preset.empty()) config["preset"] = cfg.preset;

    if (cfg.format == OutputFormat::csv) {
        std::ofstream out = detail::open_output(cfg.output);
        detail::write_csv_preamble(out, "evolve", config);
        out << "t,gp,jx,jy,jz\n";
        for (size_t i = 0; i < series.times.size(); ++i) {
            const auto& r = series.records[i];
            out << format_g9(series.times[i]) << ',' << format_g9(r.gp) << ','
                << format_g9(r.jx) << ',' << format_g9(r.jy) << ',' << format_g9(r.jz) << '\n';
        }
    } else {
        json data{{"t", series.times}};
        std::vector<double> gp, jx, jy, jz;
        for (const auto& r : series.records) {
            gp.push_back(r.gp); jx.push_back(r.jx); jy.push_back(r.jy); jz.push_back(r.jz);
        }
        data["gp"] = gp; data["jx"] = jx; data["jy"] = jy; data["jz"] = jz;
        detail::write_json_doc(cfg.output, json{{"config", config}, {"data", data}},
                               cfg.no_timestamp);
    }
    return {std::move(series), params};
}

// ------------------------------- qfunction ----------------------------------

struct QFunctionOutcome {
    obs::QField field;
    std::vector<obs::QMaximum> maxima;
    model::ModelParams params;
};

inline QFunctionOutcome run_qfunction(const QFunctionConfig& cfg) {
    const model::ModelParams params = cfg.m.resolve();
    const spin::SpinSpace space = spin::SpinSpace::for_particles(params.n_particles);

    spin::QuantumState state{space, Eigen::VectorXcd()};
    if (cfg.top_eigenstate) {
        if (cfg.theta0 || cfg.phi0)
            throw validation_error("theta0/phi0: not allowed together with --top-eigenstate");
        state = qpt::highest_energy_state(params, space).state;
    } else {
        if (!cfg.theta0)
            throw validation_error("theta0: required unless --top-eigenstate is given");
        state = spin::coherent_state(space, *cfg.theta0, cfg.phi0.value_or(0.0));
    }

    const obs::SphereGrid grid = obs::SphereGrid::make(cfg.grid_theta, cfg.grid_phi);
    obs::QField field = obs::husimi_q(state, grid);
    std::vector<obs::QMaximum> maxima = obs::local_maxima(field, cfg.floor);

    json config = detail::params_json(params);
    config["command"] = "qfunction";
    config["top_eigenstate"] = cfg.top_eigenstate;
    if (cfg.theta0) config["theta0"] = *cfg.theta0;
    if (cfg.phi0) config["phi0"] = *cfg.phi0;
    config["grid_theta"] = cfg.grid_theta;
    config["grid_phi"] = cfg.grid_phi;
    config["floor"] = cfg.floor;
    config["format"] = format_tag(cfg.format);
    if (!cfg.preset.empty()) config["preset"] = cfg.preset;

    json maxima_json = json::array();
    for (const auto& m : maxima)
        maxima_json.push_back(json{{"theta", m.theta}, {"phi", m.phi}, {"q", m.value}});
    json maxima_block{{"count", maxima.size()}, {"locations", maxima_json}};

    if (cfg.format == OutputFormat::csv) {
        std::ofstream out = detail::open_output(cfg.output);
        detail::write_csv_preamble(out, "qfunction", config);
        out << "theta,phi,q\n";
        for (int a = 0; a < grid.n_theta; ++a)
            for (int b = 0; b < grid.n_phi; ++b)
                out << format_g9(grid.theta(a)) << ',' << format_g9(grid.phi(b)) << ','
                    << format_g9(field.values(a, b)) << '\n';
        detail::write_json_doc(detail::sidecar_path(cfg.output, ".maxima.json"),
                               json{{"config", config}, {"maxima", maxima_block}},
                               cfg.no_timestamp);
    } else {
        std::vector<double> thetas, phis;
        for (int a = 0; a < grid.n_theta; ++a) thetas.push_back(grid.theta(a));
        for (int b = 0; b < grid.n_phi; ++b) phis.push_back(grid.phi(b));
        json rows = json::array();
        for (int a = 0; a < grid.n_theta; ++a) {
            json row = json::array();
            for (int b = 0; b < grid.n_phi; ++b) row.push_back(field.values(a, b));
            rows.push_back(std::move(row));
        }
        detail::write_json_doc(cfg.output,
                               json{{"config", config},
                                    {"data", json{{"theta", thetas}, {"phi", phis}, {"q", rows}}},
                                    {"maxima", maxima_block}},
                               cfg.no_timestamp);
    }
    return {std::move(field), std::move(maxima), params};
}

// --------------------------------- sweep ------------------------------------

namespace detail {

inline std::vector<double> sweep_grid(double x_min, double x_max, double x_step) {
    if (x_min != 0.0)
        throw validation_error("x-min: sweeps must start at x = 0");
    return qpt::uniform_grid(x_min, x_max, x_step);
}

inline json sweep_config_json(const char* command, const std::vector<int>& ladder, double omega,
                              std::optional<double> epsilon, double x_min, double x_max,
                              double x_step, OutputFormat format, const std::string& preset) {
    json config{{"command", command}, {"n_ladder", ladder},   {"omega", omega},
                {"x_min", x_min},     {"x_max", x_max},       {"x_step", x_step},
                {"eta", 0.0},         {"format", format_tag(format)}};
    config["epsilon"] = epsilon.value_or(0.0);
    if (epsilon) config.erase("eta");   // fixed-epsilon mode: eta varies with kappa
    if (!preset.empty()) config["preset"] = preset;
    return config;
}

} // namespace detail

struct SweepOutcome {
    std::vector<qpt::SweepResult> sweeps;
};

inline SweepOutcome run_sweep(const SweepConfig& cfg) {
    if (cfg.n_ladder.empty()) throw validation_error("n-ladder: must not be empty");
    const std::vector<double> grid = detail::sweep_grid(cfg.x_min, cfg.x_max, cfg.x_step);
    SweepOutcome outcome;
    for (const int n : cfg.n_ladder)
        outcome.sweeps.push_back(qpt::gp_vs_x(n, grid, cfg.omega, cfg.epsilon.value_or(0.0)));

    const json config = detail::sweep_config_json("sweep", cfg.n_ladder, cfg.omega, cfg.epsilon,
                                                  cfg.x_min, cfg.x_max, cfg.x_step, cfg.format,
                                                  cfg.preset);
    if (cfg.format == OutputFormat::csv) {
        std::ofstream out = detail::open_output(cfg.output);
        detail::write_csv_preamble(out, "sweep", config);
        out << "n,x,gp,dgp_dx\n";
        for (const auto& sweep : outcome.sweeps)
            for (size_t i = 0; i < sweep.x.size(); ++i)
                out << sweep.n_particles << ',' << format_g9(sweep.x[i]) << ','
                    << format_g9(sweep.gp[i]) << ',' << format_g9(sweep.dgp_dx[i]) << '\n';
        detail::write_json_doc(detail::sidecar_path(cfg.output, ".meta.json"),
                               json{{"config", config}}, cfg.no_timestamp);
    } else {
        std::vector<int> ns;
        std::vector<double> xs, gps, dgps;
        for (const auto& sweep : outcome.sweeps)
            for (size_t i = 0; i < sweep.x.size(); ++i) {
                ns.push_back(sweep.n_particles);
                xs.push_back(sweep.x[i]);
                gps.push_back(sweep.gp[i]);
                dgps.push_back(sweep.dgp_dx[i]);
            }
        detail::write_json_doc(cfg.output,
                               json{{"config", config},
                                    {"data", json{{"n", ns}, {"x", xs}, {"gp", gps}, {"dgp_dx", dgps}}}},
                               cfg.no_timestamp);
    }
    return outcome;
}

// -------------------------------- critical ----------------------------------

struct CriticalOutcome {
    std::vector<qpt::CriticalPoint> points;
    qpt::PowerLawFit fit;
};

inline CriticalOutcome run_critical(const CriticalConfig& cfg) {
    if (cfg.n_ladder.empty()) throw validation_error("n-ladder: must not be empty");
    CriticalOutcome outcome;
    if (cfg.self_test) {
        // Planted power law y = 2 N^{-1/2}; the fit must recover it exactly.
        for (const int n : cfg.n_ladder) {
            qpt::CriticalPoint cp;
            cp.n_particles = n;
            cp.omega = cfg.omega;
            const double y = 2.0 / std::sqrt(static_cast<double>(n));
            cp.delta = y * cfg.omega / n;
            cp.kappa_c_q = cfg.omega / (2.0 * n) + cp.delta;
            cp.x_star = cp.kappa_c_q * n / cfg.omega;
            outcome.points.push_back(cp);
        }
        outcome.fit = qpt::power_law_fit(outcome.points);
        if (std::abs(outcome.fit.exponent + 0.5) > 1e-12 ||
            std::abs(outcome.fit.log_prefactor - std::log(2.0)) > 1e-12)
            throw numeric_error("self-test: planted power law was not recovered");
    } else {
        const std::vector<double> grid = detail::sweep_grid(cfg.x_min, cfg.x_max, cfg.x_step);
        for (const int n : cfg.n_ladder)
            outcome.points.push_back(qpt::find_critical(qpt::gp_vs_x(n, grid, cfg.omega)));
        outcome.fit = qpt::power_law_fit(outcome.points);
    }

    json config = detail::sweep_config_json("critical", cfg.n_ladder, cfg.omega, {}, cfg.x_min,
                                            cfg.x_max, cfg.x_step, cfg.format, cfg.preset);
    config["self_test"] = cfg.self_test;
    const json fit_block{{"exponent", outcome.fit.exponent},
                         {"prefactor_log", outcome.fit.log_prefactor},
                         {"stderr_exponent", outcome.fit.stderr_exponent},
                         {"stderr_prefactor", outcome.fit.stderr_prefactor},
                         {"residual_rms", outcome.fit.residual_rms},
                         {"implied_full_exponent", outcome.fit.implied_full_exponent()},
                         {"n_ladder", cfg.n_ladder},
                         {"x_grid_step", cfg.x_step}};

    if (cfg.format == OutputFormat::csv) {
        std::ofstream out = detail::open_output(cfg.output);
        detail::write_csv_preamble(out, "critical", config);
        out << "n,x_star,kappa_c_q,delta\n";
        for (const auto& p : outcome.points)
            out << p.n_particles << ',' << format_g9(p.x_star) << ','
                << format_g9(p.kappa_c_q) << ',' << format_g9(p.delta) << '\n';
        detail::write_json_doc(detail::sidecar_path(cfg.output, ".fit.json"),
                               json{{"config", config}, {"fit", fit_block}}, cfg.no_timestamp);
    } else {
        std::vector<int> ns;
        std::vector<double> xs, kcq, deltas;
        for (const auto& p : outcome.points) {
            ns.push_back(p.n_particles);
            xs.push_back(p.x_star);
            kcq.push_back(p.kappa_c_q);
            deltas.push_back(p.delta);
        }
        detail::write_json_doc(
            cfg.output,
            json{{"config", config},
                 {"points", json{{"n", ns}, {"x_star", xs}, {"kappa_c_q", kcq}, {"delta", deltas}}},
                 {"fit", fit_block}},
            cfg.no_timestamp);
    }
    return outcome;
}

} // namespace spinwell::cli

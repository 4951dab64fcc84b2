#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "crossmode/oracle.hpp"
#include "crossmode/report_io.hpp"

namespace {

using namespace crossmode;

namespace fs = std::filesystem;

constexpr double kVerifyTolerance = 1e-9;

struct VerifyOutcome {
    std::string oracle;
    double expected = 0.0;
    double actual = 0.0;
    bool passed = false;
};

bool all_equal_wavevectors(const std::vector<ModeLabel>& modes) {
    for (const ModeLabel& mode : modes) {
        if ((mode.wavevector - modes.front().wavevector).norm() > 1e-12) return false;
    }
    return true;
}

// Cross-checks the reported energy against whichever independent oracle
// covers the configuration; nullopt when none applies.
std::optional<VerifyOutcome> verify_run(const ScenarioConfig& config, const ScenarioRun& run) {
    if (config.kind == ScenarioKind::Incoherent) return std::nullopt;
    const std::vector<ModeLabel> modes = scenario_modes(config);
    const std::vector<Occupation> occupations = scenario_occupations(config);

    const bool default_convention =
        config.conventions.factor(config.species) == CrossConventions{}.factor(config.species);
    if (!is_fermion(config.species) && all_equal_wavevectors(modes) && default_convention &&
        config.algebra.variant == AlgebraVariant::CrossUnit &&
        config.contraction == ContractionVariant::Coherent) {
        std::vector<double> phases;
        for (const ModeLabel& mode : modes) phases.push_back(mode.phase);
        VerifyOutcome outcome;
        outcome.oracle = "merged-mode";
        outcome.expected = merged_energy(modes, occupations, phases, config.vacuum_terms);
        outcome.actual = run.report.energy;
        outcome.passed = std::abs(outcome.expected - outcome.actual) <=
                         kVerifyTolerance * std::max(1.0, std::abs(outcome.expected));
        return outcome;
    }

    long max_occupation = 0;
    for (const Occupation& occ : occupations) {
        max_occupation = std::max({max_occupation, occ.particles, occ.antiparticles});
    }
    if (config.algebra.variant == AlgebraVariant::Canonical && config.n_modes <= 3 &&
        max_occupation <= 3) {
        const TruncatedFockSpace space(modes, 5);
        VerifyOutcome outcome;
        outcome.oracle = "matrix";
        outcome.expected = matrix_expectation(build_hamiltonian(scenario_spec(config)),
                                              scenario_state(config), space);
        outcome.actual = run.report.energy;
        outcome.passed = std::abs(outcome.expected - outcome.actual) <=
                         kVerifyTolerance * std::max(1.0, std::abs(outcome.expected));
        return outcome;
    }
    return std::nullopt;
}

RunManifest make_manifest(const std::string& config_path, const std::string& out_dir,
                          std::uint64_t seed) {
    RunManifest manifest;
    manifest.config_path = config_path;
    manifest.output_dir = out_dir;
    manifest.formats = {"json", "csv"};
    manifest.seed = seed;
    return manifest;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed, bool no_vacuum, bool verify) {
    ScenarioConfig config = load_scenario_config(config_path);
    if (seed) config.seed = *seed;
    if (no_vacuum) config.vacuum_terms = VacuumTerms::Exclude;

    const ScenarioRun run = run_scenario(config);
    const RunManifest manifest = make_manifest(config_path, out_dir, config.seed);

    fs::create_directories(out_dir);
    write_file_atomic(fs::path(out_dir) / "report.json", report_json(run, config, manifest));
    write_file_atomic(fs::path(out_dir) / "summary.csv", summary_csv(run.report, manifest));
    std::cout << "E=" << csv_number(run.report.energy)
              << " N=" << csv_number(run.report.particle_number)
              << " Q=" << csv_number(run.report.charge)
              << " cross_E=" << csv_number(run.report.cross_energy) << "\n";

    if (verify) {
        const std::optional<VerifyOutcome> outcome = verify_run(config, run);
        if (!outcome) {
            std::cout << "verify: no applicable oracle for this configuration\n";
        } else if (outcome->passed) {
            std::cout << "verify: " << outcome->oracle << " oracle agrees ("
                      << csv_number(outcome->expected) << ")\n";
        } else {
            std::cerr << "verify: " << outcome->oracle << " oracle expected "
                      << csv_number(outcome->expected) << ", got " << csv_number(outcome->actual)
                      << "\n";
            return 3;
        }
    }
    return 0;
}

std::vector<double> linspace(double from, double to, long points) {
    if (points < 1) throw ConfigError("--points: must be at least 1");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(points));
    if (points == 1) {
        values.push_back(from);
        return values;
    }
    for (long i = 0; i < points; ++i) {
        values.push_back(from + (to - from) * static_cast<double>(i) /
                                    static_cast<double>(points - 1));
    }
    return values;
}

// Materializes the configured geometry into a custom scenario so one
// mode attribute can be replaced exactly.
ScenarioConfig materialized(const ScenarioConfig& config, const std::vector<ModeLabel>& modes) {
    ScenarioConfig point = config;
    point.kind = ScenarioKind::Custom;
    point.explicit_modes = modes;
    point.n_modes = static_cast<int>(modes.size());
    std::vector<double> phases;
    for (const ModeLabel& mode : modes) phases.push_back(mode.phase);
    point.phases = PhasePattern::explicit_list(std::move(phases));
    if (point.occupations.empty()) point.occupations = scenario_occupations(config);
    return point;
}

ScenarioConfig sweep_point(const ScenarioConfig& config, const std::string& var, double value) {
    if (var == "N") {
        if (config.kind == ScenarioKind::YoungConventional ||
            config.kind == ScenarioKind::YoungSubwavelength ||
            config.kind == ScenarioKind::AharonovBohm || config.kind == ScenarioKind::Custom) {
            throw ConfigError("--var: N sweeps need a mode-count scenario (dicke or incoherent)");
        }
        ScenarioConfig point = config;
        point.n_modes = static_cast<int>(std::llround(value));
        if (point.n_modes < 1) throw ConfigError("--from/--to: N must stay at least 1");
        if (point.occupations.size() != static_cast<std::size_t>(point.n_modes)) {
            point.occupations.clear();
        }
        return point;
    }
    if (var == "dk") {
        std::vector<ModeLabel> modes = scenario_modes(config);
        if (modes.size() < 2) throw ConfigError("--var: dk sweeps need at least 2 modes");
        const ModeLabel& base = modes[0];
        const ModeLabel& moved = modes[1];
        modes[1] = ModeLabel::make(moved.id, moved.species,
                                   base.wavevector + Eigen::Vector3d(value, 0.0, 0.0), moved.mass,
                                   moved.phase, moved.spin_index);
        return materialized(config, modes);
    }
    if (var.rfind("phase", 0) == 0) {
        std::size_t mode_index = 0;
        try {
            mode_index = static_cast<std::size_t>(std::stoul(var.substr(5)));
        } catch (const std::exception&) {
            throw ConfigError("--var: expected phase<i>, dk or N, got \"" + var + "\"");
        }
        std::vector<ModeLabel> modes = scenario_modes(config);
        if (mode_index >= modes.size()) {
            throw ConfigError("--var: mode index " + std::to_string(mode_index) + " out of range");
        }
        const ModeLabel& moved = modes[mode_index];
        modes[mode_index] = ModeLabel::make(moved.id, moved.species, moved.wavevector, moved.mass,
                                            value, moved.spin_index);
        return materialized(config, modes);
    }
    throw ConfigError("--var: expected phase<i>, dk or N, got \"" + var + "\"");
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed, const std::string& var, double from, double to,
              long points) {
    ScenarioConfig config = load_scenario_config(config_path);
    if (seed) config.seed = *seed;

    const std::vector<double> values = linspace(from, to, points);
    std::vector<ObservableReport> reports;
    reports.reserve(values.size());
    for (const double value : values) {
        const ScenarioConfig point = sweep_point(config, var, value);
        ScenarioRun run = run_scenario(point);
        // Present the row under the original scenario name, not the
        // materialized custom one.
        run.report.scenario = to_string(config.kind);
        run.report.seed = config.seed;
        reports.push_back(std::move(run.report));
    }

    const RunManifest manifest = make_manifest(config_path, out_dir, config.seed);
    fs::create_directories(out_dir);
    write_file_atomic(fs::path(out_dir) / "sweep.csv", sweep_csv(var, values, reports, manifest));
    std::cout << "wrote " << (fs::path(out_dir) / "sweep.csv").string() << " (" << reports.size()
              << " rows)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multimode second-quantized field interference calculator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed_value = 0;
    bool no_vacuum = false;
    bool verify = false;
    std::string var;
    double from = 0.0;
    double to = 0.0;
    long points = 1;

    CLI::App* run_cmd = app.add_subcommand("run", "run one scenario and emit JSON + CSV reports");
    run_cmd->add_option("config", config_path, "scenario configuration (JSON)")->required();
    run_cmd->add_option("--out", out_dir, "output directory");
    CLI::Option* run_seed = run_cmd->add_option("--seed", seed_value, "override the config seed");
    run_cmd->add_flag("--no-vacuum", no_vacuum, "drop all vacuum constants");
    run_cmd->add_flag("--verify", verify, "cross-check against an independent oracle");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and emit a CSV table");
    sweep_cmd->add_option("config", config_path, "scenario configuration (JSON)")->required();
    sweep_cmd->add_option("--var", var, "sweep variable: phase<i>, dk or N")->required();
    sweep_cmd->add_option("--from", from, "first grid value")->required();
    sweep_cmd->add_option("--to", to, "last grid value")->required();
    sweep_cmd->add_option("--points", points, "number of grid points")->required();
    sweep_cmd->add_option("--out", out_dir, "output directory");
    CLI::Option* sweep_seed = sweep_cmd->add_option("--seed", seed_value, "override the config seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const std::optional<std::uint64_t> seed =
                run_seed->count() > 0 ? std::optional<std::uint64_t>(seed_value) : std::nullopt;
            return cmd_run(config_path, out_dir, seed, no_vacuum, verify);
        }
        const std::optional<std::uint64_t> seed =
            sweep_seed->count() > 0 ? std::optional<std::uint64_t>(seed_value) : std::nullopt;
        return cmd_sweep(config_path, out_dir, seed, var, from, to, points);
    } catch (const ConfigError& error) {
        std::cerr << "config error: " << error.what() << "\n";
        return 2;
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
}

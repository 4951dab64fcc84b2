#include "crossmode/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace crossmode {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegligibleOverlap = 1e-12;

int default_spin_index(Species species) {
    switch (species) {
    case Species::ScalarBoson: return 0;
    case Species::VectorBoson: return 1;
    case Species::SpinorFermion: return 1;
    }
    return 0;
}

Occupation default_occupation(Species species) {
    // One particle per mode; the antiparticle channel is filled where the
    // species has one.
    return {1, species == Species::ScalarBoson ? 1 : 0};
}

void fill_metadata(ObservableReport& report, const ScenarioConfig& config) {
    report.scenario = to_string(config.kind);
    report.phase_pattern = config.phases.describe();
    report.seed = config.seed;
}

double max_pair_overlap(const HamiltonianSpec& spec) {
    double worst = 0.0;
    const auto& modes = spec.field.modes;
    for (std::size_t n = 0; n < modes.size(); ++n) {
        for (std::size_t m = n + 1; m < modes.size(); ++m) {
            const double value =
                std::abs(overlap_integral(modes[n].wavevector, modes[m].wavevector, modes[n].phase,
                                          modes[m].phase, spec.box));
            worst = std::max(worst, value);
        }
    }
    return worst;
}

} // namespace

std::vector<Occupation> scenario_occupations(const ScenarioConfig& config) {
    if (!config.occupations.empty()) return config.occupations;
    return std::vector<Occupation>(static_cast<std::size_t>(config.n_modes),
                                   default_occupation(config.species));
}

std::uint64_t splitmix64(std::uint64_t state) {
    state += 0x9E3779B97F4A7C15ULL;
    state = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9ULL;
    state = (state ^ (state >> 27)) * 0x94D049BB133111EBULL;
    return state ^ (state >> 31);
}

double uniform_phase(std::uint64_t seed, std::uint64_t sample, std::uint64_t slot) {
    std::uint64_t word = splitmix64(seed);
    word = splitmix64(word ^ (0x9E3779B97F4A7C15ULL * (sample + 1)));
    word = splitmix64(word ^ (0xD1B54A32D192ED03ULL * (slot + 1)));
    // 53 uniform bits into [0, 2*pi).
    return 2.0 * kPi * static_cast<double>(word >> 11) * 0x1.0p-53;
}

std::string to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::YoungConventional: return "young-conventional";
    case ScenarioKind::YoungSubwavelength: return "young-subwavelength";
    case ScenarioKind::Dicke: return "dicke";
    case ScenarioKind::Incoherent: return "incoherent";
    case ScenarioKind::AharonovBohm: return "aharonov-bohm";
    case ScenarioKind::Custom: return "custom";
    }
    return "unknown";
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
    if (name == "young-conventional") return ScenarioKind::YoungConventional;
    if (name == "young-subwavelength") return ScenarioKind::YoungSubwavelength;
    if (name == "dicke") return ScenarioKind::Dicke;
    if (name == "incoherent") return ScenarioKind::Incoherent;
    if (name == "aharonov-bohm") return ScenarioKind::AharonovBohm;
    if (name == "custom") return ScenarioKind::Custom;
    throw ConfigError("kind: unknown scenario \"" + name + "\"");
}

PhasePattern PhasePattern::equal(double value) {
    PhasePattern pattern;
    pattern.kind = PhasePatternKind::Equal;
    pattern.value = value;
    return pattern;
}

PhasePattern PhasePattern::pi_alternating() {
    PhasePattern pattern;
    pattern.kind = PhasePatternKind::PiAlternating;
    return pattern;
}

PhasePattern PhasePattern::explicit_list(std::vector<double> values) {
    PhasePattern pattern;
    pattern.kind = PhasePatternKind::Explicit;
    pattern.values = std::move(values);
    return pattern;
}

PhasePattern PhasePattern::random(long samples) {
    PhasePattern pattern;
    pattern.kind = PhasePatternKind::Random;
    pattern.samples = samples;
    return pattern;
}

std::string PhasePattern::describe() const {
    switch (kind) {
    case PhasePatternKind::Equal: return "equal:" + std::to_string(value);
    case PhasePatternKind::PiAlternating: return "pi-alternating";
    case PhasePatternKind::Explicit: return "explicit";
    case PhasePatternKind::Random: return "random:" + std::to_string(samples);
    }
    return "unknown";
}

std::vector<double> PhasePattern::phases(std::size_t n_modes, std::uint64_t seed,
                                         std::uint64_t sample) const {
    std::vector<double> out(n_modes, 0.0);
    switch (kind) {
    case PhasePatternKind::Equal:
        std::fill(out.begin(), out.end(), value);
        break;
    case PhasePatternKind::PiAlternating:
        for (std::size_t i = 0; i < n_modes; ++i) out[i] = (i % 2 == 1) ? kPi : 0.0;
        break;
    case PhasePatternKind::Explicit:
        if (values.size() != n_modes) {
            throw ConfigError("phases.values: expected " + std::to_string(n_modes) +
                              " entries, got " + std::to_string(values.size()));
        }
        out = values;
        break;
    case PhasePatternKind::Random:
        for (std::size_t i = 0; i < n_modes; ++i) out[i] = uniform_phase(seed, sample, i);
        break;
    }
    return out;
}

void ScenarioConfig::validate() const {
    if (n_modes < 1) throw ConfigError("n_modes: must be at least 1");
    if (mass < 0.0) throw ConfigError("mass: must be non-negative");
    if (!occupations.empty() && occupations.size() != static_cast<std::size_t>(n_modes)) {
        throw ConfigError("occupations: expected " + std::to_string(n_modes) + " entries, got " +
                          std::to_string(occupations.size()));
    }
    switch (kind) {
    case ScenarioKind::YoungConventional:
    case ScenarioKind::YoungSubwavelength:
        if (n_modes != 2) throw ConfigError("n_modes: Young scenarios use exactly 2 modes");
        if (!(slit_separation > 0.0)) throw ConfigError("slit_separation: must be positive");
        if (!(wavelength > 0.0)) throw ConfigError("wavelength: must be positive");
        break;
    case ScenarioKind::Dicke:
        if (species != Species::VectorBoson) {
            throw ConfigError("species: the Dicke ensemble is a photon scenario");
        }
        if (!(wavelength > 0.0)) throw ConfigError("wavelength: must be positive");
        if (phases.kind == PhasePatternKind::PiAlternating && n_modes % 2 != 0) {
            throw ConfigError("phases: pi-alternating pairing is undefined for odd n_modes");
        }
        break;
    case ScenarioKind::Incoherent:
        if (phases.kind != PhasePatternKind::Random) {
            throw ConfigError("phases: the incoherent scenario requires a random pattern");
        }
        if (phases.samples < 1) throw ConfigError("phases.samples: must be at least 1");
        if (!(wavelength > 0.0)) throw ConfigError("wavelength: must be positive");
        break;
    case ScenarioKind::AharonovBohm:
        if (species != Species::SpinorFermion) {
            throw ConfigError("species: the Aharonov-Bohm scenario requires spinor-fermion");
        }
        if (n_modes != 2) throw ConfigError("n_modes: the two-path scenario uses exactly 2 modes");
        if (!(wavelength > 0.0)) throw ConfigError("wavelength: must be positive");
        break;
    case ScenarioKind::Custom:
        if (explicit_modes.empty()) throw ConfigError("modes: custom scenarios list them explicitly");
        if (explicit_modes.size() != static_cast<std::size_t>(n_modes)) {
            throw ConfigError("modes: expected " + std::to_string(n_modes) + " entries, got " +
                              std::to_string(explicit_modes.size()));
        }
        for (const ModeLabel& mode : explicit_modes) {
            if (mode.species != species) {
                throw ConfigError("modes: mode \"" + mode.id + "\" does not match the species field");
            }
        }
        break;
    }
}

std::vector<ModeLabel> scenario_modes(const ScenarioConfig& config, std::uint64_t sample) {
    config.validate();
    const std::size_t count = static_cast<std::size_t>(config.n_modes);
    std::vector<double> phases = config.phases.phases(count, config.seed, sample);
    const int index = default_spin_index(config.species);

    std::vector<ModeLabel> modes;
    modes.reserve(count);
    switch (config.kind) {
    case ScenarioKind::YoungSubwavelength: {
        // Sources much closer than the wavelength emit into one wavevector.
        const Eigen::Vector3d k(2.0 * kPi / config.wavelength, 0.0, 0.0);
        modes.push_back(ModeLabel::make("slit0", config.species, k, config.mass, phases[0], index));
        modes.push_back(ModeLabel::make("slit1", config.species, k, config.mass, phases[1], index));
        break;
    }
    case ScenarioKind::YoungConventional: {
        // Direction-split beams with |k_1 - k_2| = 2*pi/wavelength.
        const double magnitude = 2.0 * kPi / config.wavelength;
        const double transverse = kPi / config.wavelength;
        const double axial = std::sqrt(magnitude * magnitude - transverse * transverse);
        modes.push_back(ModeLabel::make("slit0", config.species,
                                        Eigen::Vector3d(axial, transverse, 0.0), config.mass,
                                        phases[0], index));
        modes.push_back(ModeLabel::make("slit1", config.species,
                                        Eigen::Vector3d(axial, -transverse, 0.0), config.mass,
                                        phases[1], index));
        break;
    }
    case ScenarioKind::Dicke:
    case ScenarioKind::Incoherent: {
        const Eigen::Vector3d k(2.0 * kPi / config.wavelength, 0.0, 0.0);
        for (std::size_t i = 0; i < count; ++i) {
            modes.push_back(ModeLabel::make("mode" + std::to_string(i), config.species, k,
                                            config.mass, phases[i], index));
        }
        break;
    }
    case ScenarioKind::AharonovBohm: {
        // The solenoid flux shifts the phase of the second path.
        const Eigen::Vector3d k(2.0 * kPi / config.wavelength, 0.0, 0.0);
        modes.push_back(
            ModeLabel::make("path0", config.species, k, config.mass, phases[0], index));
        modes.push_back(ModeLabel::make("path1", config.species, k, config.mass,
                                        phases[1] + config.flux, index));
        break;
    }
    case ScenarioKind::Custom:
        modes = config.explicit_modes;
        for (std::size_t i = 0; i < count; ++i) {
            modes[i] = ModeLabel::make(modes[i].id, modes[i].species, modes[i].wavevector,
                                       modes[i].mass, phases[i], modes[i].spin_index);
        }
        break;
    }
    return modes;
}

HamiltonianSpec scenario_spec(const ScenarioConfig& config, std::uint64_t sample) {
    HamiltonianSpec spec;
    spec.field = build_field(config.species, scenario_modes(config, sample));
    spec.box = config.box;
    spec.policy = config.algebra;
    spec.vacuum_terms = config.vacuum_terms;
    spec.conventions = config.conventions;
    return spec;
}

FockState scenario_state(const ScenarioConfig& config) {
    return FockState::of(scenario_modes(config), scenario_occupations(config));
}

ContractionPolicy scenario_contraction(const ScenarioConfig& config) {
    return {config.contraction, config.algebra};
}

YoungRun run_young(const ScenarioConfig& config) {
    config.validate();
    if (config.kind != ScenarioKind::YoungConventional &&
        config.kind != ScenarioKind::YoungSubwavelength) {
        throw ConfigError("kind: run_young expects a Young scenario");
    }

    const FockState state = scenario_state(config);

    ScenarioConfig conserved_config = config;
    conserved_config.algebra = AlgebraPolicy::canonical();
    conserved_config.contraction = ContractionVariant::Orthodox;

    YoungRun run;
    run.conserved =
        report(scenario_spec(conserved_config), state, scenario_contraction(conserved_config));
    run.interfering = report(scenario_spec(config), state, scenario_contraction(config));
    fill_metadata(run.conserved, conserved_config);
    fill_metadata(run.interfering, config);
    return run;
}

ObservableReport run_dicke(int n_modes, const PhasePattern& pattern,
                           std::optional<ScenarioConfig> base) {
    ScenarioConfig config = base.value_or(ScenarioConfig{});
    config.kind = ScenarioKind::Dicke;
    config.species = Species::VectorBoson;
    config.mass = 0.0;
    config.n_modes = n_modes;
    config.phases = pattern;
    if (config.occupations.size() != static_cast<std::size_t>(n_modes)) config.occupations.clear();
    config.validate();

    ObservableReport out =
        report(scenario_spec(config), scenario_state(config), scenario_contraction(config));
    fill_metadata(out, config);
    return out;
}

IncoherentResult run_incoherent(int n_modes, long samples, std::uint64_t seed,
                                std::optional<ScenarioConfig> base) {
    if (samples < 1) throw ConfigError("samples: must be at least 1");
    ScenarioConfig config = base.value_or(ScenarioConfig{});
    config.kind = ScenarioKind::Incoherent;
    config.n_modes = n_modes;
    config.seed = seed;
    config.phases = PhasePattern::random(samples);
    if (config.occupations.size() != static_cast<std::size_t>(n_modes)) config.occupations.clear();
    config.validate();

    const FockState state = scenario_state(config);
    const ContractionPolicy contraction = scenario_contraction(config);

    // Accumulate totals only; the per-pair breakdown is per-sample
    // diagnostics and has no meaningful Monte Carlo mean.
    Eigen::Matrix<double, 6, 1> sum = Eigen::Matrix<double, 6, 1>::Zero();
    Eigen::Matrix<double, 6, 1> sum_sq = Eigen::Matrix<double, 6, 1>::Zero();
    for (long s = 0; s < samples; ++s) {
        const HamiltonianSpec spec = scenario_spec(config, static_cast<std::uint64_t>(s));
        Eigen::Matrix<double, 6, 1> values;
        values[0] = expect(build_observable(spec, ObservableKind::Energy), state, contraction);
        values[1] = expect(build_observable(spec, ObservableKind::MomentumX), state, contraction);
        values[2] = expect(build_observable(spec, ObservableKind::MomentumY), state, contraction);
        values[3] = expect(build_observable(spec, ObservableKind::MomentumZ), state, contraction);
        values[4] = expect(build_observable(spec, ObservableKind::Number), state, contraction);
        values[5] = expect(build_observable(spec, ObservableKind::Charge), state, contraction);
        sum += values;
        sum_sq += values.cwiseProduct(values);
    }

    const double count = static_cast<double>(samples);
    const Eigen::Matrix<double, 6, 1> mean = sum / count;
    Eigen::Matrix<double, 6, 1> se = Eigen::Matrix<double, 6, 1>::Zero();
    if (samples > 1) {
        const Eigen::Matrix<double, 6, 1> variance =
            (sum_sq - sum.cwiseProduct(sum) / count).cwiseMax(0.0) / (count - 1.0);
        se = (variance / count).cwiseSqrt();
    }

    IncoherentResult result;
    result.mean.energy = mean[0];
    result.mean.momentum = mean.segment<3>(1);
    result.mean.particle_number = mean[4];
    result.mean.charge = mean[5];
    result.mean.vacuum_terms = config.vacuum_terms;
    result.mean.algebra = config.algebra.describe();
    result.mean.contraction = contraction.describe();
    result.mean.species = to_string(config.species);
    result.mean.n_modes = n_modes;
    fill_metadata(result.mean, config);
    result.samples = samples;
    result.se_energy = se[0];
    result.se_momentum = se.segment<3>(1);
    result.se_number = se[4];
    result.se_charge = se[5];
    return result;
}

AuditResult audit_conservation(const ScenarioConfig& config,
                               const std::vector<std::vector<double>>& phase_deltas,
                               double tolerance) {
    config.validate();
    const FockState state = scenario_state(config);
    const ContractionPolicy contraction = scenario_contraction(config);
    const HamiltonianSpec base_spec = scenario_spec(config);

    AuditResult result;
    result.tolerance = tolerance;
    result.baseline = report(base_spec, state, contraction);
    fill_metadata(result.baseline, config);

    const bool orthodox_canonical = contraction.variant == ContractionVariant::Orthodox &&
                                    config.algebra.variant == AlgebraVariant::Canonical;
    result.conserved_expected =
        orthodox_canonical || max_pair_overlap(base_spec) < kNegligibleOverlap;

    std::vector<double> base_phases;
    for (const ModeLabel& mode : base_spec.field.modes) base_phases.push_back(mode.phase);

    for (const std::vector<double>& deltas : phase_deltas) {
        if (deltas.size() != base_phases.size()) {
            throw ConfigError("phase_deltas: one delta per mode required");
        }
        std::vector<double> shifted = base_phases;
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += deltas[i];

        const ObservableReport moved = report(with_phases(base_spec, shifted), state, contraction);
        AuditShift shift;
        shift.deltas = deltas;
        shift.drift_energy = moved.energy - result.baseline.energy;
        shift.drift_momentum = (moved.momentum - result.baseline.momentum).cwiseAbs().maxCoeff();
        shift.drift_number = moved.particle_number - result.baseline.particle_number;
        shift.drift_charge = moved.charge - result.baseline.charge;
        result.max_drift =
            std::max({result.max_drift, std::abs(shift.drift_energy), shift.drift_momentum,
                      std::abs(shift.drift_number), std::abs(shift.drift_charge)});
        result.shifts.push_back(std::move(shift));
    }

    result.passed = !result.conserved_expected || result.max_drift <= tolerance;
    return result;
}

ScenarioRun run_scenario(const ScenarioConfig& config) {
    config.validate();
    ScenarioRun run;
    switch (config.kind) {
    case ScenarioKind::YoungConventional:
    case ScenarioKind::YoungSubwavelength: {
        YoungRun young = run_young(config);
        run.report = young.interfering;
        run.baseline = young.conserved;
        break;
    }
    case ScenarioKind::Dicke:
        run.report = run_dicke(config.n_modes, config.phases, config);
        break;
    case ScenarioKind::Incoherent: {
        IncoherentResult result =
            run_incoherent(config.n_modes, config.phases.samples, config.seed, config);
        run.report = result.mean;
        run.statistics = std::move(result);
        break;
    }
    case ScenarioKind::AharonovBohm:
    case ScenarioKind::Custom: {
        run.report =
            report(scenario_spec(config), scenario_state(config), scenario_contraction(config));
        fill_metadata(run.report, config);
        break;
    }
    }
    return run;
}

} // namespace crossmode

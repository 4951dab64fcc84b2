#pragma once

#include <cstdint>
#include <optional>

#include "crossmode/observables.hpp"

namespace crossmode {

enum class ScenarioKind {
    YoungConventional,
    YoungSubwavelength,
    Dicke,
    Incoherent,
    AharonovBohm,
    Custom
};

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

enum class PhasePatternKind { Equal, PiAlternating, Explicit, Random };

/// Per-mode phase assignment. Equal uses one shared value,
/// PiAlternating alternates 0 and pi, Explicit lists every phase and
/// Random draws uniform phases per Monte Carlo sample.
struct PhasePattern {
    PhasePatternKind kind = PhasePatternKind::Equal;
    double value = 0.0;                // Equal
    std::vector<double> values;        // Explicit
    long samples = 1;                  // Random

    static PhasePattern equal(double value = 0.0);
    static PhasePattern pi_alternating();
    static PhasePattern explicit_list(std::vector<double> values);
    static PhasePattern random(long samples);

    std::string describe() const;
    /// Concrete per-mode phases; Random patterns require a sample index.
    std::vector<double> phases(std::size_t n_modes, std::uint64_t seed,
                               std::uint64_t sample = 0) const;
};

/// A pre-built experiment configuration. Geometry fields apply to the
/// Young kinds, `flux` to the Aharonov-Bohm kind, `explicit_modes` to
/// Custom. Occupations list one (particle, antiparticle) pair per mode;
/// an empty list defaults to one particle and, where the species has the
/// channel, one antiparticle per mode.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Custom;
    Species species = Species::ScalarBoson;
    int n_modes = 2;
    std::vector<Occupation> occupations;
    PhasePattern phases;
    double slit_separation = 0.1; // Young kinds
    double wavelength = 1.0;      // Young, Dicke, Aharonov-Bohm
    double mass = 0.0;
    double flux = 0.0; // Aharonov-Bohm phase offset of the second path
    AlgebraPolicy algebra = AlgebraPolicy::cross_unit();
    ContractionVariant contraction = ContractionVariant::Coherent;
    VacuumTerms vacuum_terms = VacuumTerms::Include;
    BoxDomain box;
    CrossConventions conventions;
    std::uint64_t seed = 0;
    std::vector<ModeLabel> explicit_modes; // Custom

    /// Validates cross-field constraints and fills species defaults.
    void validate() const;
};

/// Mode table implied by the configuration (kind, geometry, phases).
std::vector<ModeLabel> scenario_modes(const ScenarioConfig& config,
                                      std::uint64_t sample = 0);
/// Configured occupations, or the per-species defaults when absent.
std::vector<Occupation> scenario_occupations(const ScenarioConfig& config);
HamiltonianSpec scenario_spec(const ScenarioConfig& config, std::uint64_t sample = 0);
FockState scenario_state(const ScenarioConfig& config);
ContractionPolicy scenario_contraction(const ScenarioConfig& config);

/// Two-source interference run: the `conserved` report evaluates the
/// orthodox canonical baseline, `interfering` the configured policies.
struct YoungRun {
    ObservableReport conserved;
    ObservableReport interfering;
};

YoungRun run_young(const ScenarioConfig& config);

/// Collective-emission ensemble: N equal-wavevector photon modes. Equal
/// phases scale the energy as N^2; pi-alternating pairs (even N) cancel
/// it. Odd N with the alternating pattern is rejected.
ObservableReport run_dicke(int n_modes, const PhasePattern& pattern,
                           std::optional<ScenarioConfig> base = std::nullopt);

struct IncoherentResult {
    ObservableReport mean;
    long samples = 0;
    double se_energy = 0.0;
    Eigen::Vector3d se_momentum = Eigen::Vector3d::Zero();
    double se_number = 0.0;
    double se_charge = 0.0;
};

/// Monte Carlo average over independent uniform per-mode phases with
/// deterministic per-sample seeding.
IncoherentResult run_incoherent(int n_modes, long samples, std::uint64_t seed,
                                std::optional<ScenarioConfig> base = std::nullopt);

struct AuditShift {
    std::vector<double> deltas;
    double drift_energy = 0.0;   // signed change relative to the baseline
    double drift_momentum = 0.0; // max-norm of the momentum change
    double drift_number = 0.0;
    double drift_charge = 0.0;
};

struct AuditResult {
    ObservableReport baseline;
    std::vector<AuditShift> shifts;
    bool conserved_expected = false;
    bool passed = false;
    double tolerance = 0.0;
    double max_drift = 0.0;
};

/// Applies per-mode phase shifts and records the change of every
/// observable. Conservation is asserted when the contraction is orthodox
/// under the canonical algebra or when every pair overlap is negligible;
/// otherwise drifts are reported without a pass requirement.
AuditResult audit_conservation(const ScenarioConfig& config,
                               const std::vector<std::vector<double>>& phase_deltas,
                               double tolerance = 1e-12);

/// Dispatcher used by the CLI: runs the configured scenario and returns
/// the primary report with metadata filled in. Young kinds also return
/// the conserved baseline, Incoherent kinds the sampling statistics.
struct ScenarioRun {
    ObservableReport report;
    std::optional<ObservableReport> baseline;
    std::optional<IncoherentResult> statistics;
};

ScenarioRun run_scenario(const ScenarioConfig& config);

/// SplitMix64 step; the per-sample stream derivation used everywhere a
/// seeded phase draw is needed.
std::uint64_t splitmix64(std::uint64_t state);

/// Uniform phase in [0, 2*pi) for (seed, sample, slot), identical across
/// platforms and runs.
double uniform_phase(std::uint64_t seed, std::uint64_t sample, std::uint64_t slot);

} // namespace crossmode

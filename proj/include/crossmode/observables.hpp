#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossmode/hamiltonian.hpp"

namespace crossmode {

/// Occupation numbers of one mode, split by channel.
struct Occupation {
    long particles = 0;
    long antiparticles = 0;
};

/// Per-mode occupation numbers keyed by mode id. Missing modes count as
/// unoccupied. Fermion occupations above one and nonzero photon
/// antiparticle occupations are rejected at evaluation time.
struct FockState {
    std::map<std::string, Occupation> occupations;

    long count(const std::string& mode_id, Channel channel) const;

    static FockState of(const std::vector<ModeLabel>& modes, const std::vector<Occupation>& occ);
    static FockState vacuum() { return FockState{}; }
};

enum class ContractionVariant {
    Orthodox, // cross-mode quadratic expectations vanish
    Coherent  // <create_n annihilate_m> = sqrt(occ_n * occ_m) when the
              // algebra gives a unit-magnitude cross bracket
};

/// Rule assigning values to cross-mode quadratic expectations on a Fock
/// state. The coherent rule consults the algebra policy in force: only a
/// unit-magnitude cross bracket lets distinct modes contract.
struct ContractionPolicy {
    ContractionVariant variant = ContractionVariant::Orthodox;
    AlgebraPolicy algebra = AlgebraPolicy::canonical();

    static ContractionPolicy orthodox(AlgebraPolicy algebra = AlgebraPolicy::canonical()) {
        return {ContractionVariant::Orthodox, algebra};
    }
    static ContractionPolicy coherent(AlgebraPolicy algebra = AlgebraPolicy::cross_unit()) {
        return {ContractionVariant::Coherent, algebra};
    }

    std::string describe() const;
};

/// Expectation value of a normal-ordered expression on a Fock state.
/// Diagonal quadratic monomials read occupations, cross monomials follow
/// the contraction policy, the scalar constant adds as-is. Throws
/// OrderingError for un-normal-ordered input and PauliViolationError for
/// fermion occupations above one.
double expect(const OperatorExpr& expr, const FockState& state,
              const ContractionPolicy& contraction);

/// Contribution of one unordered mode pair to each observable.
struct PairContribution {
    std::string mode_n;
    std::string mode_m;
    double energy = 0.0;
    Eigen::Vector3d momentum = Eigen::Vector3d::Zero();
    double number = 0.0;
    double charge = 0.0;
};

/// Expectation values of energy, momentum, particle number and charge,
/// with the vacuum-term accounting, policy descriptors and a per-pair
/// cross-term breakdown. Scenario metadata is filled by the scenario
/// layer.
struct ObservableReport {
    double energy = 0.0;
    Eigen::Vector3d momentum = Eigen::Vector3d::Zero();
    double particle_number = 0.0;
    double charge = 0.0;
    double cross_energy = 0.0;
    std::vector<PairContribution> pairs;

    VacuumTerms vacuum_terms = VacuumTerms::Include;
    std::string algebra;
    std::string contraction;

    std::string scenario = "custom";
    std::string species;
    std::string phase_pattern;
    int n_modes = 0;
    std::uint64_t seed = 0;
};

/// Evaluates all four observables of `spec` on `state`. Momentum, number
/// and charge reuse the energy assembly with reweighted modes; the photon
/// charge is identically zero.
ObservableReport report(const HamiltonianSpec& spec, const FockState& state,
                        const ContractionPolicy& contraction);

/// Copy of `spec` with per-mode phases replaced.
HamiltonianSpec with_phases(const HamiltonianSpec& spec, const std::vector<double>& phases);

struct PhaseSweepEntry {
    std::vector<double> phases;
    ObservableReport report;
};

struct PhaseSweepResult {
    std::vector<PhaseSweepEntry> entries;
    std::size_t argmax = 0; // index of the maximum-energy entry
    std::size_t argmin = 0;
};

/// Evaluates `report` on the Cartesian product of per-mode phase grids.
/// Every grid must be nonempty.
PhaseSweepResult phase_sweep(const HamiltonianSpec& spec, const FockState& state,
                             const ContractionPolicy& contraction,
                             const std::vector<std::vector<double>>& grids);

} // namespace crossmode

#include "crossmode/fields.hpp"

#include <cmath>
#include <numbers>
#include <unordered_set>

namespace crossmode {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalize_phase(double phase) {
    double wrapped = std::fmod(phase, kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    return wrapped;
}

void validate_spin_index(Species species, int index) {
    switch (species) {
    case Species::ScalarBoson:
        if (index != 0) throw RegistryError("scalar mode must use spin index 0");
        break;
    case Species::VectorBoson:
        if (index != 1 && index != 2) throw RegistryError("photon polarization index must be 1 or 2");
        break;
    case Species::SpinorFermion:
        if (index != -1 && index != 1) throw RegistryError("fermion spin index must be -1 or +1");
        break;
    }
}

} // namespace

std::string to_string(Species species) {
    switch (species) {
    case Species::ScalarBoson: return "scalar-boson";
    case Species::VectorBoson: return "vector-boson";
    case Species::SpinorFermion: return "spinor-fermion";
    }
    return "unknown";
}

Species species_from_string(const std::string& name) {
    if (name == "scalar-boson") return Species::ScalarBoson;
    if (name == "vector-boson") return Species::VectorBoson;
    if (name == "spinor-fermion") return Species::SpinorFermion;
    throw ConfigError("species: expected one of scalar-boson, vector-boson, spinor-fermion, got \"" +
                      name + "\"");
}

bool is_fermion(Species species) { return species == Species::SpinorFermion; }

double dispersion(const Eigen::Vector3d& wavevector, double mass) {
    if (mass < 0.0) throw DomainError("dispersion: mass must be non-negative");
    const double energy = std::sqrt(wavevector.squaredNorm() + mass * mass);
    if (energy == 0.0) {
        throw DegenerateModeError("dispersion: zero-energy mode (|k| = 0 with zero mass)");
    }
    return energy;
}

ModeLabel ModeLabel::make(std::string id, Species species, const Eigen::Vector3d& wavevector,
                          double mass, double phase, int spin_index) {
    if (id.empty()) throw RegistryError("mode id must be nonempty");
    if (species == Species::VectorBoson && mass != 0.0) {
        throw RegistryError("vector-boson modes are massless");
    }
    validate_spin_index(species, spin_index);
    ModeLabel mode;
    mode.id = std::move(id);
    mode.species = species;
    mode.wavevector = wavevector;
    mode.mass = mass;
    mode.phase = normalize_phase(phase);
    mode.spin_index = spin_index;
    dispersion(wavevector, mass); // rejects the degenerate mode up front
    return mode;
}

BoxDomain::BoxDomain(const Eigen::Vector3d& sides) : side_lengths(sides) {
    if (!(sides.minCoeff() > 0.0)) throw DomainError("box side lengths must be positive");
}

double box_axis_factor(double dk, double length) {
    if (dk == 0.0) return length;
    const double half_arg = 0.5 * dk * length;
    // Exact zero whenever the half-argument reconstructs as a nonzero
    // multiple of pi; keeps lattice-separated modes exactly orthogonal.
    const double cycles = half_arg / std::numbers::pi;
    const double nearest = std::nearbyint(cycles);
    if (nearest != 0.0 && nearest * std::numbers::pi == half_arg) return 0.0;
    return 2.0 * std::sin(half_arg) / dk;
}

Complex overlap_integral(const Eigen::Vector3d& k_n, const Eigen::Vector3d& k_m, double phase_n,
                         double phase_m, const BoxDomain& box) {
    const Eigen::Vector3d dk = k_m - k_n;
    double spatial = 1.0;
    for (int axis = 0; axis < 3; ++axis) {
        spatial *= box_axis_factor(dk[axis], box.side_lengths[axis]);
    }
    return std::polar(1.0, phase_m - phase_n) * spatial;
}

FieldExpansion FieldExpansion::conjugate() const {
    FieldExpansion out = *this;
    for (FieldTerm& term : out.terms) {
        term.kind = term.kind == LadderKind::Create ? LadderKind::Annihilate : LadderKind::Create;
        term.wave_sign = -term.wave_sign;
    }
    return out;
}

FieldExpansion build_field(Species species, const std::vector<ModeLabel>& modes) {
    std::unordered_set<std::string> seen;
    for (const ModeLabel& mode : modes) {
        if (mode.species != species) {
            throw SpeciesMismatchError("build_field: mode \"" + mode.id + "\" is " +
                                       to_string(mode.species) + ", expected " + to_string(species));
        }
        if (!seen.insert(mode.id).second) {
            throw RegistryError("build_field: duplicate mode id \"" + mode.id + "\"");
        }
    }

    FieldExpansion field;
    field.species = species;
    field.modes = modes;
    field.terms.reserve(2 * modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double amplitude = 1.0 / std::sqrt(2.0 * modes[i].energy());
        field.terms.push_back({i, LadderKind::Annihilate, Channel::Particle, amplitude, -1});
        // Photons have no separate antiparticle channel; the conjugate
        // term collapses onto a particle creator.
        const Channel conj_channel =
            species == Species::VectorBoson ? Channel::Particle : Channel::Antiparticle;
        field.terms.push_back({i, LadderKind::Create, conj_channel, amplitude, +1});
    }
    return field;
}

} // namespace crossmode

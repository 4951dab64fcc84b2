#include "crossmode/hamiltonian.hpp"

#include <cmath>

namespace crossmode {

namespace {

// Per-mode weight of the diagonal and cross assemblies.
double mode_weight(ObservableKind kind, const ModeLabel& mode) {
    switch (kind) {
    case ObservableKind::Energy: return mode.energy();
    case ObservableKind::MomentumX: return mode.wavevector.x();
    case ObservableKind::MomentumY: return mode.wavevector.y();
    case ObservableKind::MomentumZ: return mode.wavevector.z();
    case ObservableKind::Number: return 1.0;
    case ObservableKind::Charge: return 1.0;
    }
    return 0.0;
}

double pair_weight(ObservableKind kind, const ModeLabel& mode_n, const ModeLabel& mode_m) {
    switch (kind) {
    case ObservableKind::Energy: return std::sqrt(mode_n.energy() * mode_m.energy());
    case ObservableKind::MomentumX:
    case ObservableKind::MomentumY:
    case ObservableKind::MomentumZ: {
        const int axis = static_cast<int>(kind) - static_cast<int>(ObservableKind::MomentumX);
        return 0.5 * (mode_n.wavevector[axis] + mode_m.wavevector[axis]);
    }
    case ObservableKind::Number: return 1.0;
    case ObservableKind::Charge: return 1.0;
    }
    return 0.0;
}

// Charge weighs the antiparticle channel with the opposite sign.
double antiparticle_sign(ObservableKind kind) {
    return kind == ObservableKind::Charge ? -1.0 : 1.0;
}

bool photon_charge(Species species, ObservableKind kind) {
    // Photons and anti-photons are identified, so the field carries no
    // charge at all.
    return species == Species::VectorBoson && kind == ObservableKind::Charge;
}

OperatorExpr number_like(const ModeLabel& mode, Channel channel, double weight) {
    return make_term(weight, {create_op(mode, channel), annihilate_op(mode, channel)});
}

} // namespace

std::string to_string(VacuumTerms v) { return v == VacuumTerms::Include ? "include" : "exclude"; }

double CrossConventions::factor(Species species) const {
    switch (species) {
    case Species::ScalarBoson: return scalar_boson;
    case Species::VectorBoson: return vector_boson;
    case Species::SpinorFermion: return spinor_fermion;
    }
    return 1.0;
}

OperatorExpr diagonal_term(const ModeLabel& mode, VacuumTerms vacuum_terms, ObservableKind kind) {
    if (photon_charge(mode.species, kind)) return {};

    const double weight = mode_weight(kind, mode);
    const double anti = antiparticle_sign(kind);
    const bool include = vacuum_terms == VacuumTerms::Include;

    OperatorExpr expr;
    switch (mode.species) {
    case Species::ScalarBoson:
        expr += number_like(mode, Channel::Particle, weight);
        expr += number_like(mode, Channel::Antiparticle, anti * weight);
        if (include) expr += make_constant(anti * weight);
        break;
    case Species::VectorBoson:
        expr += number_like(mode, Channel::Particle, weight);
        if (include) expr += make_constant(0.5 * weight);
        break;
    case Species::SpinorFermion:
        expr += number_like(mode, Channel::Particle, weight);
        expr += number_like(mode, Channel::Antiparticle, anti * weight);
        if (include) expr += make_constant(-anti * weight);
        break;
    }
    return merged(expr);
}

OperatorExpr cross_term_unordered(const ModeLabel& mode_n, const ModeLabel& mode_m,
                                  const BoxDomain& box, const CrossConventions& conventions,
                                  ObservableKind kind) {
    if (mode_n.species != mode_m.species) {
        throw SpeciesMismatchError("cross_term: modes \"" + mode_n.id + "\" and \"" + mode_m.id +
                                   "\" mix species");
    }
    if (mode_n.id == mode_m.id) {
        throw DomainError("cross_term: distinct modes required, got \"" + mode_n.id + "\" twice");
    }
    // Cross terms couple equal spin or polarization indices only.
    if (mode_n.spin_index != mode_m.spin_index) return {};
    if (photon_charge(mode_n.species, kind)) return {};

    const Complex overlap =
        overlap_integral(mode_n.wavevector, mode_m.wavevector, mode_n.phase, mode_m.phase, box);
    const Complex coeff = conventions.factor(mode_n.species) * pair_weight(kind, mode_n, mode_m);
    const double anti = antiparticle_sign(kind);

    OperatorExpr expr;
    switch (mode_n.species) {
    case Species::ScalarBoson:
        expr += make_term(coeff * overlap,
                          {create_op(mode_n, Channel::Particle), annihilate_op(mode_m, Channel::Particle)});
        expr += make_term(anti * coeff * std::conj(overlap),
                          {annihilate_op(mode_n, Channel::Antiparticle),
                           create_op(mode_m, Channel::Antiparticle)});
        break;
    case Species::VectorBoson:
        expr += make_term(coeff * overlap,
                          {create_op(mode_n, Channel::Particle), annihilate_op(mode_m, Channel::Particle)});
        expr += make_term(coeff * std::conj(overlap),
                          {annihilate_op(mode_n, Channel::Particle), create_op(mode_m, Channel::Particle)});
        break;
    case Species::SpinorFermion:
        // The antiparticle pair enters with a minus sign.
        expr += make_term(coeff * overlap,
                          {create_op(mode_n, Channel::Particle), annihilate_op(mode_m, Channel::Particle)});
        expr += make_term(-anti * coeff * std::conj(overlap),
                          {annihilate_op(mode_n, Channel::Antiparticle),
                           create_op(mode_m, Channel::Antiparticle)});
        break;
    }
    return expr;
}

OperatorExpr cross_term(const ModeLabel& mode_n, const ModeLabel& mode_m, const BoxDomain& box,
                        const AlgebraPolicy& policy, const CrossConventions& conventions,
                        ObservableKind kind) {
    return normal_order(cross_term_unordered(mode_n, mode_m, box, conventions, kind), policy);
}

OperatorExpr build_observable(const HamiltonianSpec& spec, ObservableKind kind) {
    OperatorExpr total;
    for (const ModeLabel& mode : spec.field.modes) {
        total += diagonal_term(mode, spec.vacuum_terms, kind);
    }
    for (std::size_t n = 0; n < spec.field.modes.size(); ++n) {
        for (std::size_t m = 0; m < spec.field.modes.size(); ++m) {
            if (n == m) continue;
            total += cross_term_unordered(spec.field.modes[n], spec.field.modes[m], spec.box,
                                          spec.conventions, kind);
        }
    }
    total = normal_order(total, spec.policy);
    if (spec.vacuum_terms == VacuumTerms::Exclude) total.constant = {0.0, 0.0};
    return total;
}

OperatorExpr build_hamiltonian(const HamiltonianSpec& spec) {
    return build_observable(spec, ObservableKind::Energy);
}

double classical_energy(const std::vector<Complex>& amplitudes, const std::vector<ModeLabel>& modes,
                        const BoxDomain& box) {
    if (amplitudes.size() != modes.size()) {
        throw DomainError("classical_energy: one amplitude per mode required");
    }
    for (const ModeLabel& mode : modes) {
        if (mode.species != Species::ScalarBoson) {
            throw SpeciesMismatchError("classical_energy is defined for the scalar-boson field");
        }
    }
    for (const Complex& amplitude : amplitudes) {
        if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag())) {
            throw DomainError("classical_energy: amplitudes must be finite");
        }
    }

    Complex total{0.0, 0.0};
    for (std::size_t n = 0; n < modes.size(); ++n) {
        for (std::size_t m = 0; m < modes.size(); ++m) {
            const double e_n = modes[n].energy();
            const double e_m = modes[m].energy();
            const double bilinear = e_n * e_m + modes[n].wavevector.dot(modes[m].wavevector) +
                                    modes[n].mass * modes[m].mass;
            const Complex overlap = overlap_integral(modes[n].wavevector, modes[m].wavevector,
                                                     modes[n].phase, modes[m].phase, box);
            total += std::conj(amplitudes[n]) * amplitudes[m] * overlap * bilinear /
                     (2.0 * std::sqrt(e_n * e_m));
        }
    }
    return total.real();
}

} // namespace crossmode

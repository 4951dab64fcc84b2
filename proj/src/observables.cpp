#include "crossmode/observables.hpp"

#include <cmath>

namespace crossmode {

namespace {

void validate_occupation(const ModeLabel& mode, const FockState& state) {
    const long particles = state.count(mode.id, Channel::Particle);
    const long antiparticles = state.count(mode.id, Channel::Antiparticle);
    if (particles < 0 || antiparticles < 0) {
        throw DomainError("occupation numbers must be non-negative (mode \"" + mode.id + "\")");
    }
    if (is_fermion(mode.species) && (particles > 1 || antiparticles > 1)) {
        throw PauliViolationError("fermion mode \"" + mode.id + "\" holds more than one quantum");
    }
    if (mode.species == Species::VectorBoson && antiparticles != 0) {
        throw DomainError("photon mode \"" + mode.id + "\" has no antiparticle channel");
    }
}

bool unit_cross_bracket(const ModeLabel& mode_n, const ModeLabel& mode_m, Channel channel,
                        const AlgebraPolicy& algebra) {
    const Complex value =
        bracket(annihilate_op(mode_n, channel), create_op(mode_m, channel), algebra);
    return std::abs(std::abs(value) - 1.0) < 1e-12;
}

OperatorExpr pair_expression(const HamiltonianSpec& spec, std::size_t n, std::size_t m,
                             ObservableKind kind) {
    OperatorExpr expr = cross_term_unordered(spec.field.modes[n], spec.field.modes[m], spec.box,
                                             spec.conventions, kind) +
                        cross_term_unordered(spec.field.modes[m], spec.field.modes[n], spec.box,
                                             spec.conventions, kind);
    expr = normal_order(expr, spec.policy);
    if (spec.vacuum_terms == VacuumTerms::Exclude) expr.constant = {0.0, 0.0};
    return expr;
}

} // namespace

long FockState::count(const std::string& mode_id, Channel channel) const {
    const auto it = occupations.find(mode_id);
    if (it == occupations.end()) return 0;
    return channel == Channel::Particle ? it->second.particles : it->second.antiparticles;
}

FockState FockState::of(const std::vector<ModeLabel>& modes, const std::vector<Occupation>& occ) {
    if (modes.size() != occ.size()) {
        throw DomainError("FockState::of: one occupation pair per mode required");
    }
    FockState state;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        state.occupations[modes[i].id] = occ[i];
    }
    return state;
}

std::string ContractionPolicy::describe() const {
    return variant == ContractionVariant::Orthodox ? "orthodox" : "coherent";
}

double expect(const OperatorExpr& expr, const FockState& state,
              const ContractionPolicy& contraction) {
    if (!is_normal_ordered(expr)) {
        throw OrderingError("expect: expression must be normal-ordered");
    }

    for (const Monomial& monomial : expr.monomials) {
        if (monomial.factors.size() > 2) {
            throw DegreeError("expect: only quadratic expressions are supported");
        }
        for (const LadderOp& op : monomial.factors) validate_occupation(op.mode, state);
    }

    Complex total = expr.constant;
    for (const Monomial& monomial : expr.monomials) {
        if (monomial.factors.size() != 2) continue; // <create> = <annihilate> = 0
        const LadderOp& left = monomial.factors[0];
        const LadderOp& right = monomial.factors[1];
        // Fock states connect only creator-annihilator pairs within one
        // channel; everything else changes occupation numbers.
        if (left.kind != LadderKind::Create || right.kind != LadderKind::Annihilate) continue;
        if (left.channel != right.channel) continue;

        if (left.mode.id == right.mode.id) {
            total += monomial.coefficient *
                     static_cast<double>(state.count(left.mode.id, left.channel));
            continue;
        }
        if (contraction.variant == ContractionVariant::Coherent &&
            unit_cross_bracket(right.mode, left.mode, left.channel, contraction.algebra)) {
            const double occ_left = static_cast<double>(state.count(left.mode.id, left.channel));
            const double occ_right = static_cast<double>(state.count(right.mode.id, right.channel));
            total += monomial.coefficient * std::sqrt(occ_left * occ_right);
        }
    }
    return total.real();
}

ObservableReport report(const HamiltonianSpec& spec, const FockState& state,
                        const ContractionPolicy& contraction) {
    ObservableReport out;
    out.energy = expect(build_observable(spec, ObservableKind::Energy), state, contraction);
    out.momentum =
        Eigen::Vector3d(expect(build_observable(spec, ObservableKind::MomentumX), state, contraction),
                        expect(build_observable(spec, ObservableKind::MomentumY), state, contraction),
                        expect(build_observable(spec, ObservableKind::MomentumZ), state, contraction));
    out.particle_number = expect(build_observable(spec, ObservableKind::Number), state, contraction);
    out.charge = expect(build_observable(spec, ObservableKind::Charge), state, contraction);

    const auto& modes = spec.field.modes;
    for (std::size_t n = 0; n < modes.size(); ++n) {
        for (std::size_t m = n + 1; m < modes.size(); ++m) {
            PairContribution pair;
            pair.mode_n = modes[n].id;
            pair.mode_m = modes[m].id;
            pair.energy = expect(pair_expression(spec, n, m, ObservableKind::Energy), state, contraction);
            pair.momentum = Eigen::Vector3d(
                expect(pair_expression(spec, n, m, ObservableKind::MomentumX), state, contraction),
                expect(pair_expression(spec, n, m, ObservableKind::MomentumY), state, contraction),
                expect(pair_expression(spec, n, m, ObservableKind::MomentumZ), state, contraction));
            pair.number = expect(pair_expression(spec, n, m, ObservableKind::Number), state, contraction);
            pair.charge = expect(pair_expression(spec, n, m, ObservableKind::Charge), state, contraction);
            out.cross_energy += pair.energy;
            out.pairs.push_back(std::move(pair));
        }
    }

    out.vacuum_terms = spec.vacuum_terms;
    out.algebra = spec.policy.describe();
    out.contraction = contraction.describe();
    out.species = to_string(spec.field.species);
    out.n_modes = static_cast<int>(modes.size());
    return out;
}

HamiltonianSpec with_phases(const HamiltonianSpec& spec, const std::vector<double>& phases) {
    if (phases.size() != spec.field.modes.size()) {
        throw DomainError("with_phases: one phase per mode required");
    }
    std::vector<ModeLabel> modes = spec.field.modes;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        modes[i] = ModeLabel::make(modes[i].id, modes[i].species, modes[i].wavevector, modes[i].mass,
                                   phases[i], modes[i].spin_index);
    }
    HamiltonianSpec out = spec;
    out.field = build_field(spec.field.species, modes);
    return out;
}

PhaseSweepResult phase_sweep(const HamiltonianSpec& spec, const FockState& state,
                             const ContractionPolicy& contraction,
                             const std::vector<std::vector<double>>& grids) {
    if (grids.size() != spec.field.modes.size()) {
        throw ConfigError("phase_sweep: one grid per mode required");
    }
    for (const auto& grid : grids) {
        if (grid.empty()) throw ConfigError("phase_sweep: empty phase grid");
    }

    PhaseSweepResult result;
    std::vector<std::size_t> cursor(grids.size(), 0);
    std::vector<double> phases(grids.size());
    while (true) {
        for (std::size_t i = 0; i < grids.size(); ++i) phases[i] = grids[i][cursor[i]];
        PhaseSweepEntry entry;
        entry.phases = phases;
        entry.report = report(with_phases(spec, phases), state, contraction);
        result.entries.push_back(std::move(entry));

        std::size_t axis = 0;
        while (axis < cursor.size() && ++cursor[axis] == grids[axis].size()) {
            cursor[axis] = 0;
            ++axis;
        }
        if (axis == cursor.size()) break;
    }

    for (std::size_t i = 0; i < result.entries.size(); ++i) {
        if (result.entries[i].report.energy > result.entries[result.argmax].report.energy) {
            result.argmax = i;
        }
        if (result.entries[i].report.energy < result.entries[result.argmin].report.energy) {
            result.argmin = i;
        }
    }
    return result;
}

} // namespace crossmode

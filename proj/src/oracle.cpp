#include "crossmode/oracle.hpp"

#include <cmath>

namespace crossmode {

namespace {

constexpr double kEqualK = 1e-12;

} // namespace

TruncatedFockSpace::TruncatedFockSpace(std::vector<ModeLabel> modes, long n_max)
    : modes_(std::move(modes)), n_max_(n_max) {
    if (modes_.empty()) throw DomainError("TruncatedFockSpace: at least one mode required");
    if (n_max_ < 1) throw DomainError("TruncatedFockSpace: cutoff must be at least 1");

    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const bool fermionic = is_fermion(modes_[i].species);
        const long levels = fermionic ? 2 : n_max_ + 1;
        slots_.push_back({i, Channel::Particle, levels});
        if (modes_[i].species != Species::VectorBoson) {
            slots_.push_back({i, Channel::Antiparticle, levels});
        }
    }

    dimension_ = 1;
    strides_.resize(slots_.size());
    for (std::size_t s = 0; s < slots_.size(); ++s) {
        strides_[s] = dimension_;
        if (dimension_ > (1L << 26) / slots_[s].levels) {
            throw DomainError("TruncatedFockSpace: basis too large for a brute-force oracle");
        }
        dimension_ *= slots_[s].levels;
    }
    build_ladders();
}

void TruncatedFockSpace::build_ladders() {
    annihilators_.resize(slots_.size());
    creators_.resize(slots_.size());

    for (std::size_t s = 0; s < slots_.size(); ++s) {
        const bool fermionic = is_fermion(modes_[slots_[s].mode_index].species);
        std::vector<Eigen::Triplet<Complex>> triplets;
        triplets.reserve(static_cast<std::size_t>(dimension_));

        for (long index = 0; index < dimension_; ++index) {
            const long occupation = (index / strides_[s]) % slots_[s].levels;
            if (occupation == 0) continue;
            double amplitude = fermionic ? 1.0 : std::sqrt(static_cast<double>(occupation));
            if (fermionic) {
                // Jordan-Wigner string over the preceding fermionic slots.
                long parity = 0;
                for (std::size_t j = 0; j < s; ++j) {
                    parity += (index / strides_[j]) % slots_[j].levels;
                }
                if (parity % 2 == 1) amplitude = -amplitude;
            }
            triplets.emplace_back(index - strides_[s], index, Complex{amplitude, 0.0});
        }

        SparseMatrix lower(dimension_, dimension_);
        lower.setFromTriplets(triplets.begin(), triplets.end());
        annihilators_[s] = lower;
        creators_[s] = SparseMatrix(lower.adjoint());
    }
}

std::size_t TruncatedFockSpace::slot_index(const std::string& mode_id, Channel channel) const {
    for (std::size_t s = 0; s < slots_.size(); ++s) {
        if (slots_[s].channel == channel && modes_[slots_[s].mode_index].id == mode_id) return s;
    }
    throw RegistryError("TruncatedFockSpace: unknown mode \"" + mode_id + "\"");
}

const TruncatedFockSpace::SparseMatrix& TruncatedFockSpace::annihilation(const std::string& mode_id,
                                                                         Channel channel) const {
    return annihilators_[slot_index(mode_id, channel)];
}

const TruncatedFockSpace::SparseMatrix& TruncatedFockSpace::creation(const std::string& mode_id,
                                                                     Channel channel) const {
    return creators_[slot_index(mode_id, channel)];
}

Eigen::VectorXcd TruncatedFockSpace::basis_vector(const FockState& state) const {
    long index = 0;
    for (std::size_t s = 0; s < slots_.size(); ++s) {
        const ModeLabel& mode = modes_[slots_[s].mode_index];
        const long occupation = state.count(mode.id, slots_[s].channel);
        if (is_fermion(mode.species) && occupation > 1) {
            throw PauliViolationError("fermion mode \"" + mode.id + "\" holds more than one quantum");
        }
        if (!is_fermion(mode.species) && occupation >= n_max_) {
            throw TruncationError("occupation " + std::to_string(occupation) + " of mode \"" +
                                  mode.id + "\" is at the truncation cutoff");
        }
        index += occupation * strides_[s];
    }
    Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(dimension_);
    vec[index] = 1.0;
    return vec;
}

TruncatedFockSpace::SparseMatrix TruncatedFockSpace::matrix_of(const OperatorExpr& expr) const {
    SparseMatrix total(dimension_, dimension_);
    for (const Monomial& monomial : expr.monomials) {
        SparseMatrix product;
        bool first = true;
        for (const LadderOp& op : monomial.factors) {
            const SparseMatrix& matrix = op.kind == LadderKind::Create
                                             ? creation(op.mode.id, op.channel)
                                             : annihilation(op.mode.id, op.channel);
            product = first ? matrix : SparseMatrix(product * matrix);
            first = false;
        }
        total += monomial.coefficient * product;
    }
    if (expr.constant != Complex{0.0, 0.0}) {
        SparseMatrix identity(dimension_, dimension_);
        identity.setIdentity();
        total += expr.constant * identity;
    }
    return total;
}

double matrix_expectation(const OperatorExpr& expr, const FockState& state,
                          const TruncatedFockSpace& space) {
    const Eigen::VectorXcd vec = space.basis_vector(state);
    const Eigen::VectorXcd image = space.matrix_of(expr) * vec;
    return vec.dot(image).real();
}

double merged_energy(const std::vector<ModeLabel>& modes, const std::vector<Occupation>& occupations,
                     const std::vector<double>& phases, VacuumTerms vacuum_terms) {
    if (modes.empty()) throw DomainError("merged_energy: at least one mode required");
    if (occupations.size() != modes.size() || phases.size() != modes.size()) {
        throw DomainError("merged_energy: one occupation pair and phase per mode required");
    }
    const Species species = modes.front().species;
    if (is_fermion(species)) throw DomainError("merged_energy: defined for boson species");
    for (const ModeLabel& mode : modes) {
        if (mode.species != species) throw SpeciesMismatchError("merged_energy: mixed species");
        if ((mode.wavevector - modes.front().wavevector).norm() > kEqualK) {
            throw DomainError("merged_energy: modes must share one wavevector");
        }
        if (std::abs(mode.energy() - modes.front().energy()) > kEqualK) {
            throw DomainError("merged_energy: modes must share one energy");
        }
    }

    // Collective amplitudes: one coherent wave per channel plus the bare
    // phase sum that carries the vacuum constants.
    Complex particle_wave{0.0, 0.0};
    Complex antiparticle_wave{0.0, 0.0};
    Complex phase_sum{0.0, 0.0};
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (occupations[i].particles < 0 || occupations[i].antiparticles < 0) {
            throw DomainError("merged_energy: occupations must be non-negative");
        }
        if (species == Species::VectorBoson && occupations[i].antiparticles != 0) {
            throw DomainError("merged_energy: photon antiparticle channel must be empty");
        }
        const Complex rotor = std::polar(1.0, phases[i]);
        particle_wave += rotor * std::sqrt(static_cast<double>(occupations[i].particles));
        antiparticle_wave += rotor * std::sqrt(static_cast<double>(occupations[i].antiparticles));
        phase_sum += rotor;
    }

    const double energy = modes.front().energy();
    double value = energy * std::norm(particle_wave);
    if (species == Species::ScalarBoson) value += energy * std::norm(antiparticle_wave);
    if (vacuum_terms == VacuumTerms::Include) {
        const double vacuum_weight = species == Species::VectorBoson ? 0.5 : 1.0;
        value += energy * vacuum_weight * std::norm(phase_sum);
    }
    return value;
}

} // namespace crossmode

#include "doctest.h"

#include <numbers>
#include <random>

#include "crossmode/oracle.hpp"

using namespace crossmode;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<ModeLabel> random_modes(Species species, std::size_t count, std::mt19937& rng,
                                    bool shared_k) {
    std::uniform_real_distribution<double> component(-3.0, 3.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    const Eigen::Vector3d base(component(rng), component(rng), component(rng));
    std::vector<ModeLabel> modes;
    for (std::size_t i = 0; i < count; ++i) {
        const Eigen::Vector3d k =
            shared_k ? base : Eigen::Vector3d(component(rng), component(rng), component(rng));
        int index = 0;
        if (species == Species::VectorBoson) index = 1;
        if (species == Species::SpinorFermion) index = 1;
        modes.push_back(ModeLabel::make("m" + std::to_string(i), species, k,
                                        species == Species::VectorBoson ? 0.0 : 1.0, angle(rng),
                                        index));
    }
    return modes;
}

} // namespace

TEST_CASE("ladder matrices satisfy the canonical algebra") {
    std::mt19937 rng(3);

    SUBCASE("bosonic commutator is the identity below the cutoff") {
        const auto modes = random_modes(Species::ScalarBoson, 2, rng, false);
        const TruncatedFockSpace space(modes, 4);
        for (const auto& mode : modes) {
            for (const Channel channel : {Channel::Particle, Channel::Antiparticle}) {
                const auto& lower = space.annihilation(mode.id, channel);
                const auto& raise = space.creation(mode.id, channel);
                CHECK((Eigen::MatrixXcd(raise) - Eigen::MatrixXcd(lower).adjoint()).norm() == 0.0);

                const Eigen::MatrixXcd commutator =
                    Eigen::MatrixXcd(lower * raise) - Eigen::MatrixXcd(raise * lower);
                // Check the action on every state that stays below the top level.
                FockState probe;
                for (long occupation = 0; occupation < 3; ++occupation) {
                    probe.occupations[mode.id] =
                        channel == Channel::Particle ? Occupation{occupation, 0}
                                                     : Occupation{0, occupation};
                    const Eigen::VectorXcd vec = space.basis_vector(probe);
                    CHECK((commutator * vec - vec).norm() < 1e-13);
                }
            }
        }
    }

    SUBCASE("cross-mode and cross-channel commutators vanish") {
        const auto modes = random_modes(Species::ScalarBoson, 2, rng, false);
        const TruncatedFockSpace space(modes, 3);
        const auto& a0 = space.annihilation(modes[0].id, Channel::Particle);
        const auto& c1 = space.creation(modes[1].id, Channel::Particle);
        CHECK((Eigen::MatrixXcd(a0 * c1) - Eigen::MatrixXcd(c1 * a0)).norm() < 1e-13);
        const auto& b0 = space.creation(modes[0].id, Channel::Antiparticle);
        CHECK((Eigen::MatrixXcd(a0 * b0) - Eigen::MatrixXcd(b0 * a0)).norm() < 1e-13);
    }

    SUBCASE("fermion anticommutators are exactly canonical") {
        const auto modes = random_modes(Species::SpinorFermion, 3, rng, false);
        const TruncatedFockSpace space(modes, 1);
        Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(space.dimension(), space.dimension());
        for (std::size_t i = 0; i < modes.size(); ++i) {
            for (std::size_t j = 0; j < modes.size(); ++j) {
                for (const Channel ci : {Channel::Particle, Channel::Antiparticle}) {
                    for (const Channel cj : {Channel::Particle, Channel::Antiparticle}) {
                        const auto& lower = space.annihilation(modes[i].id, ci);
                        const auto& raise = space.creation(modes[j].id, cj);
                        const Eigen::MatrixXcd anti =
                            Eigen::MatrixXcd(lower * raise) + Eigen::MatrixXcd(raise * lower);
                        if (i == j && ci == cj) {
                            CHECK((anti - identity).norm() < 1e-13);
                        } else {
                            CHECK(anti.norm() < 1e-13);
                        }
                        const auto& lower_j = space.annihilation(modes[j].id, cj);
                        const Eigen::MatrixXcd anti_ll =
                            Eigen::MatrixXcd(lower * lower_j) + Eigen::MatrixXcd(lower_j * lower);
                        CHECK(anti_ll.norm() < 1e-13);
                    }
                }
            }
        }
    }
}

TEST_CASE("matrix expectations on marked examples") {
    std::mt19937 rng(8);

    SUBCASE("single-mode energy with two particles") {
        const std::vector<ModeLabel> modes = {
            ModeLabel::make("s", Species::ScalarBoson, {3, 0, 0}, 4.0)};
        const TruncatedFockSpace space(modes, 4);
        HamiltonianSpec spec;
        spec.field = build_field(Species::ScalarBoson, modes);
        spec.policy = AlgebraPolicy::canonical();
        const FockState state = FockState::of(modes, {{2, 0}});
        CHECK(matrix_expectation(build_hamiltonian(spec), state, space) ==
              doctest::Approx(5.0 * 3.0).epsilon(1e-13));
    }

    SUBCASE("number operator on the vacuum") {
        const std::vector<ModeLabel> modes = {
            ModeLabel::make("s", Species::ScalarBoson, {1, 0, 0})};
        const TruncatedFockSpace space(modes, 3);
        const OperatorExpr number = make_term(1.0, {create_op(modes[0]), annihilate_op(modes[0])});
        CHECK(matrix_expectation(number, FockState::vacuum(), space) == doctest::Approx(0.0));
    }

    SUBCASE("two-mode canonical Hamiltonian matches the closed-form evaluator") {
        const auto modes = random_modes(Species::ScalarBoson, 2, rng, false);
        const TruncatedFockSpace space(modes, 4);
        HamiltonianSpec spec;
        spec.field = build_field(Species::ScalarBoson, modes);
        spec.policy = AlgebraPolicy::canonical();
        const FockState state = FockState::of(modes, {{2, 1}, {0, 2}});
        const double via_matrix = matrix_expectation(build_hamiltonian(spec), state, space);
        const double via_expect =
            expect(build_hamiltonian(spec), state, ContractionPolicy::orthodox());
        CHECK(via_matrix == doctest::Approx(via_expect).epsilon(1e-10));
    }
}

TEST_CASE("matrix oracle agrees with the evaluator on random canonical expressions") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);

    for (int trial = 0; trial < 60; ++trial) {
        const Species species = std::array{Species::ScalarBoson, Species::VectorBoson,
                                           Species::SpinorFermion}[trial % 3];
        const std::size_t count = 1 + trial % 3;
        const auto modes = random_modes(species, count, rng, trial % 2 == 0);
        const long cutoff = 4;
        const TruncatedFockSpace space(modes, cutoff);

        std::vector<Occupation> occupations;
        for (std::size_t i = 0; i < count; ++i) {
            const long limit = is_fermion(species) ? 1 : 2;
            occupations.push_back({static_cast<long>(rng() % (limit + 1)),
                                   species == Species::VectorBoson
                                       ? 0
                                       : static_cast<long>(rng() % (limit + 1))});
        }
        const FockState state = FockState::of(modes, occupations);

        OperatorExpr expr = make_constant({coeff(rng), 0.0});
        for (int t = 0; t < 6; ++t) {
            const ModeLabel& mode_a = modes[rng() % count];
            const ModeLabel& mode_b = modes[rng() % count];
            const Channel channel_a = species != Species::VectorBoson && rng() % 2 == 0
                                          ? Channel::Antiparticle
                                          : Channel::Particle;
            const Channel channel_b = species != Species::VectorBoson && rng() % 2 == 0
                                          ? Channel::Antiparticle
                                          : Channel::Particle;
            const LadderOp op_a = rng() % 2 == 0 ? create_op(mode_a, channel_a)
                                                 : annihilate_op(mode_a, channel_a);
            const LadderOp op_b = rng() % 2 == 0 ? create_op(mode_b, channel_b)
                                                 : annihilate_op(mode_b, channel_b);
            // Hermitian pairs keep the real part carrying all information.
            OperatorExpr piece = make_term({coeff(rng), coeff(rng)}, {op_a, op_b});
            expr += piece + adjoint(piece);
        }

        const OperatorExpr ordered = normal_order(expr, AlgebraPolicy::canonical());
        const double via_matrix_raw = matrix_expectation(expr, state, space);
        const double via_matrix_ordered = matrix_expectation(ordered, state, space);
        const double via_expect =
            expect(ordered, state, ContractionPolicy::orthodox(AlgebraPolicy::canonical()));

        // Normal ordering preserves matrix elements, and the evaluator
        // agrees with the brute-force matrix value.
        CHECK(via_matrix_raw == doctest::Approx(via_matrix_ordered).epsilon(1e-10));
        CHECK(via_expect == doctest::Approx(via_matrix_raw).epsilon(1e-10));
    }
}

TEST_CASE("truncation behavior") {
    const std::vector<ModeLabel> modes = {ModeLabel::make("s", Species::ScalarBoson, {1, 0, 0})};

    SUBCASE("results are independent of the cutoff once it clears the occupations") {
        HamiltonianSpec spec;
        spec.field = build_field(Species::ScalarBoson, modes);
        spec.policy = AlgebraPolicy::canonical();
        const FockState state = FockState::of(modes, {{2, 2}});
        const double small = matrix_expectation(build_hamiltonian(spec), state,
                                                TruncatedFockSpace(modes, 4));
        const double large = matrix_expectation(build_hamiltonian(spec), state,
                                                TruncatedFockSpace(modes, 6));
        CHECK(small == doctest::Approx(large).epsilon(1e-13));
    }

    SUBCASE("occupations at the cutoff are rejected") {
        const TruncatedFockSpace space(modes, 3);
        const FockState state = FockState::of(modes, {{3, 0}});
        const OperatorExpr number = make_term(1.0, {create_op(modes[0]), annihilate_op(modes[0])});
        CHECK_THROWS_AS(matrix_expectation(number, state, space), TruncationError);
    }
}

TEST_CASE("merged-mode oracle") {
    SUBCASE("marked endpoint values") {
        std::vector<ModeLabel> modes;
        for (int i = 0; i < 2; ++i) {
            modes.push_back(
                ModeLabel::make("m" + std::to_string(i), Species::ScalarBoson, {2, 0, 0}));
        }
        const double energy = modes[0].energy();
        CHECK(merged_energy(modes, {{1, 1}, {1, 1}}, {0.0, 0.0}, VacuumTerms::Include) ==
              doctest::Approx(12.0 * energy).epsilon(1e-13));
        CHECK(merged_energy(modes, {{1, 1}, {1, 1}}, {0.0, kPi}, VacuumTerms::Include) ==
              doctest::Approx(0.0).epsilon(1e-13));

        modes.push_back(ModeLabel::make("m2", Species::ScalarBoson, {2, 0, 0}));
        CHECK(merged_energy(modes, {{1, 0}, {1, 0}, {1, 0}}, {0.3, 0.3, 0.3},
                            VacuumTerms::Exclude) == doctest::Approx(9.0 * energy).epsilon(1e-13));
    }

    SUBCASE("domain validation") {
        const std::vector<ModeLabel> unequal = {
            ModeLabel::make("a", Species::ScalarBoson, {1, 0, 0}),
            ModeLabel::make("b", Species::ScalarBoson, {2, 0, 0})};
        CHECK_THROWS_AS(merged_energy(unequal, {{1, 0}, {1, 0}}, {0.0, 0.0}, VacuumTerms::Include),
                        DomainError);

        const std::vector<ModeLabel> fermions = {
            ModeLabel::make("f", Species::SpinorFermion, {1, 0, 0}, 1.0, 0.0, 1)};
        CHECK_THROWS_AS(merged_energy(fermions, {{1, 0}}, {0.0}, VacuumTerms::Include),
                        DomainError);
    }

    SUBCASE("agrees with the evaluator over random equal-wavevector configurations") {
        std::mt19937 rng(29);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
        for (int trial = 0; trial < 40; ++trial) {
            const Species species = trial % 2 == 0 ? Species::ScalarBoson : Species::VectorBoson;
            const std::size_t count = 2 + trial % 3;
            const auto modes = random_modes(species, count, rng, true);

            std::vector<Occupation> occupations;
            std::vector<double> phases;
            for (std::size_t i = 0; i < count; ++i) {
                occupations.push_back({static_cast<long>(rng() % 4),
                                       species == Species::VectorBoson
                                           ? 0
                                           : static_cast<long>(rng() % 4)});
                phases.push_back(angle(rng));
            }
            const VacuumTerms vacuum =
                trial % 2 == 0 ? VacuumTerms::Include : VacuumTerms::Exclude;

            HamiltonianSpec spec;
            spec.field = build_field(species, modes);
            spec.policy = AlgebraPolicy::cross_unit();
            spec.vacuum_terms = vacuum;
            spec = with_phases(spec, phases);
            const FockState state = FockState::of(modes, occupations);
            const double evaluated =
                expect(build_hamiltonian(spec), state, ContractionPolicy::coherent());

            std::vector<ModeLabel> phased = spec.field.modes;
            CHECK(merged_energy(phased, occupations, phases, vacuum) ==
                  doctest::Approx(evaluated).epsilon(1e-11));
        }
    }
}

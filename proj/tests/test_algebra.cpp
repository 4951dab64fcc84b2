#include "doctest.h"

#include <numbers>
#include <random>

#include "crossmode/algebra.hpp"

using namespace crossmode;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<ModeLabel> random_mode_table(Species species, std::size_t count, std::mt19937& rng) {
    std::uniform_real_distribution<double> component(-3.0, 3.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> mass(0.0, 2.0);
    std::vector<ModeLabel> modes;
    for (std::size_t i = 0; i < count; ++i) {
        int index = 0;
        if (species == Species::VectorBoson) index = 1 + static_cast<int>(rng() % 2);
        if (species == Species::SpinorFermion) index = rng() % 2 == 0 ? 1 : -1;
        modes.push_back(ModeLabel::make(
            "m" + std::to_string(i), species,
            Eigen::Vector3d(component(rng), component(rng), component(rng)),
            species == Species::VectorBoson ? 0.0 : mass(rng), angle(rng), index));
    }
    return modes;
}

LadderOp random_op(const std::vector<ModeLabel>& modes, std::mt19937& rng) {
    const ModeLabel& mode = modes[rng() % modes.size()];
    const LadderKind kind = rng() % 2 == 0 ? LadderKind::Create : LadderKind::Annihilate;
    const Channel channel = mode.species == Species::VectorBoson || rng() % 2 == 0
                                ? Channel::Particle
                                : Channel::Antiparticle;
    return {mode, kind, channel};
}

std::vector<AlgebraPolicy> all_policies() {
    return {AlgebraPolicy::canonical(), AlgebraPolicy::cross_unit(),
            AlgebraPolicy::cross_phase(+1.0), AlgebraPolicy::cross_phase(-1.0)};
}

OperatorExpr random_quadratic(const std::vector<ModeLabel>& modes, std::mt19937& rng,
                              std::size_t terms = 6) {
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    OperatorExpr expr = make_constant({coeff(rng), coeff(rng)});
    for (std::size_t t = 0; t < terms; ++t) {
        const std::size_t degree = rng() % 3;
        std::vector<LadderOp> factors;
        for (std::size_t d = 0; d < degree; ++d) factors.push_back(random_op(modes, rng));
        expr += make_term({coeff(rng), coeff(rng)}, std::move(factors));
    }
    return expr;
}

} // namespace

TEST_CASE("bracket values on marked examples") {
    const ModeLabel k1 = ModeLabel::make("k1", Species::ScalarBoson, {1, 0, 0});
    const ModeLabel k2 = ModeLabel::make("k2", Species::ScalarBoson, {2, 0, 0});

    CHECK(bracket(annihilate_op(k1), create_op(k1), AlgebraPolicy::canonical()) ==
          Complex{1.0, 0.0});
    CHECK(bracket(annihilate_op(k1), create_op(k2), AlgebraPolicy::canonical()) ==
          Complex{0.0, 0.0});
    CHECK(bracket(annihilate_op(k1), create_op(k2), AlgebraPolicy::cross_unit()) ==
          Complex{1.0, 0.0});

    // phase pi against phase 0 under the sign -1 variant: -e^{i pi} = +1
    const ModeLabel n = ModeLabel::make("n", Species::ScalarBoson, {1, 0, 0}, 0.0, kPi);
    const ModeLabel m = ModeLabel::make("m", Species::ScalarBoson, {1, 1, 0}, 0.0, 0.0);
    const Complex value = bracket(annihilate_op(n), create_op(m), AlgebraPolicy::cross_phase(-1.0));
    CHECK(value.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(value.imag() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("bracket structural rules") {
    std::mt19937 rng(11);

    SUBCASE("distinct channels and distinct spin indices give zero") {
        const ModeLabel a = ModeLabel::make("a", Species::ScalarBoson, {1, 0, 0});
        const ModeLabel b = ModeLabel::make("b", Species::ScalarBoson, {2, 0, 0});
        CHECK(bracket(annihilate_op(a, Channel::Particle), create_op(b, Channel::Antiparticle),
                      AlgebraPolicy::cross_unit()) == Complex{0.0, 0.0});

        const ModeLabel up = ModeLabel::make("u", Species::SpinorFermion, {1, 0, 0}, 1.0, 0.0, 1);
        const ModeLabel down =
            ModeLabel::make("d", Species::SpinorFermion, {1, 0, 0}, 1.0, 0.0, -1);
        CHECK(bracket(annihilate_op(up), create_op(down), AlgebraPolicy::cross_unit()) ==
              Complex{0.0, 0.0});
    }

    SUBCASE("mixed species throw") {
        const ModeLabel scalar = ModeLabel::make("s", Species::ScalarBoson, {1, 0, 0});
        const ModeLabel photon = ModeLabel::make("p", Species::VectorBoson, {1, 0, 0}, 0.0, 0.0, 1);
        CHECK_THROWS_AS(bracket(annihilate_op(scalar), create_op(photon), AlgebraPolicy::canonical()),
                        SpeciesMismatchError);
    }

    SUBCASE("equal-kind pairs vanish in every variant") {
        for (const Species species :
             {Species::ScalarBoson, Species::VectorBoson, Species::SpinorFermion}) {
            const auto modes = random_mode_table(species, 4, rng);
            for (const AlgebraPolicy& policy : all_policies()) {
                for (int i = 0; i < 20; ++i) {
                    LadderOp x = random_op(modes, rng);
                    LadderOp y = random_op(modes, rng);
                    y.kind = x.kind;
                    CHECK(bracket(x, y, policy) == Complex{0.0, 0.0});
                }
            }
        }
    }

    SUBCASE("same-mode brackets reduce to the canonical value in every variant") {
        for (const Species species :
             {Species::ScalarBoson, Species::VectorBoson, Species::SpinorFermion}) {
            const auto modes = random_mode_table(species, 3, rng);
            for (const AlgebraPolicy& policy : all_policies()) {
                for (const ModeLabel& mode : modes) {
                    CHECK(bracket(annihilate_op(mode), create_op(mode), policy) ==
                          Complex{1.0, 0.0});
                }
            }
        }
    }

    SUBCASE("brackets are antisymmetric for bosons and symmetric for fermions") {
        for (const Species species :
             {Species::ScalarBoson, Species::VectorBoson, Species::SpinorFermion}) {
            const auto modes = random_mode_table(species, 4, rng);
            const double flip = is_fermion(species) ? 1.0 : -1.0;
            for (const AlgebraPolicy& policy : all_policies()) {
                for (int i = 0; i < 50; ++i) {
                    const LadderOp x = random_op(modes, rng);
                    const LadderOp y = random_op(modes, rng);
                    CHECK(std::abs(bracket(x, y, policy) - flip * bracket(y, x, policy)) < 1e-14);
                }
            }
        }
    }

    SUBCASE("cross-phase with equal phases matches the sign times the unit bracket") {
        const ModeLabel n = ModeLabel::make("n", Species::ScalarBoson, {1, 0, 0}, 0.0, 0.7);
        const ModeLabel m = ModeLabel::make("m", Species::ScalarBoson, {2, 0, 0}, 0.0, 0.7);
        for (const double sign : {+1.0, -1.0}) {
            const Complex phased =
                bracket(annihilate_op(n), create_op(m), AlgebraPolicy::cross_phase(sign));
            const Complex unit = bracket(annihilate_op(n), create_op(m), AlgebraPolicy::cross_unit());
            CHECK(std::abs(phased - sign * unit) < 1e-14);
        }
    }
}

TEST_CASE("normal ordering on marked examples") {
    const ModeLabel k = ModeLabel::make("k", Species::ScalarBoson, {1, 0, 0});
    const ModeLabel n = ModeLabel::make("n", Species::ScalarBoson, {1, 0, 0}, 0.0, 0.4);
    const ModeLabel m = ModeLabel::make("m", Species::ScalarBoson, {1, 1, 0}, 0.0, 1.1);

    SUBCASE("a a+ under the canonical algebra") {
        const OperatorExpr input = make_term(1.0, {annihilate_op(k), create_op(k)});
        const OperatorExpr expected =
            make_term(1.0, {create_op(k), annihilate_op(k)}) + make_constant(1.0);
        CHECK(approx_equal(normal_order(input, AlgebraPolicy::canonical()), expected));
    }

    SUBCASE("antiparticle pair under the cross-unit algebra") {
        const OperatorExpr input =
            make_term(1.0, {annihilate_op(n, Channel::Antiparticle), create_op(m, Channel::Antiparticle)});
        const OperatorExpr expected =
            make_term(1.0, {create_op(m, Channel::Antiparticle), annihilate_op(n, Channel::Antiparticle)}) +
            make_constant(1.0);
        CHECK(approx_equal(normal_order(input, AlgebraPolicy::cross_unit()), expected));
    }

    SUBCASE("fermion antiparticle pair flips sign and keeps the unit bracket") {
        const ModeLabel fn = ModeLabel::make("fn", Species::SpinorFermion, {1, 0, 0}, 1.0, 0.0, 1);
        const ModeLabel fm = ModeLabel::make("fm", Species::SpinorFermion, {2, 0, 0}, 1.0, 0.0, 1);
        const OperatorExpr input = make_term(
            1.0, {annihilate_op(fn, Channel::Antiparticle), create_op(fm, Channel::Antiparticle)});
        const OperatorExpr expected =
            make_term(-1.0, {create_op(fm, Channel::Antiparticle),
                             annihilate_op(fn, Channel::Antiparticle)}) +
            make_constant(1.0);
        CHECK(approx_equal(normal_order(input, AlgebraPolicy::cross_unit()), expected));
    }

    SUBCASE("identical fermion factors annihilate the monomial") {
        const ModeLabel f = ModeLabel::make("f", Species::SpinorFermion, {1, 0, 0}, 1.0, 0.0, 1);
        const OperatorExpr squared = make_term(2.0, {create_op(f), create_op(f)});
        CHECK(normal_order(squared, AlgebraPolicy::canonical()).empty());
    }

    SUBCASE("degree above two is rejected") {
        const OperatorExpr cubic =
            make_term(1.0, {create_op(k), create_op(k), annihilate_op(k)});
        CHECK_THROWS_AS(normal_order(cubic, AlgebraPolicy::canonical()), DegreeError);
    }
}

TEST_CASE("normal ordering properties over random expressions") {
    std::mt19937 rng(99);
    for (const Species species :
         {Species::ScalarBoson, Species::VectorBoson, Species::SpinorFermion}) {
        const auto modes = random_mode_table(species, 4, rng);
        for (const AlgebraPolicy& policy : all_policies()) {
            for (int i = 0; i < 25; ++i) {
                const OperatorExpr expr = random_quadratic(modes, rng);

                const OperatorExpr once = normal_order(expr, policy);
                CHECK(is_normal_ordered(once));
                CHECK(approx_equal(normal_order(once, policy), once, 1e-12));

                // Hermitian combinations stay Hermitian after ordering.
                const OperatorExpr symmetric = expr + adjoint(expr);
                CHECK(is_hermitian(symmetric, policy, 1e-11));
            }
        }
    }
}

TEST_CASE("adjoint is an involution") {
    std::mt19937 rng(123);
    const auto modes = random_mode_table(Species::ScalarBoson, 4, rng);
    for (int i = 0; i < 30; ++i) {
        const OperatorExpr expr = random_quadratic(modes, rng);
        CHECK(approx_equal(adjoint(adjoint(expr)), expr, 1e-14));
    }
}

TEST_CASE("expression arithmetic merges like terms") {
    const ModeLabel k = ModeLabel::make("k", Species::ScalarBoson, {1, 0, 0});
    const OperatorExpr number = make_term(1.0, {create_op(k), annihilate_op(k)});
    const OperatorExpr doubled = merged(number + number);
    REQUIRE(doubled.monomials.size() == 1);
    CHECK(doubled.monomials[0].coefficient == Complex{2.0, 0.0});

    const OperatorExpr cancelled = merged(number - number);
    CHECK(cancelled.monomials.empty());

    const OperatorExpr scaled = number * Complex{0.0, 2.0};
    CHECK(scaled.monomials[0].coefficient == Complex{0.0, 2.0});
}

#pragma once

#include <complex>
#include <vector>

#include "crossmode/fields.hpp"

namespace crossmode {

/// A single creation or annihilation operator acting on one mode/channel.
/// Conjugation flips the kind and keeps mode and channel.
struct LadderOp {
    ModeLabel mode;
    LadderKind kind = LadderKind::Annihilate;
    Channel channel = Channel::Particle;
};

LadderOp create_op(const ModeLabel& mode, Channel channel = Channel::Particle);
LadderOp annihilate_op(const ModeLabel& mode, Channel channel = Channel::Particle);
LadderOp conj(const LadderOp& op);

/// Same mode id, channel and kind.
bool same_operator(const LadderOp& a, const LadderOp& b);

enum class AlgebraVariant {
    Canonical, // cross-mode brackets vanish
    CrossUnit, // cross-mode bracket 1 within a channel and spin index
    CrossPhase // cross-mode bracket sign * e^{i(phase_n - phase_m)}
};

/// Which (anti)commutation table governs cross-mode contractions.
/// Statistics (commutator vs anticommutator) follow the species of the
/// operators involved; same-mode brackets stay canonical in every variant.
struct AlgebraPolicy {
    AlgebraVariant variant = AlgebraVariant::Canonical;
    double sign = +1.0; // used by CrossPhase only

    static AlgebraPolicy canonical() { return {AlgebraVariant::Canonical, +1.0}; }
    static AlgebraPolicy cross_unit() { return {AlgebraVariant::CrossUnit, +1.0}; }
    static AlgebraPolicy cross_phase(double sign) { return {AlgebraVariant::CrossPhase, sign}; }

    std::string describe() const;
};

/// Scalar value of the commutator (bosons) or anticommutator (fermions)
/// of two ladder operators under `policy`. Create-create and
/// annihilate-annihilate pairs give zero in every variant; mixed species
/// throw SpeciesMismatchError.
Complex bracket(const LadderOp& op1, const LadderOp& op2, const AlgebraPolicy& policy);

/// Product of ladder operators with a complex coefficient.
struct Monomial {
    Complex coefficient{0.0, 0.0};
    std::vector<LadderOp> factors;
};

/// Normal-orderable polynomial of ladder operators plus a scalar constant.
/// Expressions are immutable values; all algebra returns new objects.
struct OperatorExpr {
    std::vector<Monomial> monomials;
    Complex constant{0.0, 0.0};

    bool empty() const { return monomials.empty() && constant == Complex{0.0, 0.0}; }
};

OperatorExpr make_term(Complex coefficient, std::vector<LadderOp> factors);
OperatorExpr make_constant(Complex value);

OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr operator*(const OperatorExpr& a, Complex scale);
OperatorExpr operator*(Complex scale, const OperatorExpr& a);
OperatorExpr& operator+=(OperatorExpr& a, const OperatorExpr& b);

/// Hermitian conjugate: reverses factor order, conjugates operators and
/// coefficients.
OperatorExpr adjoint(const OperatorExpr& expr);

/// Collects like monomials and drops exact-zero coefficients.
OperatorExpr merged(const OperatorExpr& expr);

/// True if no annihilation operator stands left of a creation operator
/// in any monomial.
bool is_normal_ordered(const OperatorExpr& expr);

/// Rewrites `expr` so every creation operator stands left of every
/// annihilation operator, absorbing bracket values into the scalar
/// constant. Fermion factor swaps flip the monomial sign; identical
/// adjacent fermion factors annihilate the monomial. Only expressions of
/// degree <= 2 are supported; higher degrees throw DegreeError.
OperatorExpr normal_order(const OperatorExpr& expr, const AlgebraPolicy& policy);

/// Coefficient-wise comparison of two merged expressions with an absolute
/// tolerance. Callers normal-order both sides first when they want
/// equality modulo commutation.
bool approx_equal(const OperatorExpr& a, const OperatorExpr& b, double tolerance = 1e-12);

/// normal_order(adjoint(expr)) agrees with normal_order(expr)
/// coefficient-wise within `tolerance`.
bool is_hermitian(const OperatorExpr& expr, const AlgebraPolicy& policy, double tolerance = 1e-12);

} // namespace crossmode

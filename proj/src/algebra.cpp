#include "crossmode/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace crossmode {

namespace {

// Ordering of operators of equal kind inside a normal-ordered monomial.
std::tuple<int, const std::string&> slot_key(const LadderOp& op) {
    return {op.channel == Channel::Particle ? 0 : 1, op.mode.id};
}

std::string op_key(const LadderOp& op) {
    std::string key(op.kind == LadderKind::Create ? "c" : "a");
    key += op.channel == Channel::Particle ? 'p' : 'q';
    key += ':';
    key += op.mode.id;
    return key;
}

std::string monomial_key(const Monomial& monomial) {
    std::string key;
    for (const LadderOp& op : monomial.factors) {
        key += op_key(op);
        key += '|';
    }
    return key;
}

void require_same_species(const LadderOp& op1, const LadderOp& op2) {
    if (op1.mode.species != op2.mode.species) {
        throw SpeciesMismatchError("bracket: modes \"" + op1.mode.id + "\" (" +
                                   to_string(op1.mode.species) + ") and \"" + op2.mode.id + "\" (" +
                                   to_string(op2.mode.species) + ") mix species");
    }
}

// Bracket of an (annihilate, create) pair; the defining orientation.
Complex lowering_raising_bracket(const LadderOp& lower, const LadderOp& raise,
                                 const AlgebraPolicy& policy) {
    if (lower.channel != raise.channel) return {0.0, 0.0};
    if (lower.mode.spin_index != raise.mode.spin_index) return {0.0, 0.0};
    // Same mode stays canonical in every variant.
    if (lower.mode.id == raise.mode.id) return {1.0, 0.0};
    switch (policy.variant) {
    case AlgebraVariant::Canonical:
        return {0.0, 0.0};
    case AlgebraVariant::CrossUnit:
        return {1.0, 0.0};
    case AlgebraVariant::CrossPhase:
        return policy.sign * std::polar(1.0, lower.mode.phase - raise.mode.phase);
    }
    return {0.0, 0.0};
}

} // namespace

LadderOp create_op(const ModeLabel& mode, Channel channel) {
    return {mode, LadderKind::Create, channel};
}

LadderOp annihilate_op(const ModeLabel& mode, Channel channel) {
    return {mode, LadderKind::Annihilate, channel};
}

LadderOp conj(const LadderOp& op) {
    LadderOp out = op;
    out.kind = op.kind == LadderKind::Create ? LadderKind::Annihilate : LadderKind::Create;
    return out;
}

bool same_operator(const LadderOp& a, const LadderOp& b) {
    return a.kind == b.kind && a.channel == b.channel && a.mode.id == b.mode.id;
}

std::string AlgebraPolicy::describe() const {
    switch (variant) {
    case AlgebraVariant::Canonical: return "canonical";
    case AlgebraVariant::CrossUnit: return "cross-unit";
    case AlgebraVariant::CrossPhase: return sign < 0.0 ? "cross-phase(-1)" : "cross-phase(+1)";
    }
    return "unknown";
}

Complex bracket(const LadderOp& op1, const LadderOp& op2, const AlgebraPolicy& policy) {
    require_same_species(op1, op2);
    if (op1.kind == op2.kind) return {0.0, 0.0};

    const bool fermionic = is_fermion(op1.mode.species);
    if (op1.kind == LadderKind::Annihilate) {
        return lowering_raising_bracket(op1, op2, policy);
    }
    // (create, annihilate): antisymmetric for commutators, symmetric for
    // anticommutators.
    const Complex value = lowering_raising_bracket(op2, op1, policy);
    return fermionic ? value : -value;
}

OperatorExpr make_term(Complex coefficient, std::vector<LadderOp> factors) {
    OperatorExpr expr;
    if (factors.empty()) {
        expr.constant = coefficient;
    } else {
        expr.monomials.push_back({coefficient, std::move(factors)});
    }
    return expr;
}

OperatorExpr make_constant(Complex value) {
    OperatorExpr expr;
    expr.constant = value;
    return expr;
}

OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr out = a;
    out += b;
    return out;
}

OperatorExpr& operator+=(OperatorExpr& a, const OperatorExpr& b) {
    a.monomials.insert(a.monomials.end(), b.monomials.begin(), b.monomials.end());
    a.constant += b.constant;
    return a;
}

OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) {
    return a + b * Complex{-1.0, 0.0};
}

OperatorExpr operator*(const OperatorExpr& a, Complex scale) {
    OperatorExpr out = a;
    for (Monomial& monomial : out.monomials) monomial.coefficient *= scale;
    out.constant *= scale;
    return out;
}

OperatorExpr operator*(Complex scale, const OperatorExpr& a) { return a * scale; }

OperatorExpr adjoint(const OperatorExpr& expr) {
    OperatorExpr out;
    out.constant = std::conj(expr.constant);
    out.monomials.reserve(expr.monomials.size());
    for (const Monomial& monomial : expr.monomials) {
        Monomial flipped;
        flipped.coefficient = std::conj(monomial.coefficient);
        flipped.factors.reserve(monomial.factors.size());
        for (auto it = monomial.factors.rbegin(); it != monomial.factors.rend(); ++it) {
            flipped.factors.push_back(conj(*it));
        }
        out.monomials.push_back(std::move(flipped));
    }
    return out;
}

OperatorExpr merged(const OperatorExpr& expr) {
    std::map<std::string, Monomial> by_key;
    for (const Monomial& monomial : expr.monomials) {
        const std::string key = monomial_key(monomial);
        auto [it, inserted] = by_key.try_emplace(key, monomial);
        if (!inserted) it->second.coefficient += monomial.coefficient;
    }
    OperatorExpr out;
    out.constant = expr.constant;
    for (auto& [key, monomial] : by_key) {
        if (monomial.coefficient != Complex{0.0, 0.0}) out.monomials.push_back(std::move(monomial));
    }
    return out;
}

bool is_normal_ordered(const OperatorExpr& expr) {
    for (const Monomial& monomial : expr.monomials) {
        bool seen_annihilate = false;
        for (const LadderOp& op : monomial.factors) {
            if (op.kind == LadderKind::Annihilate) {
                seen_annihilate = true;
            } else if (seen_annihilate) {
                return false;
            }
        }
    }
    return true;
}

OperatorExpr normal_order(const OperatorExpr& expr, const AlgebraPolicy& policy) {
    OperatorExpr out;
    out.constant = expr.constant;

    for (const Monomial& monomial : expr.monomials) {
        if (monomial.factors.size() > 2) {
            throw DegreeError("normal_order: degree " + std::to_string(monomial.factors.size()) +
                              " monomial; only quadratic expressions are supported");
        }
        if (monomial.factors.size() < 2) {
            out.monomials.push_back(monomial);
            continue;
        }

        const LadderOp& first = monomial.factors[0];
        const LadderOp& second = monomial.factors[1];
        const bool fermionic = is_fermion(first.mode.species) && is_fermion(second.mode.species);
        const double swap_sign = fermionic ? -1.0 : 1.0;

        if (first.kind == LadderKind::Annihilate && second.kind == LadderKind::Create) {
            // x y = (+-) y x + bracket(x, y)
            out.monomials.push_back({monomial.coefficient * swap_sign, {second, first}});
            out.constant += monomial.coefficient * bracket(first, second, policy);
        } else if (first.kind == second.kind) {
            if (same_operator(first, second)) {
                if (fermionic) continue; // nilpotent: c c = c+ c+ = 0
                out.monomials.push_back(monomial);
            } else if (slot_key(second) < slot_key(first)) {
                // Equal-kind pairs carry no bracket in any variant.
                out.monomials.push_back({monomial.coefficient * swap_sign, {second, first}});
            } else {
                out.monomials.push_back(monomial);
            }
        } else {
            out.monomials.push_back(monomial);
        }
    }
    return merged(out);
}

bool approx_equal(const OperatorExpr& a, const OperatorExpr& b, double tolerance) {
    std::map<std::string, Complex> diff;
    for (const Monomial& monomial : merged(a).monomials) {
        diff[monomial_key(monomial)] += monomial.coefficient;
    }
    for (const Monomial& monomial : merged(b).monomials) {
        diff[monomial_key(monomial)] -= monomial.coefficient;
    }
    if (std::abs(a.constant - b.constant) > tolerance) return false;
    return std::all_of(diff.begin(), diff.end(),
                       [tolerance](const auto& kv) { return std::abs(kv.second) <= tolerance; });
}

bool is_hermitian(const OperatorExpr& expr, const AlgebraPolicy& policy, double tolerance) {
    return approx_equal(normal_order(expr, policy), normal_order(adjoint(expr), policy), tolerance);
}

} // namespace crossmode

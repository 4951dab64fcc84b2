#pragma once

#include "crossmode/algebra.hpp"
#include "crossmode/fields.hpp"

namespace crossmode {

enum class VacuumTerms { Include, Exclude };

std::string to_string(VacuumTerms v);

/// Observable assembled from the same mode-pair machinery. Energy weights
/// each mode by its energy, the momentum components by the wavevector,
/// particle number by one and charge by a channel sign.
enum class ObservableKind { Energy, MomentumX, MomentumY, MomentumZ, Number, Charge };

/// Coefficient multiplying the cross (n != m) terms, one constant per
/// species. The printed vector-boson pair term carries an extra 1/2
/// relative to the scalar one; the constants are exposed so either
/// reading of that factor can be exercised.
struct CrossConventions {
    double scalar_boson = 1.0;
    double vector_boson = 0.5;
    double spinor_fermion = 1.0;

    double factor(Species species) const;
};

/// Everything needed to assemble an observable operator for a multimode
/// field: the expansion, the quantization box, the (anti)commutation
/// policy and the vacuum-constant switch.
struct HamiltonianSpec {
    FieldExpansion field;
    BoxDomain box;
    AlgebraPolicy policy = AlgebraPolicy::cross_unit();
    VacuumTerms vacuum_terms = VacuumTerms::Include;
    CrossConventions conventions;
};

/// Same-mode term: energy * (N + Nbar + 1) for scalars, energy * (N + 1/2)
/// per photon polarization, energy * (N + Nbar - 1) for fermions. The
/// constant is dropped when `vacuum_terms` is Exclude.
OperatorExpr diagonal_term(const ModeLabel& mode, VacuumTerms vacuum_terms,
                           ObservableKind kind = ObservableKind::Energy);

/// Mode-pair term before normal ordering, with the antiparticle-channel
/// factors still in annihilate-create order so the reordering constants
/// have not been absorbed yet. Pairs with mismatched spin or polarization
/// indices give the zero expression.
OperatorExpr cross_term_unordered(const ModeLabel& mode_n, const ModeLabel& mode_m,
                                  const BoxDomain& box,
                                  const CrossConventions& conventions = CrossConventions{},
                                  ObservableKind kind = ObservableKind::Energy);

/// Normal-ordered mode-pair term under `policy`; the annihilate-create
/// reordering surfaces bracket values in the scalar part.
OperatorExpr cross_term(const ModeLabel& mode_n, const ModeLabel& mode_m, const BoxDomain& box,
                        const AlgebraPolicy& policy,
                        const CrossConventions& conventions = CrossConventions{},
                        ObservableKind kind = ObservableKind::Energy);

/// Sum of all diagonal terms and all ordered cross pairs, normal-ordered
/// and merged. Hermitian by construction. With Exclude, every scalar
/// constant (diagonal and reordering alike) is dropped.
OperatorExpr build_observable(const HamiltonianSpec& spec, ObservableKind kind);

OperatorExpr build_hamiltonian(const HamiltonianSpec& spec);

/// Classical field energy of psi = sum_n (2 e_n)^{-1/2} A_n e^{i(k_n.r + phase_n)}
/// over the box: the bilinear form with coefficients
/// (e_n e_m + k_n.k_m + m_n m_m) / (2 sqrt(e_n e_m)) times the overlap
/// integral. Defined for the scalar-boson species.
double classical_energy(const std::vector<Complex>& amplitudes, const std::vector<ModeLabel>& modes,
                        const BoxDomain& box);

} // namespace crossmode

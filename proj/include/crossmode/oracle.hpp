#pragma once

#include <Eigen/SparseCore>

#include "crossmode/observables.hpp"

namespace crossmode {

/// Brute-force matrix representation of the ladder algebra on a truncated
/// occupation-number basis. One basis slot per (mode, channel); bosonic
/// slots hold 0..n_max quanta, fermionic slots 0..1 with Jordan-Wigner
/// sign bookkeeping so anticommutators come out exact. Valid for the
/// canonical algebra only.
class TruncatedFockSpace {
  public:
    using SparseMatrix = Eigen::SparseMatrix<Complex>;

    TruncatedFockSpace(std::vector<ModeLabel> modes, long n_max);

    const std::vector<ModeLabel>& modes() const { return modes_; }
    long cutoff() const { return n_max_; }
    long dimension() const { return dimension_; }

    /// Matrix of the annihilation operator on (mode_id, channel).
    const SparseMatrix& annihilation(const std::string& mode_id, Channel channel) const;
    /// Matrix of the creation operator; conjugate transpose of the above.
    const SparseMatrix& creation(const std::string& mode_id, Channel channel) const;

    /// Basis column of a Fock state. Occupations at or past the cutoff
    /// throw TruncationError.
    Eigen::VectorXcd basis_vector(const FockState& state) const;

    /// Sparse matrix of a (<= quadratic) operator expression.
    SparseMatrix matrix_of(const OperatorExpr& expr) const;

  private:
    struct Slot {
        std::size_t mode_index;
        Channel channel;
        long levels; // occupation values 0..levels-1
    };

    std::vector<ModeLabel> modes_;
    long n_max_;
    long dimension_;
    std::vector<Slot> slots_;
    std::vector<long> strides_;
    std::vector<SparseMatrix> annihilators_;
    std::vector<SparseMatrix> creators_;

    std::size_t slot_index(const std::string& mode_id, Channel channel) const;
    void build_ladders();
};

/// <state| expr |state> by direct sparse matrix-vector algebra.
double matrix_expectation(const OperatorExpr& expr, const FockState& state,
                          const TruncatedFockSpace& space);

/// Collective-amplitude energy of equal-wavevector boson modes:
/// energy * (|sum_n e^{i phase_n} sqrt(occ_n)|^2 + antiparticle analog)
/// plus, when included, the vacuum part assembled from the collective
/// phase sum. Derived from the classical coherent-amplitude picture, not
/// from the contraction rule, so agreement with the evaluator is a real
/// cross-check. Unequal wavevectors or fermion species throw DomainError.
double merged_energy(const std::vector<ModeLabel>& modes, const std::vector<Occupation>& occupations,
                     const std::vector<double>& phases, VacuumTerms vacuum_terms);

} // namespace crossmode

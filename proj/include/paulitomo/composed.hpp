#pragma once

#include <optional>

#include "paulitomo/dimension.hpp"

namespace paulitomo {

/// Derived oracle for U^dag P U with a weight-one Pauli P. Each forward
/// application charges one forward and one inverse base query; the target
/// is Hermitian and self-inverse, so inverse applications cost the same.
QueryOracle heisenberg_pauli_oracle(const QueryOracle& oracle, const PauliOperator& p);

/// Factored estimate of U^dag tensor U: one rounded 2n-qubit unitary per
/// qubit (the learned U^dag SWAP_i U term) followed by the SWAP layer.
struct ComposedEstimate {
    int n = 0;
    std::vector<MatrixXc> factors;  // factor i approximates (U^dag ⊗ I) SWAP_i (U ⊗ I)

    /// factors[n-1] ... factors[0] . SWAP, materialized densely (2n <= cap).
    MatrixXc dense(int dense_cap = kDefaultDenseCap) const;
};

/// Dense SWAP of registers [0, n) and [n, 2n).
MatrixXc swap_layer(int n);

/// Exact factor (U^dag ⊗ I) SWAP_i (U ⊗ I) = (I + sum_P U^dag P_i U ⊗ P_i)/2
/// assembled from the three conjugated-Pauli terms.
MatrixXc assemble_factor(int n, int qubit, const MatrixXc& ux, const MatrixXc& uy,
                         const MatrixXc& uz);

struct ComposedTermReport {
    int qubit = 0;
    char pauli = 'X';
    int dim = 0;  // learned Pauli dimension of U^dag P U
    double dist_phaseop = -1;
};

struct ComposedLearnResult {
    ComposedEstimate estimate;
    QuerySnapshot queries;
    std::vector<ComposedTermReport> terms;
};

/// Learns U^dag P U for every weight-one Pauli to diamond error
/// eps/(6n) with per-term failure delta/(3n) via the with-inverse
/// k-dimensional learner (k_bound = 2^{d_bound+1} + 2 t_bound), assembles
/// the SWAP-decomposition factors and polar-rounds each. On success the
/// product is within eps of U^dag tensor U in diamond distance.
ComposedLearnResult learn_composed(const QueryOracle& oracle, int d_bound, int t_bound,
                                   const LearnParams& params, Rng& rng);

struct NullityWitness {
    Subspace normalized_subspace;  // the x with U^dag W_x U a signed Weyl operator
    int t = 0;                     // co-dimension
};

/// Exhaustive Clifford-nullity verifier at n <= 6: finds the maximal
/// subspace of Paulis that U conjugates to signed Weyl operators
/// (single-coefficient mass >= 1 - tol).
NullityWitness clifford_nullity(const DenseUnitary& u, double tol = 1e-9);

}  // namespace paulitomo

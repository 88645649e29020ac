#pragma once

#include "paulitomo/pauli.hpp"

namespace paulitomo {

struct DistanceReport {
    double op = 0;
    double phaseop = 0;
    double diamond_upper = 0;  // 2 * phaseop
    double frob_normalized = 0;
};

struct NormChainReport {
    double op = 0;
    double frobenius = 0;
    double trace = 0;
    int rank = 0;
    bool chain_holds = false;
};

/// Largest singular value. Dense SVD below the power-iteration threshold,
/// power iteration on A^dag A above it.
double operator_norm(const MatrixXc& a, int power_iteration_dim = 2048);

/// min over theta of ||e^{i theta} U - V||_op. Golden-section refinement
/// seeded at the phase of tr(V^dag U), with a 64-point coarse grid guarding
/// against local minima. Result tolerance 1e-8.
double dist_phaseop(const MatrixXc& u, const MatrixXc& v);

/// Closed form sqrt(2 - 2 |tr(V^dag U)| / d).
double dist_phaseF(const MatrixXc& u, const MatrixXc& v);

DistanceReport distance_report(const MatrixXc& u, const MatrixXc& v);

/// All three Schatten norms plus the rank; checks the conversion chain
/// op <= F <= tr <= sqrt(r) F <= r op.
NormChainReport norm_chain_check(const MatrixXc& a);

}  // namespace paulitomo

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paulitomo/config.hpp"
#include "paulitomo/sim.hpp"
#include "paulitomo/tomography.hpp"

namespace paulitomo {

/// Learner failure with the stage that produced it.
class LearnError : public std::runtime_error {
  public:
    LearnError(std::string stage, const std::string& message)
        : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

  private:
    std::string stage_;
};

/// (a,b)-block-diagonal unitary: I^{n-a-b} tensor (direct sum of 2^b
/// blocks, each 2^a x 2^a). Closed under products, adjoints, powers and
/// principal roots, so bootstrap intermediates stay exactly in the class.
struct BlockDiagUnitary {
    int n = 0, a = 0, b = 0;
    std::vector<MatrixXc> blocks;

    static BlockDiagUnitary identity(int n, int a, int b);

    Eigen::Index block_dim() const { return 1ll << a; }
    std::size_t block_count() const { return 1ull << b; }

    /// The 2^{a+b} x 2^{a+b} compound (one copy of the repeated structure).
    MatrixXc compound() const;
    /// Full 2^n realization.
    MatrixXc dense() const;

    BlockDiagUnitary multiply(const BlockDiagUnitary& o) const;
    BlockDiagUnitary adjoint() const;
    BlockDiagUnitary power(int p) const;

    /// Principal p-th root: eigenphases are centered at the trace phase
    /// before division so the branch cut stays far from every phase.
    /// Throws LearnError("root_branch") if a centered eigenphase lands
    /// within `guard` of the cut.
    BlockDiagUnitary root(int p, double guard = 0.2) const;

    double max_unitarity_deviation() const;
};

/// dist over a shared global phase between two block-diagonal unitaries,
/// computed on the compound.
double dist_phaseop(const BlockDiagUnitary& u, const BlockDiagUnitary& v);

struct DiagPhase {
    VectorXc phases;  // unit modulus entries
    MatrixXc matrix() const;
};

/// Nearest unitary L R^dag from the SVD. Throws LearnError("rounding") if a
/// singular value is below 1e-12.
MatrixXc polar_round(const MatrixXc& a);

/// A_y[:, z] = sqrt(2^b) (<y| tensor I) |psi_z> for the (a+b)-qubit column
/// estimates. Linear and deterministic.
std::vector<MatrixXc> collate_columns(const std::vector<StateVector>& estimates, int a, int b);

/// Recovers the relative column phases from two unitaries V0 ~ A Phi and
/// V0p ~ A H^{a} Phi': reads the phases off column 0 of V0^dag V0p (the
/// all-positive Hadamard column) and returns D with
/// dist_phaseop(D, Phi^dag) small. Throws LearnError("phase_alignment") if
/// an entry magnitude falls below 2^{-a/2}/4.
DiagPhase align_phases(const MatrixXc& v0, const MatrixXc& v0p);

struct BlockDiagLearnResult {
    BlockDiagUnitary estimate;
    QuerySnapshot queries;        // deltas charged by this call
    std::uint64_t attempts = 0;   // postselection attempts, all columns
    std::uint64_t tomo_copies = 0;
};

/// Learns an (a,b,eps)-approximately block-diagonal unitary by parallel
/// column tomography of its Pauli projection onto W_{a,b}, polar rounding,
/// and phase alignment against a Hadamard-primed rerun. The output is
/// exactly (a,b)-block-diagonal and within c_out * eps of the target in
/// dist_phaseop on success. Uses only forward queries. Construction does
/// the dense setup (projection, primed oracle), so repeated runs against
/// the same oracle are cheap.
class BlockDiagLearner {
  public:
    BlockDiagLearner(const QueryOracle& oracle, int a, int b, const LearnParams& params);
    BlockDiagLearner(const BlockDiagLearner&) = delete;  // appliers hold internal pointers
    BlockDiagLearner& operator=(const BlockDiagLearner&) = delete;

    BlockDiagLearnResult run(Rng& rng) const;

  private:
    const QueryOracle* oracle_;
    int a_, b_;
    LearnParams params_;
    double eps_run_, eps_col_;
    QueryOracle primed_;
    ProjectedApplier applier_plain_;
    ProjectedApplier applier_primed_;
};

BlockDiagLearnResult learn_block_diag(const QueryOracle& oracle, int a, int b,
                                      const LearnParams& params, Rng& rng);

}  // namespace paulitomo

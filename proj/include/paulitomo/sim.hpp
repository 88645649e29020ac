#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>

#include "paulitomo/clifford.hpp"
#include "paulitomo/f2.hpp"
#include "paulitomo/pauli.hpp"
#include "paulitomo/rng.hpp"

namespace paulitomo {

/// Normalized n-qubit state. Qubit 0 is the most significant index bit.
struct StateVector {
    int n = 0;
    VectorXc amplitudes;

    StateVector() = default;
    StateVector(int n_, VectorXc amps, bool check_norm = true);

    static StateVector basis(int n, std::uint64_t index);
    /// |0^{n-a-b}> |+>^b |z> — the column-preparation state of the
    /// block-diagonal learner.
    static StateVector block_column(int n, int a, int b, std::uint64_t z);

    double fidelity(const StateVector& other) const;
};

struct DenseUnitary {
    int n = 0;
    MatrixXc matrix;

    DenseUnitary() = default;
    /// Validates ||U^dag U - I||_F <= 1e-9.
    DenseUnitary(int n_, MatrixXc m);

    static DenseUnitary identity(int n);
};

struct QueryCounters {
    std::atomic<std::uint64_t> forward{0};
    std::atomic<std::uint64_t> inverse{0};
    std::atomic<std::uint64_t> controlled_fwd{0};
    std::atomic<std::uint64_t> controlled_inv{0};
};

struct QuerySnapshot {
    std::uint64_t forward = 0;
    std::uint64_t inverse = 0;
    std::uint64_t controlled_fwd = 0;
    std::uint64_t controlled_inv = 0;

    QuerySnapshot operator-(const QuerySnapshot& o) const {
        return {forward - o.forward, inverse - o.inverse, controlled_fwd - o.controlled_fwd,
                controlled_inv - o.controlled_inv};
    }
    std::uint64_t total() const { return forward + inverse + controlled_fwd + controlled_inv; }
};

/// What one application of a derived oracle costs on the base counters.
struct QueryCharge {
    std::uint64_t forward = 0;
    std::uint64_t inverse = 0;
};

enum class QueryKind { Forward, Inverse };

/// Black-box access to a dense unitary with per-kind query tallies. Derived
/// oracles (conjugated, powered, Heisenberg-evolved) share the base
/// counters and declare how many base queries each application costs.
class QueryOracle {
  public:
    QueryOracle(DenseUnitary target, bool allow_inverse);

    /// Derived oracle charging the given base costs per application.
    QueryOracle derived(DenseUnitary target, QueryCharge forward_cost, QueryCharge inverse_cost,
                        bool allow_inverse) const;

    int n() const { return target_.n; }
    const MatrixXc& matrix() const { return target_.matrix; }
    bool allow_inverse() const { return allow_inverse_; }

    StateVector apply(QueryKind kind, const StateVector& psi) const;

    /// Books the cost of `count` applications without simulating them (used
    /// when the number of applications is itself the random variable being
    /// sampled).
    void charge(QueryKind kind, std::uint64_t count) const;

    QuerySnapshot snapshot() const;

  private:
    DenseUnitary target_;
    std::shared_ptr<QueryCounters> counters_;
    QueryCharge fwd_cost_{1, 0};
    QueryCharge inv_cost_{0, 1};
    bool allow_inverse_ = true;
};

/// Bell-basis sampling of the Choi state: outcome x with probability
/// |alpha_x|^2, charging one forward query per sample. Up to
/// `full_sim_cap` qubits the 2n-qubit Choi vector is built and measured
/// explicitly; above that the equivalent direct draw from the Pauli
/// spectrum is used.
class BellSampler {
  public:
    explicit BellSampler(const QueryOracle& oracle, int full_sim_cap = 10);

    PauliVec sample(Rng& rng) const;
    std::vector<PauliVec> sample_many(std::uint64_t m, Rng& rng) const;

    /// The exact outcome distribution (support vectors and probabilities).
    const std::vector<std::pair<PauliVec, double>>& distribution() const { return dist_; }

  private:
    const QueryOracle* oracle_;
    std::vector<std::pair<PauliVec, double>> dist_;
    std::vector<double> cumulative_;
};

std::vector<PauliVec> bell_sample_choi(const QueryOracle& oracle, std::uint64_t m, Rng& rng);

/// One postselection attempt of the LCU block encoding of Pi_S(U): accepts
/// with probability ||Pi_S(U)|psi>||_2^2, charging exactly one forward
/// query. Caches Pi_S(U) so repeated attempts are cheap.
class ProjectedApplier {
  public:
    ProjectedApplier(const QueryOracle& oracle, const Subspace& s);
    /// Canonical W_{a,b} fast path.
    ProjectedApplier(const QueryOracle& oracle, int a, int b);

    /// Pi_S(U) |psi| without postselection (unnormalized); no query charge.
    VectorXc project_apply(const StateVector& psi) const;

    double acceptance_probability(const StateVector& psi) const;

    /// One attempt; nullopt on rejection. Charges 1 forward query.
    std::optional<StateVector> attempt(const StateVector& psi, Rng& rng) const;

    const MatrixXc& projected() const { return projected_; }
    const QueryOracle& oracle() const { return *oracle_; }

  private:
    const QueryOracle* oracle_;
    MatrixXc projected_;
};

std::optional<StateVector> lcu_project_apply(const QueryOracle& oracle, const Subspace& s,
                                             const StateVector& psi, Rng& rng);

/// Explicit PREP^dag . SEL . PREP run of the block encoding on
/// |0^l>|psi>, l = dim S^perp. Returns the unnormalized post-selected
/// branch (amplitudes with ancilla = 0). Requires n + dim S^perp <= 14.
/// Charges one forward query; must agree with the statistical path.
VectorXc lcu_circuit_exact(const QueryOracle& oracle, const Subspace& s, const StateVector& psi);

struct CollectedCopies {
    StateVector state;       // the post-selected state (all copies identical)
    std::uint64_t copies = 0;
    std::uint64_t attempts = 0;
};

/// Repeats postselection attempts until `copies` successes or
/// `max_attempts` total attempts (failure). Total forward charge equals the
/// attempts made. Attempt counts above 10^5 are drawn from the matching
/// negative-binomial law instead of looping.
std::optional<CollectedCopies> collect_projected_copies(const ProjectedApplier& applier,
                                                        const StateVector& psi,
                                                        std::uint64_t copies,
                                                        std::uint64_t max_attempts, Rng& rng);

/// Guarantee-level simulation of fixed-point amplitude amplification over
/// the Choi-Bell distribution: if the Bell mass outside A is at least
/// alpha, returns a vector outside A from the renormalized conditional
/// distribution with probability >= 1-delta; with smaller outside mass it
/// may return nullopt. Never returns a vector of zero Bell mass. Charges
/// ceil(c log(1/delta)/sqrt(alpha)) queries split between forward and
/// inverse. Requires inverse access.
std::optional<PauliVec> amplified_support_sample(const QueryOracle& oracle,
                                                 const BellSampler& sampler, const Subspace& a,
                                                 double alpha, double delta, Rng& rng,
                                                 double amp_query_const = 3.0);

}  // namespace paulitomo

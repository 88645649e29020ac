#pragma once

#include <functional>
#include <optional>

#include "paulitomo/blockdiag.hpp"
#include "paulitomo/clifford.hpp"

namespace paulitomo {

enum class SupportMode { ForwardOnly, WithInverse };

struct SupportEstimate {
    Subspace subspace;
    std::uint64_t queries_charged = 0;
    SupportMode mode = SupportMode::ForwardOnly;
};

/// Spans ceil(2 (k_bound + log(1/delta)) / eps_sup) Bell samples. The
/// captured Pauli mass is at least 1 - eps_sup with probability 1 - delta.
SupportEstimate learn_support_forward(const QueryOracle& oracle, int k_bound, double eps_sup,
                                      double delta, Rng& rng);

/// Subspace-growth loop over amplified samples: up to k_bound rounds, each
/// calling the amplification routine with threshold eps_sup and per-call
/// failure delta / k_bound; stops early on a none result.
SupportEstimate learn_support_inverse(const QueryOracle& oracle, int k_bound, double eps_sup,
                                      double delta, Rng& rng, double amp_query_const = 3.0);

/// Structured estimate of a k-Pauli-dimensional unitary: a Clifford frame
/// plus a block-diagonal estimate within that frame. The dense realization
/// is C^dag . blocks . C; its support is contained in `support`, which is
/// always a subspace of span(supp(U)).
struct KdimEstimate {
    int n = 0;
    int a = 0, b = 0;
    CliffordOp frame = CliffordOp::identity(0);
    BlockDiagUnitary blocks;
    Subspace support = Subspace(0);

    MatrixXc dense(int dense_cap = kDefaultDenseCap) const;
};

struct KdimLearnResult {
    KdimEstimate estimate;
    QuerySnapshot queries;
    std::uint64_t support_queries = 0;
    int bootstrap_rounds = -1;  // -1 when the base algorithm ran alone
};

/// Base algorithm: support learning at accuracy eps/(K 2^{a+b}), Clifford
/// reduction to canonical block form, block-diagonal learning of the
/// conjugated oracle, and un-conjugation. Query cost scales as 1/eps^2.
KdimLearnResult learn_kdim_base(const QueryOracle& oracle, int k_bound, SupportMode mode,
                                const LearnParams& params, Rng& rng);

/// A base learner hands back a constant-accuracy block-diagonal estimate of
/// its oracle's target (already in the canonical frame), or nullopt on an
/// internal failure. The factory is invoked once per bootstrap round so a
/// learner can amortize per-oracle setup across the cluster repetitions.
using BaseLearner = std::function<std::optional<BlockDiagUnitary>(Rng& rng)>;
using BaseLearnerFactory = std::function<BaseLearner(const QueryOracle& oracle)>;

struct BootstrapResult {
    BlockDiagUnitary estimate;
    int rounds = 0;
    std::uint64_t base_runs = 0;
};

/// Heisenberg bootstrap in a fixed canonical frame: cluster-median
/// amplification of the base learner, then a doubling loop that learns
/// (U W_r^dag)^{2^r} to constant accuracy and takes the principal root,
/// halving the residual error each round until it reaches eps. Every
/// intermediate is exactly block-diagonal. Queries scale as
/// Q_base / eps * log(1/delta).
BootstrapResult bootstrap(const QueryOracle& oracle_bd, const BaseLearnerFactory& base, int a,
                          int b, double eps, double delta, const LearnParams& params, Rng& rng);

/// Full pipeline: support + frame once, then the bootstrapped block loop.
KdimLearnResult learn_kdim(const QueryOracle& oracle, int k_bound, SupportMode mode,
                           const LearnParams& params, Rng& rng);

struct JuntaLearnResult {
    KdimLearnResult kdim;
    std::vector<int> junta_qubits;  // 0-based, sorted
};

/// Forward-only junta learner: the support of a k-junta spans at most
/// (k, 0) after reduction, so the generic pipeline applies; the junta qubit
/// set is read off the learned support.
JuntaLearnResult learn_junta(const QueryOracle& oracle, int k, const LearnParams& params,
                             Rng& rng);

}  // namespace paulitomo

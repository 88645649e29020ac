#include "paulitomo/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "paulitomo/metrics.hpp"

namespace paulitomo {

SupportEstimate learn_support_forward(const QueryOracle& oracle, int k_bound, double eps_sup,
                                      double delta, Rng& rng) {
    const std::uint64_t m = static_cast<std::uint64_t>(
        std::ceil(2.0 * (static_cast<double>(k_bound) + std::log(1.0 / delta)) / eps_sup));
    const BellSampler sampler(oracle);
    Subspace span(oracle.n());
    for (std::uint64_t i = 0; i < m; ++i) span.insert(sampler.sample(rng));
    return {std::move(span), m, SupportMode::ForwardOnly};
}

SupportEstimate learn_support_inverse(const QueryOracle& oracle, int k_bound, double eps_sup,
                                      double delta, Rng& rng, double amp_query_const) {
    const BellSampler sampler(oracle);
    const QuerySnapshot before = oracle.snapshot();
    Subspace span(oracle.n());
    span.insert(PauliVec::zero(oracle.n()));  // the zero vector; no-op, kept for clarity
    for (int round = 0; round < k_bound; ++round) {
        const auto sample = amplified_support_sample(oracle, sampler, span, eps_sup,
                                                     delta / k_bound, rng, amp_query_const);
        if (!sample) break;
        span.insert(*sample);
    }
    const QuerySnapshot spent = oracle.snapshot() - before;
    return {std::move(span), spent.total(), SupportMode::WithInverse};
}

MatrixXc KdimEstimate::dense(int dense_cap) const {
    const MatrixXc c = frame.dense(dense_cap);
    return c.adjoint() * blocks.dense() * c;
}

namespace {

struct FrameResult {
    CliffordOp frame = CliffordOp::identity(0);
    int a = 0, b = 0;
    Subspace support = Subspace(0);
    std::uint64_t support_queries = 0;
};

// Support learning plus Clifford reduction. The required support accuracy
// depends on the (a, b) split, which is only known after decomposing the
// sampled span; start from the optimistic split and top up once if the
// found split demands more.
FrameResult learn_frame(const QueryOracle& oracle, int k_bound, SupportMode mode,
                        const LearnParams& params, Rng& rng) {
    const double eps_run = std::min(params.eps, params.eps_cap);
    auto eps_sup_for = [&](int apb) {
        return eps_run / (params.support_k * static_cast<double>(1ull << apb));
    };

    const int optimistic = (k_bound + 1) / 2;
    double eps_sup = eps_sup_for(optimistic);
    SupportEstimate est =
        mode == SupportMode::ForwardOnly
            ? learn_support_forward(oracle, k_bound, eps_sup, params.delta / 2, rng)
            : learn_support_inverse(oracle, k_bound, eps_sup, params.delta / 2, rng,
                                    params.amp_query_const);

    auto reduction = clifford_to_block(est.subspace);
    if (eps_sup_for(reduction.a + reduction.b) < eps_sup) {
        // The found split needs a finer support pass; top up once.
        eps_sup = eps_sup_for(reduction.a + reduction.b);
        SupportEstimate extra =
            mode == SupportMode::ForwardOnly
                ? learn_support_forward(oracle, k_bound, eps_sup, params.delta / 2, rng)
                : learn_support_inverse(oracle, k_bound, eps_sup, params.delta / 2, rng,
                                        params.amp_query_const);
        est.queries_charged += extra.queries_charged;
        for (const auto& v : extra.subspace.basis()) est.subspace.insert(v);
        reduction = clifford_to_block(est.subspace);
    }

    FrameResult out;
    out.frame = std::move(reduction.clifford);
    out.a = reduction.a;
    out.b = reduction.b;
    out.support = std::move(est.subspace);
    out.support_queries = est.queries_charged;
    return out;
}

QueryOracle conjugated_oracle(const QueryOracle& oracle, const CliffordOp& frame) {
    const MatrixXc c = frame.dense();
    return oracle.derived(DenseUnitary(oracle.n(), c * oracle.matrix() * c.adjoint()), {1, 0},
                          {0, 1}, oracle.allow_inverse());
}

}  // namespace

KdimLearnResult learn_kdim_base(const QueryOracle& oracle, int k_bound, SupportMode mode,
                                const LearnParams& params, Rng& rng) {
    const QuerySnapshot before = oracle.snapshot();
    FrameResult frame = learn_frame(oracle, k_bound, mode, params, rng);
    const QueryOracle bd_oracle = conjugated_oracle(oracle, frame.frame);
    auto learned = learn_block_diag(bd_oracle, frame.a, frame.b, params, rng);

    KdimLearnResult out;
    out.estimate.n = oracle.n();
    out.estimate.a = frame.a;
    out.estimate.b = frame.b;
    out.estimate.frame = std::move(frame.frame);
    out.estimate.blocks = std::move(learned.estimate);
    out.estimate.support = std::move(frame.support);
    out.support_queries = frame.support_queries;
    out.queries = oracle.snapshot() - before;
    return out;
}

BootstrapResult bootstrap(const QueryOracle& oracle_bd, const BaseLearnerFactory& base, int a,
                          int b, double eps, double delta, const LearnParams& params, Rng& rng) {
    const int n = oracle_bd.n();
    const double eps0 = params.bootstrap_eps0;
    const int rounds =
        (eps >= eps0) ? 0
                      : static_cast<int>(std::ceil(std::log2(eps0 / eps)));
    const int reps = std::max(
        3, static_cast<int>(std::ceil(params.cluster_rep_factor * std::log(1.0 / delta))));

    BootstrapResult result;

    // Cluster-median amplification: run the base learner R times on the
    // given oracle and keep the candidate whose median distance to the rest
    // is smallest. A majority of good runs puts that median within 2 eps0.
    auto amplified_base = [&](const QueryOracle& target_oracle) -> BlockDiagUnitary {
        const BaseLearner runner = base(target_oracle);
        std::vector<BlockDiagUnitary> candidates;
        candidates.reserve(reps);
        for (int r = 0; r < reps; ++r) {
            Rng run_rng = rng.fork();
            auto est = runner(run_rng);
            if (est) candidates.push_back(std::move(*est));
            result.base_runs += 1;
        }
        if (candidates.size() < 2) throw LearnError("cluster", "too few successful base runs");
        std::vector<double> medians(candidates.size());
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::vector<double> dists;
            for (std::size_t j = 0; j < candidates.size(); ++j) {
                if (i == j) continue;
                dists.push_back(dist_phaseop(candidates[i], candidates[j]));
            }
            std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
            medians[i] = dists[dists.size() / 2];
        }
        const std::size_t best =
            std::min_element(medians.begin(), medians.end()) - medians.begin();
        if (medians[best] > 3.0 * eps0)
            throw LearnError("cluster", "base-learner cluster too dispersed");
        return candidates[best];
    };

    // Round 0: constant-accuracy estimate of the target itself.
    BlockDiagUnitary w = amplified_base(oracle_bd);

    // Doubling loop: at round r learn (U W_r^dag)^{2^r} to constant
    // accuracy and take the principal 2^r-th root, halving the residual.
    for (int r = 1; r <= rounds; ++r) {
        const int p = 1 << r;
        const MatrixXc residual = oracle_bd.matrix() * w.dense().adjoint();
        MatrixXc powered = residual;
        for (int i = 0; i < r; ++i) powered = powered * powered;  // residual^{2^r}, squared r times
        // Round off accumulated drift so the derived target stays unitary.
        powered = polar_round(powered);
        // One query to the powered residual costs p forward queries to the
        // base oracle; W_r^dag is classically known and free.
        const QueryOracle powered_oracle = oracle_bd.derived(
            DenseUnitary(n, std::move(powered)), {static_cast<std::uint64_t>(p), 0},
            {0, static_cast<std::uint64_t>(p)}, oracle_bd.allow_inverse());
        const BlockDiagUnitary v = amplified_base(powered_oracle);
        w = v.root(p).multiply(w);
    }

    result.estimate = std::move(w);
    result.rounds = rounds;
    return result;
}

KdimLearnResult learn_kdim(const QueryOracle& oracle, int k_bound, SupportMode mode,
                           const LearnParams& params, Rng& rng) {
    const QuerySnapshot before = oracle.snapshot();
    FrameResult frame = learn_frame(oracle, k_bound, mode, params, rng);
    const QueryOracle bd_oracle = conjugated_oracle(oracle, frame.frame);

    LearnParams base_params = params;
    base_params.eps = params.bootstrap_eps0 / params.c_out;
    const BaseLearnerFactory base = [&frame, base_params](const QueryOracle& target) -> BaseLearner {
        auto learner = std::make_shared<BlockDiagLearner>(target, frame.a, frame.b, base_params);
        return [learner](Rng& run_rng) -> std::optional<BlockDiagUnitary> {
            try {
                return learner->run(run_rng).estimate;
            } catch (const LearnError&) {
                return std::nullopt;
            }
        };
    };

    auto boosted = bootstrap(bd_oracle, base, frame.a, frame.b, params.eps, params.delta, params,
                             rng);

    KdimLearnResult out;
    out.estimate.n = oracle.n();
    out.estimate.a = frame.a;
    out.estimate.b = frame.b;
    out.estimate.frame = std::move(frame.frame);
    out.estimate.blocks = std::move(boosted.estimate);
    out.estimate.support = std::move(frame.support);
    out.support_queries = frame.support_queries;
    out.bootstrap_rounds = boosted.rounds;
    out.queries = oracle.snapshot() - before;
    return out;
}

JuntaLearnResult learn_junta(const QueryOracle& oracle, int k, const LearnParams& params,
                             Rng& rng) {
    JuntaLearnResult out;
    out.kdim = learn_kdim(oracle, 2 * k, SupportMode::ForwardOnly, params, rng);
    for (int q = 0; q < oracle.n(); ++q) {
        const bool active = std::any_of(
            out.kdim.estimate.support.basis().begin(), out.kdim.estimate.support.basis().end(),
            [&](const PauliVec& v) { return v.letter(q) != 'I'; });
        if (active) out.junta_qubits.push_back(q);
    }
    return out;
}

}  // namespace paulitomo

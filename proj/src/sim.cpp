#include "paulitomo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paulitomo {

StateVector::StateVector(int n_, VectorXc amps, bool check_norm)
    : n(n_), amplitudes(std::move(amps)) {
    if (amplitudes.size() != (1ll << n))
        throw std::invalid_argument("StateVector: wrong amplitude count");
    if (check_norm && std::abs(amplitudes.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("StateVector: not normalized");
}

StateVector StateVector::basis(int n, std::uint64_t index) {
    VectorXc v = VectorXc::Zero(1ll << n);
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(n, std::move(v));
}

StateVector StateVector::block_column(int n, int a, int b, std::uint64_t z) {
    if (a + b > n) throw std::invalid_argument("block_column: a + b > n");
    VectorXc v = VectorXc::Zero(1ll << n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(1ull << b));
    for (std::uint64_t y = 0; y < (1ull << b); ++y)
        v[static_cast<Eigen::Index>((y << a) | z)] = amp;
    return StateVector(n, std::move(v));
}

double StateVector::fidelity(const StateVector& other) const {
    return std::norm(amplitudes.dot(other.amplitudes));
}

DenseUnitary::DenseUnitary(int n_, MatrixXc m) : n(n_), matrix(std::move(m)) {
    const Eigen::Index dim = 1ll << n;
    if (matrix.rows() != dim || matrix.cols() != dim)
        throw std::invalid_argument("DenseUnitary: wrong dimensions");
    const double dev = (matrix.adjoint() * matrix - MatrixXc::Identity(dim, dim)).norm();
    if (dev > 1e-9) throw std::invalid_argument("DenseUnitary: matrix is not unitary");
}

DenseUnitary DenseUnitary::identity(int n) {
    return DenseUnitary(n, MatrixXc::Identity(1ll << n, 1ll << n));
}

QueryOracle::QueryOracle(DenseUnitary target, bool allow_inverse)
    : target_(std::move(target)),
      counters_(std::make_shared<QueryCounters>()),
      allow_inverse_(allow_inverse) {}

QueryOracle QueryOracle::derived(DenseUnitary target, QueryCharge forward_cost,
                                 QueryCharge inverse_cost, bool allow_inverse) const {
    QueryOracle out(std::move(target), allow_inverse);
    out.counters_ = counters_;
    out.fwd_cost_ = forward_cost;
    out.inv_cost_ = inverse_cost;
    return out;
}

StateVector QueryOracle::apply(QueryKind kind, const StateVector& psi) const {
    if (psi.n != target_.n) throw std::invalid_argument("QueryOracle::apply: dimension mismatch");
    charge(kind, 1);
    if (kind == QueryKind::Forward)
        return StateVector(psi.n, target_.matrix * psi.amplitudes, false);
    return StateVector(psi.n, target_.matrix.adjoint() * psi.amplitudes, false);
}

void QueryOracle::charge(QueryKind kind, std::uint64_t count) const {
    if (kind == QueryKind::Inverse && !allow_inverse_)
        throw std::runtime_error("QueryOracle: inverse access not allowed");
    const QueryCharge& cost = (kind == QueryKind::Forward) ? fwd_cost_ : inv_cost_;
    counters_->forward += cost.forward * count;
    counters_->inverse += cost.inverse * count;
}

QuerySnapshot QueryOracle::snapshot() const {
    return {counters_->forward.load(), counters_->inverse.load(), counters_->controlled_fwd.load(),
            counters_->controlled_inv.load()};
}

BellSampler::BellSampler(const QueryOracle& oracle, int full_sim_cap) : oracle_(&oracle) {
    const int n = oracle.n();
    if (n <= full_sim_cap) {
        // Build |Phi_U> on 2n qubits, rotate out of the Bell basis pair by
        // pair, and read the outcome distribution off the amplitudes.
        const Eigen::Index dim = 1ll << n;
        const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
        VectorXc choi = VectorXc::Zero(dim * dim);
        for (Eigen::Index s = 0; s < dim; ++s)
            for (Eigen::Index t = 0; t < dim; ++t)
                choi[s * dim + t] = oracle.matrix()(t, s) * scale;
        for (int q = 0; q < n; ++q) {
            apply_gate_dense(Gate{GateKind::CNOT, q, n + q}, choi);
            apply_gate_dense(Gate{GateKind::H, q}, choi);
        }
        // Outcome bits: register-1 qubit q holds z_q, register-2 qubit q
        // holds x_q.
        for (Eigen::Index idx = 0; idx < choi.size(); ++idx) {
            const double p = std::norm(choi[idx]);
            if (p < 1e-18) continue;
            PauliVec v = PauliVec::zero(n);
            for (int q = 0; q < n; ++q) {
                const int bit_reg1 = (idx >> (2 * n - 1 - q)) & 1;
                const int bit_reg2 = (idx >> (n - 1 - q)) & 1;
                if (bit_reg1) v.z |= 1ull << q;
                if (bit_reg2) v.x |= 1ull << q;
            }
            dist_.emplace_back(v, p);
        }
    } else {
        const PauliExpansion expansion = pauli_expand(oracle.matrix());
        for (const auto& [v, c] : expansion.coefficients()) {
            const double p = std::norm(c);
            if (p > 1e-18) dist_.emplace_back(v, p);
        }
    }
    cumulative_.reserve(dist_.size());
    double acc = 0;
    for (const auto& [v, p] : dist_) {
        acc += p;
        cumulative_.push_back(acc);
    }
    if (std::abs(acc - 1.0) > 1e-6)
        throw std::runtime_error("BellSampler: outcome probabilities do not sum to one");
}

PauliVec BellSampler::sample(Rng& rng) const {
    oracle_->charge(QueryKind::Forward, 1);
    const double u = rng.uniform() * cumulative_.back();
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t idx = std::min<std::size_t>(it - cumulative_.begin(), dist_.size() - 1);
    return dist_[idx].first;
}

std::vector<PauliVec> BellSampler::sample_many(std::uint64_t m, Rng& rng) const {
    std::vector<PauliVec> out;
    out.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) out.push_back(sample(rng));
    return out;
}

std::vector<PauliVec> bell_sample_choi(const QueryOracle& oracle, std::uint64_t m, Rng& rng) {
    if (m < 1) throw std::invalid_argument("bell_sample_choi: m must be positive");
    return BellSampler(oracle).sample_many(m, rng);
}

ProjectedApplier::ProjectedApplier(const QueryOracle& oracle, const Subspace& s)
    : oracle_(&oracle), projected_(pauli_project(oracle.matrix(), s)) {
    if (s.symplectic_complement().dim() > 2 * oracle.n())
        throw std::invalid_argument("ProjectedApplier: complement dimension exceeds 2n");
}

ProjectedApplier::ProjectedApplier(const QueryOracle& oracle, int a, int b)
    : oracle_(&oracle), projected_(pauli_project_canonical(oracle.matrix(), a, b)) {}

VectorXc ProjectedApplier::project_apply(const StateVector& psi) const {
    return projected_ * psi.amplitudes;
}

double ProjectedApplier::acceptance_probability(const StateVector& psi) const {
    return std::min(1.0, project_apply(psi).squaredNorm());
}

std::optional<StateVector> ProjectedApplier::attempt(const StateVector& psi, Rng& rng) const {
    oracle_->charge(QueryKind::Forward, 1);
    const VectorXc phi = project_apply(psi);
    const double p = phi.squaredNorm();
    if (!rng.bernoulli(std::min(1.0, p))) return std::nullopt;
    return StateVector(psi.n, phi / std::sqrt(p), false);
}

std::optional<StateVector> lcu_project_apply(const QueryOracle& oracle, const Subspace& s,
                                             const StateVector& psi, Rng& rng) {
    return ProjectedApplier(oracle, s).attempt(psi, rng);
}

VectorXc lcu_circuit_exact(const QueryOracle& oracle, const Subspace& s, const StateVector& psi) {
    const int n = oracle.n();
    const Subspace comp = s.symplectic_complement();
    const int ell = comp.dim();
    if (n + ell > 14) throw std::invalid_argument("lcu_circuit_exact: n + dim S^perp > 14");
    oracle.charge(QueryKind::Forward, 1);

    const auto generators = comp.basis();
    const Eigen::Index n_dim = 1ll << n;
    const Eigen::Index anc_dim = 1ll << ell;

    // State layout: ancilla index k (major) x system (minor). PREP is
    // Hadamards on the ancilla: uniform superposition over k.
    std::vector<VectorXc> branches(anc_dim);
    const double prep = 1.0 / std::sqrt(static_cast<double>(anc_dim));
    for (Eigen::Index k = 0; k < anc_dim; ++k) branches[k] = prep * psi.amplitudes;

    // SEL: on branch k apply W_k U W_k^dag, W_k the product of generators
    // selected by the bits of k. W_k is Hermitian so W_k^dag = W_k.
    for (Eigen::Index k = 0; k < anc_dim; ++k) {
        PauliOperator wk(PauliVec::zero(n));
        for (int j = 0; j < ell; ++j)
            if ((k >> j) & 1) wk = wk * PauliOperator(generators[j]);
        VectorXc& v = branches[k];
        PauliOperator wk_dag = wk;
        wk_dag.phase_exp = (4 - wk.phase_exp) % 4;
        apply_pauli(wk_dag, v);
        v = oracle.matrix() * v;
        apply_pauli(wk, v);
    }

    // PREP^dag then project the ancilla onto |0>: the uniform average of
    // the branches.
    VectorXc out = VectorXc::Zero(n_dim);
    for (Eigen::Index k = 0; k < anc_dim; ++k) out += branches[k];
    return out / std::sqrt(static_cast<double>(anc_dim));
}

std::optional<CollectedCopies> collect_projected_copies(const ProjectedApplier& applier,
                                                        const StateVector& psi,
                                                        std::uint64_t copies,
                                                        std::uint64_t max_attempts, Rng& rng) {
    const VectorXc phi = applier.project_apply(psi);
    const double p = std::min(1.0, phi.squaredNorm());
    if (copies == 0) return CollectedCopies{psi, 0, 0};
    if (p <= 0.0) {
        applier.oracle().charge(QueryKind::Forward, max_attempts);
        return std::nullopt;
    }
    const StateVector accepted(psi.n, phi / phi.norm(), false);

    constexpr std::uint64_t kExactLoopCap = 100000;
    if (copies <= kExactLoopCap) {
        std::uint64_t attempts = 0, got = 0;
        while (got < copies && attempts < max_attempts) {
            ++attempts;
            if (rng.bernoulli(p)) ++got;
        }
        applier.oracle().charge(QueryKind::Forward, attempts);
        if (got < copies) return std::nullopt;
        return CollectedCopies{accepted, copies, attempts};
    }

    // Large copy counts: draw the attempt count from the negative-binomial
    // law via its Gaussian limit (relative error O(1/sqrt(copies)) at this
    // scale). Deterministic under the seed: exactly one normal draw.
    std::uint64_t attempts;
    if (p >= 1.0) {
        attempts = copies;
    } else {
        const double mean_failures = static_cast<double>(copies) * (1 - p) / p;
        const double sd = std::sqrt(static_cast<double>(copies) * (1 - p)) / p;
        const double failures = std::max(0.0, mean_failures + sd * rng.gaussian());
        attempts = copies + static_cast<std::uint64_t>(std::llround(failures));
    }
    if (attempts > max_attempts) {
        applier.oracle().charge(QueryKind::Forward, max_attempts);
        return std::nullopt;
    }
    applier.oracle().charge(QueryKind::Forward, attempts);
    return CollectedCopies{accepted, copies, attempts};
}

std::optional<PauliVec> amplified_support_sample(const QueryOracle& oracle,
                                                 const BellSampler& sampler, const Subspace& a,
                                                 double alpha, double delta, Rng& rng,
                                                 double amp_query_const) {
    if (!oracle.allow_inverse())
        throw std::runtime_error("amplified_support_sample: inverse access required");
    if (alpha <= 0 || alpha > 1)
        throw std::invalid_argument("amplified_support_sample: alpha out of range");

    const std::uint64_t q = static_cast<std::uint64_t>(
        std::ceil(amp_query_const * std::log(1.0 / delta) / std::sqrt(alpha)));
    oracle.charge(QueryKind::Forward, (q + 1) / 2);
    oracle.charge(QueryKind::Inverse, q / 2);

    std::vector<std::pair<PauliVec, double>> outside;
    double mass = 0;
    for (const auto& [v, p] : sampler.distribution()) {
        if (!a.contains(v)) {
            outside.emplace_back(v, p);
            mass += p;
        }
    }
    if (outside.empty()) return std::nullopt;

    const double success = (mass >= alpha) ? (1.0 - delta) : (1.0 - delta) * (mass / alpha);
    if (!rng.bernoulli(success)) return std::nullopt;

    double u = rng.uniform() * mass;
    for (const auto& [v, p] : outside) {
        u -= p;
        if (u <= 0) return v;
    }
    return outside.back().first;
}

}  // namespace paulitomo

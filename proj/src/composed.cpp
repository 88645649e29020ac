#include "paulitomo/composed.hpp"

#include <algorithm>
#include <cmath>

#include "paulitomo/metrics.hpp"

namespace paulitomo {

QueryOracle heisenberg_pauli_oracle(const QueryOracle& oracle, const PauliOperator& p) {
    if (!oracle.allow_inverse())
        throw std::runtime_error("heisenberg_pauli_oracle: inverse access required");
    if (p.vec.weight() != 1)
        throw std::invalid_argument("heisenberg_pauli_oracle: P must have weight one");
    const MatrixXc w = weyl_matrix(p);
    MatrixXc target = oracle.matrix().adjoint() * w * oracle.matrix();
    // Hermitian and self-inverse by construction; the derived oracle's own
    // inverse therefore costs the same one forward + one inverse.
    return oracle.derived(DenseUnitary(oracle.n(), std::move(target)), {1, 1}, {1, 1}, true);
}

MatrixXc swap_layer(int n) {
    const Eigen::Index half = 1ll << n;
    const Eigen::Index dim = half * half;
    MatrixXc m = MatrixXc::Zero(dim, dim);
    for (Eigen::Index s = 0; s < half; ++s)
        for (Eigen::Index t = 0; t < half; ++t) m(t * half + s, s * half + t) = 1.0;
    return m;
}

namespace {

MatrixXc pad_single_qubit(int total_qubits, int qubit, const MatrixXc& p) {
    MatrixXc m = MatrixXc::Identity(1, 1);
    for (int q = 0; q < total_qubits; ++q) {
        const MatrixXc& factor = (q == qubit) ? p : MatrixXc::Identity(2, 2);
        MatrixXc next(m.rows() * factor.rows(), m.cols() * factor.cols());
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                next.block(r * factor.rows(), c * factor.cols(), factor.rows(), factor.cols()) =
                    m(r, c) * factor;
        m = std::move(next);
    }
    return m;
}

}  // namespace

MatrixXc assemble_factor(int n, int qubit, const MatrixXc& ux, const MatrixXc& uy,
                         const MatrixXc& uz) {
    const Eigen::Index half = 1ll << n;
    const Eigen::Index dim = half * half;
    const MatrixXc x1 = weyl_matrix(PauliOperator(PauliVec::single_x(1, 0)));
    const MatrixXc y1 = weyl_matrix(PauliOperator(PauliVec::single_y(1, 0)));
    const MatrixXc z1 = weyl_matrix(PauliOperator(PauliVec::single_z(1, 0)));

    auto kron_with_pad = [&](const MatrixXc& a, const MatrixXc& p) {
        // a acts on the first register, p on qubit `qubit` of the second.
        const MatrixXc padded = pad_single_qubit(n, qubit, p);
        MatrixXc out(dim, dim);
        for (Eigen::Index r = 0; r < half; ++r)
            for (Eigen::Index c = 0; c < half; ++c)
                out.block(r * half, c * half, half, half) = a(r, c) * padded;
        return out;
    };

    MatrixXc m = MatrixXc::Identity(dim, dim);
    m += kron_with_pad(ux, x1);
    m += kron_with_pad(uy, y1);
    m += kron_with_pad(uz, z1);
    return m / 2.0;
}

MatrixXc ComposedEstimate::dense(int dense_cap) const {
    if (2 * n > dense_cap) throw std::invalid_argument("ComposedEstimate::dense: 2n exceeds cap");
    MatrixXc m = swap_layer(n);
    for (const auto& f : factors) m = f * m;
    return m;
}

namespace {

// The per-term learner is accurate only up to a global phase, but the
// SWAP-identity assembly needs the matrices themselves. The target is
// Hermitian, so rotate the estimate onto its Hermitian representative
// (est^2 ~ e^{2i theta} I pins theta up to sign) and settle the leftover
// +-1 by measuring P on U|v> for the estimate's top eigenvector |v>, a few
// forward queries.
MatrixXc fix_hermitian_phase(const QueryOracle& base, const PauliOperator& p,
                             const MatrixXc& estimate, double delta, Rng& rng) {
    const Complex tr2 = (estimate * estimate).trace();
    if (std::abs(tr2) < 0.5 * static_cast<double>(estimate.rows()))
        throw LearnError("phase_alignment", "estimate is not close to any Hermitian unitary");
    const double theta = std::arg(tr2) / 2.0;
    MatrixXc herm = std::polar(1.0, -theta) * estimate;

    Eigen::SelfAdjointEigenSolver<MatrixXc> solver((herm + herm.adjoint()) / 2.0);
    const Eigen::Index top = estimate.rows() - 1;
    const VectorXc v = solver.eigenvectors().col(top);

    const VectorXc uv = base.matrix() * v;
    const MatrixXc pw = weyl_matrix(p);
    const double p_plus = 0.5 * (1.0 + (uv.dot(pw * uv)).real());
    const std::uint64_t shots =
        std::max<std::uint64_t>(16, static_cast<std::uint64_t>(std::ceil(32.0 * std::log(1.0 / delta))));
    base.charge(QueryKind::Forward, shots);
    std::uint64_t plus = 0;
    for (std::uint64_t s = 0; s < shots; ++s)
        if (rng.bernoulli(std::clamp(p_plus, 0.0, 1.0))) ++plus;
    const double sign = (2 * plus >= shots) ? 1.0 : -1.0;
    return sign * herm;
}

}  // namespace

ComposedLearnResult learn_composed(const QueryOracle& oracle, int d_bound, int t_bound,
                                   const LearnParams& params, Rng& rng) {
    const int n = oracle.n();
    const QuerySnapshot before = oracle.snapshot();
    const int k_bound = (1 << (d_bound + 1)) + 2 * t_bound;

    LearnParams term_params = params;
    // Per-term diamond budget eps/(6n) -> dist_phaseop budget eps/(12n).
    term_params.eps = params.eps / (12.0 * n);
    term_params.delta = params.delta / (3.0 * n);

    ComposedLearnResult result;
    result.estimate.n = n;
    for (int qubit = 0; qubit < n; ++qubit) {
        MatrixXc learned[3];
        const char letters[3] = {'X', 'Y', 'Z'};
        for (int which = 0; which < 3; ++which) {
            PauliVec v = which == 0   ? PauliVec::single_x(n, qubit)
                         : which == 1 ? PauliVec::single_y(n, qubit)
                                      : PauliVec::single_z(n, qubit);
            const PauliOperator pauli(v);
            const QueryOracle term_oracle = heisenberg_pauli_oracle(oracle, pauli);
            try {
                auto term =
                    learn_kdim(term_oracle, k_bound, SupportMode::WithInverse, term_params, rng);
                learned[which] =
                    fix_hermitian_phase(oracle, pauli, term.estimate.dense(), term_params.delta,
                                        rng);
                ComposedTermReport report;
                report.qubit = qubit;
                report.pauli = letters[which];
                report.dim = term.estimate.support.dim();
                report.dist_phaseop = dist_phaseop(learned[which], term_oracle.matrix());
                result.terms.push_back(report);
            } catch (const LearnError& e) {
                throw LearnError(e.stage(), std::string("term (qubit ") +
                                                std::to_string(qubit + 1) + ", " +
                                                letters[which] + ") failed: " + e.what());
            }
        }
        result.estimate.factors.push_back(
            polar_round(assemble_factor(n, qubit, learned[0], learned[1], learned[2])));
    }
    result.queries = oracle.snapshot() - before;
    return result;
}

NullityWitness clifford_nullity(const DenseUnitary& u, double tol) {
    const int n = u.n;
    if (n > 6) throw std::invalid_argument("clifford_nullity: exhaustive check capped at n = 6");
    const MatrixXc& m = u.matrix;
    std::vector<PauliVec> normalized;
    const std::uint64_t count = 1ull << (2 * n);
    const std::uint64_t mask = (1ull << n) - 1;
    for (std::uint64_t bits = 1; bits < count; ++bits) {
        const PauliVec v(n, bits & mask, bits >> n);
        const MatrixXc conj = m.adjoint() * weyl_matrix(v) * m;
        const auto expansion = pauli_expand(conj, 1e-14);
        double best = 0;
        for (const auto& [vec, c] : expansion.coefficients()) best = std::max(best, std::norm(c));
        if (best >= 1.0 - tol) normalized.push_back(v);
    }
    NullityWitness out{Subspace::span(n, normalized), 0};
    // The normalized set is a group, so its span should not add elements.
    for (const auto& v : out.normalized_subspace.elements()) {
        const MatrixXc conj = m.adjoint() * weyl_matrix(v) * m;
        const auto expansion = pauli_expand(conj, 1e-14);
        double best = 0;
        for (const auto& [vec, c] : expansion.coefficients()) best = std::max(best, std::norm(c));
        if (best < 1.0 - tol)
            throw std::runtime_error("clifford_nullity: normalized set failed closure");
    }
    out.t = 2 * n - out.normalized_subspace.dim();
    return out;
}

}  // namespace paulitomo

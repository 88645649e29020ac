#include <doctest.h>

#include <numbers>

#include "paulitomo/composed.hpp"
#include "paulitomo/instances.hpp"
#include "paulitomo/metrics.hpp"

using namespace paulitomo;

namespace {

MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
    MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

MatrixXc adjoint_tensor_self(const MatrixXc& u) {
    return kron(u.adjoint(), u);
}

}  // namespace

TEST_CASE("derived oracle for the identity is the Pauli itself") {
    const QueryOracle oracle(DenseUnitary::identity(2), true);
    const PauliOperator p(PauliVec::single_z(2, 1));
    const QueryOracle derived = heisenberg_pauli_oracle(oracle, p);
    CHECK((derived.matrix() - weyl_matrix(p)).norm() < 1e-12);
}

TEST_CASE("Hadamard maps Z to X") {
    MatrixXc h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    const QueryOracle oracle(DenseUnitary(1, h), true);
    const QueryOracle derived =
        heisenberg_pauli_oracle(oracle, PauliOperator(PauliVec::single_z(1, 0)));
    CHECK((derived.matrix() - weyl_matrix(PauliVec::single_x(1, 0))).norm() < 1e-12);
}

TEST_CASE("CNOT maps Z on the target to ZZ") {
    MatrixXc cnot = MatrixXc::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    const QueryOracle oracle(DenseUnitary(2, cnot), true);
    const QueryOracle derived =
        heisenberg_pauli_oracle(oracle, PauliOperator(PauliVec::single_z(2, 1)));
    CHECK((derived.matrix() - weyl_matrix(PauliVec::parse("ZZ"))).norm() < 1e-12);
}

TEST_CASE("derived queries charge one forward plus one inverse") {
    Rng rng(397);
    const QueryOracle oracle(DenseUnitary(2, haar_unitary(4, rng)), true);
    const QueryOracle derived =
        heisenberg_pauli_oracle(oracle, PauliOperator(PauliVec::single_x(2, 0)));
    derived.apply(QueryKind::Forward, StateVector::basis(2, 0));
    CHECK(oracle.snapshot().forward == 1);
    CHECK(oracle.snapshot().inverse == 1);
    derived.apply(QueryKind::Inverse, StateVector::basis(2, 0));
    CHECK(oracle.snapshot().forward == 2);
    CHECK(oracle.snapshot().inverse == 2);
    CHECK_THROWS(heisenberg_pauli_oracle(QueryOracle(DenseUnitary(2, haar_unitary(4, rng)), false),
                                         PauliOperator(PauliVec::single_x(2, 0))));
}

TEST_CASE("exact factors reassemble the doubled system") {
    Rng rng(401);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const MatrixXc u = haar_unitary(1 << n, rng);
        ComposedEstimate exact;
        exact.n = n;
        for (int q = 0; q < n; ++q) {
            const MatrixXc ux = u.adjoint() * weyl_matrix(PauliVec::single_x(n, q)) * u;
            const MatrixXc uy = u.adjoint() * weyl_matrix(PauliVec::single_y(n, q)) * u;
            const MatrixXc uz = u.adjoint() * weyl_matrix(PauliVec::single_z(n, q)) * u;
            exact.factors.push_back(assemble_factor(n, q, ux, uy, uz));
        }
        CHECK((exact.dense() - adjoint_tensor_self(u)).norm() < 1e-9);
    }
}

TEST_CASE("factors are unitary for unitary inputs") {
    Rng rng(409);
    const int n = 2;
    const MatrixXc u = haar_unitary(4, rng);
    const MatrixXc f = assemble_factor(
        n, 0, u.adjoint() * weyl_matrix(PauliVec::single_x(n, 0)) * u,
        u.adjoint() * weyl_matrix(PauliVec::single_y(n, 0)) * u,
        u.adjoint() * weyl_matrix(PauliVec::single_z(n, 0)) * u);
    CHECK((f.adjoint() * f - MatrixXc::Identity(16, 16)).norm() < 1e-9);
}

TEST_CASE("nullity of Cliffords is zero") {
    MatrixXc cnot = MatrixXc::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    const auto witness = clifford_nullity(DenseUnitary(2, cnot));
    CHECK(witness.t == 0);
    CHECK(witness.normalized_subspace.dim() == 4);
}

TEST_CASE("nullity of the T gate is at most two with Z normalized") {
    MatrixXc t = MatrixXc::Zero(2, 2);
    t(0, 0) = 1;
    t(1, 1) = std::polar(1.0, std::numbers::pi / 4);
    const auto witness = clifford_nullity(DenseUnitary(1, t));
    CHECK(witness.t <= 2);
    CHECK(witness.normalized_subspace.contains(PauliVec::parse("Z")));
}

TEST_CASE("nullity of Clifford-sandwiched single rotations stays bounded") {
    Rng rng(419);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 3;
        MatrixXc t = MatrixXc::Zero(2, 2);
        t(0, 0) = 1;
        t(1, 1) = std::polar(1.0, std::numbers::pi / 4);
        const MatrixXc mid = embed_on_qubits(n, {static_cast<int>(rng.below(n))}, t);
        const MatrixXc u =
            random_clifford(n, rng).dense() * mid * random_clifford(n, rng).dense();
        const auto witness = clifford_nullity(DenseUnitary(n, u));
        CHECK(witness.t <= 2);
    }
}

TEST_CASE("doped instances expose bounded per-term dimensionality") {
    Rng rng(421);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3;
        const Instance inst = gen_shallow_doped({n, 1, 1, false}, rng);
        const int bound = (1 << 2) + 2;
        for (int q = 0; q < n; ++q) {
            const MatrixXc conj = inst.unitary.matrix.adjoint() *
                                  weyl_matrix(PauliVec::single_z(n, q)) * inst.unitary.matrix;
            CHECK(support_span(conj, 1e-9).dim() <= bound);
        }
    }
}

TEST_CASE("generated witnesses carry the advertised structure") {
    Rng rng(431);
    const Instance junta = gen_junta({6, 2, {1, 4}}, rng);
    CHECK(junta.witness.junta_qubits == std::vector<int>{1, 4});
    // acts trivially elsewhere
    const Subspace junta_support = support_span(junta.unitary.matrix, 1e-9);
    for (const auto& v : junta_support.basis()) {
        for (int q : {0, 2, 3, 5}) CHECK(v.letter(q) == 'I');
    }

    const Instance kdim = gen_kdim({5, 1, 1, false}, rng);
    REQUIRE(kdim.witness.support.has_value());
    const auto expansion = pauli_expand(kdim.unitary.matrix);
    // All of the mass lives inside the witness support.
    CHECK(expansion.mass_in(*kdim.witness.support) == doctest::Approx(1.0));
    const auto d = symplectic_gram_schmidt(*kdim.witness.support, *kdim.witness.support);
    CHECK(d.t.a() == 1);
    CHECK(d.t.b() == 1);

    const Instance doped = gen_shallow_doped({4, 1, 1, false}, rng);
    REQUIRE(doped.witness.clifford_factor.has_value());
    const auto witness = clifford_nullity(DenseUnitary(4, *doped.witness.clifford_factor));
    CHECK(witness.t <= 2);
}

TEST_CASE("composed learner reconstructs the doubled system end to end") {
    Rng rng(433);
    const int n = 2;
    const Instance inst = gen_shallow_doped({n, 1, 1, false}, rng);
    const QueryOracle oracle(inst.unitary, true);
    LearnParams params;
    params.eps = 0.3;
    params.delta = 0.1;
    const auto result = learn_composed(oracle, 1, 1, params, rng);
    REQUIRE(result.terms.size() == 3 * n);
    for (const auto& term : result.terms) {
        CHECK(term.dim <= (1 << 2) + 2);
        CHECK(term.dist_phaseop <= params.eps / (12.0 * n) + 1e-6);
    }
    const MatrixXc truth = adjoint_tensor_self(inst.unitary.matrix);
    CHECK(2 * dist_phaseop(truth, result.estimate.dense()) <= params.eps);
    // Error composition: the assembled distance is at most the sum of the
    // per-factor distances.
    double per_factor_sum = 0;
    for (int q = 0; q < n; ++q) {
        const MatrixXc exact = assemble_factor(
            n, q,
            inst.unitary.matrix.adjoint() * weyl_matrix(PauliVec::single_x(n, q)) *
                inst.unitary.matrix,
            inst.unitary.matrix.adjoint() * weyl_matrix(PauliVec::single_y(n, q)) *
                inst.unitary.matrix,
            inst.unitary.matrix.adjoint() * weyl_matrix(PauliVec::single_z(n, q)) *
                inst.unitary.matrix);
        per_factor_sum += dist_phaseop(exact, result.estimate.factors[q]);
    }
    CHECK(dist_phaseop(truth, result.estimate.dense()) <= per_factor_sum + 1e-8);
}

#include <doctest.h>

#include "paulitomo/clifford.hpp"

using namespace paulitomo;

namespace {

Subspace random_subspace(int n, int dim, Rng& rng) {
    Subspace s(n);
    const std::uint64_t mask = (1ull << n) - 1;
    while (s.dim() < dim) s.insert(PauliVec(n, rng.below(mask + 1), rng.below(mask + 1)));
    return s;
}

}  // namespace

TEST_CASE("standard single-gate conjugations") {
    CliffordOp h = CliffordOp::identity(1);
    h.apply_gate({GateKind::H, 0});
    CHECK(h.conjugate(PauliOperator::parse("+X")) == PauliOperator::parse("+Z"));
    CHECK(h.conjugate(PauliOperator::parse("+Z")) == PauliOperator::parse("+X"));
    CHECK(h.conjugate(PauliOperator::parse("+Y")) == PauliOperator::parse("-Y"));

    CliffordOp s = CliffordOp::identity(1);
    s.apply_gate({GateKind::S, 0});
    CHECK(s.conjugate(PauliOperator::parse("+X")) == PauliOperator::parse("+Y"));
    CHECK(s.conjugate(PauliOperator::parse("+Y")) == PauliOperator::parse("-X"));
    CHECK(s.conjugate(PauliOperator::parse("+Z")) == PauliOperator::parse("+Z"));

    CliffordOp cnot = CliffordOp::identity(2);
    cnot.apply_gate({GateKind::CNOT, 0, 1});
    CHECK(cnot.conjugate(PauliOperator::parse("+XI")) == PauliOperator::parse("+XX"));
    CHECK(cnot.conjugate(PauliOperator::parse("+IZ")) == PauliOperator::parse("+ZZ"));
    CHECK(cnot.conjugate(PauliOperator::parse("+ZI")) == PauliOperator::parse("+ZI"));
}

TEST_CASE("tableau conjugation matches dense conjugation with signs") {
    Rng rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(5));
        const CliffordOp c = random_clifford(n, rng, 2);
        const MatrixXc cd = c.dense();
        const std::uint64_t mask = (1ull << n) - 1;
        for (int k = 0; k < 6; ++k) {
            const PauliOperator p(PauliVec(n, rng.below(mask + 1), rng.below(mask + 1)),
                                  static_cast<int>(rng.below(4)));
            const MatrixXc lhs = cd * weyl_matrix(p) * cd.adjoint();
            CHECK((lhs - weyl_matrix(c.conjugate(p))).norm() < 1e-10);
        }
    }
}

TEST_CASE("gate-list replay reproduces the tableau") {
    Rng rng(67);
    const CliffordOp c = random_clifford(4, rng);
    const CliffordOp replayed = CliffordOp::from_gates(4, c.gate_list());
    CHECK(replayed == c);
}

TEST_CASE("inverse composes to the identity tableau") {
    Rng rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const CliffordOp c = random_clifford(n, rng, 2);
        const CliffordOp id = c.then(c.inverse());
        CHECK(id == CliffordOp::identity(n));
    }
}

TEST_CASE("composition matches dense products up to conjugation action") {
    Rng rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const CliffordOp c1 = random_clifford(n, rng, 2);
        const CliffordOp c2 = random_clifford(n, rng, 2);
        const CliffordOp both = c1.then(c2);
        const MatrixXc dense = c2.dense() * c1.dense();
        const std::uint64_t mask = (1ull << n) - 1;
        for (int k = 0; k < 4; ++k) {
            const PauliOperator p(PauliVec(n, rng.below(mask + 1), rng.below(mask + 1)));
            CHECK((dense * weyl_matrix(p) * dense.adjoint() - weyl_matrix(both.conjugate(p)))
                      .norm() < 1e-10);
        }
    }
}

TEST_CASE("single isotropic generator canonicalizes to the trailing Z slot") {
    const Subspace t = Subspace::span(2, {PauliVec::parse("XI")});
    const auto reduction = clifford_to_block(t);
    CHECK(reduction.a == 0);
    CHECK(reduction.b == 1);
    const PauliOperator image = reduction.clifford.conjugate(PauliOperator::parse("+XI"));
    CHECK(image.vec == PauliVec::parse("IZ"));
}

TEST_CASE("already canonical pair stays on its slot") {
    const Subspace t = Subspace::span(2, {PauliVec::parse("IZ"), PauliVec::parse("IX")});
    const auto reduction = clifford_to_block(t);
    CHECK(reduction.a == 1);
    CHECK(reduction.b == 0);
    Subspace image(2);
    for (const auto& v : t.basis()) image.insert(reduction.clifford.conjugate_vec(v));
    CHECK(image == canonical_subgroup(2, 1, 0));
}

TEST_CASE("CNOT support canonicalizes to two Z slots") {
    const Subspace t = Subspace::span(2, {PauliVec::parse("ZI"), PauliVec::parse("IX")});
    const auto reduction = clifford_to_block(t);
    CHECK(reduction.a == 0);
    CHECK(reduction.b == 2);
    Subspace image(2);
    for (const auto& v : t.basis()) image.insert(reduction.clifford.conjugate_vec(v));
    CHECK(image == canonical_subgroup(2, 0, 2));
}

TEST_CASE("trivial subspace canonicalizes to the identity tableau") {
    const auto reduction = clifford_to_block(Subspace(3));
    CHECK(reduction.a == 0);
    CHECK(reduction.b == 0);
    CHECK(reduction.clifford == CliffordOp::identity(3));
}

TEST_CASE("canonicalization maps random subgroups onto the canonical form exactly") {
    Rng rng(79);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const Subspace t = random_subspace(n, static_cast<int>(rng.below(2 * n + 1)), rng);
        const auto reduction = clifford_to_block(t);
        Subspace image(n);
        for (const auto& v : t.basis()) image.insert(reduction.clifford.conjugate_vec(v));
        CHECK(image == canonical_subgroup(n, reduction.a, reduction.b));
        // Per-generator mapping onto single-qubit slots, dense cross-check.
        if (n <= 4) {
            const MatrixXc cd = reduction.clifford.dense();
            for (const auto& v : t.basis()) {
                const PauliOperator img = reduction.clifford.conjugate(PauliOperator(v));
                CHECK((cd * weyl_matrix(v) * cd.adjoint() - weyl_matrix(img)).norm() < 1e-10);
            }
        }
    }
}

TEST_CASE("canonicalization gate count stays linear in n per generator") {
    Rng rng(83);
    const int n = 12;
    const Subspace t = random_subspace(n, 6, rng);
    const auto reduction = clifford_to_block(t);
    const int k = reduction.a + reduction.b;
    CHECK(static_cast<int>(reduction.clifford.gate_list().size()) <= 12 * n * std::max(1, k));
}

TEST_CASE("malformed bases are rejected") {
    SymplecticBasis bad;
    bad.pairs.emplace_back(PauliVec::parse("XI"), PauliVec::parse("IZ"));  // commuting pair
    CHECK_THROWS(canonicalize_subgroup(2, bad));
}

TEST_CASE("gate list text round trip") {
    Rng rng(89);
    const CliffordOp c = random_clifford(3, rng, 2);
    const CliffordOp back = CliffordOp::parse_gates(3, c.gates_str());
    CHECK(back == c);
}

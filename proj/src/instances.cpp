#include "paulitomo/instances.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "paulitomo/blockdiag.hpp"

namespace paulitomo {

MatrixXc embed_on_qubits(int n, const std::vector<int>& qubits, const MatrixXc& u) {
    const int k = static_cast<int>(qubits.size());
    if (u.rows() != (1ll << k)) throw std::invalid_argument("embed_on_qubits: size mismatch");
    const Eigen::Index dim = 1ll << n;
    MatrixXc out = MatrixXc::Zero(dim, dim);
    const std::uint64_t full = static_cast<std::uint64_t>(dim);
    auto sub_index = [&](std::uint64_t s) {
        std::uint64_t idx = 0;
        for (int j = 0; j < k; ++j)
            idx = (idx << 1) | ((s >> (n - 1 - qubits[j])) & 1);
        return idx;
    };
    auto rest_bits = [&](std::uint64_t s) {
        std::uint64_t idx = s;
        for (int j = 0; j < k; ++j) idx &= ~(1ull << (n - 1 - qubits[j]));
        return idx;
    };
    for (std::uint64_t col = 0; col < full; ++col) {
        const std::uint64_t cs = sub_index(col);
        const std::uint64_t rest = rest_bits(col);
        for (std::uint64_t rs = 0; rs < (1ull << k); ++rs) {
            // Rebuild the row index with the sub-register set to rs.
            std::uint64_t row = rest;
            for (int j = 0; j < k; ++j)
                if ((rs >> (k - 1 - j)) & 1) row |= 1ull << (n - 1 - qubits[j]);
            out(row, col) = u(rs, cs);
        }
    }
    return out;
}

Instance gen_junta(const JuntaSpec& spec, Rng& rng) {
    if (spec.k > spec.n) throw std::invalid_argument("gen_junta: k > n");
    std::vector<int> qubits = spec.qubits;
    if (qubits.empty()) {
        std::vector<int> all(spec.n);
        for (int q = 0; q < spec.n; ++q) all[q] = q;
        for (int i = 0; i < spec.k; ++i) {
            const int j = i + static_cast<int>(rng.below(spec.n - i));
            std::swap(all[i], all[j]);
            qubits.push_back(all[i]);
        }
        std::sort(qubits.begin(), qubits.end());
    }
    if (static_cast<int>(qubits.size()) != spec.k)
        throw std::invalid_argument("gen_junta: qubit list does not match k");

    const MatrixXc u = haar_unitary(1 << spec.k, rng);
    Instance inst;
    inst.unitary = DenseUnitary(spec.n, embed_on_qubits(spec.n, qubits, u));
    inst.witness.kind = "junta";
    inst.witness.n = spec.n;
    inst.witness.junta_qubits = qubits;
    return inst;
}

Instance gen_kdim(const KdimSpec& spec, Rng& rng) {
    if (spec.a + spec.b > spec.n) throw std::invalid_argument("gen_kdim: a + b > n");
    BlockDiagUnitary bd{spec.n, spec.a, spec.b, {}};
    for (std::size_t y = 0; y < (1ull << spec.b); ++y)
        bd.blocks.push_back(haar_unitary(1 << spec.a, rng));
    const CliffordOp c =
        spec.canonical ? CliffordOp::identity(spec.n) : random_clifford(spec.n, rng);
    const MatrixXc cd = c.dense();
    // U = C^dag V_bd C, so supp(U) = C^dag(W_{a,b}).
    MatrixXc u = cd.adjoint() * bd.dense() * cd;

    Instance inst;
    inst.unitary = DenseUnitary(spec.n, std::move(u));
    inst.witness.kind = "kdim";
    inst.witness.n = spec.n;
    inst.witness.a = spec.a;
    inst.witness.b = spec.b;
    Subspace support(spec.n);
    const CliffordOp c_inv = c.inverse();
    const Subspace canonical = canonical_subgroup(spec.n, spec.a, spec.b);
    for (const auto& v : canonical.basis()) support.insert(c_inv.conjugate_vec(v));
    inst.witness.support = support;
    return inst;
}

namespace {

MatrixXc random_two_qubit_layer(int n, Rng& rng) {
    std::vector<int> order(n);
    for (int q = 0; q < n; ++q) order[q] = q;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.below(i + 1));
        std::swap(order[i], order[j]);
    }
    MatrixXc layer = MatrixXc::Identity(1ll << n, 1ll << n);
    for (int i = 0; i + 1 < n; i += 2) {
        const MatrixXc g = haar_unitary(4, rng);
        layer = embed_on_qubits(n, {std::min(order[i], order[i + 1]),
                                    std::max(order[i], order[i + 1])}, g) * layer;
    }
    return layer;
}

// Non-Clifford single-qubit rotation: a Z-rotation by an angle away from
// the Clifford multiples of pi/2.
MatrixXc random_nonclifford_1q(Rng& rng) {
    const double theta = rng.uniform(0.15, std::numbers::pi / 2 - 0.15);
    MatrixXc m = MatrixXc::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = std::polar(1.0, theta);
    return m;
}

}  // namespace

Instance gen_shallow_doped(const ShallowDopedSpec& spec, Rng& rng) {
    const int n = spec.n;
    MatrixXc q_factor = MatrixXc::Identity(1ll << n, 1ll << n);
    for (int layer = 0; layer < spec.depth; ++layer)
        q_factor = random_two_qubit_layer(n, rng) * q_factor;

    // Doped Clifford: Clifford chunks with t non-Clifford single-qubit
    // rotations interleaved.
    MatrixXc c_factor = random_clifford(n, rng).dense();
    for (int i = 0; i < spec.t_gates; ++i) {
        const int qubit = static_cast<int>(rng.below(n));
        c_factor = embed_on_qubits(n, {qubit}, random_nonclifford_1q(rng)) * c_factor;
        c_factor = random_clifford(n, rng).dense() * c_factor;
    }

    Instance inst;
    MatrixXc u = spec.clifford_first ? c_factor * q_factor : q_factor * c_factor;
    inst.unitary = DenseUnitary(n, std::move(u));
    inst.witness.kind = "shallow_doped";
    inst.witness.n = n;
    inst.witness.depth = spec.depth;
    inst.witness.t_gates = spec.t_gates;
    inst.witness.shallow_factor = q_factor;
    inst.witness.clifford_factor = c_factor;
    inst.witness.clifford_first = spec.clifford_first;
    return inst;
}

}  // namespace paulitomo

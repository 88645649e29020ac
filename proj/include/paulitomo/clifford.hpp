#pragma once

#include <string>
#include <vector>

#include "paulitomo/f2.hpp"
#include "paulitomo/pauli.hpp"
#include "paulitomo/rng.hpp"

namespace paulitomo {

enum class GateKind { H, S, CNOT, CZ, X, Z };

struct Gate {
    GateKind kind;
    int q0;
    int q1 = -1;  // second qubit for CNOT/CZ

    bool is_two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::CZ; }
};

/// Clifford operation as a tableau: the signed Weyl images of the 2n
/// generators X_0..X_{n-1}, Z_0..Z_{n-1}, together with the elementary gate
/// sequence that realizes it. The symplectic matrix and sign bits are views
/// of the stored images; replaying the gate list reproduces the tableau.
class CliffordOp {
  public:
    static CliffordOp identity(int n);
    static CliffordOp from_gates(int n, const std::vector<Gate>& gates);

    int n() const { return n_; }
    const std::vector<Gate>& gate_list() const { return gates_; }

    const PauliOperator& image_x(int qubit) const { return images_[qubit]; }
    const PauliOperator& image_z(int qubit) const { return images_[n_ + qubit]; }

    /// Left-composes an elementary gate: this becomes g . this.
    void apply_gate(const Gate& g);

    /// C W_p C^dag as a signed Weyl operator.
    PauliOperator conjugate(const PauliOperator& p) const;
    PauliVec conjugate_vec(const PauliVec& v) const;

    /// Image of a subspace under conjugation (phases dropped).
    Subspace conjugate_subspace(const Subspace& s) const;

    /// second . this (apply this first, then second).
    CliffordOp then(const CliffordOp& second) const;
    CliffordOp inverse() const;

    /// Columns of the 2n x 2n symplectic matrix (images as vectors) and the
    /// per-generator sign bits.
    std::vector<PauliVec> symplectic_columns() const;
    std::vector<int> sign_bits() const;

    MatrixXc dense(int dense_cap = kDefaultDenseCap) const;

    bool operator==(const CliffordOp& o) const {
        return n_ == o.n_ && images_ == o.images_;
    }

    /// Line-oriented text form, one gate per line ("H 3", "CNOT 1 4");
    /// qubit indices are 1-based in this format.
    std::string gates_str() const;
    static CliffordOp parse_gates(int n, const std::string& text);

  private:
    explicit CliffordOp(int n);

    int n_ = 0;
    std::vector<PauliOperator> images_;
    std::vector<Gate> gates_;
};

/// Canonical-form parameters: the subgroup W_{a,b} on the trailing qubits.
struct CanonicalTarget {
    int a = 0;
    int b = 0;
};

/// Builds a Clifford C mapping each symplectic pair (x_i, z_i) to single-
/// qubit (X, Z) on the last a' qubits and each isotropic generator to a
/// single-qubit Z on the b' qubits before them, so C T C^dag = W_{a',b'}
/// exactly (signs are recorded, not forced to +1). Throws on a basis that
/// violates the symplectic relations. Gate count O(n (a'+b')).
CliffordOp canonicalize_subgroup(int n, const SymplecticBasis& basis);

/// Decomposes T_hat against itself and canonicalizes. Returns the circuit
/// together with the (a', b') split of T_hat.
struct BlockReduction {
    CliffordOp clifford;
    int a = 0;
    int b = 0;
};
BlockReduction clifford_to_block(const Subspace& t_hat);

/// Random Clifford built from a long random elementary-gate sequence with
/// random sign flips. Adequate mixing for test instances.
CliffordOp random_clifford(int n, Rng& rng, int length_factor = 4);

/// Dense application of one elementary gate, G * M, without materializing G.
void apply_gate_dense(const Gate& g, MatrixXc& m);
void apply_gate_dense(const Gate& g, VectorXc& state);

}  // namespace paulitomo

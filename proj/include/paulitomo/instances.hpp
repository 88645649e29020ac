#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paulitomo/clifford.hpp"
#include "paulitomo/sim.hpp"
#include "paulitomo/tomography.hpp"

namespace paulitomo {

/// Ground-truth record written next to each generated instance.
struct InstanceWitness {
    std::string kind;  // junta | kdim | shallow_doped
    int n = 0;

    // junta
    std::vector<int> junta_qubits;  // 0-based

    // kdim
    int a = 0, b = 0;
    std::optional<Subspace> support;

    // shallow_doped
    int depth = 0;
    int t_gates = 0;
    std::optional<MatrixXc> shallow_factor;   // Q
    std::optional<MatrixXc> clifford_factor;  // C (doped)
    bool clifford_first = false;              // true: U = C Q; false: U = Q C
};

struct Instance {
    DenseUnitary unitary;
    InstanceWitness witness;
};

struct JuntaSpec {
    int n = 0;
    int k = 0;
    std::vector<int> qubits;  // optional; random subset when empty
};

struct KdimSpec {
    int n = 0;
    int a = 0;
    int b = 0;
    bool canonical = false;  // skip the random Clifford conjugation
};

struct ShallowDopedSpec {
    int n = 0;
    int depth = 1;
    int t_gates = 1;
    bool clifford_first = false;
};

/// Haar unitary on the given qubits, identity elsewhere.
Instance gen_junta(const JuntaSpec& spec, Rng& rng);

/// Random Clifford conjugate of an exactly (a,b)-block-diagonal unitary
/// with Haar blocks; the witness records the true support span.
Instance gen_kdim(const KdimSpec& spec, Rng& rng);

/// Depth-d layers of Haar two-qubit gates composed with a random Clifford
/// doped with `t_gates` non-Clifford single-qubit rotations.
Instance gen_shallow_doped(const ShallowDopedSpec& spec, Rng& rng);

/// Dense unitary embedding `u` on the listed qubits (identity elsewhere).
MatrixXc embed_on_qubits(int n, const std::vector<int>& qubits, const MatrixXc& u);

}  // namespace paulitomo

#pragma once

#include <map>
#include <optional>
#include <string>

#include "paulitomo/blockdiag.hpp"
#include "paulitomo/composed.hpp"
#include "paulitomo/instances.hpp"

namespace paulitomo {

/// Reproducible record of one learner run. Serialized with the full config
/// echo; identical (seed, config, instance) produce byte-identical JSON.
struct LearnReport {
    std::string schema = "v1";
    std::string learner;
    std::string status = "ok";  // ok | failed
    std::string failure_stage;
    std::uint64_t seed = 0;
    int n = 0;
    int a = -1, b = -1;
    double eps = 0, delta = 0;
    QuerySnapshot queries;
    std::map<std::string, double> config;

    // Ground-truth distances, present only when a witness was available.
    std::optional<double> dist_phaseop;
    std::optional<double> diamond_upper;

    std::optional<double> support_mass;           // captured Pauli mass
    std::vector<std::string> support_basis;       // claimed support, Pauli strings
    std::vector<int> junta_qubits;                // 1-based in serialized form
    std::vector<MatrixXc> blocks;                 // learned blocks (when block-structured)
    int bootstrap_rounds = -1;
    double wall_ms = 0;

    std::string to_json() const;
};

/// Dense-unitary instance files: either an explicit matrix
/// {"n": ..., "rows": [[re, im, ...], ...]} or a circuit
/// {"n": ..., "gates": [{"name": "H", "qubits": [1]}, ...]} over the gate
/// set H, S, T, X, Y, Z, CNOT, CZ, U2 (arbitrary single-qubit, 4 complex
/// entries in params), U1 (phase gate, one angle). Qubit indices in files
/// are 1-based.
std::string unitary_to_json(const DenseUnitary& u);
DenseUnitary unitary_from_json(const std::string& text, int dense_cap = kDefaultDenseCap);

std::string witness_to_json(const InstanceWitness& w);
InstanceWitness witness_from_json(const std::string& text);

std::string matrix_to_json_rows(const MatrixXc& m);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

/// Witness path convention: <instance>.witness.json.
std::string witness_path_for(const std::string& instance_path);

}  // namespace paulitomo

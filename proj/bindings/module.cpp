// Python bindings for the core operations: Pauli/symplectic algebra,
// Clifford canonicalization, the simulated oracles, and the learners.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paulitomo/composed.hpp"
#include "paulitomo/dimension.hpp"
#include "paulitomo/instances.hpp"
#include "paulitomo/metrics.hpp"
#include "paulitomo/serialization.hpp"
#include "paulitomo/verify.hpp"

namespace py = pybind11;
using namespace paulitomo;

namespace {

Subspace subspace_from_strings(int n, const std::vector<std::string>& paulis) {
    Subspace s(n);
    for (const auto& p : paulis) s.insert(PauliVec::parse(p));
    return s;
}

std::vector<std::string> subspace_strings(const Subspace& s) {
    std::vector<std::string> out;
    for (const auto& v : s.basis()) out.push_back(v.str());
    return out;
}

LearnParams params_from_kwargs(double eps, double delta, const py::dict& overrides) {
    LearnParams params;
    params.eps = eps;
    params.delta = delta;
    for (const auto& item : overrides)
        params.set(py::cast<std::string>(item.first), py::cast<double>(item.second));
    return params;
}

py::dict queries_dict(const QuerySnapshot& q) {
    py::dict d;
    d["forward"] = q.forward;
    d["inverse"] = q.inverse;
    return d;
}

py::dict witness_dict(const InstanceWitness& w) {
    py::dict d;
    d["kind"] = w.kind;
    d["n"] = w.n;
    if (w.kind == "junta") d["junta_qubits"] = w.junta_qubits;
    if (w.kind == "kdim") {
        d["a"] = w.a;
        d["b"] = w.b;
        if (w.support) d["support"] = subspace_strings(*w.support);
    }
    if (w.kind == "shallow_doped") {
        d["depth"] = w.depth;
        d["t_gates"] = w.t_gates;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(paulitomo, m) {
    m.doc() = "Process tomography of unitaries with low-dimensional Pauli support";

    // ---- F2 / Pauli algebra ----
    m.def(
        "symplectic_product",
        [](const std::string& a, const std::string& b) {
            return symplectic_product(PauliVec::parse(a), PauliVec::parse(b));
        },
        py::arg("a"), py::arg("b"),
        "Symplectic product of two Pauli strings; 0 iff they commute");

    m.def(
        "span_dim",
        [](int n, const std::vector<std::string>& paulis) {
            return subspace_from_strings(n, paulis).dim();
        },
        py::arg("n"), py::arg("paulis"));

    m.def(
        "symplectic_complement",
        [](int n, const std::vector<std::string>& paulis) {
            return subspace_strings(subspace_from_strings(n, paulis).symplectic_complement());
        },
        py::arg("n"), py::arg("paulis"));

    m.def(
        "symplectic_decomposition",
        [](int n, const std::vector<std::string>& paulis) {
            const Subspace t = subspace_from_strings(n, paulis);
            const auto d = symplectic_gram_schmidt(t, t);
            py::dict out;
            py::list pairs;
            for (const auto& [x, z] : d.t.pairs) pairs.append(py::make_tuple(x.str(), z.str()));
            py::list iso;
            for (const auto& v : d.t.isotropic) iso.append(v.str());
            out["pairs"] = pairs;
            out["isotropic"] = iso;
            out["a"] = d.t.a();
            out["b"] = d.t.b();
            return out;
        },
        py::arg("n"), py::arg("paulis"),
        "Splits a subgroup into symplectic pairs and an isotropic tail");

    m.def(
        "weyl_matrix",
        [](const std::string& pauli) { return weyl_matrix(PauliOperator::parse(pauli)); },
        py::arg("pauli"));

    m.def(
        "pauli_expand",
        [](const MatrixXc& a, double tau) {
            const auto e = pauli_expand(a, tau);
            py::dict out;
            for (const auto& v : e.support()) out[py::str(v.str())] = e.coefficient(v);
            return out;
        },
        py::arg("matrix"), py::arg("tau") = kSupportTau,
        "Pauli coefficients of a matrix, keyed by Pauli string");

    m.def(
        "support_span",
        [](const MatrixXc& a, double tau) { return subspace_strings(support_span(a, tau)); },
        py::arg("matrix"), py::arg("tau") = kSupportTau);

    m.def(
        "pauli_project",
        [](const MatrixXc& a, int n, const std::vector<std::string>& paulis) {
            return pauli_project(a, subspace_from_strings(n, paulis));
        },
        py::arg("matrix"), py::arg("n"), py::arg("paulis"));

    m.def(
        "pauli_twirl",
        [](const MatrixXc& a, int n, const std::vector<std::string>& paulis) {
            return pauli_twirl(a, subspace_from_strings(n, paulis));
        },
        py::arg("matrix"), py::arg("n"), py::arg("paulis"));

    // ---- Clifford ----
    m.def(
        "clifford_conjugate",
        [](int n, const std::string& gates, const std::string& pauli) {
            return CliffordOp::parse_gates(n, gates).conjugate(PauliOperator::parse(pauli)).str();
        },
        py::arg("n"), py::arg("gates"), py::arg("pauli"),
        "Conjugates a signed Pauli through a gate-list Clifford");

    m.def(
        "canonicalize_support",
        [](int n, const std::vector<std::string>& paulis) {
            const auto reduction = clifford_to_block(subspace_from_strings(n, paulis));
            py::dict out;
            out["gates"] = reduction.clifford.gates_str();
            out["a"] = reduction.a;
            out["b"] = reduction.b;
            out["dense"] = reduction.clifford.dense();
            return out;
        },
        py::arg("n"), py::arg("paulis"),
        "Clifford circuit mapping a Pauli subgroup onto its canonical form");

    m.def(
        "random_clifford_dense",
        [](int n, std::uint64_t seed) {
            Rng rng(seed);
            return random_clifford(n, rng).dense();
        },
        py::arg("n"), py::arg("seed"));

    // ---- metrics ----
    m.def(
        "dist_phaseop", [](const MatrixXc& u, const MatrixXc& v) { return dist_phaseop(u, v); },
        py::arg("u"), py::arg("v"));
    m.def("dist_phaseF", &dist_phaseF, py::arg("u"), py::arg("v"));
    m.def(
        "diamond_upper",
        [](const MatrixXc& u, const MatrixXc& v) { return 2 * dist_phaseop(u, v); },
        py::arg("u"), py::arg("v"));

    // ---- simulation ----
    m.def(
        "bell_sample",
        [](const MatrixXc& u, std::uint64_t m, std::uint64_t seed) {
            const int n = static_cast<int>(std::log2(u.rows()));
            const QueryOracle oracle(DenseUnitary(n, u), false);
            Rng rng(seed);
            std::vector<std::string> out;
            for (const auto& v : bell_sample_choi(oracle, m, rng)) out.push_back(v.str());
            return out;
        },
        py::arg("unitary"), py::arg("m"), py::arg("seed"),
        "Bell-basis samples of the Choi state, as Pauli strings");

    // ---- instances ----
    m.def(
        "gen_junta",
        [](int n, int k, std::uint64_t seed) {
            Rng rng(seed);
            const Instance inst = gen_junta({n, k, {}}, rng);
            return py::make_tuple(inst.unitary.matrix, witness_dict(inst.witness));
        },
        py::arg("n"), py::arg("k"), py::arg("seed"));

    m.def(
        "gen_kdim",
        [](int n, int a, int b, std::uint64_t seed, bool canonical) {
            Rng rng(seed);
            const Instance inst = gen_kdim({n, a, b, canonical}, rng);
            return py::make_tuple(inst.unitary.matrix, witness_dict(inst.witness));
        },
        py::arg("n"), py::arg("a"), py::arg("b"), py::arg("seed"), py::arg("canonical") = false);

    m.def(
        "gen_shallow_doped",
        [](int n, int depth, int t_gates, std::uint64_t seed) {
            Rng rng(seed);
            const Instance inst = gen_shallow_doped({n, depth, t_gates, false}, rng);
            return py::make_tuple(inst.unitary.matrix, witness_dict(inst.witness));
        },
        py::arg("n"), py::arg("depth"), py::arg("t_gates"), py::arg("seed"));

    // ---- learners ----
    m.def(
        "learn_blockdiag",
        [](const MatrixXc& u, int a, int b, double eps, double delta, std::uint64_t seed,
           const py::dict& config) {
            const int n = static_cast<int>(std::log2(u.rows()));
            const QueryOracle oracle(DenseUnitary(n, u), false);
            Rng rng(seed);
            const auto result =
                learn_block_diag(oracle, a, b, params_from_kwargs(eps, delta, config), rng);
            py::dict out;
            out["estimate"] = result.estimate.dense();
            out["blocks"] = result.estimate.blocks;
            out["queries"] = queries_dict(result.queries);
            out["dist_phaseop"] = dist_phaseop(result.estimate.dense(), u);
            return out;
        },
        py::arg("unitary"), py::arg("a"), py::arg("b"), py::arg("eps") = 0.1,
        py::arg("delta") = 0.1, py::arg("seed") = 1, py::arg("config") = py::dict());

    m.def(
        "learn_kdim",
        [](const MatrixXc& u, int k_bound, bool with_inverse, double eps, double delta,
           std::uint64_t seed, const py::dict& config) {
            const int n = static_cast<int>(std::log2(u.rows()));
            const QueryOracle oracle(DenseUnitary(n, u), with_inverse);
            Rng rng(seed);
            const auto mode = with_inverse ? SupportMode::WithInverse : SupportMode::ForwardOnly;
            const auto result =
                learn_kdim(oracle, k_bound, mode, params_from_kwargs(eps, delta, config), rng);
            py::dict out;
            out["estimate"] = result.estimate.dense();
            out["a"] = result.estimate.a;
            out["b"] = result.estimate.b;
            out["support"] = subspace_strings(result.estimate.support);
            out["bootstrap_rounds"] = result.bootstrap_rounds;
            out["queries"] = queries_dict(result.queries);
            out["dist_phaseop"] = dist_phaseop(result.estimate.dense(), u);
            return out;
        },
        py::arg("unitary"), py::arg("k_bound"), py::arg("with_inverse") = false,
        py::arg("eps") = 0.1, py::arg("delta") = 0.1, py::arg("seed") = 1,
        py::arg("config") = py::dict());

    m.def(
        "learn_junta",
        [](const MatrixXc& u, int k, double eps, double delta, std::uint64_t seed,
           const py::dict& config) {
            const int n = static_cast<int>(std::log2(u.rows()));
            const QueryOracle oracle(DenseUnitary(n, u), false);
            Rng rng(seed);
            const auto result = learn_junta(oracle, k, params_from_kwargs(eps, delta, config), rng);
            py::dict out;
            out["estimate"] = result.kdim.estimate.dense();
            out["junta_qubits"] = result.junta_qubits;
            out["queries"] = queries_dict(result.kdim.queries);
            out["dist_phaseop"] = dist_phaseop(result.kdim.estimate.dense(), u);
            return out;
        },
        py::arg("unitary"), py::arg("k"), py::arg("eps") = 0.1, py::arg("delta") = 0.1,
        py::arg("seed") = 1, py::arg("config") = py::dict());

    m.def(
        "learn_composed",
        [](const MatrixXc& u, int d_bound, int t_bound, double eps, double delta,
           std::uint64_t seed, const py::dict& config) {
            const int n = static_cast<int>(std::log2(u.rows()));
            const QueryOracle oracle(DenseUnitary(n, u), true);
            Rng rng(seed);
            const auto result = learn_composed(oracle, d_bound, t_bound,
                                               params_from_kwargs(eps, delta, config), rng);
            py::dict out;
            out["factors"] = result.estimate.factors;
            out["product"] = result.estimate.dense();
            out["queries"] = queries_dict(result.queries);
            py::list terms;
            for (const auto& t : result.terms) {
                py::dict term;
                term["qubit"] = t.qubit;
                term["pauli"] = std::string(1, t.pauli);
                term["dim"] = t.dim;
                term["dist_phaseop"] = t.dist_phaseop;
                terms.append(term);
            }
            out["terms"] = terms;
            return out;
        },
        py::arg("unitary"), py::arg("d_bound"), py::arg("t_bound"), py::arg("eps") = 0.3,
        py::arg("delta") = 0.1, py::arg("seed") = 1, py::arg("config") = py::dict());

    m.def(
        "clifford_nullity",
        [](const MatrixXc& u, double tol) {
            const int n = static_cast<int>(std::log2(u.rows()));
            const auto witness = clifford_nullity(DenseUnitary(n, u), tol);
            py::dict out;
            out["t"] = witness.t;
            out["normalized"] = subspace_strings(witness.normalized_subspace);
            return out;
        },
        py::arg("unitary"), py::arg("tol") = 1e-9);

    m.def(
        "run_verify_suite",
        [](const std::string& name, std::uint64_t seed) {
            const auto result = run_verify_suite(name, seed);
            py::dict out;
            for (const auto& c : result.checks) out[py::str(c.name)] = c.passed;
            return out;
        },
        py::arg("suite"), py::arg("seed") = 1);
}

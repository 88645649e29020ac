#include <doctest.h>

#include <cstdio>

#include "paulitomo/serialization.hpp"
#include "paulitomo/tomography.hpp"

using namespace paulitomo;

TEST_CASE("matrix instances round trip") {
    Rng rng(443);
    const DenseUnitary u(2, haar_unitary(4, rng));
    const DenseUnitary back = unitary_from_json(unitary_to_json(u));
    CHECK(back.n == 2);
    CHECK((back.matrix - u.matrix).norm() < 1e-12);
}

TEST_CASE("circuit instances build the advertised matrix") {
    // H on qubit 1, CNOT 1->2 prepares the usual entangler; check against a
    // hand-built matrix. File qubit indices are 1-based.
    const std::string text = R"({
        "n": 2,
        "format": "circuit",
        "gates": [
            {"name": "H", "qubits": [1]},
            {"name": "CNOT", "qubits": [1, 2]}
        ]
    })";
    const DenseUnitary u = unitary_from_json(text);
    MatrixXc h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    MatrixXc hi = MatrixXc::Zero(4, 4);
    hi.block(0, 0, 2, 2) = h(0, 0) * MatrixXc::Identity(2, 2);
    hi.block(0, 2, 2, 2) = h(0, 1) * MatrixXc::Identity(2, 2);
    hi.block(2, 0, 2, 2) = h(1, 0) * MatrixXc::Identity(2, 2);
    hi.block(2, 2, 2, 2) = h(1, 1) * MatrixXc::Identity(2, 2);
    MatrixXc cnot = MatrixXc::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    CHECK((u.matrix - cnot * hi).norm() < 1e-12);
}

TEST_CASE("circuit gate set covers the named gates") {
    const std::string text = R"({
        "n": 1,
        "format": "circuit",
        "gates": [
            {"name": "T", "qubits": [1]},
            {"name": "U1", "qubits": [1], "params": [0.5]},
            {"name": "U2", "qubits": [1], "params": [0, 0, 1, 0, 1, 0, 0, 0]},
            {"name": "S", "qubits": [1]},
            {"name": "X", "qubits": [1]},
            {"name": "Y", "qubits": [1]},
            {"name": "Z", "qubits": [1]}
        ]
    })";
    const DenseUnitary u = unitary_from_json(text);
    CHECK(u.n == 1);
    CHECK((u.matrix.adjoint() * u.matrix - MatrixXc::Identity(2, 2)).norm() < 1e-9);
}

TEST_CASE("malformed circuits are rejected") {
    CHECK_THROWS(unitary_from_json(R"({"n": 1, "format": "circuit",
        "gates": [{"name": "Q", "qubits": [1]}]})"));
    CHECK_THROWS(unitary_from_json(R"({"n": 1, "format": "circuit",
        "gates": [{"name": "H", "qubits": [5]}]})"));
    CHECK_THROWS(unitary_from_json(R"({"n": 13, "format": "matrix", "rows": []})"));
}

TEST_CASE("witness files round trip per kind") {
    InstanceWitness junta;
    junta.kind = "junta";
    junta.n = 6;
    junta.junta_qubits = {1, 4};
    const auto junta_back = witness_from_json(witness_to_json(junta));
    CHECK(junta_back.junta_qubits == junta.junta_qubits);

    InstanceWitness kdim;
    kdim.kind = "kdim";
    kdim.n = 4;
    kdim.a = 1;
    kdim.b = 1;
    kdim.support = Subspace::span(
        4, {PauliVec::parse("XIII"), PauliVec::parse("ZIII"), PauliVec::parse("IZII")});
    const auto kdim_back = witness_from_json(witness_to_json(kdim));
    CHECK(kdim_back.a == 1);
    CHECK(kdim_back.b == 1);
    REQUIRE(kdim_back.support.has_value());
    CHECK(*kdim_back.support == *kdim.support);

    Rng rng(449);
    InstanceWitness doped;
    doped.kind = "shallow_doped";
    doped.n = 2;
    doped.depth = 1;
    doped.t_gates = 1;
    doped.shallow_factor = haar_unitary(4, rng);
    doped.clifford_factor = haar_unitary(4, rng);
    const auto doped_back = witness_from_json(witness_to_json(doped));
    CHECK(doped_back.depth == 1);
    CHECK((*doped_back.shallow_factor - *doped.shallow_factor).norm() < 1e-12);
}

TEST_CASE("reports serialize with config echo and optional fields") {
    LearnReport report;
    report.learner = "junta";
    report.seed = 7;
    report.n = 5;
    report.eps = 0.1;
    report.delta = 0.1;
    report.config = LearnParams{}.as_map();
    report.junta_qubits = {0, 3};
    const std::string text = report.to_json();
    CHECK(text.find("\"schema\": \"v1\"") != std::string::npos);
    CHECK(text.find("\"c_tomo\"") != std::string::npos);
    // 1-based in the serialized form.
    CHECK(text.find("[\n    1,\n    4\n  ]") != std::string::npos);
    CHECK(text.find("dist_phaseop") == std::string::npos);  // no witness, no field
}

TEST_CASE("witness path convention") {
    CHECK(witness_path_for("foo/bar.json") == "foo/bar.witness.json");
    CHECK(witness_path_for("plain") == "plain.witness.json");
}

TEST_CASE("config files parse key=value lines") {
    const char* path = "test_config_tmp.txt";
    write_file(path, "c_tomo = 2.5\n# comment line\n  eps_cap=0.25\nseq_threshold = 8\n");
    const LearnParams params = LearnParams::from_file(path);
    CHECK(params.c_tomo == doctest::Approx(2.5));
    CHECK(params.eps_cap == doctest::Approx(0.25));
    CHECK(params.seq_threshold == 8);
    std::remove(path);
    LearnParams p2;
    CHECK_THROWS(p2.apply_assignment("no_such_key=1"));
    CHECK_THROWS(p2.apply_assignment("malformed"));
}

#include "paulitomo/serialization.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

namespace paulitomo {

using nlohmann::json;

namespace {

json matrix_rows(const MatrixXc& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c).real());
            row.push_back(m(r, c).imag());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

MatrixXc matrix_from_rows(const json& rows) {
    const Eigen::Index dim = static_cast<Eigen::Index>(rows.size());
    MatrixXc m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const auto& row = rows.at(r);
        if (static_cast<Eigen::Index>(row.size()) != 2 * dim)
            throw std::invalid_argument("matrix rows: wrong entry count");
        for (Eigen::Index c = 0; c < dim; ++c)
            m(r, c) = Complex(row.at(2 * c).get<double>(), row.at(2 * c + 1).get<double>());
    }
    return m;
}

MatrixXc named_gate(const std::string& name, const std::vector<double>& params) {
    MatrixXc m;
    const double s = 1.0 / std::sqrt(2.0);
    if (name == "H") {
        m.resize(2, 2);
        m << s, s, s, -s;
    } else if (name == "S") {
        m.resize(2, 2);
        m << 1, 0, 0, Complex(0, 1);
    } else if (name == "T") {
        m.resize(2, 2);
        m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
    } else if (name == "X") {
        m.resize(2, 2);
        m << 0, 1, 1, 0;
    } else if (name == "Y") {
        m.resize(2, 2);
        m << 0, Complex(0, -1), Complex(0, 1), 0;
    } else if (name == "Z") {
        m.resize(2, 2);
        m << 1, 0, 0, -1;
    } else if (name == "CNOT") {
        m = MatrixXc::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    } else if (name == "CZ") {
        m = MatrixXc::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 2) = 1;
        m(3, 3) = -1;
    } else if (name == "U1") {
        if (params.size() != 1) throw std::invalid_argument("U1 takes one angle");
        m = MatrixXc::Zero(2, 2);
        m(0, 0) = 1;
        m(1, 1) = std::polar(1.0, params[0]);
    } else if (name == "U2") {
        if (params.size() != 8) throw std::invalid_argument("U2 takes 4 complex entries");
        m.resize(2, 2);
        m << Complex(params[0], params[1]), Complex(params[2], params[3]),
            Complex(params[4], params[5]), Complex(params[6], params[7]);
    } else {
        throw std::invalid_argument("unknown gate: " + name);
    }
    return m;
}

}  // namespace

std::string matrix_to_json_rows(const MatrixXc& m) { return matrix_rows(m).dump(); }

std::string unitary_to_json(const DenseUnitary& u) {
    json j;
    j["schema"] = "v1";
    j["format"] = "matrix";
    j["n"] = u.n;
    j["rows"] = matrix_rows(u.matrix);
    return j.dump();
}

DenseUnitary unitary_from_json(const std::string& text, int dense_cap) {
    const json j = json::parse(text);
    const int n = j.at("n").get<int>();
    if (n > dense_cap) throw std::invalid_argument("instance exceeds the dense cap");
    const std::string format = j.value("format", j.contains("rows") ? "matrix" : "circuit");
    if (format == "matrix") {
        MatrixXc m = matrix_from_rows(j.at("rows"));
        if (m.rows() != (1ll << n)) throw std::invalid_argument("matrix size does not match n");
        return DenseUnitary(n, std::move(m));
    }
    if (format != "circuit") throw std::invalid_argument("unknown instance format: " + format);
    const Eigen::Index dim = 1ll << n;
    MatrixXc u = MatrixXc::Identity(dim, dim);
    for (const auto& g : j.at("gates")) {
        const std::string name = g.at("name").get<std::string>();
        std::vector<int> qubits;
        for (const auto& q : g.at("qubits")) qubits.push_back(q.get<int>() - 1);  // 1-based files
        std::vector<double> params;
        if (g.contains("params"))
            for (const auto& p : g.at("params")) params.push_back(p.get<double>());
        const MatrixXc gate = named_gate(name, params);
        for (int q : qubits)
            if (q < 0 || q >= n) throw std::invalid_argument("gate qubit out of range");
        u = embed_on_qubits(n, qubits, gate) * u;
    }
    return DenseUnitary(n, std::move(u));
}

std::string witness_to_json(const InstanceWitness& w) {
    json j;
    j["schema"] = "v1";
    j["kind"] = w.kind;
    j["n"] = w.n;
    if (w.kind == "junta") {
        json qubits = json::array();
        for (int q : w.junta_qubits) qubits.push_back(q + 1);  // 1-based in files
        j["junta_qubits"] = qubits;
    } else if (w.kind == "kdim") {
        j["a"] = w.a;
        j["b"] = w.b;
        json support = json::array();
        if (w.support)
            for (const auto& v : w.support->basis()) support.push_back(v.str());
        j["support"] = support;
    } else if (w.kind == "shallow_doped") {
        j["depth"] = w.depth;
        j["t_gates"] = w.t_gates;
        j["clifford_first"] = w.clifford_first;
        if (w.shallow_factor) j["shallow_factor"] = matrix_rows(*w.shallow_factor);
        if (w.clifford_factor) j["clifford_factor"] = matrix_rows(*w.clifford_factor);
    }
    return j.dump();
}

InstanceWitness witness_from_json(const std::string& text) {
    const json j = json::parse(text);
    InstanceWitness w;
    w.kind = j.at("kind").get<std::string>();
    w.n = j.at("n").get<int>();
    if (w.kind == "junta") {
        for (const auto& q : j.at("junta_qubits")) w.junta_qubits.push_back(q.get<int>() - 1);
    } else if (w.kind == "kdim") {
        w.a = j.at("a").get<int>();
        w.b = j.at("b").get<int>();
        Subspace s(w.n);
        for (const auto& p : j.at("support")) s.insert(PauliVec::parse(p.get<std::string>()));
        w.support = std::move(s);
    } else if (w.kind == "shallow_doped") {
        w.depth = j.at("depth").get<int>();
        w.t_gates = j.at("t_gates").get<int>();
        w.clifford_first = j.value("clifford_first", false);
        if (j.contains("shallow_factor")) w.shallow_factor = matrix_from_rows(j.at("shallow_factor"));
        if (j.contains("clifford_factor"))
            w.clifford_factor = matrix_from_rows(j.at("clifford_factor"));
    }
    return w;
}

std::string LearnReport::to_json() const {
    json j;
    j["schema"] = schema;
    j["learner"] = learner;
    j["status"] = status;
    if (!failure_stage.empty()) j["failure_stage"] = failure_stage;
    j["seed"] = seed;
    j["n"] = n;
    if (a >= 0) j["a"] = a;
    if (b >= 0) j["b"] = b;
    j["eps"] = eps;
    j["delta"] = delta;
    j["queries"] = {{"forward", queries.forward},
                    {"inverse", queries.inverse},
                    {"controlled_fwd", queries.controlled_fwd},
                    {"controlled_inv", queries.controlled_inv}};
    j["config"] = config;
    if (dist_phaseop) j["dist_phaseop"] = *dist_phaseop;
    if (diamond_upper) j["diamond_upper"] = *diamond_upper;
    if (support_mass) j["support_mass"] = *support_mass;
    if (!support_basis.empty()) j["support"] = support_basis;
    if (!junta_qubits.empty()) {
        json qubits = json::array();
        for (int q : junta_qubits) qubits.push_back(q + 1);
        j["junta_qubits"] = qubits;
    }
    if (!blocks.empty()) {
        json blks = json::array();
        for (const auto& blk : blocks) blks.push_back(matrix_rows(blk));
        j["blocks"] = blks;
    }
    if (bootstrap_rounds >= 0) j["bootstrap_rounds"] = bootstrap_rounds;
    j["wall_ms"] = wall_ms;
    return j.dump(2);
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << contents;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string witness_path_for(const std::string& instance_path) {
    const auto dot = instance_path.rfind(".json");
    if (dot != std::string::npos && dot == instance_path.size() - 5)
        return instance_path.substr(0, dot) + ".witness.json";
    return instance_path + ".witness.json";
}

}  // namespace paulitomo

#include "paulitomo/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace paulitomo {

namespace {

struct Field {
    const char* name;
    std::function<double&(LearnParams&)> ref;
};

const std::vector<Field>& fields() {
    static const std::vector<Field> f = {
        {"eps", [](LearnParams& p) -> double& { return p.eps; }},
        {"delta", [](LearnParams& p) -> double& { return p.delta; }},
        {"c_tomo", [](LearnParams& p) -> double& { return p.c_tomo; }},
        {"c_emp", [](LearnParams& p) -> double& { return p.c_emp; }},
        {"eps_cap", [](LearnParams& p) -> double& { return p.eps_cap; }},
        {"c_out", [](LearnParams& p) -> double& { return p.c_out; }},
        {"c_query_base", [](LearnParams& p) -> double& { return p.c_query_base; }},
        {"support_k", [](LearnParams& p) -> double& { return p.support_k; }},
        {"amp_query_const", [](LearnParams& p) -> double& { return p.amp_query_const; }},
        {"bootstrap_eps0", [](LearnParams& p) -> double& { return p.bootstrap_eps0; }},
        {"cluster_rep_factor", [](LearnParams& p) -> double& { return p.cluster_rep_factor; }},
    };
    return f;
}

}  // namespace

double LearnParams::get(const std::string& key) const {
    if (key == "seq_threshold") return seq_threshold;
    if (key == "dense_cap") return dense_cap;
    if (key == "empirical_tomography") return empirical_tomography ? 1 : 0;
    LearnParams copy = *this;
    for (const auto& f : fields())
        if (key == f.name) return f.ref(copy);
    throw std::invalid_argument("unknown config key: " + key);
}

void LearnParams::set(const std::string& key, double value) {
    if (key == "seq_threshold") {
        seq_threshold = static_cast<int>(value);
        return;
    }
    if (key == "dense_cap") {
        dense_cap = static_cast<int>(value);
        return;
    }
    if (key == "empirical_tomography") {
        empirical_tomography = value != 0;
        return;
    }
    for (const auto& f : fields()) {
        if (key == f.name) {
            f.ref(*this) = value;
            return;
        }
    }
    throw std::invalid_argument("unknown config key: " + key);
}

std::map<std::string, double> LearnParams::as_map() const {
    std::map<std::string, double> m;
    LearnParams copy = *this;
    for (const auto& f : fields()) m[f.name] = f.ref(copy);
    m["seq_threshold"] = seq_threshold;
    m["dense_cap"] = dense_cap;
    m["empirical_tomography"] = empirical_tomography ? 1 : 0;
    return m;
}

void LearnParams::apply_assignment(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("config entry is not key=value: " + assignment);
    auto trim = [](std::string s) {
        const auto first = s.find_first_not_of(" \t");
        const auto last = s.find_last_not_of(" \t");
        return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
    };
    const std::string key = trim(assignment.substr(0, eq));
    const double value = std::stod(assignment.substr(eq + 1));
    set(key, value);
}

LearnParams LearnParams::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    LearnParams params;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        params.apply_assignment(line.substr(first, last - first + 1));
    }
    return params;
}

}  // namespace paulitomo

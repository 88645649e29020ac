#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace paulitomo {

/// Learner tunables. Defaults were calibrated once on a fixed seed set and
/// are frozen; sweeps and tests treat them as part of the contract.
struct LearnParams {
    double eps = 0.1;
    double delta = 0.1;

    // Tomography
    double c_tomo = 4.0;          // copy-count constant of the tomography routine
    double c_emp = 1.0;           // empirical backend copy multiplier
    bool empirical_tomography = false;

    // Block-diagonal learner
    double eps_cap = 0.25;         // clamp: run with eps = min(eps, eps_cap)
    double c_out = 8.0;            // frozen output-accuracy constant
    int seq_threshold = 4;         // sequential per-block mode when 2^{a+b} < this
    double c_query_base = 96.0;    // frozen base-learner query-bound constant

    // Support learning
    double support_k = 2.0;        // captured-mass slack factor K
    double amp_query_const = 3.0;  // query constant inside amplified sampling

    // Bootstrap
    double bootstrap_eps0 = 0.4;        // round-zero accuracy of the doubling loop
    double cluster_rep_factor = 18.0;   // R = ceil(factor * log(1/delta))

    int dense_cap = 12;

    double get(const std::string& key) const;
    void set(const std::string& key, double value);

    /// All tunables by name, for report echoing.
    std::map<std::string, double> as_map() const;

    /// Parses a key=value file (one pair per line, '#' comments).
    static LearnParams from_file(const std::string& path);
    void apply_assignment(const std::string& assignment);  // "key=value"
};

}  // namespace paulitomo

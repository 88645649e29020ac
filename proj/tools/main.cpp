// Command-line harness: instance generation, learner execution, invariant
// suites, and scaling sweeps. Exit codes: 0 ok, 1 learner/suite failure,
// 2 usage or config error.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "paulitomo/composed.hpp"
#include "paulitomo/dimension.hpp"
#include "paulitomo/instances.hpp"
#include "paulitomo/metrics.hpp"
#include "paulitomo/serialization.hpp"
#include "paulitomo/verify.hpp"

using namespace paulitomo;
using nlohmann::json;

namespace {

struct CliOptions {
    std::uint64_t seed = 1;
    double eps = 0.1;
    double delta = 0.1;
    std::string learner = "kdim-fwd";
    std::string config_file;
    std::vector<std::string> overrides;
    std::string out;
    int dense_cap = kDefaultDenseCap;
    int jobs = 1;
};

LearnParams make_params(const CliOptions& opt) {
    LearnParams params = opt.config_file.empty() ? LearnParams{} : LearnParams::from_file(opt.config_file);
    for (const auto& o : opt.overrides) params.apply_assignment(o);
    params.eps = opt.eps;
    params.delta = opt.delta;
    params.dense_cap = opt.dense_cap;
    return params;
}

Instance generate_from_spec(const json& spec, Rng& rng) {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "junta") {
        JuntaSpec js;
        js.n = spec.at("n").get<int>();
        js.k = spec.at("k").get<int>();
        if (spec.contains("qubits"))
            for (const auto& q : spec.at("qubits")) js.qubits.push_back(q.get<int>() - 1);
        return gen_junta(js, rng);
    }
    if (kind == "kdim") {
        KdimSpec ks;
        ks.n = spec.at("n").get<int>();
        ks.a = spec.at("a").get<int>();
        ks.b = spec.at("b").get<int>();
        ks.canonical = spec.value("canonical", false);
        return gen_kdim(ks, rng);
    }
    if (kind == "shallow_doped") {
        ShallowDopedSpec ss;
        ss.n = spec.at("n").get<int>();
        ss.depth = spec.value("d", 1);
        ss.t_gates = spec.value("t", 1);
        ss.clifford_first = spec.value("clifford_first", false);
        return gen_shallow_doped(ss, rng);
    }
    throw std::invalid_argument("unknown instance kind: " + kind);
}

int cmd_gen(const std::string& spec_path, const CliOptions& opt) {
    json spec;
    try {
        spec = json::parse(read_file(spec_path));
    } catch (const std::exception& e) {
        std::cerr << "error: invalid instance spec: " << e.what() << "\n";
        return 2;
    }
    try {
        Rng rng(opt.seed);
        const Instance inst = generate_from_spec(spec, rng);
        if (inst.unitary.n > opt.dense_cap) {
            std::cerr << "error: instance exceeds the dense cap\n";
            return 2;
        }
        const std::string out = opt.out.empty() ? "instance.json" : opt.out;
        write_file(out, unitary_to_json(inst.unitary));
        write_file(witness_path_for(out), witness_to_json(inst.witness));
        std::cout << "wrote " << out << " and " << witness_path_for(out) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

struct RunOutcome {
    LearnReport report;
    bool failed = false;
};

RunOutcome run_learner(const std::string& learner, const DenseUnitary& target,
                       const std::optional<InstanceWitness>& witness, const LearnParams& params,
                       std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome outcome;
    LearnReport& report = outcome.report;
    report.learner = learner;
    report.seed = seed;
    report.n = target.n;
    report.eps = params.eps;
    report.delta = params.delta;
    report.config = params.as_map();

    const bool needs_inverse = learner == "kdim-inv" || learner == "composed";
    const QueryOracle oracle(target, needs_inverse);
    Rng rng(seed);

    std::optional<MatrixXc> dense_estimate;
    try {
        if (learner == "blockdiag") {
            int a = 0, b = 0;
            if (witness && witness->kind == "kdim") {
                a = witness->a;
                b = witness->b;
            } else {
                throw std::invalid_argument(
                    "blockdiag learner needs a kdim witness carrying (a, b)");
            }
            auto result = learn_block_diag(oracle, a, b, params, rng);
            report.a = a;
            report.b = b;
            report.blocks = result.estimate.blocks;
            dense_estimate = result.estimate.dense();
        } else if (learner == "kdim-fwd" || learner == "kdim-inv" || learner == "kdim-base-fwd" ||
                   learner == "kdim-base-inv") {
            const SupportMode mode = (learner == "kdim-inv" || learner == "kdim-base-inv")
                                         ? SupportMode::WithInverse
                                         : SupportMode::ForwardOnly;
            int k_bound = 2 * target.n;
            if (witness && witness->kind == "kdim") k_bound = 2 * witness->a + witness->b;
            const bool base_only = learner.find("base") != std::string::npos;
            auto result = base_only ? learn_kdim_base(oracle, k_bound, mode, params, rng)
                                    : learn_kdim(oracle, k_bound, mode, params, rng);
            report.a = result.estimate.a;
            report.b = result.estimate.b;
            report.bootstrap_rounds = result.bootstrap_rounds;
            report.blocks = result.estimate.blocks.blocks;
            for (const auto& v : result.estimate.support.basis())
                report.support_basis.push_back(v.str());
            report.support_mass =
                pauli_expand(target.matrix).mass_in(result.estimate.support);
            dense_estimate = result.estimate.dense();
        } else if (learner == "junta") {
            int k = 2;
            if (witness && witness->kind == "junta")
                k = static_cast<int>(witness->junta_qubits.size());
            auto result = learn_junta(oracle, k, params, rng);
            report.a = result.kdim.estimate.a;
            report.b = result.kdim.estimate.b;
            report.bootstrap_rounds = result.kdim.bootstrap_rounds;
            report.junta_qubits = result.junta_qubits;
            for (const auto& v : result.kdim.estimate.support.basis())
                report.support_basis.push_back(v.str());
            dense_estimate = result.kdim.estimate.dense();
        } else if (learner == "composed") {
            int d_bound = 1, t_bound = 1;
            if (witness && witness->kind == "shallow_doped") {
                d_bound = witness->depth;
                t_bound = witness->t_gates;
            }
            auto result = learn_composed(oracle, d_bound, t_bound, params, rng);
            if (2 * target.n <= params.dense_cap) {
                const MatrixXc product = result.estimate.dense(params.dense_cap);
                MatrixXc truth(product.rows(), product.cols());
                const Eigen::Index half = 1ll << target.n;
                for (Eigen::Index r = 0; r < half; ++r)
                    for (Eigen::Index c = 0; c < half; ++c)
                        truth.block(r * half, c * half, half, half) =
                            std::conj(target.matrix(c, r)) * target.matrix;
                const double d = dist_phaseop(truth, product);
                report.dist_phaseop = d;
                report.diamond_upper = 2 * d;
            }
        } else {
            throw std::invalid_argument("unknown learner: " + learner);
        }
    } catch (const LearnError& e) {
        report.status = "failed";
        report.failure_stage = e.stage();
        outcome.failed = true;
    }

    report.queries = oracle.snapshot();
    if (dense_estimate && witness) {
        const double d = dist_phaseop(target.matrix, *dense_estimate);
        report.dist_phaseop = d;
        report.diamond_upper = 2 * d;
    }
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return outcome;
}

int cmd_learn(const std::string& instance_path, const CliOptions& opt) {
    DenseUnitary target;
    std::optional<InstanceWitness> witness;
    try {
        target = unitary_from_json(read_file(instance_path), opt.dense_cap);
        try {
            witness = witness_from_json(read_file(witness_path_for(instance_path)));
        } catch (...) {
            // No witness: ground-truth fields are simply omitted.
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    LearnParams params;
    try {
        params = make_params(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const RunOutcome outcome = run_learner(opt.learner, target, witness, params, opt.seed);
    const std::string text = outcome.report.to_json() + "\n";
    if (opt.out.empty())
        std::cout << text;
    else
        write_file(opt.out, text);
    return outcome.failed ? 1 : 0;
}

double fit_slope(const std::vector<double>& log_x, const std::vector<double>& log_y) {
    const double count = static_cast<double>(log_x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_x.size(); ++i) {
        sx += log_x[i];
        sy += log_y[i];
        sxx += log_x[i] * log_x[i];
        sxy += log_x[i] * log_y[i];
    }
    const double denom = count * sxx - sx * sx;
    return denom == 0 ? 0 : (count * sxy - sx * sy) / denom;
}

int cmd_sweep(const std::string& grid_path, const CliOptions& opt) {
    json grid;
    try {
        grid = json::parse(read_file(grid_path));
    } catch (const std::exception& e) {
        std::cerr << "error: invalid grid config: " << e.what() << "\n";
        return 2;
    }
    LearnParams base_params;
    try {
        base_params = make_params(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    struct Row {
        int k = 0, a = 0, b = 0;
        double eps = 0;
        std::uint64_t seed = 0;
        json instance_spec;
    };
    std::vector<Row> rows;
    const std::string learner = grid.value("learner", opt.learner);
    const auto eps_list = grid.value("eps", std::vector<double>{opt.eps});
    const auto seeds = grid.value("seeds", std::vector<std::uint64_t>{opt.seed});
    for (const auto& inst : grid.at("instances")) {
        for (double eps : eps_list) {
            for (std::uint64_t seed : seeds) {
                Row row;
                row.instance_spec = inst;
                row.eps = eps;
                row.seed = seed;
                if (inst.contains("a")) {
                    row.a = inst.at("a").get<int>();
                    row.b = inst.value("b", 0);
                    row.k = 2 * row.a + row.b;
                } else if (inst.contains("k")) {
                    row.k = inst.at("k").get<int>();
                }
                rows.push_back(std::move(row));
            }
        }
    }

    struct RowResult {
        std::string line;
        double eps = 0;
        int k = 0;
        double queries = 0;
        bool ok = false;
    };
    std::vector<RowResult> results(rows.size());
    std::atomic<std::size_t> next{0};
    const int jobs = std::max(1, opt.jobs);
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            const Row& row = rows[i];
            std::ostringstream line;
            try {
                Rng gen_rng(row.seed ^ 0x9e3779b97f4a7c15ull);
                const Instance inst = generate_from_spec(row.instance_spec, gen_rng);
                LearnParams params = base_params;
                params.eps = row.eps;
                const RunOutcome outcome =
                    run_learner(learner, inst.unitary, inst.witness, params, row.seed);
                const auto& r = outcome.report;
                line << row.k << "," << r.a << "," << r.b << "," << row.eps << "," << row.seed
                     << "," << r.queries.forward << "," << r.queries.inverse << ","
                     << (r.dist_phaseop ? *r.dist_phaseop : -1.0) << "," << r.wall_ms << ","
                     << r.status;
                results[i] = {line.str(), row.eps, row.k,
                              static_cast<double>(r.queries.total()), !outcome.failed};
            } catch (const std::exception& e) {
                line << row.k << ",-1,-1," << row.eps << "," << row.seed << ",0,0,-1,0,error";
                results[i] = {line.str(), row.eps, row.k, 0, false};
            }
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ostringstream out;
    out << "k,a,b,eps,seed,queries_fwd,queries_inv,dist_phaseop,wall_ms,status\n";
    for (const auto& r : results) out << r.line << "\n";

    // Summary: fitted log-log slopes of queries against 1/eps (per k) and
    // against k (per eps).
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_k;
    std::map<double, std::pair<std::vector<double>, std::vector<double>>> by_eps;
    for (const auto& r : results) {
        if (!r.ok || r.queries <= 0) continue;
        by_k[r.k].first.push_back(std::log(1.0 / r.eps));
        by_k[r.k].second.push_back(std::log(r.queries));
        by_eps[r.eps].first.push_back(static_cast<double>(r.k));
        by_eps[r.eps].second.push_back(std::log2(r.queries));
    }
    for (const auto& [k, data] : by_k) {
        if (data.first.size() >= 2)
            out << "# slope_queries_vs_inv_eps k=" << k << " " << fit_slope(data.first, data.second)
                << "\n";
    }
    for (const auto& [eps, data] : by_eps) {
        if (data.first.size() >= 2)
            out << "# slope_log2_queries_vs_k eps=" << eps << " "
                << fit_slope(data.first, data.second) << "\n";
    }

    if (opt.out.empty())
        std::cout << out.str();
    else
        write_file(opt.out, out.str());
    bool any_failed = false;
    for (const auto& r : results)
        if (!r.ok) any_failed = true;
    return any_failed ? 1 : 0;
}

int cmd_verify(const std::string& suite, const CliOptions& opt) {
    try {
        const SuiteResult result = run_verify_suite(suite, opt.seed);
        print_suite_result(result, std::cout);
        return result.all_passed() ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tomography harness for Pauli-structured unitaries"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions opt;
    app.add_option("--seed", opt.seed, "RNG seed");
    app.add_option("--eps", opt.eps, "target accuracy");
    app.add_option("--delta", opt.delta, "failure probability");
    app.add_option("--learner", opt.learner,
                   "blockdiag | kdim-fwd | kdim-inv | kdim-base-fwd | kdim-base-inv | junta | "
                   "composed");
    app.add_option("--config", opt.config_file, "key=value config file");
    app.add_option("--set", opt.overrides, "config override key=value (repeatable)");
    app.add_option("--out", opt.out, "output path (stdout when omitted)");
    app.add_option("--dense-cap", opt.dense_cap, "dense-matrix qubit cap");
    app.add_option("--jobs", opt.jobs, "sweep worker threads");

    std::string spec_path, instance_path, grid_path, suite;
    auto* gen = app.add_subcommand("gen", "generate an instance + witness from a spec file");
    gen->add_option("spec", spec_path, "instance spec JSON")->required();
    auto* learn = app.add_subcommand("learn", "run a learner against an instance");
    learn->add_option("instance", instance_path, "instance JSON")->required();
    auto* sweep = app.add_subcommand("sweep", "run a grid of learner executions, emit CSV");
    sweep->add_option("grid", grid_path, "grid config JSON")->required();
    auto* verify = app.add_subcommand("verify", "run a module invariant suite");
    verify->add_option("suite", suite, "symplectic|pauli|clifford|lcu|tomo|metrics|composed")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(spec_path, opt);
        if (learn->parsed()) return cmd_learn(instance_path, opt);
        if (sweep->parsed()) return cmd_sweep(grid_path, opt);
        if (verify->parsed()) return cmd_verify(suite, opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

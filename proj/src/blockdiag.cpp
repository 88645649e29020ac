#include "paulitomo/blockdiag.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "paulitomo/metrics.hpp"

namespace paulitomo {

BlockDiagUnitary BlockDiagUnitary::identity(int n, int a, int b) {
    BlockDiagUnitary u{n, a, b, {}};
    u.blocks.assign(1ull << b, MatrixXc::Identity(1ll << a, 1ll << a));
    return u;
}

MatrixXc BlockDiagUnitary::compound() const {
    const Eigen::Index bd = block_dim();
    const Eigen::Index dim = bd * static_cast<Eigen::Index>(block_count());
    MatrixXc m = MatrixXc::Zero(dim, dim);
    for (std::size_t y = 0; y < block_count(); ++y)
        m.block(y * bd, y * bd, bd, bd) = blocks[y];
    return m;
}

MatrixXc BlockDiagUnitary::dense() const {
    const MatrixXc comp = compound();
    const Eigen::Index reps = 1ll << (n - a - b);
    const Eigen::Index dim = 1ll << n;
    MatrixXc m = MatrixXc::Zero(dim, dim);
    for (Eigen::Index r = 0; r < reps; ++r)
        m.block(r * comp.rows(), r * comp.rows(), comp.rows(), comp.cols()) = comp;
    return m;
}

BlockDiagUnitary BlockDiagUnitary::multiply(const BlockDiagUnitary& o) const {
    if (n != o.n || a != o.a || b != o.b)
        throw std::invalid_argument("BlockDiagUnitary::multiply: shape mismatch");
    BlockDiagUnitary out{n, a, b, {}};
    out.blocks.reserve(block_count());
    for (std::size_t y = 0; y < block_count(); ++y) out.blocks.push_back(blocks[y] * o.blocks[y]);
    return out;
}

BlockDiagUnitary BlockDiagUnitary::adjoint() const {
    BlockDiagUnitary out{n, a, b, {}};
    out.blocks.reserve(block_count());
    for (const auto& blk : blocks) out.blocks.push_back(blk.adjoint());
    return out;
}

BlockDiagUnitary BlockDiagUnitary::power(int p) const {
    BlockDiagUnitary out = identity(n, a, b);
    for (int i = 0; i < p; ++i) out = out.multiply(*this);
    return out;
}

BlockDiagUnitary BlockDiagUnitary::root(int p, double guard) const {
    if (p < 1) throw std::invalid_argument("BlockDiagUnitary::root: p must be positive");
    if (p == 1) return *this;
    // Center the spectrum at the trace phase so eigenphases stay away from
    // the branch cut; reattach a p-th root of the center afterwards.
    Complex trace_sum = 0;
    for (const auto& blk : blocks) trace_sum += blk.trace();
    const double mu = (std::abs(trace_sum) > 1e-12) ? std::arg(trace_sum) : 0.0;
    const Complex uncenter = std::polar(1.0, mu / p);

    BlockDiagUnitary out{n, a, b, {}};
    out.blocks.reserve(block_count());
    for (const auto& blk : blocks) {
        // Unitary blocks are normal, so the Schur form is diagonal and Q is
        // exactly unitary; this stays safe under repeated eigenvalues where
        // a generic eigensolver can return a skewed eigenbasis.
        const MatrixXc centered = std::polar(1.0, -mu) * blk;
        Eigen::ComplexSchur<MatrixXc> schur(centered);
        if (schur.info() != Eigen::Success)
            throw LearnError("root_branch", "Schur decomposition failed");
        const MatrixXc& t = schur.matrixT();
        const MatrixXc& q = schur.matrixU();
        double off_diag = 0;
        for (Eigen::Index r = 0; r < t.rows(); ++r)
            for (Eigen::Index c = r + 1; c < t.cols(); ++c) off_diag += std::norm(t(r, c));
        if (std::sqrt(off_diag) > 1e-7)
            throw LearnError("root_branch", "block is not normal enough for a spectral root");
        MatrixXc d = MatrixXc::Zero(t.rows(), t.cols());
        for (Eigen::Index i = 0; i < t.rows(); ++i) {
            const double phase = std::arg(t(i, i));
            if (std::abs(phase) > std::numbers::pi - guard)
                throw LearnError("root_branch", "eigenphase near the branch cut");
            d(i, i) = std::polar(1.0, phase / p);
        }
        out.blocks.push_back(uncenter * (q * d * q.adjoint()));
    }
    return out;
}

double BlockDiagUnitary::max_unitarity_deviation() const {
    double worst = 0;
    for (const auto& blk : blocks) {
        const MatrixXc dev = blk.adjoint() * blk - MatrixXc::Identity(blk.rows(), blk.cols());
        worst = std::max(worst, dev.norm());
    }
    return worst;
}

double dist_phaseop(const BlockDiagUnitary& u, const BlockDiagUnitary& v) {
    return dist_phaseop(u.compound(), v.compound());
}

MatrixXc DiagPhase::matrix() const {
    MatrixXc m = MatrixXc::Zero(phases.size(), phases.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) m(i, i) = phases[i];
    return m;
}

MatrixXc polar_round(const MatrixXc& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("polar_round: matrix not square");
    Eigen::JacobiSVD<MatrixXc> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues().minCoeff() < 1e-12)
        throw LearnError("rounding", "degenerate input: singular value below 1e-12");
    return svd.matrixU() * svd.matrixV().adjoint();
}

std::vector<MatrixXc> collate_columns(const std::vector<StateVector>& estimates, int a, int b) {
    const Eigen::Index bd = 1ll << a;
    const std::size_t blocks = 1ull << b;
    if (estimates.size() != static_cast<std::size_t>(bd))
        throw std::invalid_argument("collate_columns: need one estimate per column");
    const double scale = std::sqrt(static_cast<double>(blocks));
    std::vector<MatrixXc> out(blocks, MatrixXc::Zero(bd, bd));
    for (Eigen::Index z = 0; z < bd; ++z) {
        const auto& psi = estimates[z];
        if (psi.amplitudes.size() != bd * static_cast<Eigen::Index>(blocks))
            throw std::invalid_argument("collate_columns: estimate has wrong qubit count");
        for (std::size_t y = 0; y < blocks; ++y)
            out[y].col(z) = scale * psi.amplitudes.segment(y * bd, bd);
    }
    return out;
}

DiagPhase align_phases(const MatrixXc& v0, const MatrixXc& v0p) {
    const Eigen::Index dim = v0.rows();
    const MatrixXc m = v0.adjoint() * v0p;
    const double floor = 1.0 / (4.0 * std::sqrt(static_cast<double>(dim)));
    DiagPhase d;
    d.phases = VectorXc(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex entry = m(j, 0);
        if (std::abs(entry) < floor)
            throw LearnError("phase_alignment", "degenerate entry in the Hadamard column");
        d.phases[j] = entry / std::abs(entry);
    }
    return d;
}

namespace {

// Internal accuracy split: per-column tomography runs at eps/kTomoSlack so
// collation, rounding and phase alignment together stay under c_out * eps.
constexpr double kTomoSlack = 2.0;

struct ColumnRun {
    StateVector estimate;       // (a+b)-qubit column state estimate
    std::uint64_t attempts = 0;
    std::uint64_t copies = 0;
};

// Postselects copies of Pi(U_run)|0^{n-a-b}>|+>^b|z> and runs tomography on
// the trailing a+b qubits.
ColumnRun run_column(const ProjectedApplier& applier, int a, int b, std::uint64_t z,
                     double eps_col, const LearnParams& params, Rng& rng) {
    const int n = applier.oracle().n();
    const int m = a + b;
    const double delta_tomo = std::exp(-5.0 * static_cast<double>(1ull << m));
    const std::uint64_t copies =
        tomography_copy_count(m, eps_col, delta_tomo, params.c_tomo);
    const double log_post = 5.0 * static_cast<double>(1ull << m);
    const double accept_floor = std::max(0.05, 1.0 - 2.0 * eps_col * kTomoSlack);
    const std::uint64_t max_attempts = static_cast<std::uint64_t>(
        std::ceil(2.0 * (static_cast<double>(copies) + log_post) / accept_floor));

    const StateVector input = StateVector::block_column(n, a, b, z);
    auto collected = collect_projected_copies(applier, input, copies, max_attempts, rng);
    if (!collected) throw LearnError("postselection", "attempt budget exhausted");

    // The projection is exactly block-diagonal, so the leading register is
    // still |0...0>; keep the trailing a+b qubits.
    const Eigen::Index tail = 1ll << m;
    VectorXc slice = collected->state.amplitudes.head(tail);
    const double tail_norm = slice.norm();
    if (std::abs(tail_norm - 1.0) > 1e-6)
        throw LearnError("postselection", "projected state leaked outside the block register");
    StateVector column_state(m, slice / tail_norm, false);

    ColumnRun run;
    run.attempts = collected->attempts;
    run.copies = copies;
    if (params.empirical_tomography) {
        std::uint64_t remaining = copies;
        auto provider = [&]() -> std::optional<StateVector> {
            if (remaining == 0) return std::nullopt;
            --remaining;
            return column_state;
        };
        run.estimate =
            tomo_empirical(provider, m, eps_col, delta_tomo, rng, params.c_tomo, params.c_emp)
                .estimate;
    } else {
        run.estimate = tomo_model(column_state, eps_col, delta_tomo, rng, params.c_tomo).estimate;
    }
    return run;
}

struct PassResult {
    std::vector<MatrixXc> rounded;  // V_y per block
    std::uint64_t attempts = 0;
    std::uint64_t copies = 0;
};

// One full pass of column tomography + collation + rounding over all
// blocks, against the supplied (plain or Hadamard-primed) oracle.
PassResult run_pass(const ProjectedApplier& applier, int a, int b, double eps_col,
                    const LearnParams& params, Rng& rng) {
    std::vector<StateVector> estimates;
    PassResult pass;
    for (std::uint64_t z = 0; z < (1ull << a); ++z) {
        Rng column_rng = rng.fork();
        auto run = run_column(applier, a, b, z, eps_col, params, column_rng);
        pass.attempts += run.attempts;
        pass.copies += run.copies;
        estimates.push_back(std::move(run.estimate));
    }
    for (auto& block : collate_columns(estimates, a, b)) pass.rounded.push_back(polar_round(block));
    return pass;
}

// Sequential fallback: learns the blocks one y at a time from computational
// |y> preparations, each with its own phase alignment. Kept for the regime
// where the parallel pass's concentration has no room; shares the column
// machinery via a=block-local runs.
PassResult run_pass_sequential(const ProjectedApplier& applier, const ProjectedApplier& applier_primed,
                               int a, int b, double eps_col, const LearnParams& params, Rng& rng) {
    const int n = applier.oracle().n();
    const Eigen::Index bd = 1ll << a;
    const double delta_tomo = std::exp(-5.0 * static_cast<double>(1ull << (a + b)));
    const std::uint64_t copies = tomography_copy_count(a, eps_col, delta_tomo, params.c_tomo);
    const double accept_floor = std::max(0.05, 1.0 - 2.0 * eps_col * kTomoSlack);
    const std::uint64_t max_attempts = static_cast<std::uint64_t>(std::ceil(
        2.0 * (static_cast<double>(copies) + 5.0 * static_cast<double>(1ull << (a + b))) /
        accept_floor));

    PassResult pass;
    for (std::uint64_t y = 0; y < (1ull << b); ++y) {
        auto learn_one = [&](const ProjectedApplier& app) {
            std::vector<StateVector> cols;
            for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(bd); ++z) {
                Rng column_rng = rng.fork();
                const StateVector input = StateVector::basis(n, (y << a) | z);
                auto collected =
                    collect_projected_copies(app, input, copies, max_attempts, column_rng);
                if (!collected) throw LearnError("postselection", "attempt budget exhausted");
                pass.attempts += collected->attempts;
                pass.copies += copies;
                VectorXc slice = collected->state.amplitudes.segment((y << a), bd);
                const double norm = slice.norm();
                if (std::abs(norm - 1.0) > 1e-6)
                    throw LearnError("postselection", "projected state leaked outside its block");
                StateVector block_state(a, slice / norm, false);
                cols.push_back(
                    tomo_model(block_state, eps_col, delta_tomo, column_rng, params.c_tomo)
                        .estimate);
            }
            MatrixXc block(bd, bd);
            for (Eigen::Index z = 0; z < bd; ++z) block.col(z) = cols[z].amplitudes;
            return polar_round(block);
        };
        const MatrixXc vy = learn_one(applier);
        const MatrixXc vyp = learn_one(applier_primed);
        const DiagPhase d = align_phases(vy, vyp);
        pass.rounded.push_back(vy * d.matrix());
    }

    // Per-block runs leave each sector with its own global phase; tie block
    // y to block 0 through a two-sector superposition of first columns.
    for (std::uint64_t y = 1; y < (1ull << b); ++y) {
        Rng column_rng = rng.fork();
        VectorXc input_amps = VectorXc::Zero(1ll << n);
        input_amps[0] = 1.0 / std::sqrt(2.0);
        input_amps[static_cast<Eigen::Index>(y << a)] = 1.0 / std::sqrt(2.0);
        const StateVector input(n, std::move(input_amps), false);
        auto collected = collect_projected_copies(applier, input, copies, max_attempts, column_rng);
        if (!collected) throw LearnError("postselection", "attempt budget exhausted");
        pass.attempts += collected->attempts;
        pass.copies += copies;
        VectorXc slice = collected->state.amplitudes.head(1ll << (a + b));
        StateVector pair_state(a + b, slice / slice.norm(), false);
        const StateVector est =
            tomo_model(pair_state, eps_col, delta_tomo, column_rng, params.c_tomo).estimate;
        const VectorXc head = est.amplitudes.head(bd);
        const VectorXc sector = est.amplitudes.segment(y << a, bd);
        const Complex ref0 = VectorXc(pass.rounded[0].col(0)).dot(head);
        const Complex refy = VectorXc(pass.rounded[y].col(0)).dot(sector);
        if (std::abs(ref0) < 0.25 || std::abs(refy) < 0.25)
            throw LearnError("phase_alignment", "degenerate cross-block overlap");
        pass.rounded[y] *= std::polar(1.0, std::arg(refy) - std::arg(ref0));
    }
    return pass;
}

MatrixXc hadamard_pad(int n, int a) {
    MatrixXc h1(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h1 << s, s, s, -s;
    MatrixXc h = MatrixXc::Identity(1, 1);
    for (int i = 0; i < a; ++i) {
        MatrixXc next(h.rows() * 2, h.cols() * 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) next.block(r * h.rows(), c * h.cols(), h.rows(), h.cols()) = h1(r, c) * h;
        h = std::move(next);
    }
    const Eigen::Index reps = 1ll << (n - a);
    const Eigen::Index dim = 1ll << n;
    MatrixXc out = MatrixXc::Zero(dim, dim);
    for (Eigen::Index r = 0; r < reps; ++r) out.block(r * h.rows(), r * h.rows(), h.rows(), h.cols()) = h;
    return out;
}

}  // namespace

BlockDiagLearner::BlockDiagLearner(const QueryOracle& oracle, int a, int b,
                                   const LearnParams& params)
    : oracle_(&oracle),
      a_(a),
      b_(b),
      params_(params),
      eps_run_(std::min(params.eps, params.eps_cap)),
      eps_col_(eps_run_ / kTomoSlack),
      primed_(oracle.derived(DenseUnitary(oracle.n(), oracle.matrix() * hadamard_pad(oracle.n(), a)),
                             {1, 0}, {0, 1}, oracle.allow_inverse())),
      applier_plain_(oracle, a, b),
      applier_primed_(primed_, a, b) {
    if (a + b > oracle.n()) throw std::invalid_argument("BlockDiagLearner: a + b > n");
}

BlockDiagLearnResult BlockDiagLearner::run(Rng& rng) const {
    const QuerySnapshot before = oracle_->snapshot();
    BlockDiagLearnResult result;
    result.estimate.n = oracle_->n();
    result.estimate.a = a_;
    result.estimate.b = b_;

    const bool sequential = a_ > 0 && b_ > 0 &&
                            (1ull << (a_ + b_)) < static_cast<std::uint64_t>(params_.seq_threshold);
    if (sequential) {
        auto pass =
            run_pass_sequential(applier_plain_, applier_primed_, a_, b_, eps_col_, params_, rng);
        result.estimate.blocks = std::move(pass.rounded);
        result.attempts = pass.attempts;
        result.tomo_copies = pass.copies;
        result.queries = oracle_->snapshot() - before;
        return result;
    }

    auto plain = run_pass(applier_plain_, a_, b_, eps_col_, params_, rng);
    for (int attempt = 0;; ++attempt) {
        auto primed_pass = run_pass(applier_primed_, a_, b_, eps_col_, params_, rng);
        result.attempts = plain.attempts + primed_pass.attempts;
        result.tomo_copies = plain.copies + primed_pass.copies;
        try {
            const DiagPhase d = align_phases(plain.rounded[0], primed_pass.rounded[0]);
            const MatrixXc dm = d.matrix();
            result.estimate.blocks.clear();
            for (const auto& vy : plain.rounded) result.estimate.blocks.push_back(vy * dm);
            break;
        } catch (const LearnError&) {
            // One retry with fresh randomness before giving up.
            if (attempt >= 1) throw;
        }
    }
    result.queries = oracle_->snapshot() - before;
    return result;
}

BlockDiagLearnResult learn_block_diag(const QueryOracle& oracle, int a, int b,
                                      const LearnParams& params, Rng& rng) {
    return BlockDiagLearner(oracle, a, b, params).run(rng);
}

}  // namespace paulitomo

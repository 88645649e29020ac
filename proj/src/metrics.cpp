#include "paulitomo/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace paulitomo {

namespace {

double power_iteration_norm(const MatrixXc& a) {
    VectorXc v = VectorXc::Ones(a.cols()).normalized();
    double prev = 0;
    for (int iter = 0; iter < 300; ++iter) {
        VectorXc w = a.adjoint() * (a * v);
        const double norm = w.norm();
        if (norm == 0) return 0;
        v = w / norm;
        const double sigma = std::sqrt(norm);
        if (iter > 10 && std::abs(sigma - prev) < 1e-12 * std::max(1.0, sigma)) return sigma;
        prev = sigma;
    }
    return prev;
}

}  // namespace

double operator_norm(const MatrixXc& a, int power_iteration_dim) {
    if (a.rows() >= power_iteration_dim) return power_iteration_norm(a);
    Eigen::JacobiSVD<MatrixXc> svd(a);
    return svd.singularValues()(0);
}

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// For unitary U, V the objective ||e^{i theta} U - V||_op equals
// max_j |e^{i theta} lambda_j - 1| over the eigenvalues of V^dag U. One
// eigendecomposition replaces an SVD per probe. Falls back to per-theta
// SVDs when M strays from unitarity (inputs not both unitary).
struct PhaseObjective {
    MatrixXc u, v;
    bool eig_path = false;
    std::vector<Complex> eigs;

    PhaseObjective(const MatrixXc& u_, const MatrixXc& v_) : u(u_), v(v_) {
        const MatrixXc m = v.adjoint() * u;
        const double unitarity = (m.adjoint() * m - MatrixXc::Identity(m.rows(), m.cols())).norm();
        if (unitarity < 1e-7 * std::sqrt(static_cast<double>(m.rows()))) {
            Eigen::ComplexEigenSolver<MatrixXc> solver(m, false);
            if (solver.info() == Eigen::Success) {
                eig_path = true;
                eigs.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
            }
        }
    }

    double operator()(double theta) const {
        if (eig_path) {
            const Complex rot = std::polar(1.0, theta);
            double best = 0;
            for (const Complex& lambda : eigs) best = std::max(best, std::abs(rot * lambda - 1.0));
            return best;
        }
        return operator_norm(std::polar(1.0, theta) * u - v);
    }
};

}  // namespace

double dist_phaseop(const MatrixXc& u, const MatrixXc& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols())
        throw std::invalid_argument("dist_phaseop: dimension mismatch");
    const PhaseObjective f(u, v);

    // Coarse grid plus the trace-overlap candidate.
    double best_theta = 0, best_val = f(0.0);
    const Complex overlap = (v.adjoint() * u).trace();
    if (std::abs(overlap) > 1e-15) {
        const double seed = -std::arg(overlap);
        const double val = f(seed);
        if (val < best_val) {
            best_val = val;
            best_theta = seed;
        }
    }
    constexpr int kGrid = 64;
    for (int i = 1; i < kGrid; ++i) {
        const double theta = kTwoPi * i / kGrid;
        const double val = f(theta);
        if (val < best_val) {
            best_val = val;
            best_theta = theta;
        }
    }

    // Golden-section refinement around the best bracket. The objective is
    // 1-Lipschitz in theta, so interval width 1e-9 certifies 1e-8 on the
    // value.
    double lo = best_theta - kTwoPi / kGrid;
    double hi = best_theta + kTwoPi / kGrid;
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-9) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return std::min({best_val, f1, f2});
}

double dist_phaseF(const MatrixXc& u, const MatrixXc& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols())
        throw std::invalid_argument("dist_phaseF: dimension mismatch");
    const double d = static_cast<double>(u.rows());
    const double overlap = std::abs((v.adjoint() * u).trace());
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap / d));
}

DistanceReport distance_report(const MatrixXc& u, const MatrixXc& v) {
    DistanceReport r;
    r.op = operator_norm(u - v);
    r.phaseop = dist_phaseop(u, v);
    r.diamond_upper = 2 * r.phaseop;
    r.frob_normalized = dist_phaseF(u, v);
    return r;
}

NormChainReport norm_chain_check(const MatrixXc& a) {
    Eigen::JacobiSVD<MatrixXc> svd(a);
    const auto& sv = svd.singularValues();
    NormChainReport r;
    r.op = sv.size() ? sv(0) : 0.0;
    double sq = 0, sum = 0;
    const double rank_tol = 1e-12 * std::max<double>(1.0, r.op) * a.rows();
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        sq += sv(i) * sv(i);
        sum += sv(i);
        if (sv(i) > rank_tol) ++r.rank;
    }
    r.frobenius = std::sqrt(sq);
    r.trace = sum;
    const double slack = 1e-9 * std::max(1.0, r.trace);
    const double root_r = std::sqrt(static_cast<double>(std::max(r.rank, 1)));
    r.chain_holds = r.op <= r.frobenius + slack && r.frobenius <= r.trace + slack &&
                    r.trace <= root_r * r.frobenius + slack &&
                    root_r * r.frobenius <= r.rank * r.op + slack;
    return r;
}

}  // namespace paulitomo

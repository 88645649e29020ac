#include "paulitomo/tomography.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace paulitomo {

MatrixXc haar_unitary(int dim, Rng& rng) {
    MatrixXc g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Complex(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<MatrixXc> qr(g);
    MatrixXc q = qr.householderQ();
    const MatrixXc r_mat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < dim; ++c) {
        const Complex d = r_mat(c, c);
        q.col(c) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
    }
    return q;
}

VectorXc haar_state(int dim, Rng& rng) {
    VectorXc v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Complex(rng.gaussian(), rng.gaussian());
    return v / v.norm();
}

VectorXc haar_orthogonal_state(const VectorXc& psi, Rng& rng) {
    const Eigen::Index dim = psi.size();
    if (dim < 2) throw std::invalid_argument("haar_orthogonal_state: no orthogonal complement");
    VectorXc w = haar_state(static_cast<int>(dim), rng);
    w -= psi * psi.dot(w);
    double norm = w.norm();
    while (norm < 1e-12) {  // astronomically unlikely; redraw
        w = haar_state(static_cast<int>(dim), rng);
        w -= psi * psi.dot(w);
        norm = w.norm();
    }
    return w / norm;
}

std::uint64_t tomography_copy_count(int m, double eps, double delta, double c_tomo) {
    const double dim = static_cast<double>(1ull << m);
    return static_cast<std::uint64_t>(
        std::ceil(c_tomo * (dim + std::log(1.0 / delta)) / (eps * eps)));
}

TomoResult tomo_model(const StateVector& target, double eps, double delta, Rng& rng,
                      double c_tomo) {
    if (eps <= 0 || eps >= 1) throw std::invalid_argument("tomo_model: eps out of range");
    TomoResult result;
    result.backend = TomoBackend::Model;
    result.copies_charged = tomography_copy_count(target.n, eps, delta, c_tomo);

    const bool success = rng.bernoulli(1.0 - delta);
    const double e = success ? rng.uniform(0.0, eps) : rng.uniform(eps, 2 * eps);
    result.eps_drawn = e;
    const Complex phi = std::polar(1.0, rng.uniform(0.0, 2 * std::numbers::pi));

    VectorXc est = phi * std::sqrt(std::max(0.0, 1.0 - e * e)) * target.amplitudes;
    if (target.amplitudes.size() >= 2 && e > 0)
        est += e * haar_orthogonal_state(target.amplitudes, rng);
    est /= est.norm();
    result.estimate = StateVector(target.n, std::move(est), false);
    return result;
}

TomoResult tomo_empirical(const std::function<std::optional<StateVector>()>& copies_provider,
                          int m, double eps, double delta, Rng& rng, double c_tomo,
                          double c_emp) {
    const std::uint64_t copies = static_cast<std::uint64_t>(
        std::ceil(c_emp * static_cast<double>(tomography_copy_count(m, eps, delta, c_tomo))));
    const Eigen::Index dim = 1ll << m;

    // Linear inversion for Haar-random von Neumann measurements: each
    // outcome vector |v> contributes (d+1)|v><v| - I in expectation-
    // unbiased fashion.
    MatrixXc rho = MatrixXc::Zero(dim, dim);
    for (std::uint64_t i = 0; i < copies; ++i) {
        const auto copy = copies_provider();
        if (!copy) throw std::runtime_error("tomo_empirical: copy provider exhausted");
        if (copy->amplitudes.size() != dim)
            throw std::invalid_argument("tomo_empirical: copy has wrong qubit count");
        const MatrixXc basis = haar_unitary(static_cast<int>(dim), rng);
        const VectorXc rotated = basis * copy->amplitudes;
        // Sample the measurement outcome.
        double u = rng.uniform();
        Eigen::Index outcome = dim - 1;
        for (Eigen::Index j = 0; j < dim; ++j) {
            u -= std::norm(rotated[j]);
            if (u <= 0) {
                outcome = j;
                break;
            }
        }
        const VectorXc v = basis.adjoint().col(outcome);
        rho += (static_cast<double>(dim) + 1.0) * (v * v.adjoint());
        rho -= MatrixXc::Identity(dim, dim);
    }
    rho /= static_cast<double>(copies);

    Eigen::SelfAdjointEigenSolver<MatrixXc> solver((rho + rho.adjoint()) / 2.0);
    VectorXc top = solver.eigenvectors().col(dim - 1);

    TomoResult result;
    result.backend = TomoBackend::Empirical;
    result.copies_charged = copies;
    result.estimate = StateVector(m, top / top.norm(), false);
    return result;
}

}  // namespace paulitomo

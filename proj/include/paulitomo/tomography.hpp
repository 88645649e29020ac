#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "paulitomo/rng.hpp"
#include "paulitomo/sim.hpp"

namespace paulitomo {

enum class TomoBackend { Model, Empirical };

struct TomoResult {
    StateVector estimate;
    std::uint64_t copies_charged = 0;
    TomoBackend backend = TomoBackend::Model;
    /// Model backend only: the sampled trace-distance draw (exceeds eps on
    /// the failure branch).
    double eps_drawn = 0;
};

/// Copy count ceil(c_tomo (2^m + log(1/delta)) / eps^2) for an m-qubit
/// target.
std::uint64_t tomography_copy_count(int m, double eps, double delta, double c_tomo);

/// Samples the pure-state tomography guarantee: with probability 1-delta
/// the estimate is phi sqrt(1-e^2)|psi> + e|w> with e uniform in [0, eps],
/// |w> Haar-random in the orthogonal complement of |psi>, and phi a uniform
/// global phase. On the complementary failure branch e is drawn from
/// (eps, 2 eps]. Charges the copy-count formula.
TomoResult tomo_model(const StateVector& target, double eps, double delta, Rng& rng,
                      double c_tomo = 4.0);

/// Measures fresh copies in independently Haar-randomized bases, forms the
/// linear-inversion density estimate, and returns its top eigenvector.
/// `copies_provider` must yield at least the charged number (throws on
/// exhaustion). c_emp scales the copy count relative to the model backend.
TomoResult tomo_empirical(const std::function<std::optional<StateVector>()>& copies_provider,
                          int m, double eps, double delta, Rng& rng, double c_tomo = 4.0,
                          double c_emp = 1.0);

/// Haar-random unitary via QR of a Ginibre matrix with the diagonal phase
/// correction.
MatrixXc haar_unitary(int dim, Rng& rng);

/// Haar-random state on `dim` amplitudes.
VectorXc haar_state(int dim, Rng& rng);

/// Haar-random state in the orthogonal complement of `psi`.
VectorXc haar_orthogonal_state(const VectorXc& psi, Rng& rng);

}  // namespace paulitomo

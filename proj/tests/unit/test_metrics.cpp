#include <doctest.h>

#include <numbers>

#include "paulitomo/metrics.hpp"
#include "paulitomo/tomography.hpp"

using namespace paulitomo;

TEST_CASE("phase-aligned operator distance is phase invariant") {
    Rng rng(97);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 2 << rng.below(3);
        const MatrixXc u = haar_unitary(d, rng);
        const double theta = rng.uniform(0, 2 * std::numbers::pi);
        CHECK(dist_phaseop(u, std::polar(1.0, theta) * u) < 1e-8);
    }
}

TEST_CASE("identity vs Z distance is sqrt(2)") {
    // min over theta of max(|e^{i theta} - 1|, |e^{i theta} + 1|); the two
    // branches cross at theta = pi/2 where both equal sqrt(2).
    MatrixXc z(2, 2);
    z << 1, 0, 0, -1;
    CHECK(dist_phaseop(MatrixXc::Identity(2, 2), z) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));
}

TEST_CASE("triangle inequality on random triples") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 << rng.below(2);
        const MatrixXc u = haar_unitary(d, rng), v = haar_unitary(d, rng), w = haar_unitary(d, rng);
        CHECK(dist_phaseop(u, w) <= dist_phaseop(u, v) + dist_phaseop(v, w) + 1e-7);
    }
}

TEST_CASE("phase-aligned Frobenius distance closed form") {
    Rng rng(103);
    MatrixXc x(2, 2);
    x << 0, 1, 1, 0;
    CHECK(dist_phaseF(MatrixXc::Identity(2, 2), MatrixXc::Identity(2, 2)) == doctest::Approx(0));
    CHECK(dist_phaseF(MatrixXc::Identity(2, 2), x) == doctest::Approx(std::sqrt(2.0)));
    // Cross-check against explicit minimization over a fine grid.
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 4;
        const MatrixXc u = haar_unitary(d, rng), v = haar_unitary(d, rng);
        double best = 1e9;
        for (int i = 0; i < 20000; ++i) {
            const double theta = 2 * std::numbers::pi * i / 20000;
            best = std::min(best, (std::polar(1.0, theta) * u - v).norm() / std::sqrt(double(d)));
        }
        CHECK(std::abs(dist_phaseF(u, v) - best) < 1e-6);
    }
}

TEST_CASE("norm chain on fixed shapes") {
    const int d = 8;
    auto r = norm_chain_check(MatrixXc::Identity(d, d));
    CHECK(r.op == doctest::Approx(1.0));
    CHECK(r.frobenius == doctest::Approx(std::sqrt(double(d))));
    CHECK(r.trace == doctest::Approx(double(d)));
    CHECK(r.rank == d);
    CHECK(r.chain_holds);

    // rank one: all three norms coincide.
    Rng rng(107);
    VectorXc u = haar_state(d, rng), v = haar_state(d, rng);
    auto r1 = norm_chain_check(u * v.adjoint());
    CHECK(r1.rank == 1);
    CHECK(r1.op == doctest::Approx(r1.frobenius));
    CHECK(r1.frobenius == doctest::Approx(r1.trace));
    CHECK(r1.chain_holds);

    for (int trial = 0; trial < 10; ++trial) {
        MatrixXc a(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
        CHECK(norm_chain_check(a).chain_holds);
    }
}

TEST_CASE("distance report fields are consistent") {
    Rng rng(109);
    const MatrixXc u = haar_unitary(8, rng), v = haar_unitary(8, rng);
    const auto r = distance_report(u, v);
    CHECK(r.diamond_upper == doctest::Approx(2 * r.phaseop));
    CHECK(r.phaseop <= r.op + 1e-9);
    CHECK(r.phaseop >= 0);
}

TEST_CASE("operator norm power-iteration path agrees with dense SVD") {
    Rng rng(113);
    MatrixXc a(64, 64);
    for (Eigen::Index i = 0; i < 64; ++i)
        for (Eigen::Index j = 0; j < 64; ++j) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
    const double dense = operator_norm(a, 2048);
    const double iterative = operator_norm(a, 4);  // force the power-iteration path
    CHECK(std::abs(dense - iterative) < 1e-6 * dense);
}

TEST_CASE("distance works on near-unitary but not exactly unitary inputs") {
    Rng rng(127);
    const MatrixXc u = haar_unitary(8, rng);
    MatrixXc noise(8, 8);
    for (Eigen::Index i = 0; i < 8; ++i)
        for (Eigen::Index j = 0; j < 8; ++j) noise(i, j) = Complex(rng.gaussian(), rng.gaussian());
    const MatrixXc v = u + 0.05 * noise;  // not unitary: exercises the SVD fallback
    const double d = dist_phaseop(u, v);
    CHECK(d > 0);
    CHECK(d <= operator_norm(u - v) + 1e-9);
}

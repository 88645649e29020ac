#include "paulitomo/verify.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "paulitomo/composed.hpp"
#include "paulitomo/dimension.hpp"
#include "paulitomo/instances.hpp"
#include "paulitomo/metrics.hpp"

namespace paulitomo {

namespace {

Subspace random_subspace(int n, int dim, Rng& rng) {
    Subspace s(n);
    while (s.dim() < dim) {
        const std::uint64_t mask = (1ull << n) - 1;
        s.insert(PauliVec(n, rng.below(mask + 1), rng.below(mask + 1)));
    }
    return s;
}

PauliVec random_vec(int n, Rng& rng) {
    const std::uint64_t mask = (1ull << n) - 1;
    return PauliVec(n, rng.below(mask + 1), rng.below(mask + 1));
}

using Check = std::function<CheckResult(Rng&)>;

CheckResult make_result(const std::string& name, bool ok, const std::string& detail = "") {
    return {name, ok, detail};
}

// ---- symplectic ----

CheckResult check_bilinearity(Rng& rng) {
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(8));
        const PauliVec x = random_vec(n, rng), y = random_vec(n, rng), z = random_vec(n, rng);
        if (symplectic_product(x + y, z) !=
            (symplectic_product(x, z) ^ symplectic_product(y, z)))
            return make_result("bilinearity", false, "violated at n=" + std::to_string(n));
    }
    return make_result("bilinearity", true);
}

CheckResult check_double_complement(Rng& rng) {
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const Subspace s = random_subspace(n, static_cast<int>(rng.below(2 * n + 1)), rng);
        const Subspace back = s.symplectic_complement().symplectic_complement();
        if (!(back == s)) return make_result("double_complement", false);
        if (s.dim() + s.symplectic_complement().dim() != 2 * n)
            return make_result("double_complement", false, "dimension identity failed");
    }
    return make_result("double_complement", true);
}

CheckResult check_character_sum(Rng& rng) {
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const Subspace s = random_subspace(n, static_cast<int>(rng.below(2 * n + 1)), rng);
            const auto comp_elems = s.symplectic_complement().elements();
            for (std::uint64_t bits = 0; bits < (1ull << (2 * n)); ++bits) {
                const std::uint64_t mask = (1ull << n) - 1;
                const PauliVec a(n, bits & mask, bits >> n);
                double sum = 0;
                for (const auto& x : comp_elems)
                    sum += symplectic_product(a, x) ? -1.0 : 1.0;
                sum /= static_cast<double>(comp_elems.size());
                const double want = s.contains(a) ? 1.0 : 0.0;
                if (std::abs(sum - want) > 1e-12)
                    return make_result("character_sum", false,
                                       "mismatch at n=" + std::to_string(n));
            }
        }
    }
    return make_result("character_sum", true);
}

CheckResult check_gram_schmidt(Rng& rng) {
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(5));
        const Subspace s = random_subspace(n, 1 + static_cast<int>(rng.below(2 * n)), rng);
        Subspace t(n);
        for (const auto& v : s.basis())
            if (rng.bernoulli(0.5)) t.insert(v);
        const auto decomposition = symplectic_gram_schmidt(t, s);
        if (!check_symplectic_relations(decomposition.full_basis()))
            return make_result("gram_schmidt_relations", false);
        // Spans reproduce the inputs.
        std::vector<PauliVec> t_gens;
        for (const auto& [x, z] : decomposition.t.pairs) {
            t_gens.push_back(x);
            t_gens.push_back(z);
        }
        for (const auto& v : decomposition.t.isotropic) t_gens.push_back(v);
        if (!(Subspace::span(n, t_gens) == t))
            return make_result("gram_schmidt_relations", false, "T span changed");
        if (!(Subspace::span(n, decomposition.all_generators()) == s))
            return make_result("gram_schmidt_relations", false, "S span changed");
        // Determinism in the generator order.
        const auto again = symplectic_gram_schmidt(t, s);
        if (!(again.t.pairs == decomposition.t.pairs) ||
            !(again.t.isotropic == decomposition.t.isotropic))
            return make_result("gram_schmidt_relations", false, "not deterministic");
    }
    return make_result("gram_schmidt_relations", true);
}

// ---- pauli ----

CheckResult check_twirl_projection(Rng& rng) {
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const MatrixXc u = haar_unitary(1 << n, rng);
        const Subspace s = random_subspace(n, static_cast<int>(rng.below(2 * n + 1)), rng);
        const double diff = (pauli_twirl(u, s) - pauli_project(u, s)).norm();
        if (diff > 1e-10)
            return make_result("twirl_equals_projection", false,
                               "discrepancy " + std::to_string(diff));
    }
    return make_result("twirl_equals_projection", true);
}

CheckResult check_parseval(Rng& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        MatrixXc a(1 << n, 1 << n);
        for (Eigen::Index r = 0; r < a.rows(); ++r)
            for (Eigen::Index c = 0; c < a.cols(); ++c)
                a(r, c) = Complex(rng.gaussian(), rng.gaussian());
        const auto expansion = pauli_expand(a, 0.0);
        double mass = expansion.total_mass() * static_cast<double>(1 << n);
        if (std::abs(mass - a.squaredNorm()) > 1e-9 * std::max(1.0, a.squaredNorm()))
            return make_result("parseval", false);
    }
    return make_result("parseval", true);
}

CheckResult check_projection_contraction(Rng& rng) {
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const MatrixXc u = haar_unitary(1 << n, rng);
        const Subspace s = random_subspace(n, static_cast<int>(rng.below(2 * n + 1)), rng);
        if (operator_norm(pauli_project(u, s)) > 1.0 + 1e-9)
            return make_result("projection_contraction", false);
    }
    return make_result("projection_contraction", true);
}

CheckResult check_closeness_transfer(Rng& rng) {
    // ||U - V||_op <= eps with supp(V) in S forces ||U - Pi_S(U)|| <= 2 eps.
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(2));
        const int a = 1, b = 1;
        const Subspace s = canonical_subgroup(n, a, b);
        BlockDiagUnitary bd{n, a, b, {}};
        for (std::size_t y = 0; y < (1ull << b); ++y) bd.blocks.push_back(haar_unitary(1 << a, rng));
        const MatrixXc v = bd.dense();
        // Small generic perturbation: U = V exp(i eps G).
        const double eps = 0.05 + 0.1 * rng.uniform();
        MatrixXc g(1 << n, 1 << n);
        for (Eigen::Index r = 0; r < g.rows(); ++r)
            for (Eigen::Index c = 0; c < g.cols(); ++c)
                g(r, c) = Complex(rng.gaussian(), rng.gaussian());
        g = (g + g.adjoint()) / 2.0;
        g /= operator_norm(g);
        Eigen::SelfAdjointEigenSolver<MatrixXc> es(g);
        MatrixXc expg = MatrixXc::Zero(g.rows(), g.cols());
        for (Eigen::Index i = 0; i < g.rows(); ++i)
            expg += std::polar(1.0, eps * es.eigenvalues()(i)) *
                    (es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
        const MatrixXc u = v * expg;
        const double dist_uv = operator_norm(u - v);
        const double dist_proj = operator_norm(u - pauli_project(u, s));
        if (dist_proj > 2 * dist_uv + 1e-9)
            return make_result("closeness_transfer", false,
                               std::to_string(dist_proj) + " > 2*" + std::to_string(dist_uv));
    }
    return make_result("closeness_transfer", true);
}

// ---- clifford ----

CheckResult check_tableau_dense(Rng& rng) {
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const CliffordOp c = random_clifford(n, rng, 2);
        const MatrixXc cd = c.dense();
        for (int q = 0; q < n; ++q) {
            for (int which = 0; which < 3; ++which) {
                const PauliVec v = which == 0   ? PauliVec::single_x(n, q)
                                   : which == 1 ? PauliVec::single_y(n, q)
                                                : PauliVec::single_z(n, q);
                const PauliOperator img = c.conjugate(PauliOperator(v));
                const MatrixXc lhs = cd * weyl_matrix(PauliOperator(v)) * cd.adjoint();
                if ((lhs - weyl_matrix(img)).norm() > 1e-10)
                    return make_result("tableau_dense_agreement", false,
                                       "mismatch at n=" + std::to_string(n));
            }
        }
    }
    return make_result("tableau_dense_agreement", true);
}

CheckResult check_canonicalization(Rng& rng) {
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const Subspace t = random_subspace(n, static_cast<int>(rng.below(2 * n + 1)), rng);
        const auto reduction = clifford_to_block(t);
        const Subspace target = canonical_subgroup(n, reduction.a, reduction.b);
        Subspace image(n);
        for (const auto& v : t.basis()) image.insert(reduction.clifford.conjugate_vec(v));
        if (!(image == target)) return make_result("canonicalization_soundness", false);
    }
    return make_result("canonicalization_soundness", true);
}

CheckResult check_composition(Rng& rng) {
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const CliffordOp c1 = random_clifford(n, rng, 2);
        const CliffordOp c2 = random_clifford(n, rng, 2);
        const CliffordOp composed = c1.then(c2);
        const MatrixXc lhs = composed.dense();
        const MatrixXc rhs = c2.dense() * c1.dense();
        // Same conjugation action (dense realizations may differ by a
        // global phase, which conjugation cannot see).
        for (int q = 0; q < n; ++q) {
            const PauliOperator px = composed.conjugate(PauliOperator(PauliVec::single_x(n, q)));
            const MatrixXc dense_img =
                rhs * weyl_matrix(PauliOperator(PauliVec::single_x(n, q))) * rhs.adjoint();
            if ((dense_img - weyl_matrix(px)).norm() > 1e-9)
                return make_result("composition", false);
        }
        (void)lhs;
    }
    return make_result("composition", true);
}

CheckResult check_support_bound(Rng& rng) {
    // Mass 1 - eta on W_{a',b'} with eta = delta^2 / 2^{a+b} keeps the
    // projection within delta in operator norm.
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3;
        const int a = 1, b = 1;       // ambient block structure
        const int ap = 1, bp = 0;     // concentrated subgroup
        const double delta = 0.2 + 0.3 * rng.uniform();
        const double eta = delta * delta / static_cast<double>(1 << (a + b));
        // Build an (a,b)-block-diagonal unitary with mass 1-eta inside
        // W_{a',b'}: rotate a W_{a',b'}-supported unitary by a Pauli in
        // W_{a,b} \ W_{a',b'}.
        BlockDiagUnitary core{n, ap, bp, {haar_unitary(1 << ap, rng)}};
        const MatrixXc u0 = core.dense();
        const MatrixXc g = weyl_matrix(PauliVec::single_z(n, n - a - b));  // in W_{a,b}, outside W_{a',b'}
        const double theta = std::asin(std::sqrt(eta));
        const MatrixXc u = u0 * (std::cos(theta) * MatrixXc::Identity(u0.rows(), u0.cols()) +
                                 Complex(0, 1) * std::sin(theta) * g);
        const Subspace target = canonical_subgroup(n, ap, bp);
        const double dist = operator_norm(pauli_project(u, target) - u);
        if (dist > delta + 1e-8)
            return make_result("support_mass_bound", false,
                               std::to_string(dist) + " > " + std::to_string(delta));
    }
    return make_result("support_mass_bound", true);
}

// ---- lcu ----

CheckResult check_lcu_acceptance(Rng& rng) {
    for (int inst = 0; inst < 20; ++inst) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const QueryOracle oracle(DenseUnitary(n, haar_unitary(1 << n, rng)), false);
        const Subspace s = random_subspace(n, static_cast<int>(rng.below(2 * n + 1)), rng);
        const ProjectedApplier applier(oracle, s);
        const StateVector psi(n, haar_state(1 << n, rng), false);
        const double p = applier.acceptance_probability(psi);
        const int trials = 10000;
        int accepted = 0;
        for (int i = 0; i < trials; ++i)
            if (applier.attempt(psi, rng)) ++accepted;
        const double phat = static_cast<double>(accepted) / trials;
        const double sigma = std::sqrt(std::max(p * (1 - p), 1e-6) / trials);
        if (std::abs(phat - p) > 3.5 * sigma + 1e-4)
            return make_result("lcu_acceptance_probability", false,
                               "phat=" + std::to_string(phat) + " p=" + std::to_string(p));
    }
    return make_result("lcu_acceptance_probability", true);
}

CheckResult check_lcu_circuit_exact(Rng& rng) {
    for (int inst = 0; inst < 20; ++inst) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const QueryOracle oracle(DenseUnitary(n, haar_unitary(1 << n, rng)), false);
        const Subspace s = random_subspace(n, static_cast<int>(rng.below(2 * n + 1)), rng);
        if (n + s.symplectic_complement().dim() > 14) continue;
        const ProjectedApplier applier(oracle, s);
        const StateVector psi(n, haar_state(1 << n, rng), false);
        const VectorXc statistical = applier.project_apply(psi);
        const VectorXc circuit = lcu_circuit_exact(oracle, s, psi);
        if (std::abs(statistical.squaredNorm() - circuit.squaredNorm()) > 1e-8)
            return make_result("lcu_circuit_exact", false, "acceptance probability differs");
        if ((statistical - circuit).norm() > 1e-8)
            return make_result("lcu_circuit_exact", false, "post-selected state differs");
    }
    return make_result("lcu_circuit_exact", true);
}

CheckResult check_bell_support(Rng& rng) {
    for (int inst = 0; inst < 10; ++inst) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const KdimSpec spec{n, 1, static_cast<int>(rng.below(n))};
        Instance instance = gen_kdim(spec, rng);
        const QueryOracle oracle(instance.unitary, false);
        const Subspace support = support_span(oracle.matrix(), 1e-10);
        for (const auto& v : bell_sample_choi(oracle, 500, rng))
            if (!support.contains(v))
                return make_result("bell_support_containment", false);
    }
    return make_result("bell_support_containment", true);
}

// ---- tomo ----

CheckResult check_tomo_decomposition(Rng& rng) {
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + static_cast<int>(rng.below(3));
        const StateVector target(m, haar_state(1 << m, rng), false);
        const double eps = 0.05 + 0.2 * rng.uniform();
        const auto result = tomo_model(target, eps, 0.01, rng);
        // overlap^2 + residual^2 = 1 and residual = eps_drawn exactly.
        const Complex overlap = target.amplitudes.dot(result.estimate.amplitudes);
        const double residual =
            (result.estimate.amplitudes - overlap * target.amplitudes).norm();
        if (std::abs(std::abs(overlap) -
                     std::sqrt(1 - result.eps_drawn * result.eps_drawn)) > 1e-10 ||
            std::abs(residual - result.eps_drawn) > 1e-10)
            return make_result("model_decomposition", false);
        const std::uint64_t want = tomography_copy_count(m, eps, 0.01, 4.0);
        if (result.copies_charged != want)
            return make_result("model_decomposition", false, "copy accounting");
    }
    return make_result("model_decomposition", true);
}

CheckResult check_haar_isotropy(Rng& rng) {
    // Second moments of |w> on the complement of |0>: E |<j|w>|^2 = 1/(d-1)
    // for j != 0. Chi-square over 10^4 draws.
    const int m = 2;
    const int d = 1 << m;
    const StateVector target = StateVector::basis(m, 0);
    const int draws = 10000;
    std::vector<double> mass(d, 0.0);
    for (int i = 0; i < draws; ++i) {
        const VectorXc w = haar_orthogonal_state(target.amplitudes, rng);
        for (int j = 0; j < d; ++j) mass[j] += std::norm(w[j]);
    }
    if (mass[0] > 1e-9) return make_result("haar_isotropy", false, "leakage onto the target");
    double chi2 = 0;
    const double expected = static_cast<double>(draws) / (d - 1);
    for (int j = 1; j < d; ++j) chi2 += (mass[j] - expected) * (mass[j] - expected) / expected;
    // 2 dof at p = 0.01 -> 9.21; the statistic here is a loose analogue, so
    // give slack.
    if (chi2 > 20.0) return make_result("haar_isotropy", false, "chi2=" + std::to_string(chi2));
    return make_result("haar_isotropy", true);
}

// ---- metrics ----

CheckResult check_unitary_invariance(Rng& rng) {
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 << rng.below(3);
        const MatrixXc u = haar_unitary(d, rng), v = haar_unitary(d, rng), w = haar_unitary(d, rng);
        const double base = dist_phaseop(u, v);
        const double rotated = dist_phaseop(w * u, w * v);
        if (std::abs(base - rotated) > 1e-7) return make_result("unitary_invariance", false);
    }
    return make_result("unitary_invariance", true);
}

CheckResult check_tensor_identity(Rng& rng) {
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 << rng.below(2);
        MatrixXc a(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < d; ++c) a(r, c) = Complex(rng.gaussian(), rng.gaussian());
        const int reps = 4;
        MatrixXc padded = MatrixXc::Zero(reps * d, reps * d);
        for (int i = 0; i < reps; ++i) padded.block(i * d, i * d, d, d) = a;
        if (std::abs(padded.norm() - std::sqrt(static_cast<double>(reps)) * a.norm()) > 1e-9)
            return make_result("tensor_identity", false);
    }
    return make_result("tensor_identity", true);
}

CheckResult check_frob_op_canary(Rng& rng) {
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 << rng.below(3);
        const MatrixXc u = haar_unitary(d, rng), v = haar_unitary(d, rng);
        if (dist_phaseF(u, v) > std::sqrt(2.0) * dist_phaseop(u, v) + 1e-7)
            return make_result("phaseF_phaseop_canary", false);
    }
    return make_result("phaseF_phaseop_canary", true);
}

// ---- composed ----

CheckResult check_decomposition_identity(Rng& rng) {
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const MatrixXc u = haar_unitary(1 << n, rng);
        ComposedEstimate exact;
        exact.n = n;
        for (int q = 0; q < n; ++q) {
            const MatrixXc ux = u.adjoint() * weyl_matrix(PauliVec::single_x(n, q)) * u;
            const MatrixXc uy = u.adjoint() * weyl_matrix(PauliVec::single_y(n, q)) * u;
            const MatrixXc uz = u.adjoint() * weyl_matrix(PauliVec::single_z(n, q)) * u;
            exact.factors.push_back(assemble_factor(n, q, ux, uy, uz));
        }
        // U^dag tensor U: entry ((r1,r2),(c1,c2)) = (U^dag)(r1,c1) U(r2,c2).
        MatrixXc target(1ll << (2 * n), 1ll << (2 * n));
        const Eigen::Index half = 1ll << n;
        for (Eigen::Index r1 = 0; r1 < half; ++r1)
            for (Eigen::Index c1 = 0; c1 < half; ++c1)
                target.block(r1 * half, c1 * half, half, half) = std::conj(u(c1, r1)) * u;
        if ((exact.dense() - target).norm() > 1e-9)
            return make_result("swap_decomposition_identity", false,
                               "n=" + std::to_string(n));
    }
    return make_result("swap_decomposition_identity", true);
}

CheckResult check_term_dimensionality(Rng& rng) {
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        const ShallowDopedSpec spec{n, 1, 1, rng.bernoulli(0.5)};
        const Instance inst = gen_shallow_doped(spec, rng);
        const int bound = (1 << (spec.depth + 1)) + 2 * spec.t_gates;
        for (int q = 0; q < n; ++q) {
            for (int which = 0; which < 3; ++which) {
                const PauliVec v = which == 0   ? PauliVec::single_x(n, q)
                                   : which == 1 ? PauliVec::single_y(n, q)
                                                : PauliVec::single_z(n, q);
                MatrixXc conj;
                if (spec.clifford_first)  // U = CQ: learn U P U^dag instead
                    conj = inst.unitary.matrix * weyl_matrix(v) * inst.unitary.matrix.adjoint();
                else
                    conj = inst.unitary.matrix.adjoint() * weyl_matrix(v) * inst.unitary.matrix;
                const int dim = support_span(conj, 1e-9).dim();
                if (dim > bound)
                    return make_result("term_dimensionality", false,
                                       "dim " + std::to_string(dim) + " > " +
                                           std::to_string(bound));
            }
        }
    }
    return make_result("term_dimensionality", true);
}

CheckResult check_hermitian_targets(Rng& rng) {
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const QueryOracle oracle(DenseUnitary(n, haar_unitary(1 << n, rng)), true);
        const int q = static_cast<int>(rng.below(n));
        const QueryOracle derived =
            heisenberg_pauli_oracle(oracle, PauliOperator(PauliVec::single_z(n, q)));
        const MatrixXc& t = derived.matrix();
        if ((t - t.adjoint()).norm() > 1e-9) return make_result("hermitian_targets", false);
        if ((t * t - MatrixXc::Identity(t.rows(), t.cols())).norm() > 1e-9)
            return make_result("hermitian_targets", false, "not self-inverse");
    }
    return make_result("hermitian_targets", true);
}

CheckResult check_error_composition(Rng& rng) {
    // dist of a product is at most the sum of per-factor dists.
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 4;
        const MatrixXc u1 = haar_unitary(d, rng), u2 = haar_unitary(d, rng);
        MatrixXc p1(d, d), p2(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < d; ++c) {
                p1(r, c) = Complex(rng.gaussian(), rng.gaussian());
                p2(r, c) = Complex(rng.gaussian(), rng.gaussian());
            }
        const MatrixXc v1 = polar_round(u1 + 0.05 * p1);
        const MatrixXc v2 = polar_round(u2 + 0.05 * p2);
        const double lhs = dist_phaseop(u1 * u2, v1 * v2);
        const double rhs = dist_phaseop(u1, v1) + dist_phaseop(u2, v2);
        if (lhs > rhs + 1e-8) return make_result("error_composition", false);
    }
    return make_result("error_composition", true);
}

struct Suite {
    std::string name;
    std::vector<std::pair<std::string, Check>> checks;
};

std::vector<Suite> build_suites() {
    std::vector<Suite> suites;
    suites.push_back({"symplectic",
                      {{"bilinearity", check_bilinearity},
                       {"double_complement", check_double_complement},
                       {"character_sum", check_character_sum},
                       {"gram_schmidt_relations", check_gram_schmidt}}});
    suites.push_back({"pauli",
                      {{"twirl_equals_projection", check_twirl_projection},
                       {"parseval", check_parseval},
                       {"projection_contraction", check_projection_contraction},
                       {"closeness_transfer", check_closeness_transfer}}});
    suites.push_back({"clifford",
                      {{"tableau_dense_agreement", check_tableau_dense},
                       {"canonicalization_soundness", check_canonicalization},
                       {"composition", check_composition},
                       {"support_mass_bound", check_support_bound}}});
    suites.push_back({"lcu",
                      {{"lcu_acceptance_probability", check_lcu_acceptance},
                       {"lcu_circuit_exact", check_lcu_circuit_exact},
                       {"bell_support_containment", check_bell_support}}});
    suites.push_back({"tomo",
                      {{"model_decomposition", check_tomo_decomposition},
                       {"haar_isotropy", check_haar_isotropy}}});
    suites.push_back({"metrics",
                      {{"unitary_invariance", check_unitary_invariance},
                       {"tensor_identity", check_tensor_identity},
                       {"phaseF_phaseop_canary", check_frob_op_canary}}});
    suites.push_back({"composed",
                      {{"swap_decomposition_identity", check_decomposition_identity},
                       {"term_dimensionality", check_term_dimensionality},
                       {"hermitian_targets", check_hermitian_targets},
                       {"error_composition", check_error_composition}}});
    return suites;
}

}  // namespace

bool SuiteResult::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::vector<std::string> verify_suite_names() {
    std::vector<std::string> names;
    for (const auto& s : build_suites()) names.push_back(s.name);
    return names;
}

SuiteResult run_verify_suite(const std::string& name, std::uint64_t seed) {
    for (const auto& suite : build_suites()) {
        if (suite.name != name) continue;
        SuiteResult result;
        result.suite = name;
        Rng rng(seed);
        for (const auto& [check_name, check] : suite.checks) {
            Rng check_rng = rng.fork();
            try {
                result.checks.push_back(check(check_rng));
            } catch (const std::exception& e) {
                result.checks.push_back({check_name, false, std::string("exception: ") + e.what()});
            }
        }
        return result;
    }
    throw std::invalid_argument("unknown verify suite: " + name);
}

void print_suite_result(const SuiteResult& result, std::ostream& out) {
    for (const auto& c : result.checks) {
        out << (c.passed ? "[PASS] " : "[FAIL] ") << result.suite << "." << c.name;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << "\n";
    }
}

}  // namespace paulitomo

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <unordered_map>
#include <vector>

#include "paulitomo/f2.hpp"

namespace paulitomo {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Default dense-matrix qubit cap. The whole harness is desk scale; nothing
/// above this is ever materialized.
inline constexpr int kDefaultDenseCap = 12;

/// Coefficients below this are floating-point dust, not support.
inline constexpr double kSupportTau = 1e-12;

/// i^k for k mod 4.
Complex phase_i(int k);

/// Signed Weyl operator: i^phase_exp * W_vec, where W_vec is the Hermitian
/// Pauli tensor i^{a.b} X^a Z^b. Conjugation by Cliffords and Weyl products
/// keep the phase exponent exact.
struct PauliOperator {
    PauliVec vec;
    int phase_exp = 0;  // power of i, mod 4

    PauliOperator() = default;
    explicit PauliOperator(PauliVec v, int k = 0) : vec(v), phase_exp(((k % 4) + 4) % 4) {}

    Complex phase() const { return phase_i(phase_exp); }
    PauliOperator operator-() const { return PauliOperator(vec, phase_exp + 2); }

    /// Product of signed Weyl operators, with the exact i-power.
    PauliOperator operator*(const PauliOperator& o) const;

    bool operator==(const PauliOperator& o) const = default;

    /// e.g. "+XIZ", "-YZI", "+iXX", "-iZZ".
    std::string str() const;
    static PauliOperator parse(const std::string& s);
};

/// Phase exponent k such that W_u W_v = i^k W_{u+v}.
int weyl_product_phase(const PauliVec& u, const PauliVec& v);

/// Dense 2^n x 2^n realization. Qubit 0 is the most significant index bit.
MatrixXc weyl_matrix(const PauliOperator& p, int dense_cap = kDefaultDenseCap);
MatrixXc weyl_matrix(const PauliVec& v, int dense_cap = kDefaultDenseCap);

/// Applies i^{phase} W_v to a state vector in place, O(2^n).
void apply_pauli(const PauliOperator& p, VectorXc& state);

/// Sparse Pauli expansion A = sum_x alpha_x W_x with alpha_x = tr(A W_x)/2^n.
class PauliExpansion {
  public:
    using Map = std::unordered_map<PauliVec, Complex, PauliVecHash>;

    PauliExpansion(int n, Map coeffs, double tau = kSupportTau)
        : n_(n), coeffs_(std::move(coeffs)), tau_(tau) {}

    int n() const { return n_; }
    double tau() const { return tau_; }
    const Map& coefficients() const { return coeffs_; }

    Complex coefficient(const PauliVec& v) const;

    /// Vectors with |alpha_x| > tau.
    std::vector<PauliVec> support() const;
    Subspace support_span() const;

    /// sum |alpha_x|^2 over x in S (the captured Pauli mass).
    double mass_in(const Subspace& s) const;
    double total_mass() const;

    MatrixXc reconstruct() const;

    std::string to_json() const;
    static PauliExpansion from_json(const std::string& text);

  private:
    int n_;
    Map coeffs_;
    double tau_;
};

/// Pauli expansion via the tensored single-qubit trace recursion,
/// O(n 4^n). Coefficients with |alpha| <= tau are dropped.
PauliExpansion pauli_expand(const MatrixXc& a, double tau = kSupportTau);

/// Reference path: 4^n explicit traces against dense Weyl matrices. Kept
/// for cross-checking the recursion.
PauliExpansion pauli_expand_naive(const MatrixXc& a, double tau = kSupportTau);

/// Span of the support thresholded at tau; its dimension is the Pauli
/// dimensionality of A.
Subspace support_span(const MatrixXc& a, double tau = kSupportTau);

/// Pi_S(A): zero out all Pauli coefficients outside S. Idempotent, linear,
/// identity on operators supported inside S.
MatrixXc pauli_project(const MatrixXc& a, const Subspace& s);

/// Pi_{W_{a,b}}(A) in closed form: keep entries diagonal in the leading and
/// middle registers and average the leading register, O(4^n). Agrees with
/// pauli_project onto canonical_subgroup(n, a, b).
MatrixXc pauli_project_canonical(const MatrixXc& m, int a, int b);

/// Exact average E_{q in S^perp}[W_q A W_q^dag] over all elements of the
/// complement. Throws if dim S^perp > max_complement_dim. Agrees with
/// pauli_project to numerical precision.
MatrixXc pauli_twirl(const MatrixXc& a, const Subspace& s, int max_complement_dim = 20);

/// The canonical subgroup W_{a,b}: arbitrary Paulis on the last a qubits,
/// I/Z on the b qubits before them, identity elsewhere.
Subspace canonical_subgroup(int n, int a, int b);

}  // namespace paulitomo

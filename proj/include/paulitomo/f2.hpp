#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paulitomo {

/// Element of F2^{2n}: the x-part marks qubits carrying an X factor, the
/// z-part qubits carrying a Z factor (both set = Y). Qubit 0 is the first
/// character of the string form and the most significant bit of state
/// indices. Packed into one word per part, so n <= 64.
struct PauliVec {
    int n = 0;
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    PauliVec() = default;
    PauliVec(int n_, std::uint64_t x_, std::uint64_t z_);

    static PauliVec zero(int n) { return PauliVec(n, 0, 0); }
    static PauliVec single_x(int n, int qubit);
    static PauliVec single_z(int n, int qubit);
    static PauliVec single_y(int n, int qubit);

    bool is_zero() const { return x == 0 && z == 0; }
    bool x_bit(int qubit) const { return (x >> qubit) & 1; }
    bool z_bit(int qubit) const { return (z >> qubit) & 1; }

    /// Hamming weight: number of qubits acted on non-trivially.
    int weight() const;

    PauliVec operator+(const PauliVec& o) const;
    bool operator==(const PauliVec& o) const = default;

    /// Pauli letter on one qubit: 'I', 'X', 'Y' or 'Z'.
    char letter(int qubit) const;

    /// String form with explicit sign slot, e.g. "+XIZ".
    std::string str() const;

    /// Parses "XIZ", "+XIZ", "-XIZ", "+iXIZ", "-iXIZ"; any sign prefix is
    /// accepted and discarded (a PauliVec is phaseless).
    static PauliVec parse(const std::string& s);
};

struct PauliVecHash {
    std::size_t operator()(const PauliVec& v) const {
        std::uint64_t h = v.x * 0x9e3779b97f4a7c15ull;
        h ^= v.z + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Symplectic product [x, y] = sum_i x_i y_{n+i} + x_{n+i} y_i mod 2.
/// Zero iff the corresponding Weyl operators commute.
int symplectic_product(const PauliVec& a, const PauliVec& b);

/// F2-linear span with a canonical reduced-row-echelon basis (column order:
/// x-bits of qubit 0..n-1, then z-bits). Equal spans compare equal.
class Subspace {
  public:
    explicit Subspace(int n) : n_(n) {}

    static Subspace span(int n, const std::vector<PauliVec>& vectors);
    static Subspace full(int n);

    int n() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<PauliVec>& basis() const { return basis_; }

    bool contains(const PauliVec& v) const;
    bool contains_subspace(const Subspace& other) const;

    /// Adds v to the span. Returns true if the dimension grew.
    bool insert(const PauliVec& v);

    /// S^perp: everything commuting with all of S. dim S + dim S^perp = 2n.
    Subspace symplectic_complement() const;

    /// All 2^dim elements, ordered by basis-combination index. Throws if
    /// dim exceeds max_dim.
    std::vector<PauliVec> elements(int max_dim = 24) const;

    bool operator==(const Subspace& o) const = default;

    /// Line-separated Pauli strings of the canonical basis.
    std::string str() const;
    static Subspace parse(int n, const std::string& text);

  private:
    void reduce_vector(PauliVec& v) const;

    int n_;
    std::vector<PauliVec> basis_;  // RREF, pivots strictly increasing
};

/// Basis of a subspace split into symplectic pairs (x_i, z_i) and an
/// isotropic tail, satisfying [x_i, z_j] = delta_ij and all other products
/// zero. 2*pairs + isotropic = dim. `ell` counts leading isotropic
/// generators that acquired an x-partner in the ambient space during a
/// nested decomposition (zero when decomposing a space against itself).
struct SymplecticBasis {
    std::vector<std::pair<PauliVec, PauliVec>> pairs;  // (x_i, z_i)
    std::vector<PauliVec> isotropic;
    int ell = 0;

    int a() const { return static_cast<int>(pairs.size()); }
    int b() const { return static_cast<int>(isotropic.size()); }
    int dim() const { return 2 * a() + b(); }
};

/// Three-phase nested decomposition of T inside S. The T-part basis spans T;
/// the T-part plus the extension spans S. partner_x[i] is the ambient
/// partner of t.isotropic[i] for i < t.ell.
struct NestedSymplecticBasis {
    SymplecticBasis t;
    std::vector<PauliVec> partner_x;  // size == t.ell
    SymplecticBasis s_extra;          // pairs and isotropic fully outside T

    /// Combined basis of S: T's generators followed by the extension.
    std::vector<PauliVec> all_generators() const;

    /// The full symplectic basis of S: T's pairs, then the (partner_x,
    /// isotropic) pairs created in phase two, then the pure-S pairs; the
    /// isotropic tail is whatever stayed unpaired.
    SymplecticBasis full_basis() const;
};

/// Decomposes T <= S into the nested symplectic form. Phase one pairs
/// within T, phase two pairs leftover isotropic T-generators against
/// S-generators, phase three pairs the remaining S-generators. "Grab
/// arbitrary element" is resolved as first-in-current-order, so the result
/// is deterministic in the generator order. Throws if T is not inside S.
NestedSymplecticBasis symplectic_gram_schmidt(const Subspace& t, const Subspace& s);

/// Checks every pairwise symplectic relation of a (claimed) symplectic
/// basis; returns false on the first violation.
bool check_symplectic_relations(const SymplecticBasis& basis);

}  // namespace paulitomo

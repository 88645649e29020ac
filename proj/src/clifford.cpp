#include "paulitomo/clifford.hpp"

#include <array>
#include <bit>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace paulitomo {

namespace {

// Single-qubit Pauli codes: I=0, X=1, Y=2, Z=3.
int code_of(const PauliVec& v, int q) {
    const int xb = v.x_bit(q) ? 1 : 0;
    const int zb = v.z_bit(q) ? 1 : 0;
    if (xb && zb) return 2;
    if (xb) return 1;
    if (zb) return 3;
    return 0;
}

void set_code(PauliVec& v, int q, int code) {
    const std::uint64_t bit = 1ull << q;
    v.x &= ~bit;
    v.z &= ~bit;
    if (code == 1 || code == 2) v.x |= bit;
    if (code == 2 || code == 3) v.z |= bit;
}

MatrixXc pauli_matrix_1q(int code) {
    MatrixXc m(2, 2);
    switch (code) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

MatrixXc gate_matrix_1q(GateKind kind) {
    MatrixXc m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::H: m << s, s, s, -s; break;
        case GateKind::S: m << 1, 0, 0, Complex(0, 1); break;
        case GateKind::X: m << 0, 1, 1, 0; break;
        case GateKind::Z: m << 1, 0, 0, -1; break;
        default: throw std::logic_error("not a 1q gate");
    }
    return m;
}

MatrixXc gate_matrix_2q(GateKind kind) {
    MatrixXc m = MatrixXc::Zero(4, 4);
    if (kind == GateKind::CNOT) {
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    } else {  // CZ
        m(0, 0) = m(1, 1) = m(2, 2) = 1;
        m(3, 3) = -1;
    }
    return m;
}

struct Conj1q {
    int code;
    bool flip;  // image carries a -1
};
struct Conj2q {
    int code0, code1;
    bool flip;
};

// Conjugation tables are derived from dense arithmetic once, so the sign
// conventions cannot drift from the Weyl realization.
std::array<Conj1q, 4> build_table_1q(GateKind kind) {
    const MatrixXc g = gate_matrix_1q(kind);
    std::array<Conj1q, 4> table{};
    for (int c = 0; c < 4; ++c) {
        const MatrixXc img = g * pauli_matrix_1q(c) * g.adjoint();
        bool found = false;
        for (int c2 = 0; c2 < 4 && !found; ++c2) {
            const MatrixXc p2 = pauli_matrix_1q(c2);
            if ((img - p2).norm() < 1e-12) {
                table[c] = {c2, false};
                found = true;
            } else if ((img + p2).norm() < 1e-12) {
                table[c] = {c2, true};
                found = true;
            }
        }
        if (!found) throw std::logic_error("gate does not normalize the Pauli group");
    }
    return table;
}

std::array<Conj2q, 16> build_table_2q(GateKind kind) {
    const MatrixXc g = gate_matrix_2q(kind);
    std::array<Conj2q, 16> table{};
    for (int c0 = 0; c0 < 4; ++c0) {
        for (int c1 = 0; c1 < 4; ++c1) {
            MatrixXc p(4, 4);
            const MatrixXc m0 = pauli_matrix_1q(c0), m1 = pauli_matrix_1q(c1);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) p.block(2 * r, 2 * c, 2, 2) = m0(r, c) * m1;
            const MatrixXc img = g * p * g.adjoint();
            bool found = false;
            for (int d0 = 0; d0 < 4 && !found; ++d0) {
                for (int d1 = 0; d1 < 4 && !found; ++d1) {
                    MatrixXc q(4, 4);
                    const MatrixXc n0 = pauli_matrix_1q(d0), n1 = pauli_matrix_1q(d1);
                    for (int r = 0; r < 2; ++r)
                        for (int c = 0; c < 2; ++c) q.block(2 * r, 2 * c, 2, 2) = n0(r, c) * n1;
                    if ((img - q).norm() < 1e-12) {
                        table[4 * c0 + c1] = {d0, d1, false};
                        found = true;
                    } else if ((img + q).norm() < 1e-12) {
                        table[4 * c0 + c1] = {d0, d1, true};
                        found = true;
                    }
                }
            }
            if (!found) throw std::logic_error("gate does not normalize the Pauli group");
        }
    }
    return table;
}

const std::array<Conj1q, 4>& table_for_1q(GateKind kind) {
    static const auto h = build_table_1q(GateKind::H);
    static const auto s = build_table_1q(GateKind::S);
    static const auto x = build_table_1q(GateKind::X);
    static const auto z = build_table_1q(GateKind::Z);
    switch (kind) {
        case GateKind::H: return h;
        case GateKind::S: return s;
        case GateKind::X: return x;
        default: return z;
    }
}

const std::array<Conj2q, 16>& table_for_2q(GateKind kind) {
    static const auto cnot = build_table_2q(GateKind::CNOT);
    static const auto cz = build_table_2q(GateKind::CZ);
    return kind == GateKind::CNOT ? cnot : cz;
}

void conjugate_by_gate(const Gate& g, PauliOperator& p) {
    if (g.is_two_qubit()) {
        const auto& table = table_for_2q(g.kind);
        const int c0 = code_of(p.vec, g.q0), c1 = code_of(p.vec, g.q1);
        const auto& entry = table[4 * c0 + c1];
        set_code(p.vec, g.q0, entry.code0);
        set_code(p.vec, g.q1, entry.code1);
        if (entry.flip) p.phase_exp = (p.phase_exp + 2) % 4;
    } else {
        const auto& table = table_for_1q(g.kind);
        const auto& entry = table[code_of(p.vec, g.q0)];
        set_code(p.vec, g.q0, entry.code);
        if (entry.flip) p.phase_exp = (p.phase_exp + 2) % 4;
    }
}

}  // namespace

CliffordOp::CliffordOp(int n) : n_(n) {
    images_.reserve(2 * n);
    for (int q = 0; q < n; ++q) images_.emplace_back(PauliVec::single_x(n, q));
    for (int q = 0; q < n; ++q) images_.emplace_back(PauliVec::single_z(n, q));
}

CliffordOp CliffordOp::identity(int n) { return CliffordOp(n); }

CliffordOp CliffordOp::from_gates(int n, const std::vector<Gate>& gates) {
    CliffordOp c(n);
    for (const auto& g : gates) c.apply_gate(g);
    return c;
}

void CliffordOp::apply_gate(const Gate& g) {
    if (g.q0 < 0 || g.q0 >= n_ || (g.is_two_qubit() && (g.q1 < 0 || g.q1 >= n_ || g.q1 == g.q0)))
        throw std::invalid_argument("CliffordOp: gate qubit out of range");
    for (auto& img : images_) conjugate_by_gate(g, img);
    gates_.push_back(g);
}

PauliOperator CliffordOp::conjugate(const PauliOperator& p) const {
    if (p.vec.n != n_) throw std::invalid_argument("CliffordOp::conjugate: dimension mismatch");
    // W_v = i^{x.z} prod_q X_q^{x_q} prod_q Z_q^{z_q}; push each factor
    // through the tableau and re-multiply.
    PauliOperator acc(PauliVec::zero(n_),
                      p.phase_exp + std::popcount(p.vec.x & p.vec.z));
    for (int q = 0; q < n_; ++q)
        if (p.vec.x_bit(q)) acc = acc * images_[q];
    for (int q = 0; q < n_; ++q)
        if (p.vec.z_bit(q)) acc = acc * images_[n_ + q];
    assert(p.phase_exp % 2 != 0 || acc.phase_exp % 2 == 0);
    return acc;
}

PauliVec CliffordOp::conjugate_vec(const PauliVec& v) const { return conjugate(PauliOperator(v)).vec; }

Subspace CliffordOp::conjugate_subspace(const Subspace& s) const {
    Subspace out(n_);
    for (const auto& v : s.basis()) out.insert(conjugate_vec(v));
    return out;
}

CliffordOp CliffordOp::then(const CliffordOp& second) const {
    if (n_ != second.n_) throw std::invalid_argument("CliffordOp::then: dimension mismatch");
    CliffordOp out(n_);
    out.gates_ = gates_;
    out.gates_.insert(out.gates_.end(), second.gates_.begin(), second.gates_.end());
    for (int i = 0; i < 2 * n_; ++i) out.images_[i] = second.conjugate(images_[i]);
    return out;
}

CliffordOp CliffordOp::inverse() const {
    std::vector<Gate> inv;
    inv.reserve(gates_.size() + gates_.size() / 2);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        if (it->kind == GateKind::S) {
            // S^dag = Z S
            inv.push_back({GateKind::Z, it->q0});
            inv.push_back({GateKind::S, it->q0});
        } else {
            inv.push_back(*it);  // H, X, Z, CNOT, CZ are involutions
        }
    }
    return from_gates(n_, inv);
}

std::vector<PauliVec> CliffordOp::symplectic_columns() const {
    std::vector<PauliVec> cols;
    cols.reserve(images_.size());
    for (const auto& img : images_) cols.push_back(img.vec);
    return cols;
}

std::vector<int> CliffordOp::sign_bits() const {
    std::vector<int> bits;
    bits.reserve(images_.size());
    for (const auto& img : images_) bits.push_back(img.phase_exp == 2 ? 1 : 0);
    return bits;
}

MatrixXc CliffordOp::dense(int dense_cap) const {
    if (n_ > dense_cap) throw std::invalid_argument("CliffordOp::dense: n exceeds dense cap");
    const Eigen::Index dim = 1ll << n_;
    MatrixXc m = MatrixXc::Identity(dim, dim);
    for (const auto& g : gates_) apply_gate_dense(g, m);
    return m;
}

std::string CliffordOp::gates_str() const {
    std::ostringstream out;
    for (const auto& g : gates_) {
        switch (g.kind) {
            case GateKind::H: out << "H " << g.q0 + 1; break;
            case GateKind::S: out << "S " << g.q0 + 1; break;
            case GateKind::X: out << "X " << g.q0 + 1; break;
            case GateKind::Z: out << "Z " << g.q0 + 1; break;
            case GateKind::CNOT: out << "CNOT " << g.q0 + 1 << " " << g.q1 + 1; break;
            case GateKind::CZ: out << "CZ " << g.q0 + 1 << " " << g.q1 + 1; break;
        }
        out << "\n";
    }
    return out.str();
}

CliffordOp CliffordOp::parse_gates(int n, const std::string& text) {
    CliffordOp c(n);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string name;
        int q0 = 0, q1 = 0;
        ls >> name >> q0;
        Gate g{GateKind::H, q0 - 1};
        if (name == "H") g.kind = GateKind::H;
        else if (name == "S") g.kind = GateKind::S;
        else if (name == "X") g.kind = GateKind::X;
        else if (name == "Z") g.kind = GateKind::Z;
        else if (name == "CNOT" || name == "CZ") {
            ls >> q1;
            g.kind = name == "CNOT" ? GateKind::CNOT : GateKind::CZ;
            g.q1 = q1 - 1;
        } else {
            throw std::invalid_argument("unknown gate: " + name);
        }
        c.apply_gate(g);
    }
    return c;
}

void apply_gate_dense(const Gate& g, VectorXc& state) {
    const int n = std::countr_zero(static_cast<std::uint64_t>(state.size()));
    auto bit_of = [&](int qubit) { return n - 1 - qubit; };  // qubit 0 = MSB
    if (!g.is_two_qubit()) {
        const MatrixXc m = gate_matrix_1q(g.kind);
        const std::uint64_t bit = 1ull << bit_of(g.q0);
        for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(state.size()); ++s) {
            if (s & bit) continue;
            const Complex a0 = state[s], a1 = state[s | bit];
            state[s] = m(0, 0) * a0 + m(0, 1) * a1;
            state[s | bit] = m(1, 0) * a0 + m(1, 1) * a1;
        }
    } else {
        const MatrixXc m = gate_matrix_2q(g.kind);
        const std::uint64_t b0 = 1ull << bit_of(g.q0);
        const std::uint64_t b1 = 1ull << bit_of(g.q1);
        for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(state.size()); ++s) {
            if ((s & b0) || (s & b1)) continue;
            std::array<std::uint64_t, 4> idx = {s, s | b1, s | b0, s | b0 | b1};
            std::array<Complex, 4> amp;
            for (int i = 0; i < 4; ++i) amp[i] = state[idx[i]];
            for (int i = 0; i < 4; ++i) {
                Complex acc = 0;
                for (int j = 0; j < 4; ++j) acc += m(i, j) * amp[j];
                state[idx[i]] = acc;
            }
        }
    }
}

void apply_gate_dense(const Gate& g, MatrixXc& m) {
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        VectorXc v = m.col(col);
        apply_gate_dense(g, v);
        m.col(col) = v;
    }
}

namespace {

// Brings the image of `gen` (recomputed through c) to a single X on
// `target`, touching only unfixed qubits. Assumes the image's support is
// disjoint from fixed qubits (guaranteed by the commutation relations with
// already-fixed generators).
void reduce_to_x(CliffordOp& c, const PauliOperator& gen, int target) {
    const int n = c.n();
    PauliVec v = c.conjugate(gen).vec;
    // Local cleanup: turn every letter into X.
    for (int q = 0; q < n; ++q) {
        const int code = code_of(v, q);
        if (code == 3) c.apply_gate({GateKind::H, q});
        else if (code == 2) c.apply_gate({GateKind::S, q});
    }
    v = c.conjugate(gen).vec;
    assert(v.z == 0 && v.x != 0);
    // Fold all X's into the pivot.
    const int pivot = v.x_bit(target) ? target : std::countr_zero(v.x);
    for (int q = 0; q < n; ++q)
        if (q != pivot && v.x_bit(q)) c.apply_gate({GateKind::CNOT, pivot, q});
    if (pivot != target) {
        c.apply_gate({GateKind::CNOT, pivot, target});
        c.apply_gate({GateKind::CNOT, target, pivot});
        c.apply_gate({GateKind::CNOT, pivot, target});
    }
    assert(c.conjugate(gen).vec == PauliVec::single_x(n, target));
}

}  // namespace

namespace {

// Any v with [v, g] = c_g for the given constraints; the symplectic form is
// nondegenerate, so an independent system always has a solution. Free
// variables are set to zero, making the choice deterministic.
PauliVec solve_symplectic_constraints(int n,
                                      const std::vector<std::pair<PauliVec, int>>& constraints) {
    const int cols = 2 * n;
    // [v, g] = v . (J g) with J swapping the halves; row = bits of J g.
    std::vector<std::uint64_t> rows;
    std::vector<int> rhs;
    for (const auto& [g, c] : constraints) {
        std::uint64_t bits = 0;
        for (int q = 0; q < n; ++q) {
            if (g.z_bit(q)) bits |= 1ull << q;
            if (g.x_bit(q)) bits |= 1ull << (n + q);
        }
        rows.push_back(bits);
        rhs.push_back(c);
    }
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && !((rows[sel] >> col) & 1)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        std::swap(rhs[rank], rhs[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != rank && ((rows[i] >> col) & 1)) {
                rows[i] ^= rows[rank];
                rhs[i] ^= rhs[rank];
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i)
        if (rhs[i]) throw std::logic_error("symplectic constraint system is inconsistent");
    std::uint64_t solution = 0;
    for (std::size_t i = 0; i < rank; ++i)
        if (rhs[i]) solution |= 1ull << pivot_col[i];
    const std::uint64_t mask = (n == 64) ? ~0ull : ((1ull << n) - 1);
    return PauliVec(n, solution & mask, (solution >> n) & mask);
}

}  // namespace

CliffordOp canonicalize_subgroup(int n, const SymplecticBasis& basis) {
    if (!check_symplectic_relations(basis))
        throw std::invalid_argument("canonicalize_subgroup: malformed symplectic basis");
    const int a = basis.a(), b = basis.b();
    if (a + b > n) throw std::invalid_argument("canonicalize_subgroup: basis too large for n");

    // Give every isotropic generator an ambient symplectic partner. With
    // full pairs everywhere, each fixed target qubit has both X and Z
    // pinned, so later generator images (which commute with both) cannot
    // touch it and the sweeps below stay confined to unfixed qubits.
    std::vector<std::pair<PauliVec, PauliVec>> pairs = basis.pairs;  // (x, z)
    {
        std::vector<std::pair<PauliVec, int>> constraints;
        for (const auto& [x, z] : basis.pairs) {
            constraints.emplace_back(x, 0);
            constraints.emplace_back(z, 0);
        }
        for (const auto& z : basis.isotropic) constraints.emplace_back(z, 0);
        for (int j = 0; j < b; ++j) {
            auto local = constraints;
            for (auto& [g, c] : local)
                if (g == basis.isotropic[j]) c = 1;
            const PauliVec partner = solve_symplectic_constraints(n, local);
            pairs.emplace_back(partner, basis.isotropic[j]);
            constraints.emplace_back(partner, 0);
        }
    }

    // Targets: the a genuine pairs on the trailing qubits, the b partnered
    // isotropic generators (whose z lands on Z) just before them.
    CliffordOp c = CliffordOp::identity(n);
    for (int i = 0; i < a + b; ++i) {
        const int q = (i < a) ? n - a + i : n - a - b + (i - a);
        const PauliOperator gx(pairs[i].first), gz(pairs[i].second);
        reduce_to_x(c, gx, q);
        if (c.conjugate(gz).vec != PauliVec::single_z(n, q)) {
            c.apply_gate({GateKind::H, q});
            reduce_to_x(c, gz, q);
            c.apply_gate({GateKind::H, q});
        }
        assert(c.conjugate(gx).vec == PauliVec::single_x(n, q));
        assert(c.conjugate(gz).vec == PauliVec::single_z(n, q));
    }
    return c;
}

BlockReduction clifford_to_block(const Subspace& t_hat) {
    const auto decomposition = symplectic_gram_schmidt(t_hat, t_hat);
    BlockReduction out{canonicalize_subgroup(t_hat.n(), decomposition.t),
                       decomposition.t.a(), decomposition.t.b()};
    return out;
}

CliffordOp random_clifford(int n, Rng& rng, int length_factor) {
    CliffordOp c = CliffordOp::identity(n);
    const int length = std::max(8, length_factor * n * n);
    for (int i = 0; i < length; ++i) {
        const int kind = static_cast<int>(rng.below(4));
        const int q0 = static_cast<int>(rng.below(n));
        switch (kind) {
            case 0: c.apply_gate({GateKind::H, q0}); break;
            case 1: c.apply_gate({GateKind::S, q0}); break;
            default: {
                if (n < 2) {
                    c.apply_gate({GateKind::S, q0});
                    break;
                }
                int q1 = static_cast<int>(rng.below(n - 1));
                if (q1 >= q0) ++q1;
                c.apply_gate({kind == 2 ? GateKind::CNOT : GateKind::CZ, q0, q1});
                break;
            }
        }
    }
    for (int q = 0; q < n; ++q) {
        if (rng.bernoulli(0.5)) c.apply_gate({GateKind::X, q});
        if (rng.bernoulli(0.5)) c.apply_gate({GateKind::Z, q});
    }
    return c;
}

}  // namespace paulitomo

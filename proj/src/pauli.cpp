#include "paulitomo/pauli.hpp"

#include <bit>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace paulitomo {

Complex phase_i(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

int weyl_product_phase(const PauliVec& u, const PauliVec& v) {
    // W_u = i^{u.x . u.z} X^{u.x} Z^{u.z}; commuting Z^{u.z} past X^{v.x}
    // costs (-1)^{u.z . v.x}. Collecting i-powers:
    const int p1 = std::popcount(u.x & u.z);
    const int p2 = std::popcount(v.x & v.z);
    const int p12 = std::popcount((u.x ^ v.x) & (u.z ^ v.z));
    const int q = std::popcount(u.z & v.x);
    return ((p1 + p2 - p12 + 2 * q) % 4 + 4) % 4;
}

PauliOperator PauliOperator::operator*(const PauliOperator& o) const {
    const int k = phase_exp + o.phase_exp + weyl_product_phase(vec, o.vec);
    return PauliOperator(vec + o.vec, k);
}

std::string PauliOperator::str() const {
    static const char* signs[4] = {"+", "+i", "-", "-i"};
    std::string s = signs[phase_exp];
    for (int q = 0; q < vec.n; ++q) s.push_back(vec.letter(q));
    return s;
}

PauliOperator PauliOperator::parse(const std::string& s) {
    int k = 0;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') k = 2;
        ++pos;
    }
    if (pos < s.size() && s[pos] == 'i') {
        k += 1;
        ++pos;
    }
    return PauliOperator(PauliVec::parse(s.substr(pos)), k);
}

MatrixXc weyl_matrix(const PauliOperator& p, int dense_cap) {
    if (p.vec.n > dense_cap) throw std::invalid_argument("weyl_matrix: n exceeds dense cap");
    static const MatrixXc sigma[4] = {
        (MatrixXc(2, 2) << 1, 0, 0, 1).finished(),
        (MatrixXc(2, 2) << 0, 1, 1, 0).finished(),
        (MatrixXc(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
        (MatrixXc(2, 2) << 1, 0, 0, -1).finished(),
    };
    auto code = [&](int q) {
        const int xb = p.vec.x_bit(q) ? 1 : 0;
        const int zb = p.vec.z_bit(q) ? 1 : 0;
        if (xb && zb) return 2;  // Y
        if (xb) return 1;        // X
        if (zb) return 3;        // Z
        return 0;                // I
    };
    // kron with the accumulated factor outermost keeps qubit 0 at the most
    // significant index bit.
    MatrixXc m = MatrixXc::Identity(1, 1);
    for (int q = 0; q < p.vec.n; ++q) {
        const MatrixXc& s = sigma[code(q)];
        MatrixXc next(m.rows() * 2, m.cols() * 2);
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
        m = std::move(next);
    }
    return p.phase() * m;
}

MatrixXc weyl_matrix(const PauliVec& v, int dense_cap) {
    return weyl_matrix(PauliOperator(v), dense_cap);
}

void apply_pauli(const PauliOperator& p, VectorXc& state) {
    const int n = p.vec.n;
    const Eigen::Index dim = state.size();
    // W|s> = i^{x.z} (-1)^{z.s} |s ^ x>, with qubit 0 as the MSB.
    auto to_index_mask = [&](std::uint64_t qubit_mask) {
        std::uint64_t idx = 0;
        for (int q = 0; q < n; ++q)
            if ((qubit_mask >> q) & 1) idx |= 1ull << (n - 1 - q);
        return idx;
    };
    const std::uint64_t xm = to_index_mask(p.vec.x);
    const std::uint64_t zm = to_index_mask(p.vec.z);
    const Complex w_phase = phase_i(p.phase_exp + std::popcount(p.vec.x & p.vec.z));
    VectorXc out(dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        const int sign = std::popcount(static_cast<std::uint64_t>(s) & zm) & 1;
        Complex amp = state[s] * w_phase;
        if (sign) amp = -amp;
        out[static_cast<Eigen::Index>(s ^ xm)] = amp;
    }
    state = std::move(out);
}

Complex PauliExpansion::coefficient(const PauliVec& v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Complex(0, 0) : it->second;
}

std::vector<PauliVec> PauliExpansion::support() const {
    std::vector<PauliVec> out;
    for (const auto& [v, c] : coeffs_)
        if (std::abs(c) > tau_) out.push_back(v);
    return out;
}

Subspace PauliExpansion::support_span() const { return Subspace::span(n_, support()); }

double PauliExpansion::mass_in(const Subspace& s) const {
    double mass = 0;
    for (const auto& [v, c] : coeffs_)
        if (s.contains(v)) mass += std::norm(c);
    return mass;
}

double PauliExpansion::total_mass() const {
    double mass = 0;
    for (const auto& [v, c] : coeffs_) mass += std::norm(c);
    return mass;
}

MatrixXc PauliExpansion::reconstruct() const {
    const Eigen::Index dim = 1ll << n_;
    MatrixXc acc = MatrixXc::Zero(dim, dim);
    for (const auto& [v, c] : coeffs_) acc += c * weyl_matrix(v);
    return acc;
}

std::string PauliExpansion::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    auto terms = nlohmann::json::array();
    for (const auto& v : support()) {
        const Complex c = coefficient(v);
        terms.push_back({{"pauli", v.str()}, {"re", c.real()}, {"im", c.imag()}});
    }
    j["terms"] = terms;
    return j.dump(2);
}

PauliExpansion PauliExpansion::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    Map coeffs;
    for (const auto& term : j.at("terms")) {
        const PauliVec v = PauliVec::parse(term.at("pauli").get<std::string>());
        coeffs[v] = Complex(term.at("re").get<double>(), term.at("im").get<double>());
    }
    return PauliExpansion(n, std::move(coeffs));
}

namespace {

void expand_recurse(const MatrixXc& block, int n, int qubit, PauliVec prefix,
                    PauliExpansion::Map& out, double tau, double scale) {
    if (qubit == n) {
        const Complex alpha = block(0, 0) * scale;
        if (std::abs(alpha) > tau) out.emplace(prefix, alpha);
        return;
    }
    const Eigen::Index h = block.rows() / 2;
    const auto a00 = block.topLeftCorner(h, h);
    const auto a01 = block.topRightCorner(h, h);
    const auto a10 = block.bottomLeftCorner(h, h);
    const auto a11 = block.bottomRightCorner(h, h);
    // Children carry tr(A (P tensor .)) for P = I, X, Y, Z on this qubit.
    expand_recurse(a00 + a11, n, qubit + 1, prefix, out, tau, scale);
    {
        PauliVec p = prefix;
        p.x |= 1ull << qubit;
        expand_recurse(a01 + a10, n, qubit + 1, p, out, tau, scale);
    }
    {
        PauliVec p = prefix;
        p.x |= 1ull << qubit;
        p.z |= 1ull << qubit;
        expand_recurse(Complex(0, 1) * (a01 - a10), n, qubit + 1, p, out, tau, scale);
    }
    {
        PauliVec p = prefix;
        p.z |= 1ull << qubit;
        expand_recurse(a00 - a11, n, qubit + 1, p, out, tau, scale);
    }
}

int qubits_of(const MatrixXc& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("pauli_expand: matrix not square");
    const Eigen::Index dim = a.rows();
    if (dim == 0 || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("pauli_expand: dimension is not a power of two");
    return std::countr_zero(static_cast<std::uint64_t>(dim));
}

}  // namespace

PauliExpansion pauli_expand(const MatrixXc& a, double tau) {
    const int n = qubits_of(a);
    PauliExpansion::Map coeffs;
    expand_recurse(a, n, 0, PauliVec::zero(n), coeffs, tau, 1.0 / static_cast<double>(1ll << n));
    return PauliExpansion(n, std::move(coeffs), tau);
}

PauliExpansion pauli_expand_naive(const MatrixXc& a, double tau) {
    const int n = qubits_of(a);
    const double scale = 1.0 / static_cast<double>(1ll << n);
    PauliExpansion::Map coeffs;
    const std::uint64_t total = 1ull << (2 * n);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        const std::uint64_t mask = (1ull << n) - 1;
        const PauliVec v(n, bits & mask, bits >> n);
        const Complex alpha = (a * weyl_matrix(v)).trace() * scale;
        if (std::abs(alpha) > tau) coeffs.emplace(v, alpha);
    }
    return PauliExpansion(n, std::move(coeffs), tau);
}

Subspace support_span(const MatrixXc& a, double tau) {
    return pauli_expand(a, tau).support_span();
}

MatrixXc pauli_project(const MatrixXc& a, const Subspace& s) {
    const int n = qubits_of(a);
    if (n != s.n()) throw std::invalid_argument("pauli_project: dimension mismatch");
    const auto expansion = pauli_expand(a, 0.0);
    const Eigen::Index dim = a.rows();
    MatrixXc acc = MatrixXc::Zero(dim, dim);
    for (const auto& [v, c] : expansion.coefficients())
        if (s.contains(v)) acc += c * weyl_matrix(v);
    return acc;
}

MatrixXc pauli_project_canonical(const MatrixXc& m, int a, int b) {
    const int n = qubits_of(m);
    if (a + b > n) throw std::invalid_argument("pauli_project_canonical: a + b > n");
    const Eigen::Index lead = 1ll << (n - a - b);
    const Eigen::Index mid = 1ll << b;
    const Eigen::Index bd = 1ll << a;
    const double scale = 1.0 / static_cast<double>(lead);
    // The twirl over W_{a,b}^perp depolarizes the leading register and
    // dephases the middle one: entries survive only when both registers are
    // diagonal, with the leading register averaged.
    MatrixXc out = MatrixXc::Zero(m.rows(), m.cols());
    for (Eigen::Index y = 0; y < mid; ++y) {
        MatrixXc avg = MatrixXc::Zero(bd, bd);
        for (Eigen::Index w = 0; w < lead; ++w) {
            const Eigen::Index base = (w * mid + y) * bd;
            avg += m.block(base, base, bd, bd);
        }
        avg *= scale;
        for (Eigen::Index w = 0; w < lead; ++w) {
            const Eigen::Index base = (w * mid + y) * bd;
            out.block(base, base, bd, bd) = avg;
        }
    }
    return out;
}

MatrixXc pauli_twirl(const MatrixXc& a, const Subspace& s, int max_complement_dim) {
    const int n = qubits_of(a);
    if (n != s.n()) throw std::invalid_argument("pauli_twirl: dimension mismatch");
    const Subspace comp = s.symplectic_complement();
    if (comp.dim() > max_complement_dim)
        throw std::runtime_error("pauli_twirl: complement too large for exact averaging");
    const auto elems = comp.elements(max_complement_dim);
    MatrixXc acc = MatrixXc::Zero(a.rows(), a.cols());
    for (const auto& q : elems) {
        const MatrixXc w = weyl_matrix(q);
        acc += w * a * w.adjoint();
    }
    return acc / static_cast<double>(elems.size());
}

Subspace canonical_subgroup(int n, int a, int b) {
    if (a + b > n) throw std::invalid_argument("canonical_subgroup: a + b > n");
    Subspace s(n);
    for (int i = 0; i < a; ++i) {
        const int q = n - a + i;
        s.insert(PauliVec::single_x(n, q));
        s.insert(PauliVec::single_z(n, q));
    }
    for (int j = 0; j < b; ++j) {
        const int q = n - a - b + j;
        s.insert(PauliVec::single_z(n, q));
    }
    return s;
}

}  // namespace paulitomo

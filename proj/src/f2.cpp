#include "paulitomo/f2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace paulitomo {

namespace {

// Column order for row reduction: x-bit of qubit q has index q, z-bit has
// index n + q. Lower index = more significant pivot.
int leading_column(const PauliVec& v) {
    if (v.x != 0) return std::countr_zero(v.x);
    if (v.z != 0) return v.n + std::countr_zero(v.z);
    return 2 * v.n;
}

bool column_bit(const PauliVec& v, int col) {
    if (col < v.n) return (v.x >> col) & 1;
    return (v.z >> (col - v.n)) & 1;
}

}  // namespace

PauliVec::PauliVec(int n_, std::uint64_t x_, std::uint64_t z_) : n(n_), x(x_), z(z_) {
    if (n < 0 || n > 64) throw std::invalid_argument("PauliVec: n out of range");
    if (n < 64) {
        const std::uint64_t mask = (n == 0) ? 0 : ((1ull << n) - 1);
        if ((x & ~mask) || (z & ~mask))
            throw std::invalid_argument("PauliVec: bits beyond qubit count");
    }
}

PauliVec PauliVec::single_x(int n, int qubit) { return PauliVec(n, 1ull << qubit, 0); }
PauliVec PauliVec::single_z(int n, int qubit) { return PauliVec(n, 0, 1ull << qubit); }
PauliVec PauliVec::single_y(int n, int qubit) {
    return PauliVec(n, 1ull << qubit, 1ull << qubit);
}

int PauliVec::weight() const { return std::popcount(x | z); }

PauliVec PauliVec::operator+(const PauliVec& o) const {
    if (n != o.n) throw std::invalid_argument("PauliVec: dimension mismatch");
    return PauliVec(n, x ^ o.x, z ^ o.z);
}

char PauliVec::letter(int qubit) const {
    const bool xb = x_bit(qubit), zb = z_bit(qubit);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
}

std::string PauliVec::str() const {
    std::string s = "+";
    for (int q = 0; q < n; ++q) s.push_back(letter(q));
    return s;
}

PauliVec PauliVec::parse(const std::string& s) {
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    if (pos < s.size() && s[pos] == 'i') ++pos;
    PauliVec v(static_cast<int>(s.size() - pos), 0, 0);
    for (int q = 0; pos < s.size(); ++pos, ++q) {
        switch (s[pos]) {
            case 'I': break;
            case 'X': v.x |= 1ull << q; break;
            case 'Y': v.x |= 1ull << q; v.z |= 1ull << q; break;
            case 'Z': v.z |= 1ull << q; break;
            default: throw std::invalid_argument("PauliVec: bad letter in " + s);
        }
    }
    return v;
}

int symplectic_product(const PauliVec& a, const PauliVec& b) {
    if (a.n != b.n) throw std::invalid_argument("symplectic_product: dimension mismatch");
    return (std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1;
}

Subspace Subspace::span(int n, const std::vector<PauliVec>& vectors) {
    Subspace s(n);
    for (const auto& v : vectors) s.insert(v);
    return s;
}

Subspace Subspace::full(int n) {
    Subspace s(n);
    for (int q = 0; q < n; ++q) {
        s.insert(PauliVec::single_x(n, q));
        s.insert(PauliVec::single_z(n, q));
    }
    return s;
}

void Subspace::reduce_vector(PauliVec& v) const {
    for (const auto& row : basis_) {
        const int col = leading_column(row);
        if (column_bit(v, col)) v = v + row;
    }
}

bool Subspace::contains(const PauliVec& v) const {
    if (v.n != n_) throw std::invalid_argument("Subspace::contains: dimension mismatch");
    PauliVec r = v;
    reduce_vector(r);
    return r.is_zero();
}

bool Subspace::contains_subspace(const Subspace& other) const {
    for (const auto& v : other.basis_)
        if (!contains(v)) return false;
    return true;
}

bool Subspace::insert(const PauliVec& v) {
    if (v.n != n_) throw std::invalid_argument("Subspace::insert: dimension mismatch");
    PauliVec r = v;
    reduce_vector(r);
    if (r.is_zero()) return false;
    // Back-eliminate so existing rows lose the new pivot column.
    const int col = leading_column(r);
    for (auto& row : basis_)
        if (column_bit(row, col)) row = row + r;
    basis_.push_back(r);
    std::sort(basis_.begin(), basis_.end(), [](const PauliVec& a, const PauliVec& b) {
        return leading_column(a) < leading_column(b);
    });
    return true;
}

Subspace Subspace::symplectic_complement() const {
    // v is in the complement iff for every basis row r, [v, r] = 0. The
    // constraint [v, r] = 0 is linear: v . J r = 0 where J swaps the halves.
    // Build the constraint matrix (rows = J r), then compute its kernel.
    const int m = dim();
    const int cols = 2 * n_;
    std::vector<std::uint64_t> constraint(m);  // bit c of constraint[i]
    auto bit_of = [&](const PauliVec& v, int col) { return column_bit(v, col); };
    for (int i = 0; i < m; ++i) {
        PauliVec jr(n_, basis_[i].z, basis_[i].x);  // J applied to row i
        std::uint64_t bits = 0;
        for (int c = 0; c < cols; ++c)
            if (bit_of(jr, c)) bits |= 1ull << c;
        constraint[i] = bits;
    }
    // Gaussian elimination on the constraint rows; track pivot columns.
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int c = 0; c < cols && rank < constraint.size(); ++c) {
        std::size_t sel = rank;
        while (sel < constraint.size() && !((constraint[sel] >> c) & 1)) ++sel;
        if (sel == constraint.size()) continue;
        std::swap(constraint[rank], constraint[sel]);
        for (std::size_t i = 0; i < constraint.size(); ++i)
            if (i != rank && ((constraint[i] >> c) & 1)) constraint[i] ^= constraint[rank];
        pivot_col.push_back(c);
        ++rank;
    }
    // Free columns parameterize the kernel: one basis vector per free column.
    Subspace result(n_);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::uint64_t sol = 1ull << free_c;
        for (std::size_t i = 0; i < rank; ++i)
            if ((constraint[i] >> free_c) & 1) sol |= 1ull << pivot_col[i];
        const std::uint64_t mask = (n_ == 64) ? ~0ull : ((1ull << n_) - 1);
        result.insert(PauliVec(n_, sol & mask, (sol >> n_) & mask));
    }
    return result;
}

std::vector<PauliVec> Subspace::elements(int max_dim) const {
    if (dim() > max_dim) throw std::runtime_error("Subspace::elements: dimension too large");
    const std::uint64_t count = 1ull << dim();
    std::vector<PauliVec> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        PauliVec v = PauliVec::zero(n_);
        for (int j = 0; j < dim(); ++j)
            if ((idx >> j) & 1) v = v + basis_[j];
        out.push_back(v);
    }
    return out;
}

std::string Subspace::str() const {
    std::ostringstream out;
    for (const auto& v : basis_) out << v.str() << "\n";
    return out.str();
}

Subspace Subspace::parse(int n, const std::string& text) {
    Subspace s(n);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        s.insert(PauliVec::parse(line));
    }
    return s;
}

std::vector<PauliVec> NestedSymplecticBasis::all_generators() const {
    std::vector<PauliVec> out;
    for (const auto& [x, z] : t.pairs) {
        out.push_back(x);
        out.push_back(z);
    }
    for (const auto& v : t.isotropic) out.push_back(v);
    for (const auto& v : partner_x) out.push_back(v);
    for (const auto& [x, z] : s_extra.pairs) {
        out.push_back(x);
        out.push_back(z);
    }
    for (const auto& v : s_extra.isotropic) out.push_back(v);
    return out;
}

SymplecticBasis NestedSymplecticBasis::full_basis() const {
    SymplecticBasis full;
    full.pairs = t.pairs;
    for (int i = 0; i < t.ell; ++i)
        full.pairs.emplace_back(partner_x[i], t.isotropic[i]);
    for (const auto& p : s_extra.pairs) full.pairs.push_back(p);
    for (std::size_t i = t.ell; i < t.isotropic.size(); ++i)
        full.isotropic.push_back(t.isotropic[i]);
    for (const auto& v : s_extra.isotropic) full.isotropic.push_back(v);
    return full;
}

NestedSymplecticBasis symplectic_gram_schmidt(const Subspace& t, const Subspace& s) {
    if (t.n() != s.n()) throw std::invalid_argument("symplectic_gram_schmidt: dimension mismatch");
    if (!s.contains_subspace(t))
        throw std::invalid_argument("symplectic_gram_schmidt: T is not contained in S");

    // Working generator lists. G starts as T's basis; H as S-generators
    // independent of T (so T-generators never get mixed into H's origin).
    std::vector<PauliVec> g(t.basis());
    std::vector<PauliVec> h;
    {
        Subspace grow = t;
        for (const auto& v : s.basis())
            if (grow.insert(v)) h.push_back(v);
    }

    NestedSymplecticBasis out;
    std::vector<PauliVec> a_list;  // commuting leftovers of phase one

    auto pop_front = [](std::vector<PauliVec>& vec) {
        PauliVec v = vec.front();
        vec.erase(vec.begin());
        return v;
    };

    // Phase one: pair generators within T.
    while (!g.empty()) {
        PauliVec ti = pop_front(g);
        std::size_t j = 0;
        while (j < g.size() && symplectic_product(ti, g[j]) == 0) ++j;
        if (j < g.size()) {
            PauliVec xl = g[j], zl = ti;
            g.erase(g.begin() + j);
            for (auto& tk : g) {
                if (symplectic_product(xl, tk)) tk = tk + zl;
                if (symplectic_product(zl, tk)) tk = tk + xl;
            }
            for (auto& sk : h) {
                if (symplectic_product(xl, sk)) sk = sk + zl;
                if (symplectic_product(zl, sk)) sk = sk + xl;
            }
            out.t.pairs.emplace_back(xl, zl);
        } else {
            a_list.push_back(ti);
        }
    }

    // Phase two: pair leftover isotropic T-generators against S-generators.
    std::vector<PauliVec> unpaired_t;
    while (!a_list.empty()) {
        PauliVec ti = pop_front(a_list);
        std::size_t j = 0;
        while (j < h.size() && symplectic_product(ti, h[j]) == 0) ++j;
        if (j < h.size()) {
            PauliVec xl = h[j], zl = ti;
            h.erase(h.begin() + j);
            for (auto& tk : a_list)
                if (symplectic_product(xl, tk)) tk = tk + zl;
            for (auto& sk : h) {
                if (symplectic_product(xl, sk)) sk = sk + zl;
                if (symplectic_product(zl, sk)) sk = sk + xl;
            }
            out.t.isotropic.push_back(zl);
            out.partner_x.push_back(xl);
            ++out.t.ell;
        } else {
            unpaired_t.push_back(ti);
        }
    }
    for (const auto& v : unpaired_t) out.t.isotropic.push_back(v);

    // Phase three: pair the remaining S-generators among themselves.
    std::vector<PauliVec> s_isotropic;
    while (!h.empty()) {
        PauliVec si = pop_front(h);
        std::size_t j = 0;
        while (j < h.size() && symplectic_product(si, h[j]) == 0) ++j;
        if (j < h.size()) {
            PauliVec xl = h[j], zl = si;
            h.erase(h.begin() + j);
            for (auto& sk : h) {
                if (symplectic_product(xl, sk)) sk = sk + zl;
                if (symplectic_product(zl, sk)) sk = sk + xl;
            }
            out.s_extra.pairs.emplace_back(xl, zl);
        } else {
            s_isotropic.push_back(si);
        }
    }
    out.s_extra.isotropic = std::move(s_isotropic);
    return out;
}

bool check_symplectic_relations(const SymplecticBasis& basis) {
    const auto& pairs = basis.pairs;
    const auto& iso = basis.isotropic;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            const int want = (i == j) ? 1 : 0;
            if (symplectic_product(pairs[i].first, pairs[j].second) != want) return false;
            if (symplectic_product(pairs[i].first, pairs[j].first) != 0) return false;
            if (symplectic_product(pairs[i].second, pairs[j].second) != 0) return false;
        }
        for (const auto& v : iso) {
            if (symplectic_product(pairs[i].first, v) != 0) return false;
            if (symplectic_product(pairs[i].second, v) != 0) return false;
        }
    }
    for (std::size_t i = 0; i < iso.size(); ++i)
        for (std::size_t j = i + 1; j < iso.size(); ++j)
            if (symplectic_product(iso[i], iso[j]) != 0) return false;
    return true;
}

}  // namespace paulitomo

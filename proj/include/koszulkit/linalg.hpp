#pragma once

// Sparse exact linear algebra over Q: vectors, column-major matrices, and
// subspaces kept in fully reduced echelon form.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace koszulkit {

struct Entry {
    int index;
    Rational value;
    bool operator==(const Entry& o) const { return index == o.index && value == o.value; }
};

// Entries sorted by index, no explicit zeros.
using SparseVec = std::vector<Entry>;

inline const Entry* find_entry(const SparseVec& v, int index) {
    auto it = std::lower_bound(v.begin(), v.end(), index,
                               [](const Entry& e, int i) { return e.index < i; });
    return it != v.end() && it->index == index ? &*it : nullptr;
}

inline Rational get(const SparseVec& v, int index) {
    const Entry* e = find_entry(v, index);
    return e ? e->value : Rational(0);
}

// y + a*x
inline SparseVec axpy(const SparseVec& y, const Rational& a, const SparseVec& x) {
    if (a == 0 || x.empty()) return y;
    SparseVec out;
    out.reserve(y.size() + x.size());
    auto i = y.begin();
    auto j = x.begin();
    while (i != y.end() || j != x.end()) {
        if (j == x.end() || (i != y.end() && i->index < j->index)) {
            out.push_back(*i++);
        } else if (i == y.end() || j->index < i->index) {
            out.push_back({j->index, a * j->value});
            ++j;
        } else {
            Rational s = i->value + a * j->value;
            if (s != 0) out.push_back({i->index, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

inline SparseVec scaled(SparseVec v, const Rational& a) {
    if (a == 0) return {};
    for (auto& e : v) e.value *= a;
    return v;
}

inline SparseVec unit_vector(int index) { return {{index, Rational(1)}}; }

// Sum of (index, value) pairs in arbitrary order with repetitions.
inline SparseVec collect(std::vector<Entry> raw) {
    std::stable_sort(raw.begin(), raw.end(),
                     [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseVec out;
    for (auto& e : raw) {
        if (!out.empty() && out.back().index == e.index)
            out.back().value += e.value;
        else
            out.push_back(std::move(e));
    }
    std::erase_if(out, [](const Entry& e) { return e.value == 0; });
    return out;
}

inline Rational dot(const SparseVec& a, const SparseVec& b) {
    Rational s;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (i->index < j->index)
            ++i;
        else if (j->index < i->index)
            ++j;
        else
            s += (i++)->value * (j++)->value;
    }
    return s;
}

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(cols) {}

    static SparseMatrix identity(int n) {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.columns_[i] = unit_vector(i);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const SparseVec& column(int j) const { return columns_[j]; }
    void set_column(int j, SparseVec v) {
        assert(v.empty() || v.back().index < rows_);
        columns_[j] = std::move(v);
    }
    void add(int i, int j, const Rational& c) { columns_[j] = axpy(columns_[j], c, unit_vector(i)); }
    Rational at(int i, int j) const { return get(columns_[j], i); }

    bool is_zero() const {
        return std::all_of(columns_.begin(), columns_.end(),
                           [](const SparseVec& c) { return c.empty(); });
    }
    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (auto& c : columns_) n += c.size();
        return n;
    }

    SparseVec apply(const SparseVec& x) const {
        SparseVec y;
        for (auto& e : x) y = axpy(y, e.value, columns_[e.index]);
        return y;
    }

    // row vector r times this matrix
    SparseVec apply_left(const SparseVec& r) const {
        SparseVec y;
        if (r.empty()) return y;
        const int lo = r.front().index, hi = r.back().index;
        for (int j = 0; j < cols_; ++j) {
            const SparseVec& c = columns_[j];
            if (c.empty() || c.back().index < lo || c.front().index > hi) continue;
            Rational s = dot(r, c);
            if (s != 0) y.push_back({j, std::move(s)});
        }
        return y;
    }

    SparseMatrix transpose() const {
        std::vector<std::vector<Entry>> rows(rows_);
        for (int j = 0; j < cols_; ++j)
            for (auto& e : columns_[j]) rows[e.index].push_back({j, e.value});
        SparseMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i) t.columns_[i] = std::move(rows[i]);
        return t;
    }

    bool operator==(const SparseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && columns_ == o.columns_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<SparseVec> columns_;
};

// a * b
inline SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix shape mismatch in product");
    SparseMatrix c(a.rows(), b.cols());
    for (int j = 0; j < b.cols(); ++j) c.set_column(j, a.apply(b.column(j)));
    return c;
}

inline SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, const Rational& scale = 1) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix shape mismatch in sum");
    SparseMatrix c(a.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) c.set_column(j, axpy(a.column(j), scale, b.column(j)));
    return c;
}

// Stack matrices with equal column counts on top of each other.
inline SparseMatrix vstack(const std::vector<const SparseMatrix*>& parts, int cols) {
    int rows = 0;
    for (auto* p : parts) rows += p->rows();
    SparseMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j) {
        SparseVec col;
        int offset = 0;
        for (auto* p : parts) {
            for (auto& e : p->column(j)) col.push_back({e.index + offset, e.value});
            offset += p->rows();
        }
        m.set_column(j, std::move(col));
    }
    return m;
}

// Subspace of Q^ambient with a fully reduced echelon basis: every basis vector
// has a pivot entry equal to 1 and all other basis vectors vanish there.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(int ambient) : ambient_(ambient), pivot_of_(ambient, -1) {}

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<SparseVec>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    bool is_pivot(int i) const { return pivot_of_[i] >= 0; }

    SparseVec reduce(const SparseVec& v) const {
        SparseVec r = v;
        for (auto& e : v) {
            int b = pivot_of_[e.index];
            if (b >= 0) r = axpy(r, -e.value, basis_[b]);
        }
        return r;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    // Coordinates of v (assumed inside the subspace) w.r.t. the basis.
    SparseVec coordinates(const SparseVec& v) const {
        std::vector<Entry> raw;
        for (auto& e : v) {
            int b = pivot_of_[e.index];
            if (b >= 0) raw.push_back({b, e.value});
        }
        return collect(std::move(raw));
    }

    bool insert(const SparseVec& v) {
        SparseVec r = reduce(v);
        if (r.empty()) return false;
        int p = r.front().index;
        Rational inv = 1 / r.front().value;
        r = scaled(std::move(r), inv);
        for (auto& b : basis_) {
            const Entry* e = find_entry(b, p);
            if (!e) continue;
            Rational c = -e->value;
            b = axpy(b, c, r);
        }
        pivot_of_[p] = dim();
        pivots_.push_back(p);
        basis_.push_back(std::move(r));
        return true;
    }

    // Non-pivot indices in increasing order: a basis of the quotient Q^ambient / this.
    std::vector<int> complement() const {
        std::vector<int> out;
        for (int i = 0; i < ambient_; ++i)
            if (pivot_of_[i] < 0) out.push_back(i);
        return out;
    }

    // Build from vectors already in fully reduced form with the given pivots.
    static Subspace from_reduced(int ambient, std::vector<SparseVec> basis, std::vector<int> pivots) {
        Subspace s(ambient);
        for (std::size_t i = 0; i < pivots.size(); ++i) s.pivot_of_[pivots[i]] = static_cast<int>(i);
        s.basis_ = std::move(basis);
        s.pivots_ = std::move(pivots);
        return s;
    }

    SparseMatrix basis_matrix() const {
        SparseMatrix m(ambient_, dim());
        for (int j = 0; j < dim(); ++j) m.set_column(j, basis_[j]);
        return m;
    }

private:
    int ambient_ = 0;
    std::vector<SparseVec> basis_;
    std::vector<int> pivots_;
    std::vector<int> pivot_of_;
};

inline Subspace column_space(const SparseMatrix& a) {
    Subspace s(a.rows());
    for (int j = 0; j < a.cols(); ++j) s.insert(a.column(j));
    return s;
}

inline int rank(const SparseMatrix& a) { return column_space(a).dim(); }

// Rank over Z/p for p = 2^61 - 1; never exceeds the rank over Q. nullopt when
// an entry's denominator vanishes mod p.
inline std::optional<int> rank_mod_p(const SparseMatrix& a) {
    using u64 = std::uint64_t;
    constexpr u64 P = (u64(1) << 61) - 1;
    auto mul = [](u64 x, u64 y) {
        unsigned __int128 z = static_cast<unsigned __int128>(x) * y;
        u64 r = static_cast<u64>(z & P) + static_cast<u64>(z >> 61);
        return r >= P ? r - P : r;
    };
    auto power = [&](u64 b, u64 e) {
        u64 r = 1;
        for (; e; e >>= 1, b = mul(b, b))
            if (e & 1) r = mul(r, b);
        return r;
    };
    static const Integer Pz(std::to_string(P));
    auto to_field = [&](const Rational& q) -> std::optional<u64> {
        Integer n, d;
        mpz_fdiv_r(n.get_mpz_t(), q.get_num_mpz_t(), Pz.get_mpz_t());
        mpz_fdiv_r(d.get_mpz_t(), q.get_den_mpz_t(), Pz.get_mpz_t());
        if (d == 0) return std::nullopt;
        return mul(mpz_get_ui(n.get_mpz_t()), power(mpz_get_ui(d.get_mpz_t()), P - 2));
    };
    using Vec = std::vector<std::pair<int, u64>>;
    std::vector<Vec> pivot(a.rows());
    std::vector<char> has(a.rows(), 0);
    int r = 0;
    for (int j = 0; j < a.cols(); ++j) {
        Vec v;
        for (auto& e : a.column(j)) {
            auto x = to_field(e.value);
            if (!x) return std::nullopt;
            if (*x) v.push_back({e.index, *x});
        }
        while (!v.empty() && has[v.front().first]) {
            const Vec& w = pivot[v.front().first];
            const u64 c = P - v.front().second;  // w is monic
            Vec out;
            out.reserve(v.size() + w.size());
            auto i = v.begin();
            auto k = w.begin();
            while (i != v.end() || k != w.end()) {
                if (k == w.end() || (i != v.end() && i->first < k->first)) {
                    out.push_back(*i++);
                } else if (i == v.end() || k->first < i->first) {
                    out.push_back({k->first, mul(c, k->second)});
                    ++k;
                } else {
                    u64 s = i->second + mul(c, k->second);
                    if (s >= P) s -= P;
                    if (s) out.push_back({i->first, s});
                    ++i;
                    ++k;
                }
            }
            v = std::move(out);
        }
        if (v.empty()) continue;
        const u64 inv = power(v.front().second, P - 2);
        for (auto& e : v) e.second = mul(e.second, inv);
        has[v.front().first] = 1;
        pivot[v.front().first] = std::move(v);
        ++r;
    }
    return r;
}

// Null space of a, returned with pivots at the free columns of the row echelon form.
inline Subspace null_space(const SparseMatrix& a) {
    const int n = a.cols();
    Subspace rows = column_space(a.transpose());
    std::vector<int> free = rows.complement();
    std::vector<int> slot(n, -1);
    for (std::size_t k = 0; k < free.size(); ++k) slot[free[k]] = static_cast<int>(k);
    std::vector<std::vector<Entry>> raw(free.size());
    for (std::size_t k = 0; k < free.size(); ++k) raw[k].push_back({free[k], Rational(1)});
    for (int b = 0; b < rows.dim(); ++b) {
        int p = rows.pivots()[b];
        for (auto& e : rows.basis()[b]) {
            if (e.index == p) continue;
            raw[slot[e.index]].push_back({p, -e.value});
        }
    }
    std::vector<SparseVec> basis;
    basis.reserve(free.size());
    for (auto& r : raw) basis.push_back(collect(std::move(r)));
    return Subspace::from_reduced(n, std::move(basis), std::move(free));
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    // x in a ∩ b  <=>  x = A u = B w; solve [A | -B] (u, w) = 0
    const int n = a.ambient();
    SparseMatrix m(n, a.dim() + b.dim());
    for (int j = 0; j < a.dim(); ++j) m.set_column(j, a.basis()[j]);
    for (int j = 0; j < b.dim(); ++j) m.set_column(a.dim() + j, scaled(b.basis()[j], -1));
    Subspace ker = null_space(m);
    Subspace out(n);
    for (auto& k : ker.basis()) {
        SparseVec x;
        for (auto& e : k)
            if (e.index < a.dim()) x = axpy(x, e.value, a.basis()[e.index]);
        out.insert(x);
    }
    return out;
}

}  // namespace koszulkit

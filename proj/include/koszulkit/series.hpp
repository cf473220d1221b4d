#pragma once

// Exact rational generating functions: integer polynomials, canonical
// rational series, resolvents of the arrow graphs, and closed forms for the
// Hilbert series of algebras and modules and for Poincare series.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "resolution.hpp"

namespace koszulkit {

// ---------------------------------------------------------------------------
// Integer polynomials, coefficients by increasing degree, no trailing zeros

class Poly {
public:
    Poly() = default;
    Poly(Integer c) {
        if (c != 0) c_.push_back(std::move(c));
    }
    Poly(long c) : Poly(Integer(c)) {}
    explicit Poly(std::vector<Integer> c) : c_(std::move(c)) { trim(); }
    static Poly monomial(Integer c, int k) {
        std::vector<Integer> v(k + 1, 0);
        v[k] = std::move(c);
        return Poly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Integer coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Integer(0); }
    const std::vector<Integer>& coeffs() const { return c_; }
    int low_degree() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (c_[k] != 0) return static_cast<int>(k);
        return 0;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    // t^k * p, k >= 0
    Poly times_t(int k) const {
        if (is_zero()) return {};
        std::vector<Integer> c(k, 0);
        c.insert(c.end(), c_.begin(), c_.end());
        return Poly(std::move(c));
    }
    // p / t^k, requires the low k coefficients to vanish
    Poly divide_t(int k) const {
        if (k == 0 || is_zero()) return *this;
        return Poly(std::vector<Integer>(c_.begin() + k, c_.end()));
    }
    // p(-t)
    Poly negate_variable() const {
        Poly r = *this;
        for (std::size_t k = 1; k < r.c_.size(); k += 2) r.c_[k] = -r.c_[k];
        return r;
    }
    Integer content() const {
        Integer g = 0;
        for (auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        return g;
    }
    Poly divide_scalar(const Integer& g) const {
        Poly r = *this;
        for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        return r;
    }

    std::string str(char var) const {
        if (is_zero()) return "0";
        std::string s;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            Integer mag = abs(c_[k]);
            s += first ? (c_[k] < 0 ? "-" : "") : (c_[k] < 0 ? " - " : " + ");
            first = false;
            if (k == 0) {
                s += mag.get_str();
                continue;
            }
            if (mag != 1) s += mag.get_str() + "*";
            s += var;
            if (k > 1) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Integer> c_;
};

// Exact quotient a / b of integer polynomials (b must divide a over Z).
inline Poly divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    if (a.is_zero()) return {};
    std::vector<Integer> r = a.coeffs();
    const int db = b.degree();
    const Integer& lead = b.coeffs().back();
    std::vector<Integer> q(std::max(0, a.degree() - db + 1), 0);
    for (int k = a.degree() - db; k >= 0; --k) {
        const Integer& top = r[k + db];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) throw Error("inexact polynomial division");
        Integer c;
        mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        for (int j = 0; j <= db; ++j) r[k + j] -= c * b.coeffs()[j];
        q[k] = c;
    }
    for (auto& x : r)
        if (x != 0) throw Error("inexact polynomial division");
    return Poly(std::move(q));
}

// Primitive gcd with positive leading coefficient (Euclid over Q).
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    auto to_q = [](const Poly& p) {
        std::vector<Rational> v;
        for (auto& x : p.coeffs()) v.emplace_back(x);
        return v;
    };
    auto trim = [](std::vector<Rational>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    std::vector<Rational> x = to_q(a), y = to_q(b);
    while (!y.empty()) {
        std::vector<Rational> r = x;
        while (r.size() >= y.size() && !r.empty()) {
            Rational c = r.back() / y.back();
            const std::size_t off = r.size() - y.size();
            for (std::size_t j = 0; j < y.size(); ++j) r[off + j] -= c * y[j];
            trim(r);
        }
        x = std::move(y);
        y = std::move(r);
    }
    if (x.empty()) return {};
    Integer l = 1;
    for (auto& q : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> c;
    for (auto& q : x) {
        Rational s = q * l;
        c.push_back(s.get_num());
    }
    Poly g(std::move(c));
    g = g.divide_scalar(g.content());
    if (g.coeffs().back() < 0) g = -g;
    return g;
}

// ---------------------------------------------------------------------------
// Rational series

// Grading side: series in t (degrees going up) or in u = 1/t (degrees going down).
enum class Side { t, u };

inline char variable(Side s) { return s == Side::t ? 't' : 'u'; }

// var^shift * num / den in canonical form: gcd(num, den) = 1, num(0) != 0
// unless num = 0, den(0) > 0, coefficients jointly primitive.
class RationalSeries {
public:
    RationalSeries() : den_(1) {}
    RationalSeries(Poly num, Poly den, int shift = 0, Side side = Side::t)
        : num_(std::move(num)), den_(std::move(den)), shift_(shift), side_(side) {
        canonicalize();
    }
    static RationalSeries polynomial(Poly p, Side side = Side::t) { return RationalSeries(std::move(p), Poly(1), 0, side); }

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }
    int shift() const { return shift_; }
    Side side() const { return side_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RationalSeries shifted(int k) const {
        RationalSeries r = *this;
        if (!r.is_zero()) r.shift_ += k;
        return r;
    }

    friend RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.side_ != b.side_) throw Error("adding series on different grading sides");
        const int s = std::min(a.shift_, b.shift_);
        Poly n = a.num_.times_t(a.shift_ - s) * b.den_ + b.num_.times_t(b.shift_ - s) * a.den_;
        return RationalSeries(std::move(n), a.den_ * b.den_, s, a.side_);
    }
    friend RationalSeries operator-(const RationalSeries& a) {
        RationalSeries r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalSeries operator-(const RationalSeries& a, const RationalSeries& b) { return a + (-b); }
    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
        if (a.is_zero() || b.is_zero()) return RationalSeries(Poly(), Poly(1), 0, a.side_);
        if (a.side_ != b.side_) throw Error("multiplying series on different grading sides");
        return RationalSeries(a.num_ * b.num_, a.den_ * b.den_, a.shift_ + b.shift_, a.side_);
    }
    bool operator==(const RationalSeries& o) const {
        if (is_zero() && o.is_zero()) return true;
        return side_ == o.side_ && shift_ == o.shift_ && num_ == o.num_ && den_ == o.den_;
    }

    // f(-var)
    RationalSeries negate_variable() const {
        RationalSeries r(num_.negate_variable(), den_.negate_variable(), shift_, side_);
        if (shift_ % 2 != 0) r.num_ = -r.num_;
        return r;
    }

    // Coefficients of var^k for lo <= k <= hi.
    std::vector<Integer> expand_range(int lo, int hi) const {
        std::vector<Integer> out;
        if (hi < lo) return out;
        const int len = hi - shift_ + 1;
        std::vector<Rational> c(std::max(len, 0), 0);
        const Rational d0(den_.coeff(0));
        for (int k = 0; k < len; ++k) {
            Rational s(num_.coeff(k));
            for (int j = 1; j <= std::min(k, den_.degree()); ++j) s -= Rational(den_.coeff(j)) * c[k - j];
            c[k] = s / d0;
        }
        for (int k = lo; k <= hi; ++k) {
            if (k < shift_) {
                out.emplace_back(0);
                continue;
            }
            const Rational& q = c[k - shift_];
            if (q.get_den() != 1) throw Error("series has non-integer coefficients");
            out.push_back(q.get_num());
        }
        return out;
    }
    // Coefficients of var^0 .. var^D.
    std::vector<Integer> expand(int D) const { return expand_range(0, D); }
    Integer coefficient(int k) const { return expand_range(k, k).front(); }

    std::string str() const {
        const char v = variable(side_);
        if (is_zero()) return "(0)/(1)";
        std::string prefix;
        Poly n = num_;
        if (shift_ >= 0)
            n = n.times_t(shift_);
        else
            prefix = std::string(1, v) + "^" + std::to_string(shift_) + "*";
        return prefix + "(" + n.str(v) + ")/(" + den_.str(v) + ")";
    }

private:
    void canonicalize() {
        if (den_.is_zero()) throw Error("series with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(1);
            shift_ = 0;
            return;
        }
        Poly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divide_exact(num_, g);
            den_ = divide_exact(den_, g);
        }
        const int dl = den_.low_degree();
        if (dl > 0) {
            den_ = den_.divide_t(dl);
            shift_ -= dl;
        }
        const int nl = num_.low_degree();
        if (nl > 0) {
            num_ = num_.divide_t(nl);
            shift_ += nl;
        }
        Integer c = num_.content();
        mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), den_.content().get_mpz_t());
        num_ = num_.divide_scalar(c);
        den_ = den_.divide_scalar(c);
        if (den_.coeff(0) < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    Poly num_;
    Poly den_;
    int shift_ = 0;
    Side side_ = Side::t;
};

// ---------------------------------------------------------------------------
// Polynomial matrices and resolvents

using PolyMatrix = std::vector<std::vector<Poly>>;

// Fraction-free (Bareiss) determinant with row pivoting.
inline Poly determinant(PolyMatrix m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return Poly(1);
    int sign = 1;
    Poly prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return {};
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m[i][j] = divide_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// I - t*G for a 0/1 graph on arrows.
inline PolyMatrix one_minus_t(const std::vector<std::vector<char>>& g) {
    const int n = static_cast<int>(g.size());
    PolyMatrix m(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Poly(i == j ? 1 : 0) - (g[i][j] ? Poly::monomial(1, 1) : Poly());
    return m;
}

// Solution of M x = b by Cramer's rule: numerators det(M_i) over the common det(M).
struct CramerSolution {
    Poly det;
    std::vector<Poly> numerators;
};

inline CramerSolution cramer(const PolyMatrix& m, const std::vector<Poly>& b) {
    CramerSolution s;
    s.det = determinant(m);
    for (std::size_t i = 0; i < m.size(); ++i) {
        PolyMatrix mi = m;
        for (std::size_t r = 0; r < m.size(); ++r) mi[r][i] = b[r];
        s.numerators.push_back(determinant(std::move(mi)));
    }
    return s;
}

using VertexMatrixSeries = std::vector<std::vector<RationalSeries>>;

// H(x, y) = delta_xy + sum over n >= 1 of (number of nonzero words x -> y of length n) var^n.
inline VertexMatrixSeries hilbert_algebra_closed(const MonomialAlgebra& A, Side side = Side::t) {
    const int nv = A.num_vertices(), na = A.num_arrows();
    PolyMatrix M = one_minus_t(A.allowed_graph());
    VertexMatrixSeries H(nv, std::vector<RationalSeries>(nv));
    for (int y = 0; y < nv; ++y) {
        std::vector<Poly> b(na);
        for (int a = 0; a < na; ++a) b[a] = Poly(A.target(a) == y ? 1 : 0);
        CramerSolution s = cramer(M, b);
        for (int x = 0; x < nv; ++x) {
            Poly num = x == y ? s.det : Poly();
            for (int a : A.out_arrows(x)) num = num + s.numerators[a].times_t(1);
            H[x][y] = RationalSeries(num, s.det, 0, side);
        }
    }
    return H;
}

// Words starting with a, by target vertex: t * [(I - tA)^{-1} T]_{a, y}.
inline std::vector<RationalSeries> hilbert_arrow_ideal(const MonomialAlgebra& A, int a) {
    const int nv = A.num_vertices(), na = A.num_arrows();
    PolyMatrix M = one_minus_t(A.allowed_graph());
    std::vector<RationalSeries> out;
    for (int y = 0; y < nv; ++y) {
        std::vector<Poly> b(na);
        for (int c = 0; c < na; ++c) b[c] = Poly(A.target(c) == y ? 1 : 0);
        CramerSolution s = cramer(M, b);
        out.emplace_back(s.numerators[a].times_t(1), s.det, 0, Side::t);
    }
    return out;
}

// Words ending with a, by source vertex, in u = 1/t: u * [S (I - uA)^{-1}]_{y, a}.
inline std::vector<RationalSeries> hilbert_arrow_coideal(const MonomialAlgebra& A, int a) {
    const int nv = A.num_vertices(), na = A.num_arrows();
    PolyMatrix M = one_minus_t(A.allowed_graph());
    std::vector<Poly> e(na);
    e[a] = Poly(1);
    CramerSolution s = cramer(M, e);
    std::vector<RationalSeries> out;
    for (int y = 0; y < nv; ++y) {
        Poly num;
        for (int c : A.out_arrows(y)) num = num + s.numerators[c];
        out.emplace_back(num.times_t(1), s.det, 0, Side::u);
    }
    return out;
}

// Poincare series of L(a) by vertex of the generators: (I - tZ)^{-1} E with
// E[a][v] = [target a = v]; of C(a) with the transposed zero graph and sources.
inline std::vector<std::vector<RationalSeries>> poincare_arrow_modules(const MonomialAlgebra& A, SummandKind kind) {
    const int nv = A.num_vertices(), na = A.num_arrows();
    auto z = A.zero_graph();
    if (kind == SummandKind::injective) {
        auto zt = z;
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < na; ++j) zt[i][j] = z[j][i];
        z = zt;
    }
    PolyMatrix M = one_minus_t(z);
    std::vector<std::vector<RationalSeries>> out(na, std::vector<RationalSeries>(nv));
    for (int v = 0; v < nv; ++v) {
        std::vector<Poly> b(na);
        for (int a = 0; a < na; ++a)
            b[a] = Poly((kind == SummandKind::projective ? A.target(a) : A.source(a)) == v ? 1 : 0);
        CramerSolution s = cramer(M, b);
        for (int a = 0; a < na; ++a) out[a][v] = RationalSeries(s.numerators[a], s.det);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Module series

struct ModuleSeries {
    bool closed = false;  // false: the decomposition was unavailable
    Side side = Side::t;
    std::vector<RationalSeries> per_vertex;
    RationalSeries total;
    std::string note;
};

inline RationalSeries sum_series(const std::vector<RationalSeries>& xs, Side side) {
    RationalSeries s(Poly(), Poly(1), 0, side);
    for (auto& x : xs) s = s + x;
    return s;
}

// Which side a module is summed on: modules bounded above and living in
// non-positive degrees use u = 1/t.
inline Side natural_side(const GradedModule& M) {
    if (!M.complete_below()) return Side::u;
    if (!M.complete_above()) return Side::t;
    auto [lo, hi] = M.support();
    return (hi <= 0 && lo < 0) ? Side::u : Side::t;
}

// H_M from the first two (co)resolution steps and the arrow (co)ideal
// decomposition of the second (co)syzygy.
inline ModuleSeries hilbert_module_closed(const GradedModule& M, Side side, const Limits& lim) {
    const auto& A = M.algebra();
    const int nv = A.num_vertices();
    ModuleSeries out;
    out.side = side;
    out.per_vertex.assign(nv, RationalSeries(Poly(), Poly(1), 0, side));
    const bool proj = side == Side::t;
    Resolution R = proj ? minimal_projective_resolution(M, 3, lim) : minimal_injective_coresolution(M, 3, lim);
    VertexMatrixSeries H = hilbert_algebra_closed(A, side);
    for (auto& [key, m] : R.betti.entries) {
        auto [st, deg, x] = key;
        if (st > 1) continue;
        const int sign = st == 0 ? m : -m;
        for (int y = 0; y < nv; ++y) {
            // projective P_x<deg>: H(x, y) t^deg; injective I_x<deg>: H(y, x) u^-deg
            RationalSeries s = proj ? H[x][y].shifted(deg) : H[y][x].shifted(-deg);
            out.per_vertex[y] = out.per_vertex[y] + RationalSeries(Poly(sign), Poly(1), 0, side) * s;
        }
    }
    out.closed = true;
    if (R.syzygies.size() > 2 && !R.syzygies[2]->is_zero()) {
        try {
            for (auto& part : syzygy_decomposition(R, 2, lim)) {
                auto h = proj ? hilbert_arrow_ideal(A, part.arrow) : hilbert_arrow_coideal(A, part.arrow);
                for (int y = 0; y < nv; ++y)
                    out.per_vertex[y] = out.per_vertex[y] + h[y].shifted(proj ? part.shift : -part.shift);
            }
        } catch (const PropertyViolation& e) {
            out.closed = false;
            out.note = e.what();
        }
    }
    out.total = sum_series(out.per_vertex, side);
    return out;
}

struct PoincareSeries {
    bool closed = false;
    std::vector<RationalSeries> per_vertex;
    RationalSeries total;
    std::string note;
};

// sum over n of (generators at step n) t^n, from steps 0, 1 and the
// decomposition of the second (co)syzygy.
inline PoincareSeries poincare_closed(const GradedModule& M, SummandKind kind, const Limits& lim) {
    const auto& A = M.algebra();
    const int nv = A.num_vertices();
    PoincareSeries out;
    out.per_vertex.assign(nv, RationalSeries());
    const bool proj = kind == SummandKind::projective;
    Resolution R = proj ? minimal_projective_resolution(M, 3, lim) : minimal_injective_coresolution(M, 3, lim);
    for (auto& [key, m] : R.betti.entries) {
        auto [st, deg, x] = key;
        if (st > 1) continue;
        out.per_vertex[x] = out.per_vertex[x] + RationalSeries(Poly::monomial(m, st), Poly(1));
    }
    out.closed = true;
    if (R.syzygies.size() > 2 && !R.syzygies[2]->is_zero()) {
        auto P = poincare_arrow_modules(A, kind);
        try {
            for (auto& part : syzygy_decomposition(R, 2, lim))
                for (int v = 0; v < nv; ++v) out.per_vertex[v] = out.per_vertex[v] + P[part.arrow][v].shifted(2);
        } catch (const PropertyViolation& e) {
            out.closed = false;
            out.note = e.what();
        }
    }
    out.total = sum_series(out.per_vertex, Side::t);
    return out;
}

// ---------------------------------------------------------------------------
// Reciprocity between the Hilbert series of an algebra and its dual

enum class ReciprocityVariant { dual_times_lambda, dual_transpose_times_lambda, lambda_times_dual, lambda_times_dual_transpose };

inline std::string to_string(ReciprocityVariant v) {
    switch (v) {
        case ReciprocityVariant::dual_times_lambda: return "H!(-t) H(t)";
        case ReciprocityVariant::dual_transpose_times_lambda: return "H!(-t)^T H(t)";
        case ReciprocityVariant::lambda_times_dual: return "H(t) H!(-t)";
        default: return "H(t) H!(-t)^T";
    }
}

inline const std::vector<ReciprocityVariant>& all_reciprocity_variants() {
    static const std::vector<ReciprocityVariant> v = {
        ReciprocityVariant::dual_times_lambda, ReciprocityVariant::dual_transpose_times_lambda,
        ReciprocityVariant::lambda_times_dual, ReciprocityVariant::lambda_times_dual_transpose};
    return v;
}

// Truncated matrix series: [x][y][n] for n <= D.
using TruncatedMatrix = std::vector<std::vector<std::vector<Integer>>>;

inline TruncatedMatrix path_count_matrix(const MonomialAlgebra& A, int D) {
    const int nv = A.num_vertices();
    TruncatedMatrix m(nv, std::vector<std::vector<Integer>>(nv, std::vector<Integer>(D + 1, 0)));
    for (int x = 0; x < nv; ++x)
        for (int y = 0; y < nv; ++y)
            for (int n = 0; n <= D; ++n) m[x][y][n] = count_paths(A, x, y, n);
    return m;
}

inline TruncatedMatrix product_mod(const TruncatedMatrix& a, const TruncatedMatrix& b, int D) {
    const int nv = static_cast<int>(a.size());
    TruncatedMatrix c(nv, std::vector<std::vector<Integer>>(nv, std::vector<Integer>(D + 1, 0)));
    for (int i = 0; i < nv; ++i)
        for (int k = 0; k < nv; ++k)
            for (int j = 0; j < nv; ++j)
                for (int p = 0; p <= D; ++p) {
                    if (a[i][k][p] == 0) continue;
                    for (int q = 0; p + q <= D; ++q) c[i][j][p + q] += a[i][k][p] * b[k][j][q];
                }
    return c;
}

// Whether the variant's product is the identity through degree D.
inline bool reciprocity_holds(const MonomialAlgebra& A, const MonomialAlgebra& dual, ReciprocityVariant v, int D) {
    TruncatedMatrix h = path_count_matrix(A, D), g = path_count_matrix(dual, D);
    const int nv = A.num_vertices();
    for (auto& row : g)
        for (auto& e : row)
            for (int n = 1; n <= D; n += 2) e[n] = -e[n];
    auto transpose = [&](const TruncatedMatrix& m) {
        TruncatedMatrix t = m;
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j) t[i][j] = m[j][i];
        return t;
    };
    TruncatedMatrix p;
    switch (v) {
        case ReciprocityVariant::dual_times_lambda: p = product_mod(g, h, D); break;
        case ReciprocityVariant::dual_transpose_times_lambda: p = product_mod(transpose(g), h, D); break;
        case ReciprocityVariant::lambda_times_dual: p = product_mod(h, g, D); break;
        default: p = product_mod(h, transpose(g), D); break;
    }
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j)
            for (int n = 0; n <= D; ++n)
                if (p[i][j][n] != ((i == j && n == 0) ? 1 : 0)) return false;
    return true;
}

// The same identity with the closed forms, exactly.
inline bool reciprocity_holds_closed(const MonomialAlgebra& A, const MonomialAlgebra& dual, ReciprocityVariant v) {
    VertexMatrixSeries h = hilbert_algebra_closed(A), g = hilbert_algebra_closed(dual);
    const int nv = A.num_vertices();
    for (auto& row : g)
        for (auto& e : row) e = e.negate_variable();
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
            RationalSeries s;
            for (int k = 0; k < nv; ++k) {
                const RationalSeries* l = nullptr;
                const RationalSeries* r = nullptr;
                switch (v) {
                    case ReciprocityVariant::dual_times_lambda: l = &g[i][k], r = &h[k][j]; break;
                    case ReciprocityVariant::dual_transpose_times_lambda: l = &g[k][i], r = &h[k][j]; break;
                    case ReciprocityVariant::lambda_times_dual: l = &h[i][k], r = &g[k][j]; break;
                    default: l = &h[i][k], r = &g[j][k]; break;
                }
                s = s + (*l) * (*r);
            }
            if (!(s == RationalSeries(Poly(i == j ? 1 : 0), Poly(1)))) return false;
        }
    return true;
}

}  // namespace koszulkit

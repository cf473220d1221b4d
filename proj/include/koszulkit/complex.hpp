#pragma once

// Complexes of graded modules, and complexes of shifted indecomposable
// projectives or injectives whose differentials are given by path words.

#include <climits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "module.hpp"

namespace koszulkit {

using PathCombination = std::map<Path, Rational>;

inline void add_term(PathCombination& c, const Path& w, const Rational& x) {
    if (x == 0) return;
    auto [it, fresh] = c.emplace(w, x);
    if (!fresh) {
        it->second += x;
        if (it->second == 0) c.erase(it);
    }
}

// A summand P_v<degree> (generated in `degree`) or I_v<degree> (socle in `degree`).
struct Summand {
    int vertex = 0;
    int degree = 0;
    std::string label;
};

enum class SummandKind { projective, injective };

// (row in target term, column in source term) -> combination of words from
// the row vertex to the column vertex. For projectives a word w sends the
// generator of the column summand to w in the row summand; for injectives it
// deletes the suffix w from words of the column summand.
using Entries = std::map<std::pair<int, int>, PathCombination>;

inline std::string combination_string(const MonomialAlgebra& A, const PathCombination& c) {
    std::string s;
    bool first = true;
    for (auto& [w, x] : c) {
        Rational mag = abs(x);
        if (first)
            s += (x < 0 ? "-" : "");
        else
            s += (x < 0 ? " - " : " + ");
        if (mag != 1) s += to_string(mag) + "*";
        s += A.word_string(w);
        first = false;
    }
    return s.empty() ? "0" : s;
}

// E2 after E1: (row c, col a) = sum_b E2[c,b] * E1[b,a], words multiplied E2-word then E1-word.
inline Entries compose_entries(const MonomialAlgebra& A, const Entries& e2, const Entries& e1) {
    std::map<int, std::vector<std::pair<int, const PathCombination*>>> by_row;  // b -> (a, comb)
    for (auto& [key, comb] : e1) by_row[key.first].push_back({key.second, &comb});
    Entries out;
    for (auto& [key, c2] : e2) {
        auto it = by_row.find(key.second);
        if (it == by_row.end()) continue;
        for (auto& [a, c1] : it->second) {
            PathCombination& target = out[{key.first, a}];
            for (auto& [w2, x2] : c2)
                for (auto& [w1, x1] : *c1)
                    if (auto w = multiply_words(A, w2, w1)) add_term(target, *w, x2 * x1);
            if (target.empty()) out.erase({key.first, a});
        }
    }
    return out;
}

class SummandComplex {
public:
    SummandComplex() = default;
    SummandComplex(SummandKind kind, AlgebraPtr A, int lo) : kind_(kind), algebra_(std::move(A)), lo_(lo) {}

    SummandKind kind() const { return kind_; }
    const MonomialAlgebra& algebra() const { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
    bool empty() const {
        for (auto& t : terms_)
            if (!t.empty()) return false;
        return true;
    }

    const std::vector<Summand>& term(int n) const {
        static const std::vector<Summand> none;
        if (n < lo_ || n > hi()) return none;
        return terms_[n - lo_];
    }
    // d^n : X^n -> X^{n+1}
    const Entries& diff(int n) const {
        static const Entries none;
        if (n < lo_ || n >= hi()) return none;
        return diffs_[n - lo_];
    }

    // Terms must be appended in increasing cohomological degree.
    void push_term(std::vector<Summand> t) {
        terms_.push_back(std::move(t));
        if (terms_.size() > 1) diffs_.emplace_back();
    }
    void set_diff(int n, Entries e) {
        if (n < lo_ || n >= hi()) throw Error("differential index outside complex");
        diffs_[n - lo_] = std::move(e);
    }
    void set_lo(int lo) { lo_ = lo; }

    // Terms in cohomological degree below exact_from may be incomplete (the
    // complex was cut there); cohomology is certified from exact_from + 1.
    int exact_from() const { return exact_from_; }
    void set_exact_from(int n) { exact_from_ = n; }
    int certified_from() const { return exact_from_ == INT_MIN ? INT_MIN : exact_from_ + 1; }
    // Dually, terms above exact_to may be incomplete.
    int exact_to() const { return exact_to_; }
    void set_exact_to(int n) { exact_to_ = n; }
    int certified_to() const { return exact_to_ == INT_MAX ? INT_MAX : exact_to_ - 1; }

    std::vector<std::vector<Summand>>& mutable_terms() { return terms_; }
    std::vector<Entries>& mutable_diffs() { return diffs_; }

private:
    SummandKind kind_ = SummandKind::projective;
    AlgebraPtr algebra_;
    int lo_ = 0;
    std::vector<std::vector<Summand>> terms_;
    std::vector<Entries> diffs_;
    int exact_from_ = INT_MIN;
    int exact_to_ = INT_MAX;
};

using LinearProjComplex = SummandComplex;

struct ComplexCheck {
    bool ok = true;
    int n = 0;
    int vertex = -1;
    int degree = 0;
    std::string detail;
};

inline ComplexCheck check_complex(const SummandComplex& X) {
    const auto& A = X.algebra();
    for (int n = X.lo(); n < X.hi(); ++n) {
        const auto& src = X.term(n);
        const auto& tgt = X.term(n + 1);
        for (auto& [key, comb] : X.diff(n)) {
            auto [r, c] = key;
            if (r < 0 || c < 0 || r >= static_cast<int>(tgt.size()) || c >= static_cast<int>(src.size()))
                return {false, n, -1, 0, "entry index out of range"};
            for (auto& [w, x] : comb) {
                bool ok = w.source == tgt[r].vertex && w.target == src[c].vertex &&
                          w.length() == src[c].degree - tgt[r].degree && A.is_nonzero(w.arrows);
                if (!ok)
                    return {false, n, src[c].vertex, src[c].degree,
                            "entry " + std::to_string(r) + " " + std::to_string(c) + " has incompatible word " +
                                A.word_string(w)};
            }
        }
    }
    for (int n = X.lo(); n + 1 < X.hi(); ++n) {
        Entries sq = compose_entries(A, X.diff(n + 1), X.diff(n));
        if (!sq.empty()) {
            auto& [key, comb] = *sq.begin();
            const Summand& s = X.term(n)[key.second];
            return {false, n, s.vertex, s.degree,
                    "d^" + std::to_string(n + 1) + " d^" + std::to_string(n) + " nonzero at entry " +
                        std::to_string(key.first) + " " + std::to_string(key.second) + ": " +
                        combination_string(A, comb)};
        }
    }
    return {};
}

// Term at cohomological degree n generated (projective) or cogenerated
// (injective) in internal degree -n, with arrow-only differentials.
inline std::optional<std::string> linearity_failure(const SummandComplex& X) {
    for (int n = X.lo(); n <= X.hi(); ++n)
        for (auto& s : X.term(n))
            if (s.degree != -n)
                return "term " + std::to_string(n) + " has a summand in internal degree " + std::to_string(s.degree);
    for (int n = X.lo(); n < X.hi(); ++n)
        for (auto& [key, comb] : X.diff(n))
            for (auto& [w, x] : comb)
                if (w.length() != 1)
                    return "d^" + std::to_string(n) + " entry " + std::to_string(key.first) + " " +
                           std::to_string(key.second) + " has a word of length " + std::to_string(w.length());
    return std::nullopt;
}

inline std::optional<std::string> minimality_failure(const SummandComplex& X) {
    for (int n = X.lo(); n < X.hi(); ++n)
        for (auto& [key, comb] : X.diff(n))
            for (auto& [w, x] : comb)
                if (w.length() == 0)
                    return "d^" + std::to_string(n) + " entry " + std::to_string(key.first) + " " +
                           std::to_string(key.second) + " is a nonzero scalar";
    return std::nullopt;
}

inline SummandComplex shift_complex(const SummandComplex& X, int k) {
    SummandComplex Y = X;
    Y.set_lo(X.lo() - k);
    if (k % 2 != 0)
        for (auto& e : Y.mutable_diffs())
            for (auto& [key, comb] : e)
                for (auto& [w, x] : comb) x = -x;
    if (X.exact_from() != INT_MIN) Y.set_exact_from(X.exact_from() - k);
    if (X.exact_to() != INT_MAX) Y.set_exact_to(X.exact_to() - k);
    return Y;
}

inline SummandComplex grade_shift_complex(const SummandComplex& X, int i) {
    SummandComplex Y = X;
    for (auto& t : Y.mutable_terms())
        for (auto& s : t) s.degree += i;
    return Y;
}

inline std::string format_complex(const SummandComplex& X) {
    const auto& A = X.algebra();
    const char* P = X.kind() == SummandKind::projective ? "P" : "I";
    std::ostringstream out;
    for (int n = X.lo(); n <= X.hi(); ++n) {
        out << "term " << n << ":";
        const auto& t = X.term(n);
        for (std::size_t i = 0; i < t.size(); ++i)
            out << (i ? ", " : " ") << P << "(" << A.vertex_name(t[i].vertex) << ")<" << t[i].degree << ">";
        out << "\n";
        for (auto& [key, comb] : X.diff(n))
            out << "  d " << key.first << " " << key.second << ": " << combination_string(A, comb) << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Complexes of explicit modules

class ModuleComplex {
public:
    ModuleComplex() = default;
    ModuleComplex(AlgebraPtr A, int lo) : algebra_(std::move(A)), lo_(lo) {}

    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }

    ModulePtr term(int n) const {
        if (n < lo_ || n > hi()) return zero_module();
        return terms_[n - lo_];
    }
    GradedMorphism diff(int n) const {
        if (n >= lo_ && n < hi()) return diffs_[n - lo_];
        return GradedMorphism(term(n), term(n + 1));
    }

    void push_term(ModulePtr M) {
        terms_.push_back(std::move(M));
        if (terms_.size() > 1) diffs_.emplace_back(terms_[terms_.size() - 2], terms_.back());
    }
    void set_diff(int n, GradedMorphism f) { diffs_.at(n - lo_) = std::move(f); }
    void set_lo(int lo) { lo_ = lo; }

    int certified_from() const { return certified_from_; }
    void set_certified_from(int n) { certified_from_ = n; }
    int certified_to() const { return certified_to_; }
    void set_certified_to(int n) { certified_to_ = n; }

private:
    ModulePtr zero_module() const {
        if (!zero_) zero_ = share(GradedModule::zero(algebra_));
        return zero_;
    }

    AlgebraPtr algebra_;
    int lo_ = 0;
    std::vector<ModulePtr> terms_;
    std::vector<GradedMorphism> diffs_;
    int certified_from_ = INT_MIN;
    int certified_to_ = INT_MAX;
    mutable ModulePtr zero_;
};

inline ComplexCheck check_complex(const ModuleComplex& X) {
    const auto& A = *X.algebra_ptr();
    for (int n = X.lo(); n < X.hi(); ++n) {
        GradedMorphism d = X.diff(n);
        if (auto bad = d.commutation_failure())
            return {false, n, A.source(bad->first), bad->second,
                    "d^" + std::to_string(n) + " does not commute with arrow " + A.arrow_name(bad->first)};
    }
    for (int n = X.lo(); n + 1 < X.hi(); ++n) {
        GradedMorphism a = X.diff(n), b = X.diff(n + 1);
        const auto& S = *X.term(n);
        for (int m = S.lo(); m <= S.hi(); ++m)
            for (int v = 0; v < A.num_vertices(); ++v) {
                if (S.dim(v, m) == 0 || X.term(n + 2)->dim(v, m) == 0) continue;
                if (!multiply(b.block(v, m), a.block(v, m)).is_zero())
                    return {false, n, v, m, "d^" + std::to_string(n + 1) + " d^" + std::to_string(n) + " != 0"};
            }
    }
    return {};
}

inline GradedModule cohomology(const ModuleComplex& X, int n) {
    if (n < X.certified_from() || n > X.certified_to())
        throw WindowError("cohomology at degree " + std::to_string(n) + " outside certified range");
    auto ker = kernel(X.diff(n));
    GradedMorphism into = factor_through(X.diff(n - 1), ker);
    return *cokernel(into).module;
}

// dim H^n(X) per (vertex, degree) for degrees in [lo, hi], from block ranks,
// without building the module.
inline std::map<std::pair<int, int>, int> cohomology_dims(const ModuleComplex& X, int n, int lo = INT_MIN,
                                                          int hi = INT_MAX) {
    if (n < X.certified_from() || n > X.certified_to())
        throw WindowError("cohomology at degree " + std::to_string(n) + " outside certified range");
    std::map<std::pair<int, int>, int> t;
    const GradedModule& M = *X.term(n);
    const GradedMorphism out = X.diff(n), in = X.diff(n - 1);
    // only degrees where both neighbouring terms are known
    lo = std::max({lo, M.lo(), out.target().known_lo(), in.source().known_lo()});
    hi = std::min({hi, M.hi(), out.target().known_hi(), in.source().known_hi()});
    for (int e = lo; e <= hi; ++e)
        for (int v = 0; v < M.algebra().num_vertices(); ++v) {
            const int d = M.dim(v, e);
            if (!d) continue;
            const bool o = out.target().dim(v, e) > 0, i = in.source().dim(v, e) > 0;
            // rank mod p never exceeds the rank over Q, so a vanishing count mod p is exact
            auto ro = o ? rank_mod_p(out.block(v, e)) : 0, ri = i ? rank_mod_p(in.block(v, e)) : 0;
            int k = ro && ri ? d - *ro - *ri : 1;
            if (k) k = d - (o ? rank(out.block(v, e)) : 0) - (i ? rank(in.block(v, e)) : 0);
            if (k) t[{v, e}] = k;
        }
    return t;
}

inline ModuleComplex shift_complex(const ModuleComplex& X, int k) {
    ModuleComplex Y(X.algebra_ptr(), X.lo() - k);
    for (int n = X.lo(); n <= X.hi(); ++n) Y.push_term(X.term(n));
    for (int n = X.lo(); n < X.hi(); ++n) {
        GradedMorphism d = X.diff(n);
        if (k % 2 != 0) {
            GradedMorphism e(d.source_ptr(), d.target_ptr());
            const auto& S = d.source();
            for (int m = S.lo(); m <= S.hi(); ++m)
                for (int v = 0; v < S.algebra().num_vertices(); ++v) {
                    const SparseMatrix& b = d.block(v, m);
                    e.set_block(v, m, add(SparseMatrix(b.rows(), b.cols()), b, -1));
                }
            d = std::move(e);
        }
        Y.set_diff(n - k, std::move(d));
    }
    if (X.certified_from() != INT_MIN) Y.set_certified_from(X.certified_from() - k);
    if (X.certified_to() != INT_MAX) Y.set_certified_to(X.certified_to() - k);
    return Y;
}

// ---------------------------------------------------------------------------
// Expansion of summand complexes into explicit modules

struct ExpandedTerm {
    ModulePtr module;
    // per summand: word key -> position inside the summand's own (vertex, degree) block
    std::vector<std::unordered_map<std::vector<int>, int, WordHash>> position;
    // per summand: (vertex, degree) -> offset of the summand inside the term's block
    std::vector<std::map<std::pair<int, int>, int>> offset;
    std::vector<std::vector<Path>> words;
};

inline ExpandedTerm expand_term(SummandKind kind, const AlgebraPtr& A, const std::vector<Summand>& summands,
                                const Limits& lim) {
    ExpandedTerm t;
    std::vector<GradedModule> parts;
    struct Cached {
        GradedModule module;
        std::unordered_map<std::vector<int>, int, WordHash> pos;
        std::vector<Path> words;
    };
    std::map<std::pair<int, int>, Cached> cache;  // (vertex, degree) -> unlabelled summand
    for (auto& s : summands) {
        auto it = cache.find({s.vertex, s.degree});
        if (it == cache.end()) {
            WordLevels lv = kind == SummandKind::projective
                                ? enumerate_words(*A, s.vertex, WordDirection::from, lim.degree - s.degree, lim.budget)
                                : enumerate_words(*A, s.vertex, WordDirection::into, s.degree + lim.degree, lim.budget);
            std::unordered_map<std::vector<int>, int, WordHash> pos;
            std::vector<Path> ws;
            for (auto& level : lv.levels) {
                std::map<int, int> count;
                for (auto& w : level) {
                    int home = kind == SummandKind::projective ? w.target : w.source;
                    pos[word_key(w)] = count[home]++;
                    ws.push_back(w);
                }
            }
            const int d = s.degree;
            const int len = static_cast<int>(lv.levels.size()) - 1;
            GradedModule M =
                kind == SummandKind::projective
                    ? word_module(A, ws, [d](const Path& w) { return d + w.length(); }, WordAction::append, true,
                                  lv.complete, d, d + len)
                    : word_module(A, ws, [d](const Path& w) { return d - w.length(); }, WordAction::delete_front,
                                  lv.complete, true, d - len, d);
            it = cache.emplace(std::make_pair(s.vertex, s.degree), Cached{std::move(M), std::move(pos), std::move(ws)})
                     .first;
        }
        const GradedModule& M = it->second.module;
        if (s.label.empty()) {
            parts.push_back(M);
        } else {
            GradedModule L(A, M.lo(), M.hi(), M.complete_below(), M.complete_above());
            for (int n = M.lo(); n <= M.hi(); ++n)
                for (int v = 0; v < A->num_vertices(); ++v) {
                    std::vector<std::string> labels;
                    for (auto& l : M.labels(v, n)) labels.push_back(s.label + ":" + l);
                    L.set_basis(v, n, std::move(labels));
                }
            for (int n = M.lo() - 1; n <= M.hi(); ++n)
                for (int a = 0; a < A->num_arrows(); ++a) L.set_action(a, n, M.action(a, n));
            L.finalize(false);
            parts.push_back(std::move(L));
        }
        t.position.push_back(it->second.pos);
        t.words.push_back(it->second.words);
    }
    GradedModule sum = direct_sum(parts, A);
    for (std::size_t k = 0; k < parts.size(); ++k) t.offset.emplace_back();
    for (int n = sum.lo(); n <= sum.hi(); ++n)
        for (int v = 0; v < A->num_vertices(); ++v) {
            int off = 0;
            for (std::size_t k = 0; k < parts.size(); ++k) {
                t.offset[k][{v, n}] = off;
                off += parts[k].dim(v, n);
            }
        }
    t.module = share(std::move(sum));
    return t;
}

// Position of word w of summand k inside the term block it lives in.
inline std::optional<int> locate(const ExpandedTerm& t, int k, const Path& w, int vertex, int degree) {
    if (degree < t.module->lo() || degree > t.module->hi()) return std::nullopt;
    auto it = t.position[k].find(word_key(w));
    if (it == t.position[k].end()) return std::nullopt;
    return t.offset[k].at({vertex, degree}) + it->second;
}

inline GradedMorphism expand_diff(SummandKind kind, const MonomialAlgebra& A, const std::vector<Summand>& src,
                                  const std::vector<Summand>&, const Entries& e, const ExpandedTerm& from,
                                  const ExpandedTerm& to) {
    GradedMorphism f(from.module, to.module);
    std::map<std::pair<int, int>, std::vector<std::pair<int, Entry>>> cells;  // (v,n) -> (col, (row, x))
    std::map<int, std::vector<std::pair<int, const PathCombination*>>> by_col;
    for (auto& [key, comb] : e) by_col[key.second].push_back({key.first, &comb});
    for (auto& [j, rows] : by_col) {
        for (const Path& p : from.words[j]) {
            const bool proj = kind == SummandKind::projective;
            int v = proj ? p.target : p.source;
            int n = proj ? src[j].degree + p.length() : src[j].degree - p.length();
            auto col = locate(from, j, p, v, n);
            if (!col) continue;
            for (auto& [k, comb] : rows) {
                for (auto& [w, x] : *comb) {
                    std::optional<Path> img;
                    if (proj) {
                        img = multiply_words(A, w, p);
                    } else if (p.length() >= w.length() &&
                               std::equal(w.arrows.begin(), w.arrows.end(), p.arrows.end() - w.length())) {
                        img = Path{p.source, w.source, std::vector<int>(p.arrows.begin(), p.arrows.end() - w.length())};
                    }
                    if (!img) continue;
                    auto row = locate(to, k, *img, v, n);
                    if (!row) continue;
                    cells[{v, n}].push_back({*col, Entry{*row, x}});
                }
            }
        }
    }
    for (auto& [vn, list] : cells) {
        auto [v, n] = vn;
        SparseMatrix m(to.module->dim(v, n), from.module->dim(v, n));
        std::map<int, std::vector<Entry>> cols;
        for (auto& [c, entry] : list) cols[c].push_back(entry);
        for (auto& [c, raw] : cols) m.set_column(c, collect(std::move(raw)));
        f.set_block(v, n, std::move(m));
    }
    return f;
}

struct ExpandedComplex {
    ModuleComplex complex;
    std::vector<ExpandedTerm> terms;  // indexed by n - lo
};

inline ExpandedComplex expand_with_bases(const SummandComplex& X, const Limits& lim) {
    ExpandedComplex out{ModuleComplex(X.algebra_ptr(), X.lo()), {}};
    for (int n = X.lo(); n <= X.hi(); ++n) {
        out.terms.push_back(expand_term(X.kind(), X.algebra_ptr(), X.term(n), lim));
        out.complex.push_term(out.terms.back().module);
    }
    for (int n = X.lo(); n < X.hi(); ++n)
        out.complex.set_diff(n, expand_diff(X.kind(), X.algebra(), X.term(n), X.term(n + 1), X.diff(n),
                                            out.terms[n - X.lo()], out.terms[n + 1 - X.lo()]));
    out.complex.set_certified_from(X.certified_from());
    out.complex.set_certified_to(X.certified_to());
    return out;
}

inline ModuleComplex expand(const SummandComplex& X, const Limits& lim) { return expand_with_bases(X, lim).complex; }

// ---------------------------------------------------------------------------
// Double complexes and totalization

struct DoubleComplex {
    SummandKind kind = SummandKind::projective;
    AlgebraPtr algebra;
    std::map<std::pair<int, int>, std::vector<Summand>> terms;  // (p, q) -> B^{q,p}
    std::map<std::pair<int, int>, Entries> d1;                  // (p, q) -> (p + 1, q)
    std::map<std::pair<int, int>, Entries> d2;                  // (p, q) -> (p, q + 1)
    std::map<int, int> column_exact_from;                       // p -> lowest exact q, when cut
    std::map<int, int> column_exact_to;                         // p -> highest exact q, when cut

    const std::vector<Summand>& term(int p, int q) const {
        static const std::vector<Summand> none;
        auto it = terms.find({p, q});
        return it == terms.end() ? none : it->second;
    }
    const Entries& h(int p, int q) const {
        static const Entries none;
        auto it = d1.find({p, q});
        return it == d1.end() ? none : it->second;
    }
    const Entries& v(int p, int q) const {
        static const Entries none;
        auto it = d2.find({p, q});
        return it == d2.end() ? none : it->second;
    }
};

// d1^2 = 0, d2^2 = 0 and d1 d2 = d2 d1, symbolically.
inline std::optional<std::string> double_complex_failure(const DoubleComplex& B) {
    const auto& A = *B.algebra;
    for (auto& [pq, t] : B.terms) {
        auto [p, q] = pq;
        if (!compose_entries(A, B.h(p + 1, q), B.h(p, q)).empty())
            return "d1 d1 != 0 at (" + std::to_string(p) + "," + std::to_string(q) + ")";
        if (!compose_entries(A, B.v(p, q + 1), B.v(p, q)).empty())
            return "d2 d2 != 0 at (" + std::to_string(p) + "," + std::to_string(q) + ")";
        Entries x = compose_entries(A, B.v(p + 1, q), B.h(p, q));
        Entries y = compose_entries(A, B.h(p, q + 1), B.v(p, q));
        for (auto& [key, comb] : y)
            for (auto& [w, c] : comb) add_term(x[key], w, -c);
        for (auto& [key, comb] : x)
            if (!comb.empty()) return "d1 d2 != d2 d1 at (" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
    return std::nullopt;
}

// Tot^n = sum over p + q = n of B^{q,p} (ordered by p), d = d1 + (-1)^p d2.
inline SummandComplex total_complex(const DoubleComplex& B) {
    int lo = INT_MAX, hi = INT_MIN;
    for (auto& [pq, t] : B.terms) {
        lo = std::min(lo, pq.first + pq.second);
        hi = std::max(hi, pq.first + pq.second);
    }
    if (lo > hi) return SummandComplex(B.kind, B.algebra, 0);
    SummandComplex T(B.kind, B.algebra, lo);
    // placement[(p,q)] = offset of B^{q,p} inside Tot^{p+q}
    std::map<std::pair<int, int>, int> placement;
    for (int n = lo; n <= hi; ++n) {
        std::vector<Summand> term;
        for (auto& [pq, t] : B.terms) {
            if (pq.first + pq.second != n) continue;
            placement[pq] = static_cast<int>(term.size());
            term.insert(term.end(), t.begin(), t.end());
        }
        T.push_term(std::move(term));
    }
    for (auto& [pq, t] : B.terms) {
        auto [p, q] = pq;
        int n = p + q;
        if (n >= hi) continue;
        Entries e = T.diff(n);
        int col0 = placement[pq];
        if (B.terms.count({p + 1, q}))
            for (auto& [key, comb] : B.h(p, q)) {
                auto& cell = e[{placement[{p + 1, q}] + key.first, col0 + key.second}];
                for (auto& [w, x] : comb) add_term(cell, w, x);
            }
        if (B.terms.count({p, q + 1})) {
            const int sign = (p % 2 == 0) ? 1 : -1;
            for (auto& [key, comb] : B.v(p, q)) {
                auto& cell = e[{placement[{p, q + 1}] + key.first, col0 + key.second}];
                for (auto& [w, x] : comb) add_term(cell, w, sign * x);
            }
        }
        std::erase_if(e, [](const auto& kv) { return kv.second.empty(); });
        T.set_diff(n, std::move(e));
    }
    // Tot^n is exact once n - p >= (exact q of column p) for every cut column.
    int exact = INT_MIN;
    for (auto& [p, q0] : B.column_exact_from) exact = std::max(exact, p + q0);
    T.set_exact_from(exact);
    int exact_to = INT_MAX;
    for (auto& [p, q1] : B.column_exact_to) exact_to = std::min(exact_to, p + q1);
    T.set_exact_to(exact_to);
    return T;
}

// Cohomology tables: (n, vertex, degree) -> dim
using CohomologyTable = std::map<std::tuple<int, int, int>, int>;

inline CohomologyTable cohomology_table(const ModuleComplex& X, int from, int to) {
    CohomologyTable t;
    for (int n = std::max(from, X.certified_from()); n <= std::min(to, X.certified_to()); ++n) {
        for (auto& [vd, d] : cohomology_dims(X, n))
            if (d) t[{n, vd.first, vd.second}] = d;
    }
    return t;
}

// H^n(Y[k]<j>) at degree e is H^{n+k}(Y) at degree e - j.
inline CohomologyTable shifted_table(const CohomologyTable& t, int k, int j) {
    CohomologyTable o;
    for (auto& [key, d] : t) o[{std::get<0>(key) - k, std::get<1>(key), std::get<2>(key) + j}] = d;
    return o;
}

}  // namespace koszulkit

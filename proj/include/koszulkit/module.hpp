#pragma once

// Graded modules over a monomial algebra, stored degree by degree inside a
// finite window, with arrow actions raising the internal degree by one.

#include <climits>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"
#include "linalg.hpp"

namespace koszulkit {

enum class Completeness { exact, truncated_above, truncated_below, truncated_both };

inline std::string to_string(Completeness c) {
    switch (c) {
        case Completeness::exact: return "exact";
        case Completeness::truncated_above: return "truncated-above";
        case Completeness::truncated_below: return "truncated-below";
        default: return "truncated-both";
    }
}

// Cutoffs for objects that are infinite on one side: projective-type modules
// are cut above `degree`, injective-type modules below `-degree`, and word
// enumeration stops after `budget` basis elements.
struct Limits {
    int degree = 24;
    std::size_t budget = 20000;
};

class GradedModule {
public:
    GradedModule() = default;
    GradedModule(AlgebraPtr A, int lo, int hi, bool complete_below = true, bool complete_above = true)
        : algebra_(std::move(A)), lo_(lo), hi_(std::max(hi, lo - 1)), complete_below_(complete_below),
          complete_above_(complete_above) {
        const int nd = hi_ - lo_ + 1;
        labels_.assign(nd, std::vector<std::vector<std::string>>(algebra_->num_vertices()));
        actions_.assign(nd + 1, std::vector<SparseMatrix>(algebra_->num_arrows()));
    }

    static GradedModule zero(AlgebraPtr A) { return GradedModule(std::move(A), 0, -1); }

    const MonomialAlgebra& algebra() const { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool complete_below() const { return complete_below_; }
    bool complete_above() const { return complete_above_; }
    Completeness completeness() const {
        if (complete_below_ && complete_above_) return Completeness::exact;
        if (complete_below_) return Completeness::truncated_above;
        if (complete_above_) return Completeness::truncated_below;
        return Completeness::truncated_both;
    }
    // Lowest/highest degree whose data is known (unbounded on complete sides).
    int known_lo() const { return complete_below_ ? INT_MIN / 4 : lo_; }
    int known_hi() const { return complete_above_ ? INT_MAX / 4 : hi_; }

    int dim(int v, int n) const {
        if (n < lo_ || n > hi_) return 0;
        return static_cast<int>(labels_[n - lo_][v].size());
    }
    const std::vector<std::string>& labels(int v, int n) const {
        static const std::vector<std::string> none;
        if (n < lo_ || n > hi_) return none;
        return labels_[n - lo_][v];
    }
    // Action of arrow a from (source a, n) to (target a, n + 1).
    const SparseMatrix& action(int a, int n) const {
        static const SparseMatrix empty;
        if (n < lo_ - 1 || n > hi_) return empty;
        return actions_[n - lo_ + 1][a];
    }

    int total_dim() const {
        int t = 0;
        for (int n = lo_; n <= hi_; ++n)
            for (int v = 0; v < algebra_->num_vertices(); ++v) t += dim(v, n);
        return t;
    }
    int degree_dim(int n) const {
        int t = 0;
        for (int v = 0; v < algebra_->num_vertices(); ++v) t += dim(v, n);
        return t;
    }
    bool is_zero() const { return total_dim() == 0; }

    // Smallest window containing the nonzero part (empty range if zero).
    std::pair<int, int> support() const {
        int a = INT_MAX, b = INT_MIN;
        for (int n = lo_; n <= hi_; ++n)
            if (degree_dim(n) > 0) {
                a = std::min(a, n);
                b = std::max(b, n);
            }
        if (a > b) return {0, -1};
        return {a, b};
    }

    // Mutators used while a module is being assembled.
    void set_basis(int v, int n, std::vector<std::string> labels) {
        check_degree(n);
        labels_[n - lo_][v] = std::move(labels);
    }
    void set_action(int a, int n, SparseMatrix m) {
        if (n < lo_ - 1 || n > hi_) throw Error("action degree outside window");
        actions_[n - lo_ + 1][a] = std::move(m);
    }
    void set_completeness(bool below, bool above) {
        complete_below_ = below;
        complete_above_ = above;
    }

    // Fill unset actions with zero matrices of the right shape, then check
    // shapes and (unless the caller built it relation-compliant) relations.
    void finalize(bool check = true) {
        const auto& A = *algebra_;
        for (int n = lo_ - 1; n <= hi_; ++n)
            for (int a = 0; a < A.num_arrows(); ++a) {
                SparseMatrix& m = actions_[n - lo_ + 1][a];
                int r = dim(A.target(a), n + 1), c = dim(A.source(a), n);
                if (m.rows() == 0 && m.cols() == 0 && (r || c)) m = SparseMatrix(r, c);
                if (m.rows() != r || m.cols() != c)
                    throw Error("action matrix shape mismatch for arrow " + A.arrow_name(a) + " at degree " +
                                std::to_string(n));
            }
        if (check) check_relations();
    }

    void check_relations() const {
        const auto& A = *algebra_;
        for (auto [a, b] : A.relations())
            for (int n = lo_; n < hi_; ++n) {
                if (dim(A.source(a), n) == 0 || dim(A.target(b), n + 2) == 0) continue;
                if (!multiply(action(b, n + 1), action(a, n)).is_zero())
                    throw PropertyViolation("relation " + A.arrow_name(a) + " " + A.arrow_name(b) +
                                            " acts nonzero at degree " + std::to_string(n));
            }
    }

private:
    void check_degree(int n) const {
        if (n < lo_ || n > hi_) throw Error("degree outside window");
    }

    AlgebraPtr algebra_;
    int lo_ = 0;
    int hi_ = -1;
    bool complete_below_ = true;
    bool complete_above_ = true;
    std::vector<std::vector<std::vector<std::string>>> labels_;
    std::vector<std::vector<SparseMatrix>> actions_;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

inline ModulePtr share(GradedModule M) { return std::make_shared<const GradedModule>(std::move(M)); }

inline bool same_algebra(const GradedModule& a, const GradedModule& b) {
    return a.algebra_ptr() == b.algebra_ptr() || a.algebra() == b.algebra();
}

// Degree-wise equality of dimensions and action matrices (labels ignored).
inline bool equal_structure(const GradedModule& a, const GradedModule& b) {
    if (!same_algebra(a, b)) return false;
    auto [sa, ta] = a.support();
    auto [sb, tb] = b.support();
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (sa != sb || ta != tb) return false;
    const auto& A = a.algebra();
    for (int n = sa; n <= ta; ++n) {
        for (int v = 0; v < A.num_vertices(); ++v)
            if (a.dim(v, n) != b.dim(v, n)) return false;
        for (int x = 0; x < A.num_arrows(); ++x)
            if (n < ta && !(a.action(x, n) == b.action(x, n))) return false;
    }
    return true;
}

using DimTable = std::map<std::pair<int, int>, int>;  // (vertex, degree) -> dim

inline DimTable dims(const GradedModule& M) {
    DimTable t;
    for (int n = M.lo(); n <= M.hi(); ++n)
        for (int v = 0; v < M.algebra().num_vertices(); ++v)
            if (int d = M.dim(v, n)) t[{v, n}] = d;
    return t;
}

inline GradedModule shift(const GradedModule& M, int i) {
    GradedModule out(M.algebra_ptr(), M.lo() + i, M.hi() + i, M.complete_below(), M.complete_above());
    const auto& A = M.algebra();
    for (int n = M.lo(); n <= M.hi(); ++n)
        for (int v = 0; v < A.num_vertices(); ++v) out.set_basis(v, n + i, M.labels(v, n));
    for (int n = M.lo() - 1; n <= M.hi(); ++n)
        for (int a = 0; a < A.num_arrows(); ++a) out.set_action(a, n + i, M.action(a, n));
    out.finalize();
    return out;
}

// Copy of the degrees in [lo, hi] with the given completeness flags; the
// caller is responsible for the flags being meaningful.
inline GradedModule slice(const GradedModule& M, int lo, int hi, bool complete_below, bool complete_above) {
    GradedModule out(M.algebra_ptr(), lo, hi, complete_below, complete_above);
    const auto& A = M.algebra();
    for (int n = lo; n <= out.hi(); ++n)
        for (int v = 0; v < A.num_vertices(); ++v) out.set_basis(v, n, M.labels(v, n));
    for (int n = lo; n < out.hi(); ++n)
        for (int a = 0; a < A.num_arrows(); ++a) out.set_action(a, n, M.action(a, n));
    out.finalize();
    return out;
}

// Cut the known window of M down to [lo, hi] (an artifact of finite
// computation, not a module operation): sides where data is dropped become
// truncated.
inline GradedModule restrict_window(const GradedModule& M, int lo, int hi) {
    lo = std::max(lo, M.lo());
    hi = std::min(hi, M.hi());
    if (lo > hi) {
        bool below = M.complete_below() && M.complete_above() && M.is_zero();
        return GradedModule(M.algebra_ptr(), lo, lo - 1, below, below);
    }
    auto [s, t] = M.support();
    bool below = M.complete_below() && (M.is_zero() || s >= lo);
    bool above = M.complete_above() && (M.is_zero() || t <= hi);
    if (!M.complete_below() && lo == M.lo()) below = false;
    if (!M.complete_above() && hi == M.hi()) above = false;
    return slice(M, lo, hi, below, above);
}

// Shrink the window to the support on complete sides.
inline GradedModule trim(const GradedModule& M) {
    auto [s, t] = M.support();
    if (s > t) {
        if (M.completeness() == Completeness::exact) return GradedModule::zero(M.algebra_ptr());
        return M;
    }
    int lo = M.complete_below() ? s : M.lo();
    int hi = M.complete_above() ? t : M.hi();
    return slice(M, lo, hi, M.complete_below(), M.complete_above());
}

inline GradedModule direct_sum(const std::vector<GradedModule>& parts, AlgebraPtr A = nullptr) {
    if (parts.empty()) {
        if (!A) throw Error("direct sum of nothing needs an algebra");
        return GradedModule::zero(A);
    }
    A = parts.front().algebra_ptr();
    int lo = INT_MAX, hi = INT_MIN;
    int known_lo = INT_MIN, known_hi = INT_MAX;
    for (auto& P : parts) {
        if (!same_algebra(P, parts.front())) throw Error("direct sum over different algebras");
        if (P.lo() <= P.hi()) {
            lo = std::min(lo, P.lo());
            hi = std::max(hi, P.hi());
        }
        if (!P.complete_below()) known_lo = std::max(known_lo, P.lo());
        if (!P.complete_above()) known_hi = std::min(known_hi, P.hi());
    }
    if (lo > hi) {
        lo = 0;
        hi = -1;
    }
    bool below = known_lo == INT_MIN, above = known_hi == INT_MAX;
    lo = std::max(lo, known_lo);
    hi = std::min(hi, known_hi);
    GradedModule out(A, lo, hi, below, above);
    const int nv = A->num_vertices();
    // offsets[k][n - lo][v]
    for (int n = lo; n <= out.hi(); ++n)
        for (int v = 0; v < nv; ++v) {
            std::vector<std::string> labels;
            for (auto& P : parts)
                for (auto& l : P.labels(v, n)) labels.push_back(l);
            out.set_basis(v, n, std::move(labels));
        }
    for (int n = lo; n < out.hi(); ++n)
        for (int a = 0; a < A->num_arrows(); ++a) {
            int s = A->source(a), t = A->target(a);
            SparseMatrix m(out.dim(t, n + 1), out.dim(s, n));
            int roff = 0, coff = 0;
            for (auto& P : parts) {
                const SparseMatrix& pa = P.action(a, n);
                for (int j = 0; j < P.dim(s, n); ++j) {
                    SparseVec col;
                    if (j < pa.cols())
                        for (auto& e : pa.column(j)) col.push_back({e.index + roff, e.value});
                    m.set_column(coff + j, std::move(col));
                }
                roff += P.dim(t, n + 1);
                coff += P.dim(s, n);
            }
            out.set_action(a, n, std::move(m));
        }
    out.finalize(false);
    return out;
}

// ---------------------------------------------------------------------------
// Modules with path-word bases

enum class WordAction { append, delete_front };

inline std::vector<int> word_key(const Path& p) {
    if (p.trivial()) return {-1 - p.source};
    return p.arrows;
}

// Module whose basis is a set of words. In append mode a word sits at its
// target and arrows act by appending; in delete_front mode a word sits at its
// source and arrow a acts by removing a leading a. Results outside the set are zero.
inline GradedModule word_module(AlgebraPtr A, const std::vector<Path>& words,
                                const std::function<int(const Path&)>& degree, WordAction mode,
                                bool complete_below, bool complete_above, int lo_hint, int hi_hint) {
    const auto& alg = *A;
    int lo = lo_hint, hi = hi_hint;
    for (auto& w : words) {
        lo = std::min(lo, degree(w));
        hi = std::max(hi, degree(w));
    }
    GradedModule M(A, lo, hi, complete_below, complete_above);
    auto home = [&](const Path& w) { return mode == WordAction::append ? w.target : w.source; };
    std::map<std::pair<int, int>, std::vector<const Path*>> blocks;
    for (auto& w : words) blocks[{degree(w), home(w)}].push_back(&w);
    std::unordered_map<std::vector<int>, std::pair<int, int>, WordHash> where;  // key -> (degree, position)
    for (auto& [key, ws] : blocks) {
        std::sort(ws.begin(), ws.end(), [](const Path* a, const Path* b) { return a->arrows < b->arrows; });
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            labels.push_back(alg.word_string(*ws[i]));
            where[word_key(*ws[i])] = {key.first, static_cast<int>(i)};
        }
        M.set_basis(key.second, key.first, std::move(labels));
    }
    for (int n = lo; n < hi; ++n)
        for (int a = 0; a < alg.num_arrows(); ++a) {
            int s = alg.source(a), t = alg.target(a);
            SparseMatrix m(M.dim(t, n + 1), M.dim(s, n));
            auto it = blocks.find({n, s});
            if (it != blocks.end()) {
                for (std::size_t j = 0; j < it->second.size(); ++j) {
                    const Path& w = *it->second[j];
                    std::optional<Path> img;
                    if (mode == WordAction::append) {
                        if (w.trivial() || alg.allowed(w.arrows.back(), a)) {
                            Path r = w;
                            r.arrows.push_back(a);
                            r.target = t;
                            img = r;
                        }
                    } else if (!w.trivial() && w.arrows.front() == a) {
                        Path r{t, w.target, std::vector<int>(w.arrows.begin() + 1, w.arrows.end())};
                        img = r;
                    }
                    if (!img) continue;
                    auto f = where.find(word_key(*img));
                    if (f == where.end() || f->second.first != n + 1) continue;
                    m.set_column(static_cast<int>(j), unit_vector(f->second.second));
                }
            }
            M.set_action(a, n, std::move(m));
        }
    M.finalize(false);
    return M;
}

enum class StandardKind { simple, projective, injective, arrow_ideal, arrow_coideal, cyclic, cocyclic };

// P_y<d> / sum_{b in killed} b*Lambda: words from y not starting with a killed arrow.
inline GradedModule cyclic_module(AlgebraPtr A, int y, int d, const std::vector<int>& killed, const Limits& lim) {
    auto lv = enumerate_words(*A, y, WordDirection::from, lim.degree - d, lim.budget);
    std::vector<Path> ws;
    for (auto& level : lv.levels)
        for (auto& w : level)
            if (w.trivial() || std::find(killed.begin(), killed.end(), w.arrows.front()) == killed.end())
                ws.push_back(w);
    return word_module(A, ws, [d](const Path& w) { return d + w.length(); }, WordAction::append, true, lv.complete, d,
                       d + static_cast<int>(lv.levels.size()) - 1);
}

// Words into y not ending with an excluded arrow, socle at degree d.
inline GradedModule cocyclic_module(AlgebraPtr A, int y, int d, const std::vector<int>& excluded,
                                    const Limits& lim) {
    auto lv = enumerate_words(*A, y, WordDirection::into, d + lim.degree, lim.budget);
    std::vector<Path> ws;
    for (auto& level : lv.levels)
        for (auto& w : level)
            if (w.trivial() || std::find(excluded.begin(), excluded.end(), w.arrows.back()) == excluded.end())
                ws.push_back(w);
    return word_module(A, ws, [d](const Path& w) { return d - w.length(); }, WordAction::delete_front, lv.complete,
                       true, d - static_cast<int>(lv.levels.size()) + 1, d);
}

inline GradedModule simple_module(AlgebraPtr A, int x, int d = 0) {
    GradedModule M(A, d, d);
    M.set_basis(x, d, {"e_" + A->vertex_name(x)});
    M.finalize();
    return M;
}

inline GradedModule projective_module(AlgebraPtr A, int x, int d, const Limits& lim) {
    return cyclic_module(std::move(A), x, d, {}, lim);
}

inline GradedModule injective_module(AlgebraPtr A, int x, int d, const Limits& lim) {
    return cocyclic_module(std::move(A), x, d, {}, lim);
}

// Lambda a: words from source(a) whose first arrow is a, in their natural degrees.
inline GradedModule arrow_ideal(AlgebraPtr A, int a, const Limits& lim) {
    auto lv = enumerate_words(*A, A->source(a), WordDirection::from, lim.degree, lim.budget);
    std::vector<Path> ws;
    for (auto& level : lv.levels)
        for (auto& w : level)
            if (!w.trivial() && w.arrows.front() == a) ws.push_back(w);
    return word_module(A, ws, [](const Path& w) { return w.length(); }, WordAction::append, true, lv.complete, 1,
                       static_cast<int>(lv.levels.size()) - 1);
}

// Words into target(a) ending with a, in degree minus their length; an arrow
// removes a leading letter and the result is kept only if it still ends with a.
inline GradedModule arrow_coideal(AlgebraPtr A, int a, const Limits& lim) {
    auto lv = enumerate_words(*A, A->target(a), WordDirection::into, lim.degree, lim.budget);
    std::vector<Path> ws;
    for (auto& level : lv.levels)
        for (auto& w : level)
            if (!w.trivial() && w.arrows.back() == a) ws.push_back(w);
    return word_module(A, ws, [](const Path& w) { return -w.length(); }, WordAction::delete_front, lv.complete, true,
                       1 - static_cast<int>(lv.levels.size()), -1);
}

// Relation sets used to recognise arrow ideals and coideals as cyclic modules.
inline std::vector<int> right_annihilator_arrows(const MonomialAlgebra& A, int a) {
    std::vector<int> out;
    for (int b : A.out_arrows(A.target(a)))
        if (A.is_relation(a, b)) out.push_back(b);
    return out;
}
inline std::vector<int> left_annihilator_arrows(const MonomialAlgebra& A, int a) {
    std::vector<int> out;
    for (int c : A.in_arrows(A.source(a)))
        if (A.is_relation(c, a)) out.push_back(c);
    return out;
}

// ---------------------------------------------------------------------------
// Morphisms

class GradedMorphism {
public:
    GradedMorphism() = default;
    GradedMorphism(ModulePtr source, ModulePtr target) : source_(std::move(source)), target_(std::move(target)) {
        if (!same_algebra(*source_, *target_)) throw Error("morphism between modules over different algebras");
        const int nv = source_->algebra().num_vertices();
        blocks_.assign(std::max(0, source_->hi() - source_->lo() + 1), std::vector<SparseMatrix>(nv));
        for (int n = source_->lo(); n <= source_->hi(); ++n)
            for (int v = 0; v < nv; ++v)
                blocks_[n - source_->lo()][v] = SparseMatrix(target_->dim(v, n), source_->dim(v, n));
    }

    const GradedModule& source() const { return *source_; }
    const GradedModule& target() const { return *target_; }
    const ModulePtr& source_ptr() const { return source_; }
    const ModulePtr& target_ptr() const { return target_; }

    const SparseMatrix& block(int v, int n) const {
        static const SparseMatrix empty;
        if (n < source_->lo() || n > source_->hi()) return empty;
        return blocks_[n - source_->lo()][v];
    }
    void set_block(int v, int n, SparseMatrix m) {
        if (m.rows() != target_->dim(v, n) || m.cols() != source_->dim(v, n))
            throw Error("morphism block shape mismatch at degree " + std::to_string(n));
        blocks_[n - source_->lo()][v] = std::move(m);
    }

    // Range of degrees on which both source and target data are known.
    std::pair<int, int> known_range() const {
        return {std::max(source_->lo(), target_->known_lo()), std::min(source_->hi(), target_->known_hi())};
    }

    // First (arrow, degree) where f does not commute with the action, if any.
    std::optional<std::pair<int, int>> commutation_failure() const {
        const auto& A = source_->algebra();
        auto [lo, hi] = known_range();
        for (int n = lo; n < hi; ++n)
            for (int a = 0; a < A.num_arrows(); ++a) {
                int s = A.source(a), t = A.target(a);
                if (source_->dim(s, n) == 0) continue;
                if (n + 1 > target_->known_hi()) continue;
                SparseMatrix lhs = multiply(block(t, n + 1), source_->action(a, n));
                SparseMatrix rhs = multiply(target_->action(a, n), block(s, n));
                if (!(lhs == rhs)) return std::make_pair(a, n);
            }
        return std::nullopt;
    }
    bool is_module_map() const { return !commutation_failure(); }

    bool is_zero() const {
        for (auto& row : blocks_)
            for (auto& b : row)
                if (!b.is_zero()) return false;
        return true;
    }

private:
    ModulePtr source_;
    ModulePtr target_;
    std::vector<std::vector<SparseMatrix>> blocks_;
};

inline GradedMorphism compose(const GradedMorphism& g, const GradedMorphism& f) {
    GradedMorphism h(f.source_ptr(), g.target_ptr());
    const auto& S = f.source();
    for (int n = S.lo(); n <= S.hi(); ++n)
        for (int v = 0; v < S.algebra().num_vertices(); ++v) {
            if (S.dim(v, n) == 0 || g.target().dim(v, n) == 0) continue;
            h.set_block(v, n, multiply(g.block(v, n), f.block(v, n)));
        }
    return h;
}

inline GradedMorphism identity_morphism(ModulePtr M) {
    GradedMorphism f(M, M);
    for (int n = M->lo(); n <= M->hi(); ++n)
        for (int v = 0; v < M->algebra().num_vertices(); ++v) f.set_block(v, n, SparseMatrix::identity(M->dim(v, n)));
    return f;
}

// Subspaces per (degree, vertex) of a module, used for kernels, images and radicals.
struct SubspaceFamily {
    int lo = 0;
    std::vector<std::vector<Subspace>> spaces;  // [n - lo][v]
    const Subspace& at(int v, int n) const { return spaces[n - lo][v]; }
};

struct SubmoduleResult {
    ModulePtr module;
    GradedMorphism inclusion;
    SubspaceFamily spaces;  // the submodule inside the ambient module
};

// Submodule of `ambient` given by action-closed subspaces on [lo, hi].
inline SubmoduleResult submodule_from_spaces(ModulePtr ambient, SubspaceFamily fam, int lo, int hi, bool below,
                                             bool above, const std::string& tag) {
    const auto& A = ambient->algebra();
    GradedModule K(ambient->algebra_ptr(), lo, hi, below, above);
    for (int n = lo; n <= hi; ++n)
        for (int v = 0; v < A.num_vertices(); ++v) {
            const Subspace& s = fam.at(v, n);
            std::vector<std::string> labels;
            const auto& amb = ambient->labels(v, n);
            for (int p : s.pivots()) labels.push_back(tag + "(" + amb[p] + ")");
            K.set_basis(v, n, std::move(labels));
        }
    for (int n = lo; n < hi; ++n)
        for (int a = 0; a < A.num_arrows(); ++a) {
            int s = A.source(a), t = A.target(a);
            const Subspace& from = fam.at(s, n);
            const Subspace& to = fam.at(t, n + 1);
            SparseMatrix m(to.dim(), from.dim());
            for (int j = 0; j < from.dim(); ++j) {
                SparseVec w = ambient->action(a, n).apply(from.basis()[j]);
                if (!to.contains(w))
                    throw PropertyViolation("subspace not closed under arrow " + A.arrow_name(a) + " at degree " +
                                            std::to_string(n));
                m.set_column(j, to.coordinates(w));
            }
            K.set_action(a, n, std::move(m));
        }
    K.finalize();
    auto Kp = share(std::move(K));
    GradedMorphism inc(Kp, ambient);
    for (int n = lo; n <= hi; ++n)
        for (int v = 0; v < A.num_vertices(); ++v) {
            if (Kp->dim(v, n) == 0) continue;
            inc.set_block(v, n, fam.at(v, n).basis_matrix());
        }
    return {Kp, std::move(inc), std::move(fam)};
}

inline SubmoduleResult kernel(const GradedMorphism& f) {
    const auto& S = f.source();
    auto [lo, hi] = f.known_range();
    bool below = S.complete_below() && lo <= S.lo();
    bool above = S.complete_above() && hi >= S.hi();
    if (lo > hi) {
        lo = S.lo();
        hi = lo - 1;
    }
    SubspaceFamily fam{lo, {}};
    for (int n = lo; n <= hi; ++n) {
        fam.spaces.emplace_back();
        for (int v = 0; v < S.algebra().num_vertices(); ++v) fam.spaces.back().push_back(null_space(f.block(v, n)));
    }
    return submodule_from_spaces(f.source_ptr(), std::move(fam), lo, hi, below, above, "ker");
}

inline SubmoduleResult image(const GradedMorphism& f) {
    const auto& T = f.target();
    const auto& S = f.source();
    int lo = std::max(T.lo(), S.known_lo()), hi = std::min(T.hi(), S.known_hi());
    bool below = T.complete_below() && lo <= T.lo();
    bool above = T.complete_above() && hi >= T.hi();
    if (lo > hi) {
        lo = T.lo();
        hi = lo - 1;
    }
    SubspaceFamily fam{lo, {}};
    for (int n = lo; n <= hi; ++n) {
        fam.spaces.emplace_back();
        for (int v = 0; v < T.algebra().num_vertices(); ++v) {
            if (S.dim(v, n) == 0)
                fam.spaces.back().push_back(Subspace(T.dim(v, n)));
            else
                fam.spaces.back().push_back(column_space(f.block(v, n)));
        }
    }
    return submodule_from_spaces(f.target_ptr(), std::move(fam), lo, hi, below, above, "im");
}

struct QuotientResult {
    ModulePtr module;
    GradedMorphism projection;
    SubspaceFamily killed;  // the subspaces divided out, inside the ambient module
};

// Quotient of `ambient` by action-closed subspaces; the quotient basis is the
// set of non-pivot standard vectors.
inline QuotientResult quotient_by_spaces(ModulePtr ambient, SubspaceFamily fam, int lo, int hi, bool below,
                                         bool above) {
    const auto& A = ambient->algebra();
    GradedModule Q(ambient->algebra_ptr(), lo, hi, below, above);
    std::vector<std::vector<std::vector<int>>> comp(std::max(0, hi - lo + 1));
    std::vector<std::vector<std::vector<int>>> slot(std::max(0, hi - lo + 1));
    for (int n = lo; n <= hi; ++n) {
        comp[n - lo].resize(A.num_vertices());
        slot[n - lo].resize(A.num_vertices());
        for (int v = 0; v < A.num_vertices(); ++v) {
            const Subspace& s = fam.at(v, n);
            auto c = s.complement();
            std::vector<int> sl(ambient->dim(v, n), -1);
            std::vector<std::string> labels;
            for (std::size_t k = 0; k < c.size(); ++k) {
                sl[c[k]] = static_cast<int>(k);
                labels.push_back("[" + ambient->labels(v, n)[c[k]] + "]");
            }
            Q.set_basis(v, n, std::move(labels));
            comp[n - lo][v] = std::move(c);
            slot[n - lo][v] = std::move(sl);
        }
    }
    auto project = [&](int v, int n, const SparseVec& x) {
        SparseVec r = fam.at(v, n).reduce(x);
        SparseVec out;
        for (auto& e : r) out.push_back({slot[n - lo][v][e.index], e.value});
        return out;
    };
    for (int n = lo; n < hi; ++n)
        for (int a = 0; a < A.num_arrows(); ++a) {
            int s = A.source(a), t = A.target(a);
            const auto& c = comp[n - lo][s];
            SparseMatrix m(Q.dim(t, n + 1), static_cast<int>(c.size()));
            for (std::size_t j = 0; j < c.size(); ++j)
                m.set_column(static_cast<int>(j), project(t, n + 1, ambient->action(a, n).column(c[j])));
            Q.set_action(a, n, std::move(m));
        }
    Q.finalize();
    auto Qp = share(std::move(Q));
    GradedMorphism proj(ambient, Qp);
    for (int n = lo; n <= hi; ++n)
        for (int v = 0; v < A.num_vertices(); ++v) {
            int d = ambient->dim(v, n);
            if (d == 0) continue;
            SparseMatrix m(Qp->dim(v, n), d);
            for (int j = 0; j < d; ++j) m.set_column(j, project(v, n, unit_vector(j)));
            proj.set_block(v, n, std::move(m));
        }
    return {Qp, std::move(proj), std::move(fam)};
}

inline QuotientResult cokernel(const GradedMorphism& f) {
    auto im = image(f);
    const auto& T = f.target();
    int lo = im.spaces.lo, hi = lo + static_cast<int>(im.spaces.spaces.size()) - 1;
    return quotient_by_spaces(f.target_ptr(), std::move(im.spaces), lo, hi, im.module->complete_below(),
                              im.module->complete_above() || (T.complete_above() && hi >= T.hi()));
}

// Express a morphism g: X -> M landing inside the submodule `sub` as a morphism X -> sub.
inline GradedMorphism factor_through(const GradedMorphism& g, const SubmoduleResult& sub) {
    const ModulePtr& Kp = sub.module;
    GradedMorphism h(g.source_ptr(), Kp);
    const auto& X = g.source();
    for (int n = X.lo(); n <= X.hi(); ++n) {
        if (n < Kp->lo() || n > Kp->hi()) continue;
        for (int v = 0; v < X.algebra().num_vertices(); ++v) {
            if (X.dim(v, n) == 0 || Kp->dim(v, n) == 0) continue;
            const Subspace& s = sub.spaces.at(v, n);
            const SparseMatrix& b = g.block(v, n);
            SparseMatrix m(s.dim(), b.cols());
            for (int j = 0; j < b.cols(); ++j) {
                if (!s.contains(b.column(j))) throw PropertyViolation("morphism does not land in the submodule");
                m.set_column(j, s.coordinates(b.column(j)));
            }
            h.set_block(v, n, std::move(m));
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Radical, top, socle

inline Subspace radical_space(const GradedModule& M, int v, int n) {
    Subspace r(M.dim(v, n));
    const auto& A = M.algebra();
    for (int a : A.in_arrows(v)) {
        const SparseMatrix& m = M.action(a, n - 1);
        for (int j = 0; j < m.cols(); ++j) r.insert(m.column(j));
    }
    return r;
}

inline Subspace socle_space(const GradedModule& M, int v, int n) {
    const auto& A = M.algebra();
    std::vector<const SparseMatrix*> parts;
    for (int b : A.out_arrows(v))
        if (M.action(b, n).cols() == M.dim(v, n)) parts.push_back(&M.action(b, n));
    return null_space(vstack(parts, M.dim(v, n)));
}

struct TopSocle {
    DimTable top;
    DimTable socle;
};

// Top is exact for degrees in the window on the bottom-complete side; socle
// needs the degree above, so it is only reported where that is known.
inline TopSocle top_and_socle(const GradedModule& M) {
    TopSocle ts;
    for (int n = M.lo(); n <= M.hi(); ++n)
        for (int v = 0; v < M.algebra().num_vertices(); ++v) {
            int d = M.dim(v, n);
            if (!d) continue;
            if (n > M.lo() || M.complete_below()) {
                int t = d - radical_space(M, v, n).dim();
                if (t) ts.top[{v, n}] = t;
            }
            if (n < M.hi() || M.complete_above()) {
                int s = socle_space(M, v, n).dim();
                if (s) ts.socle[{v, n}] = s;
            }
        }
    return ts;
}

// Apply the action of a word to a vector sitting at (word.source, n).
inline SparseVec apply_word(const GradedModule& M, const Path& word, int n, SparseVec x) {
    for (int a : word.arrows) {
        if (x.empty()) break;
        const SparseMatrix& m = M.action(a, n);
        if (m.cols() == 0) return {};
        x = m.apply(x);
        ++n;
    }
    return x;
}

// ---------------------------------------------------------------------------
// Truncation

enum class TruncMode { le, ge };
enum class PartRole { submodule, quotient };

// Degrees [lo, hi] of M as a submodule or quotient; throws if the requested
// role is not action-closed.
inline GradedModule degree_part(const GradedModule& M, int lo, int hi, PartRole role) {
    const auto& A = M.algebra();
    auto fail = [&](int a, int n) {
        throw Error("orientation violation: degrees [" + std::to_string(lo) + "," + std::to_string(hi) + "] " +
                    (role == PartRole::submodule ? "not a submodule" : "not a quotient") + " (arrow " +
                    A.arrow_name(a) + " at degree " + std::to_string(n) + ")");
    };
    for (int a = 0; a < A.num_arrows(); ++a) {
        if (role == PartRole::submodule && !M.action(a, hi).is_zero()) fail(a, hi);
        if (role == PartRole::quotient && !M.action(a, lo - 1).is_zero()) fail(a, lo - 1);
    }
    int l = std::max(lo, M.lo()), h = std::min(hi, M.hi());
    bool below = M.complete_below() || lo > M.lo();
    bool above = M.complete_above() || hi < M.hi();
    if (l > h) return GradedModule(M.algebra_ptr(), l, l - 1, below, above);
    return slice(M, l, h, below, above);
}

struct Truncation {
    GradedModule sub;       // the high-degree part
    GradedModule quotient;  // the low-degree part
    std::string orientation;
};

// mode le: 0 -> tau_{>r} M -> M -> tau_{<=r} M -> 0
// mode ge: 0 -> tau_{>=r} M -> M -> tau_{<r} M -> 0
inline Truncation truncate(const GradedModule& M, TruncMode mode, int r) {
    int cut = mode == TruncMode::le ? r : r - 1;  // last degree of the quotient
    const int far = std::max(std::abs(M.lo()), std::abs(M.hi())) + std::abs(r) + 2;
    Truncation t;
    t.sub = degree_part(M, cut + 1, far, PartRole::submodule);
    t.quotient = degree_part(M, -far, cut, PartRole::quotient);
    t.orientation = "high part submodule, low part quotient";
    return t;
}

// ---------------------------------------------------------------------------
// Hilbert data

struct HilbertData {
    int bound = 0;
    std::map<std::pair<int, int>, int> coefficients;  // (vertex, degree) -> dim
    std::map<int, int> totals;                        // degree -> dim
};

inline HilbertData hilbert_truncated(const GradedModule& M, int D) {
    if (!M.complete_above() && M.hi() < D)
        throw WindowError("window insufficient: known up to degree " + std::to_string(M.hi()) + ", need " +
                          std::to_string(D));
    if (!M.complete_below() && M.lo() > -D)
        throw WindowError("window insufficient: known down to degree " + std::to_string(M.lo()) + ", need " +
                          std::to_string(-D));
    HilbertData h;
    h.bound = D;
    for (int n = std::max(M.lo(), -D); n <= std::min(M.hi(), D); ++n)
        for (int v = 0; v < M.algebra().num_vertices(); ++v)
            if (int d = M.dim(v, n)) {
                h.coefficients[{v, n}] = d;
                h.totals[n] += d;
            }
    return h;
}

}  // namespace koszulkit

#pragma once

// Minimal graded projective resolutions and injective coresolutions by
// degree-wise linear algebra, Betti tables, linear parts, linearity defect,
// and decomposition of syzygies into arrow ideals (cosyzygies into coideals).

#include <climits>
#include <optional>
#include <tuple>

#include "complex.hpp"
#include "random.hpp"

namespace koszulkit {

struct BettiTable {
    SummandKind kind = SummandKind::projective;
    std::map<std::tuple<int, int, int>, int> entries;  // (step, degree, vertex) -> multiplicity
    int steps = 0;                                      // steps computed
    bool terminated = false;                            // resolution is finite and complete
    // Projective: multiplicities are certified for degrees <= degree_bound;
    // injective: for degrees >= degree_bound.
    int degree_bound = 0;

    int multiplicity(int step, int degree, int vertex) const {
        auto it = entries.find({step, degree, vertex});
        return it == entries.end() ? 0 : it->second;
    }
    int total(int step) const {
        int t = 0;
        for (auto& [k, m] : entries)
            if (std::get<0>(k) == step) t += m;
        return t;
    }
    bool certified(int degree) const {
        return kind == SummandKind::projective ? degree <= degree_bound : degree >= degree_bound;
    }
};

inline std::string format_betti(const BettiTable& b, const MonomialAlgebra& A) {
    std::string s = "step\tvertex\tdegree\tmultiplicity\n";
    for (auto& [k, m] : b.entries) {
        auto [step, degree, vertex] = k;
        s += std::to_string(step) + "\t" + A.vertex_name(vertex) + "\t" + std::to_string(degree) + "\t" +
             std::to_string(m) + "\n";
    }
    return s;
}

struct Resolution {
    SummandKind kind = SummandKind::projective;
    // projective: term -s is the s-th cover; injective: term s is the s-th hull
    SummandComplex complex;
    std::vector<ModulePtr> syzygies;  // [0] = M, [s] = (co)syzygy s
    std::vector<ExpandedTerm> terms;  // expanded (co)vers, by step
    BettiTable betti;
};

// (vertex, degree) -> basis position -> (summand, word) of an expanded term.
using ReverseIndex = std::map<std::pair<int, int>, std::vector<std::pair<int, Path>>>;

inline ReverseIndex reverse_index(SummandKind kind, const ExpandedTerm& t, const std::vector<Summand>& summands) {
    ReverseIndex r;
    for (std::size_t k = 0; k < summands.size(); ++k)
        for (const Path& w : t.words[k]) {
            bool proj = kind == SummandKind::projective;
            int v = proj ? w.target : w.source;
            int n = proj ? summands[k].degree + w.length() : summands[k].degree - w.length();
            auto pos = locate(t, static_cast<int>(k), w, v, n);
            if (!pos) continue;
            auto& slot = r[{v, n}];
            if (static_cast<int>(slot.size()) <= *pos) slot.resize(*pos + 1, {-1, Path{}});
            slot[*pos] = {static_cast<int>(k), w};
        }
    return r;
}

namespace detail {

inline SparseMatrix from_columns(int rows, const std::vector<SparseVec>& cols) {
    SparseMatrix m(rows, static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(static_cast<int>(j), cols[j]);
    return m;
}

// Entries of a map into an expanded term, read off from image vectors.
inline void add_image_entries(Entries& e, int col, const SparseVec& image, const ReverseIndex& rev, int v, int n) {
    auto it = rev.find({v, n});
    for (auto& x : image) {
        const auto& [k, w] = it->second.at(x.index);
        add_term(e[{k, col}], w, x.value);
    }
}

}  // namespace detail

inline Resolution minimal_projective_resolution(const GradedModule& M, int steps, const Limits& lim) {
    const AlgebraPtr& A = M.algebra_ptr();
    const int nv = A->num_vertices();
    Resolution R;
    R.kind = SummandKind::projective;
    R.betti.kind = SummandKind::projective;
    R.betti.degree_bound = INT_MAX / 4;
    if (!M.complete_below()) throw Error("projective resolution needs a module bounded below");
    ModulePtr K = share(M);
    R.syzygies.push_back(K);
    std::vector<std::vector<Summand>> covers;
    std::vector<Entries> diffs;  // diffs[s] : cover s -> cover s-1 (s >= 1)
    std::optional<SubmoduleResult> prev_kernel;
    ReverseIndex prev_rev;
    for (int s = 0; s < steps; ++s) {
        std::vector<Summand> gens;
        std::vector<SparseVec> gen_vecs;
        for (int n = K->lo(); n <= K->hi(); ++n)
            for (int v = 0; v < nv; ++v) {
                if (K->dim(v, n) == 0) continue;
                for (int idx : radical_space(*K, v, n).complement()) {
                    gens.push_back({v, n, ""});
                    gen_vecs.push_back(unit_vector(idx));
                }
            }
        R.betti.degree_bound = std::min(R.betti.degree_bound, K->known_hi());
        if (gens.empty()) {
            R.betti.terminated = K->completeness() == Completeness::exact;
            break;
        }
        for (auto& g : gens) ++R.betti.entries[{s, g.degree, g.vertex}];
        // differential from this cover into the previous one
        if (s > 0) {
            Entries e;
            for (std::size_t j = 0; j < gens.size(); ++j) {
                SparseVec img = prev_kernel->inclusion.block(gens[j].vertex, gens[j].degree).apply(gen_vecs[j]);
                detail::add_image_entries(e, static_cast<int>(j), img, prev_rev, gens[j].vertex, gens[j].degree);
            }
            diffs.push_back(std::move(e));
        } else {
            diffs.emplace_back();
        }
        ExpandedTerm cover = expand_term(SummandKind::projective, A, gens, lim);
        GradedMorphism pi(cover.module, K);
        std::map<std::pair<int, int>, std::vector<std::pair<int, SparseVec>>> cols;
        for (std::size_t k = 0; k < gens.size(); ++k)
            for (const Path& w : cover.words[k]) {
                int n = gens[k].degree + w.length();
                if (n > K->hi()) continue;
                auto pos = locate(cover, static_cast<int>(k), w, w.target, n);
                if (!pos) continue;
                cols[{w.target, n}].push_back({*pos, apply_word(*K, w, gens[k].degree, gen_vecs[k])});
            }
        for (auto& [vn, list] : cols) {
            SparseMatrix m(K->dim(vn.first, vn.second), cover.module->dim(vn.first, vn.second));
            for (auto& [c, x] : list) m.set_column(c, std::move(x));
            pi.set_block(vn.first, vn.second, std::move(m));
        }
        auto ker = kernel(pi);
        prev_rev = reverse_index(SummandKind::projective, cover, gens);
        covers.push_back(gens);
        R.terms.push_back(std::move(cover));
        K = ker.module;
        R.syzygies.push_back(K);
        prev_kernel = std::move(ker);
        R.betti.steps = s + 1;
    }
    if (R.betti.steps == steps && K->is_zero() && K->completeness() == Completeness::exact)
        R.betti.terminated = true;
    const int S = static_cast<int>(covers.size());
    R.complex = SummandComplex(SummandKind::projective, A, -(std::max(S, 1) - 1));
    if (S == 0) {
        R.complex.push_term({});
        return R;
    }
    for (int s = S - 1; s >= 0; --s) R.complex.push_term(covers[s]);
    for (int s = S - 1; s >= 1; --s) R.complex.set_diff(-s, diffs[s]);
    if (!R.betti.terminated) R.complex.set_exact_from(-(S - 1));
    return R;
}

// Socle functionals: coordinates at the pivots of the socle basis.
inline Resolution minimal_injective_coresolution(const GradedModule& M, int steps, const Limits& lim) {
    const AlgebraPtr& A = M.algebra_ptr();
    const int nv = A->num_vertices();
    Resolution R;
    R.kind = SummandKind::injective;
    R.betti.kind = SummandKind::injective;
    R.betti.degree_bound = INT_MIN / 4;
    if (!M.complete_above()) throw Error("injective coresolution needs a module bounded above");
    ModulePtr C = share(M);
    R.syzygies.push_back(C);
    std::vector<std::vector<Summand>> hulls;
    std::vector<Entries> diffs;  // diffs[s] : hull s -> hull s+1
    std::optional<QuotientResult> prev_quot;
    std::vector<Summand> prev_socle;
    for (int s = 0; s < steps; ++s) {
        std::vector<Summand> socs;
        std::vector<int> pivots;
        for (int n = C->hi(); n >= C->lo(); --n)
            for (int v = 0; v < nv; ++v) {
                if (C->dim(v, n) == 0) continue;
                Subspace soc = socle_space(*C, v, n);
                for (int p : soc.pivots()) {
                    socs.push_back({v, n, ""});
                    pivots.push_back(p);
                }
            }
        R.betti.degree_bound = std::max(R.betti.degree_bound, C->known_lo());
        if (socs.empty()) {
            R.betti.terminated = C->completeness() == Completeness::exact;
            break;
        }
        for (auto& g : socs) ++R.betti.entries[{s, g.degree, g.vertex}];
        if (s > 0) {
            // entry (h', h) coefficient of word w = f_{h'}(projection of the word w of summand h)
            std::map<std::pair<int, int>, std::vector<int>> at;  // (v, n) -> new summands there
            for (std::size_t h = 0; h < socs.size(); ++h) at[{socs[h].vertex, socs[h].degree}].push_back(h);
            Entries e;
            const ExpandedTerm& prev_hull = R.terms.back();
            for (std::size_t h = 0; h < prev_socle.size(); ++h)
                for (const Path& w : prev_hull.words[h]) {
                    int n = prev_socle[h].degree - w.length();
                    auto it = at.find({w.source, n});
                    if (it == at.end()) continue;
                    auto pos = locate(prev_hull, static_cast<int>(h), w, w.source, n);
                    if (!pos) continue;
                    SparseVec x = prev_quot->projection.block(w.source, n).column(*pos);
                    for (int h2 : it->second) add_term(e[{h2, static_cast<int>(h)}], w, get(x, pivots[h2]));
                }
            std::erase_if(e, [](const auto& kv) { return kv.second.empty(); });
            diffs.push_back(std::move(e));
        }
        ExpandedTerm hull = expand_term(SummandKind::injective, A, socs, lim);
        GradedMorphism iota(C, hull.module);
        // rows[(y, k)] = list of (row position, row vector on C_k(y))
        std::map<std::pair<int, int>, std::vector<std::pair<int, SparseVec>>> rows;
        for (std::size_t h = 0; h < socs.size(); ++h) {
            std::unordered_map<std::vector<int>, SparseVec, WordHash> r;
            for (const Path& q : hull.words[h]) {
                int k = socs[h].degree - q.length();
                SparseVec row;
                if (q.trivial()) {
                    row = unit_vector(pivots[h]);
                } else {
                    Path rest{A->target(q.arrows.front()), q.target, std::vector<int>(q.arrows.begin() + 1, q.arrows.end())};
                    auto it = r.find(word_key(rest));
                    if (it != r.end() && !it->second.empty() && k >= C->lo() - 1)
                        row = C->action(q.arrows.front(), k).apply_left(it->second);
                }
                r[word_key(q)] = row;
                if (k < C->lo() || row.empty()) continue;
                auto pos = locate(hull, static_cast<int>(h), q, q.source, k);
                if (pos) rows[{q.source, k}].push_back({*pos, row});
            }
        }
        for (auto& [yk, list] : rows) {
            SparseMatrix t(C->dim(yk.first, yk.second), hull.module->dim(yk.first, yk.second));
            for (auto& [p, row] : list) t.set_column(p, std::move(row));
            iota.set_block(yk.first, yk.second, t.transpose());
        }
        auto quot = cokernel(iota);
        hulls.push_back(socs);
        R.terms.push_back(std::move(hull));
        prev_socle = socs;
        C = quot.module;
        R.syzygies.push_back(C);
        prev_quot = std::move(quot);
        R.betti.steps = s + 1;
    }
    if (R.betti.steps == steps && C->is_zero() && C->completeness() == Completeness::exact) R.betti.terminated = true;
    const int S = static_cast<int>(hulls.size());
    R.complex = SummandComplex(SummandKind::injective, A, 0);
    if (S == 0) {
        R.complex.push_term({});
        return R;
    }
    for (int s = 0; s < S; ++s) R.complex.push_term(hulls[s]);
    for (int s = 0; s + 1 < S; ++s) R.complex.set_diff(s, diffs[s]);
    if (!R.betti.terminated) R.complex.set_exact_to(S - 1);
    return R;
}

// Keeps only the arrow (length one) entries of each differential.
inline SummandComplex linear_part(const SummandComplex& X) {
    SummandComplex Y = X;
    for (auto& e : Y.mutable_diffs()) {
        for (auto& [key, comb] : e) std::erase_if(comb, [](const auto& kv) { return kv.first.length() != 1; });
        std::erase_if(e, [](const auto& kv) { return kv.second.empty(); });
    }
    return Y;
}

// ---------------------------------------------------------------------------
// Decompositions into arrow ideals and coideals

struct ArrowSummand {
    int arrow = 0;
    int shift = 0;
    bool operator==(const ArrowSummand&) const = default;
};

namespace detail {

inline std::vector<std::vector<int>> subsets(const std::vector<int>& xs) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(xs.size());
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(xs[i]);
        out.push_back(std::move(s));
    }
    return out;
}

// Mobius inversion: n(T) = sum over S containing T of (-1)^{|S \ T|} f(S), subsets indexed by mask.
inline std::vector<int> mobius(const std::vector<int>& f, int n) {
    std::vector<int> out(f.size(), 0);
    for (int t = 0; t < (1 << n); ++t)
        for (int s = 0; s < (1 << n); ++s)
            if ((s & t) == t) out[t] += (__builtin_popcount(s ^ t) % 2 ? -1 : 1) * f[s];
    return out;
}

inline int nullity(const std::vector<const SparseMatrix*>& parts, int cols) {
    if (parts.empty()) return cols;
    return null_space(vstack(parts, cols)).dim();
}

inline SparseVec random_combination(Rng& rng, const std::vector<SparseVec>& basis) {
    SparseVec v;
    for (auto& b : basis) v = axpy(v, Rational(rng.uniform(-5, 5)), b);
    return v;
}

// Is the morphism blockwise invertible on the given window?
inline bool bijective_on(const std::map<std::pair<int, int>, SparseMatrix>& blocks, const GradedModule& X,
                         const GradedModule& Y, int lo, int hi) {
    const int nv = X.algebra().num_vertices();
    for (int n = lo; n <= hi; ++n)
        for (int v = 0; v < nv; ++v) {
            int a = X.dim(v, n), b = Y.dim(v, n);
            if (a != b) return false;
            if (a == 0) continue;
            auto it = blocks.find({v, n});
            if (it == blocks.end() || rank(it->second) != a) return false;
        }
    return true;
}

// Words of a cyclic (append) or cocyclic (delete-front) word module, positioned as in word_module.
inline std::map<std::pair<int, int>, std::vector<Path>> word_blocks(const std::vector<Path>& ws, WordAction mode,
                                                                   int base) {
    std::map<std::pair<int, int>, std::vector<Path>> b;
    for (auto& w : ws) {
        bool app = mode == WordAction::append;
        int n = app ? base + w.length() : base - w.length();
        b[{app ? w.target : w.source, n}].push_back(w);
    }
    for (auto& [k, list] : b)
        std::sort(list.begin(), list.end(), [](const Path& x, const Path& y) { return x.arrows < y.arrows; });
    return b;
}

}  // namespace detail

// K = sum over i of L(a_i)<d_i>, found by matching annihilator sets of top
// elements and verified by an explicit isomorphism. Throws PropertyViolation
// when no decomposition exists.
inline std::vector<ArrowSummand> decompose_into_arrow_ideals(const GradedModule& K, const Limits& lim) {
    const auto& A = K.algebra();
    const AlgebraPtr& Ap = K.algebra_ptr();
    const int nv = A.num_vertices();
    struct Piece {
        int vertex, degree;
        std::vector<int> killed;
        int arrow;
    };
    std::vector<Piece> pieces;
    for (int g = K.lo(); g <= K.hi(); ++g)
        for (int y = 0; y < nv; ++y) {
            if (K.dim(y, g) == 0) continue;
            std::vector<int> top = radical_space(K, y, g).complement();
            if (top.empty()) continue;
            if (g + 1 > K.known_hi())
                throw WindowError("window insufficient to decompose generators in degree " + std::to_string(g));
            const auto& outs = A.out_arrows(y);
            // rad^2 at degree g+1 for each target vertex
            std::vector<SparseMatrix> reduced;  // per out arrow: top -> K_{g+1}(z) / rad^2
            for (int b : outs) {
                int z = A.target(b);
                Subspace r2(K.dim(z, g + 1));
                for (int c : A.in_arrows(z)) {
                    Subspace rad = radical_space(K, A.source(c), g);
                    for (auto& x : rad.basis()) r2.insert(K.action(c, g).apply(x));
                }
                std::vector<SparseVec> cols;
                for (int idx : top) cols.push_back(r2.reduce(K.action(b, g).column(idx)));
                reduced.push_back(detail::from_columns(K.dim(z, g + 1), cols));
            }
            const int m = static_cast<int>(outs.size());
            if (m > 16) throw Error("too many arrows at a vertex for decomposition");
            std::vector<int> f(1 << m);
            for (int mask = 0; mask < (1 << m); ++mask) {
                std::vector<const SparseMatrix*> parts;
                for (int i = 0; i < m; ++i)
                    if (mask >> i & 1) parts.push_back(&reduced[i]);
                f[mask] = detail::nullity(parts, static_cast<int>(top.size()));
            }
            std::vector<int> mult = detail::mobius(f, m);
            for (int mask = 0; mask < (1 << m); ++mask) {
                if (mult[mask] < 0) throw PropertyViolation("inconsistent annihilator counts at vertex " + A.vertex_name(y));
                if (mult[mask] == 0) continue;
                std::vector<int> T;
                for (int i = 0; i < m; ++i)
                    if (mask >> i & 1) T.push_back(outs[i]);
                std::sort(T.begin(), T.end());
                int arrow = -1;
                for (int a : A.in_arrows(y))
                    if (right_annihilator_arrows(A, a) == T) {
                        arrow = a;
                        break;
                    }
                if (arrow < 0) {
                    std::string ts;
                    for (int b : T) ts += (ts.empty() ? "" : ",") + A.arrow_name(b);
                    throw PropertyViolation("generator at vertex " + A.vertex_name(y) + " degree " + std::to_string(g) +
                                            " with annihilator {" + ts + "} is not an arrow ideal");
                }
                for (int c = 0; c < mult[mask]; ++c) pieces.push_back({y, g, T, arrow});
            }
        }
    // explicit isomorphism from the sum of cyclic modules onto K
    auto [slo, shi] = K.support();
    const int hi = std::min(K.hi(), K.known_hi());
    Rng rng(0x5eed);
    for (int attempt = 0; attempt < 6; ++attempt) {
        std::map<std::pair<int, int>, std::vector<SparseVec>> cols;  // (v,n) -> image columns in order
        std::vector<GradedModule> parts;
        for (auto& p : pieces) {
            std::vector<const SparseMatrix*> ms;
            for (int b : p.killed) ms.push_back(&K.action(b, p.degree));
            Subspace hom = ms.empty() ? Subspace(K.dim(p.vertex, p.degree))
                                      : null_space(vstack(ms, K.dim(p.vertex, p.degree)));
            if (ms.empty())
                for (int i = 0; i < K.dim(p.vertex, p.degree); ++i) hom.insert(unit_vector(i));
            SparseVec v = detail::random_combination(rng, hom.basis());
            GradedModule Cm = cyclic_module(Ap, p.vertex, p.degree, p.killed, {hi, lim.budget});
            auto lv = enumerate_words(A, p.vertex, WordDirection::from, hi - p.degree, lim.budget);
            std::vector<Path> ws;
            for (auto& level : lv.levels)
                for (auto& w : level)
                    if (w.trivial() || std::find(p.killed.begin(), p.killed.end(), w.arrows.front()) == p.killed.end())
                        ws.push_back(w);
            for (auto& [vn, list] : detail::word_blocks(ws, WordAction::append, p.degree)) {
                if (vn.second > hi) continue;
                for (auto& w : list) cols[vn].push_back(apply_word(K, w, p.degree, v));
            }
            parts.push_back(std::move(Cm));
        }
        GradedModule S = direct_sum(parts, Ap);
        // columns of the sum are ordered summand by summand inside each block, as collected
        std::map<std::pair<int, int>, SparseMatrix> blocks;
        for (auto& [vn, list] : cols) blocks[vn] = detail::from_columns(K.dim(vn.first, vn.second), list);
        if (slo > shi || detail::bijective_on(blocks, S, K, slo, hi)) {
            std::vector<ArrowSummand> out;
            for (auto& p : pieces) out.push_back({p.arrow, p.degree - 1});
            return out;
        }
        if (pieces.empty()) break;
    }
    throw PropertyViolation("no isomorphism onto a sum of arrow ideals found");
}

// C = sum over i of C(a_i)<d_i>, dual to the above.
inline std::vector<ArrowSummand> decompose_into_arrow_coideals(const GradedModule& C, const Limits& lim) {
    const auto& A = C.algebra();
    const AlgebraPtr& Ap = C.algebra_ptr();
    const int nv = A.num_vertices();
    struct Piece {
        int vertex, degree;
        std::vector<int> excluded;
        int arrow;
    };
    std::vector<Piece> pieces;
    for (int d = C.hi(); d >= C.lo(); --d)
        for (int y = 0; y < nv; ++y) {
            if (C.dim(y, d) == 0) continue;
            Subspace soc = socle_space(C, y, d);
            if (soc.dim() == 0) continue;
            if (d - 1 < C.known_lo())
                throw WindowError("window insufficient to decompose socle in degree " + std::to_string(d));
            const auto& ins = A.in_arrows(y);
            std::vector<std::vector<SparseVec>> W;  // per in arrow: spanning vectors in C_d(y)
            for (int c : ins) {
                int z = A.source(c);
                // soc^2 at (z, d-1): every arrow out of z lands in the socle
                std::vector<SparseMatrix> parts;
                std::vector<const SparseMatrix*> ptrs;
                for (int c2 : A.out_arrows(z)) {
                    Subspace s2 = socle_space(C, A.target(c2), d);
                    const SparseMatrix& act = C.action(c2, d - 1);
                    std::vector<SparseVec> cols;
                    for (int j = 0; j < C.dim(z, d - 1); ++j) cols.push_back(s2.reduce(act.column(j)));
                    parts.push_back(detail::from_columns(C.dim(A.target(c2), d), cols));
                }
                for (auto& p : parts) ptrs.push_back(&p);
                Subspace soc2 = ptrs.empty() ? Subspace(C.dim(z, d - 1)) : null_space(vstack(ptrs, C.dim(z, d - 1)));
                if (ptrs.empty())
                    for (int j = 0; j < C.dim(z, d - 1); ++j) soc2.insert(unit_vector(j));
                std::vector<SparseVec> img;
                for (auto& x : soc2.basis()) img.push_back(C.action(c, d - 1).apply(x));
                W.push_back(std::move(img));
            }
            const int m = static_cast<int>(ins.size());
            if (m > 16) throw Error("too many arrows at a vertex for decomposition");
            std::vector<int> f(1 << m);
            for (int mask = 0; mask < (1 << m); ++mask) {
                Subspace sum(C.dim(y, d));
                for (int i = 0; i < m; ++i)
                    if (mask >> i & 1)
                        for (auto& x : W[i]) sum.insert(x);
                f[mask] = soc.dim() - sum.dim();
            }
            std::vector<int> mult = detail::mobius(f, m);
            for (int mask = 0; mask < (1 << m); ++mask) {
                if (mult[mask] < 0) throw PropertyViolation("inconsistent socle counts at vertex " + A.vertex_name(y));
                if (mult[mask] == 0) continue;
                std::vector<int> T;
                for (int i = 0; i < m; ++i)
                    if (mask >> i & 1) T.push_back(ins[i]);
                std::sort(T.begin(), T.end());
                int arrow = -1;
                for (int a : A.out_arrows(y))
                    if (left_annihilator_arrows(A, a) == T) {
                        arrow = a;
                        break;
                    }
                if (arrow < 0)
                    throw PropertyViolation("socle element at vertex " + A.vertex_name(y) + " degree " +
                                            std::to_string(d) + " is not cogenerated by an arrow coideal");
                for (int c = 0; c < mult[mask]; ++c) pieces.push_back({y, d, T, arrow});
            }
        }
    auto [slo, shi] = C.support();
    const int lo = std::max(C.lo(), C.known_lo());
    Rng rng(0x5eed);
    for (int attempt = 0; attempt < 6; ++attempt) {
        // rows of the map C -> sum of cocyclic modules, by (v, n)
        std::map<std::pair<int, int>, std::vector<SparseVec>> rows;
        std::vector<GradedModule> parts;
        for (auto& p : pieces) {
            Subspace U(C.dim(p.vertex, p.degree));
            for (int c : p.excluded) {
                const SparseMatrix& act = C.action(c, p.degree - 1);
                for (int j = 0; j < act.cols(); ++j) U.insert(act.column(j));
            }
            // functionals vanishing on U
            SparseMatrix ut(U.dim(), C.dim(p.vertex, p.degree));
            {
                SparseMatrix b = U.basis_matrix();
                ut = b.transpose();
            }
            Subspace ann = U.dim() == 0 ? Subspace(C.dim(p.vertex, p.degree)) : null_space(ut);
            if (U.dim() == 0)
                for (int i = 0; i < C.dim(p.vertex, p.degree); ++i) ann.insert(unit_vector(i));
            SparseVec f = detail::random_combination(rng, ann.basis());
            const int depth = p.degree - lo;
            GradedModule Cm = cocyclic_module(Ap, p.vertex, p.degree, p.excluded, {depth - p.degree, lim.budget});
            auto lv = enumerate_words(A, p.vertex, WordDirection::into, depth, lim.budget);
            std::vector<Path> ws;
            for (auto& level : lv.levels)
                for (auto& w : level)
                    if (w.trivial() ||
                        std::find(p.excluded.begin(), p.excluded.end(), w.arrows.back()) == p.excluded.end())
                        ws.push_back(w);
            std::unordered_map<std::vector<int>, SparseVec, WordHash> r;
            for (auto& level : lv.levels)
                for (auto& q : level) {
                    int k = p.degree - q.length();
                    SparseVec row;
                    if (q.trivial()) {
                        row = f;
                    } else {
                        Path rest{A.target(q.arrows.front()), q.target,
                                  std::vector<int>(q.arrows.begin() + 1, q.arrows.end())};
                        auto it = r.find(word_key(rest));
                        if (it != r.end() && !it->second.empty()) row = C.action(q.arrows.front(), k).apply_left(it->second);
                    }
                    r[word_key(q)] = row;
                }
            for (auto& [vn, list] : detail::word_blocks(ws, WordAction::delete_front, p.degree)) {
                if (vn.second < lo) continue;
                for (auto& w : list) rows[vn].push_back(r[word_key(w)]);
            }
            parts.push_back(std::move(Cm));
        }
        GradedModule S = direct_sum(parts, Ap);
        std::map<std::pair<int, int>, SparseMatrix> blocks;
        for (auto& [vn, list] : rows) blocks[vn] = detail::from_columns(C.dim(vn.first, vn.second), list);
        if (slo > shi || detail::bijective_on(blocks, C, S, lo, shi)) {
            std::vector<ArrowSummand> out;
            for (auto& p : pieces) out.push_back({p.arrow, p.degree + 1});
            return out;
        }
        if (pieces.empty()) break;
    }
    throw PropertyViolation("no isomorphism onto a sum of arrow coideals found");
}

// Omega^step(M) as a sum of arrow ideals (projective resolutions) or
// cosyzygy step as a sum of arrow coideals (injective coresolutions).
inline std::vector<ArrowSummand> syzygy_decomposition(const Resolution& R, int step, const Limits& lim) {
    if (step < 1 || step >= static_cast<int>(R.syzygies.size()))
        throw Error("syzygy " + std::to_string(step) + " not computed");
    const GradedModule& K = *R.syzygies[step];
    return R.kind == SummandKind::projective ? decompose_into_arrow_ideals(K, lim)
                                             : decompose_into_arrow_coideals(K, lim);
}

struct LinDefectReport {
    std::optional<int> defect;  // nullopt: larger than the cutoff
    int cutoff = 0;
    // cohomological degree n of the linear part -> total dimension of H^n within the certified window
    std::map<int, int> homology;
    int checked_from = 0;
    bool tail_certified = false;  // steps past 2 covered by the arrow ideal decomposition of Omega^2
};

namespace detail {

inline std::optional<int> least_exact_from(const std::map<int, int>& homology, int steps) {
    for (int s = 0; s <= steps; ++s) {
        bool exact = true;
        for (auto& [n, d] : homology)
            if (n < -s && d != 0) exact = false;
        if (exact) return s;
    }
    return std::nullopt;
}

inline void linear_homology(LinDefectReport& rep, const Resolution& R, int to, const Limits& lim) {
    SummandComplex L = linear_part(R.complex);
    ModuleComplex X = expand(L, lim);
    const int lo = std::max(L.lo(), X.certified_from());
    rep.checked_from = lo;
    const int bound = R.betti.degree_bound;
    for (int n = lo; n <= std::min(to, L.hi() - 1); ++n) {
        int total = 0;
        for (auto& [vd, d] : cohomology_dims(X, n, INT_MIN, bound)) total += d;
        rep.homology[n] = total;
    }
}

}  // namespace detail

// ld(M) = least s such that the linear part of the minimal resolution of
// Omega^s(M) is exact below its top; the resolution of Omega^s is the tail of
// that of M, so this reads off the cohomology of the linear part of one resolution
// expanded through `steps` steps.
inline LinDefectReport linearity_defect_direct(const GradedModule& M, int steps, const Limits& lim) {
    Resolution R = minimal_projective_resolution(M, steps + 2, lim);
    LinDefectReport rep;
    rep.cutoff = steps;
    detail::linear_homology(rep, R, 0, lim);
    rep.defect = detail::least_exact_from(rep.homology, steps);
    return rep;
}

// Every arrow ideal has a linear resolution: Omega(L(a)) is a sum of L(b)<1>.
inline bool arrow_ideals_linear(const AlgebraPtr& A, const Limits& lim) {
    for (int a = 0; a < A->num_arrows(); ++a) {
        Resolution R = minimal_projective_resolution(arrow_ideal(A, a, lim), 2, lim);
        if (R.syzygies.size() < 2) continue;
        try {
            for (auto& x : syzygy_decomposition(R, 1, lim))
                if (x.shift != 1) return false;
        } catch (const PropertyViolation&) {
            return false;
        }
    }
    return true;
}

// Same invariant without expanding the whole cutoff: the resolution from step 2
// on resolves Omega^2(M), so when Omega^2(M) is a sum of shifted arrow ideals and
// those resolve linearly, the linear part is exact at every step past 2.
inline LinDefectReport linearity_defect(const GradedModule& M, int steps, const Limits& lim) {
    if (steps <= 3 || !M.algebra().finite_info().max_length) return linearity_defect_direct(M, steps, lim);
    Resolution R = minimal_projective_resolution(M, 4, lim);
    if (R.syzygies.size() > 2) {
        try {
            syzygy_decomposition(R, 2, lim);
        } catch (const PropertyViolation&) {
            return linearity_defect_direct(M, steps, lim);
        }
        if (!arrow_ideals_linear(M.algebra_ptr(), lim)) return linearity_defect_direct(M, steps, lim);
    }
    LinDefectReport rep;
    rep.cutoff = steps;
    detail::linear_homology(rep, R, 0, lim);
    for (int n = -steps - 1; n < -2; ++n) rep.homology[n] = 0;
    rep.checked_from = -steps - 1;
    rep.tail_certified = true;
    rep.defect = detail::least_exact_from(rep.homology, steps);
    return rep;
}

inline std::string format_summands(const MonomialAlgebra& A, const std::vector<ArrowSummand>& xs, char kind) {
    std::string s;
    for (auto& x : xs) {
        if (!s.empty()) s += " + ";
        s += std::string(1, kind) + "(" + A.arrow_name(x.arrow) + ")<" + std::to_string(x.shift) + ">";
    }
    return s.empty() ? "0" : s;
}

}  // namespace koszulkit

#pragma once

// The Koszul functor K (modules over the dual -> linear complexes of
// projectives), the coKoszul functor G (modules -> linear complexes of
// injectives over the dual), the totalization F on complexes, and the
// certificates built on them.

#include <climits>
#include <optional>

#include "resolution.hpp"

namespace koszulkit {

// Internal degrees in which a comparison is asserted.
struct DegreeWindow {
    int lo = INT_MIN / 4;
    int hi = INT_MAX / 4;
    bool contains(int d) const { return d >= lo && d <= hi; }
};

namespace detail {

inline void require_dual_pair(const MonomialAlgebra& A, const MonomialAlgebra& B) {
    bool ok = A.num_vertices() == B.num_vertices() && A.num_arrows() == B.num_arrows();
    for (int a = 0; ok && a < A.num_arrows(); ++a) ok = A.source(a) == B.target(a) && A.target(a) == B.source(a);
    if (!ok) throw Error("module and target algebra are not on opposite quivers");
}

inline int block_offset(const GradedModule& M, int v, int n) {
    int off = 0;
    for (int u = 0; u < v; ++u) off += M.dim(u, n);
    return off;
}

// Basis vector i of M_n(x) becomes a summand at vertex x in internal degree
// -n; arrow a of M's algebra becomes arrow a of the other algebra, which runs
// the opposite way.
inline SummandComplex linearize(const GradedModule& M, const AlgebraPtr& other, SummandKind kind) {
    const auto& A = M.algebra();
    const auto& B = *other;
    require_dual_pair(A, B);
    auto [s, t] = M.support();
    int lo = M.complete_below() ? s : M.lo();
    int hi = M.complete_above() ? t : M.hi();
    if (M.is_zero() && M.completeness() == Completeness::exact) lo = 0, hi = 0;
    SummandComplex X(kind, other, lo);
    for (int n = lo; n <= hi; ++n) {
        std::vector<Summand> term;
        for (int v = 0; v < A.num_vertices(); ++v)
            for (auto& l : M.labels(v, n)) term.push_back({v, -n, l});
        X.push_term(std::move(term));
    }
    for (int n = lo; n < hi; ++n) {
        Entries e;
        for (int a = 0; a < A.num_arrows(); ++a) {
            const int x = A.source(a), y = A.target(a);
            const SparseMatrix& m = M.action(a, n);
            if (m.cols() == 0 || m.rows() == 0) continue;
            const Path w = B.make_path(y, {a});
            const int r0 = block_offset(M, y, n + 1), c0 = block_offset(M, x, n);
            for (int i = 0; i < m.cols(); ++i)
                for (auto& entry : m.column(i)) add_term(e[{r0 + entry.index, c0 + i}], w, entry.value);
        }
        std::erase_if(e, [](const auto& kv) { return kv.second.empty(); });
        X.set_diff(n, std::move(e));
    }
    if (!M.complete_below()) X.set_exact_from(lo);
    if (!M.complete_above()) X.set_exact_to(hi);
    return X;
}

inline DimTable rank_table(const GradedMorphism& f) {
    DimTable t;
    const auto& S = f.source();
    for (int n = S.lo(); n <= S.hi(); ++n)
        for (int v = 0; v < S.algebra().num_vertices(); ++v)
            if (S.dim(v, n) && f.target().dim(v, n))
                if (int r = rank(f.block(v, n))) t[{v, n}] = r;
    return t;
}

inline int lookup(const DimTable& t, int v, int n) {
    auto it = t.find({v, n});
    return it == t.end() ? 0 : it->second;
}

inline std::string at(int v, int n, const MonomialAlgebra& A) {
    return "vertex " + A.vertex_name(v) + " degree " + std::to_string(n);
}

}  // namespace detail

// K(M) for M over the dual; the result lives over `lambda`.
inline SummandComplex koszul_K(const GradedModule& M, const AlgebraPtr& lambda) {
    return detail::linearize(M, lambda, SummandKind::projective);
}

// G(N) for N over lambda; the result lives over `dual`.
inline SummandComplex cokoszul_G(const GradedModule& N, const AlgebraPtr& dual) {
    return detail::linearize(N, dual, SummandKind::injective);
}

// B^{q,p} = K(X^p)^q with d1 induced by the differential of X and d2 the K differential.
inline DoubleComplex koszul_double_complex(const ModuleComplex& X, const AlgebraPtr& lambda) {
    DoubleComplex B;
    B.kind = SummandKind::projective;
    B.algebra = lambda;
    std::map<int, SummandComplex> cols;
    for (int p = X.lo(); p <= X.hi(); ++p) {
        SummandComplex K = koszul_K(*X.term(p), lambda);
        for (int q = K.lo(); q <= K.hi(); ++q) {
            if (K.term(q).empty()) continue;
            B.terms[{p, q}] = K.term(q);
            if (!K.diff(q).empty()) B.d2[{p, q}] = K.diff(q);
        }
        if (K.exact_from() != INT_MIN) B.column_exact_from[p] = K.exact_from();
        if (K.exact_to() != INT_MAX) B.column_exact_to[p] = K.exact_to();
    }
    const auto& A = *X.algebra_ptr();
    for (int p = X.lo(); p < X.hi(); ++p) {
        const GradedMorphism f = X.diff(p);
        const GradedModule& S = *X.term(p);
        const GradedModule& T = *X.term(p + 1);
        for (int q = S.lo(); q <= S.hi(); ++q) {
            Entries e;
            for (int v = 0; v < A.num_vertices(); ++v) {
                if (S.dim(v, q) == 0 || T.dim(v, q) == 0) continue;
                const SparseMatrix& m = f.block(v, q);
                const Path unit = lambda->make_path(v, {});
                const int r0 = detail::block_offset(T, v, q), c0 = detail::block_offset(S, v, q);
                for (int i = 0; i < m.cols(); ++i)
                    for (auto& entry : m.column(i)) add_term(e[{r0 + entry.index, c0 + i}], unit, entry.value);
            }
            if (!e.empty()) B.d1[{p, q}] = std::move(e);
        }
    }
    return B;
}

inline SummandComplex F_on_complex(const ModuleComplex& X, const AlgebraPtr& lambda) {
    return total_complex(koszul_double_complex(X, lambda));
}

// ---------------------------------------------------------------------------
// Degree-wise checks on expanded complexes

namespace detail {

inline std::optional<std::string> cohomology_vanishes(const ModuleComplex& X, int n, const DegreeWindow& w) {
    for (auto& [vd, d] : cohomology_dims(X, n, w.lo, w.hi))
        if (d)
            return "H^" + std::to_string(n) + " nonzero at " + at(vd.first, vd.second, *X.algebra_ptr());
    return std::nullopt;
}

// f : X^n -> N on the top term of X, killing the image of d^{n-1}; then
// H^n(X) = coker d^{n-1} is isomorphic to N through f on the window.
inline std::optional<std::string> check_augmentation(const ModuleComplex& X, int n, const GradedMorphism& f,
                                                     const DegreeWindow& w) {
    const auto& A = *X.algebra_ptr();
    if (n != X.hi()) return "augmentation is only checked on the top term";
    if (auto bad = f.commutation_failure(); bad && w.contains(bad->second))
        return "augmentation does not commute with arrow " + A.arrow_name(bad->first) + " at degree " +
               std::to_string(bad->second);
    const GradedMorphism d = X.diff(n - 1);
    GradedMorphism fd = compose(f, d);
    const GradedModule& P = *X.term(n);
    const GradedModule& N = f.target();
    DimTable img = rank_table(d), surj = rank_table(f);
    for (int e = std::min(P.lo(), N.lo()); e <= std::max(P.hi(), N.hi()); ++e) {
        if (!w.contains(e)) continue;
        for (int v = 0; v < A.num_vertices(); ++v) {
            if (!fd.block(v, e).is_zero()) return "augmentation does not kill boundaries at " + at(v, e, A);
            if (lookup(surj, v, e) != N.dim(v, e)) return "augmentation not surjective at " + at(v, e, A);
            if (P.dim(v, e) - lookup(img, v, e) != N.dim(v, e))
                return "H^" + std::to_string(n) + " has dimension " + std::to_string(P.dim(v, e) - lookup(img, v, e)) +
                       ", expected " + std::to_string(N.dim(v, e)) + " at " + at(v, e, A);
        }
    }
    return std::nullopt;
}

// g : C -> X^n on the bottom term of X, landing in ker d^n; then H^n(X) = ker d^n
// is isomorphic to C through g on the window.
inline std::optional<std::string> check_coaugmentation(const ModuleComplex& X, int n, const GradedMorphism& g,
                                                       const DegreeWindow& w) {
    const auto& A = *X.algebra_ptr();
    if (n != X.lo()) return "coaugmentation is only checked on the bottom term";
    if (auto bad = g.commutation_failure(); bad && w.contains(bad->second))
        return "coaugmentation does not commute with arrow " + A.arrow_name(bad->first) + " at degree " +
               std::to_string(bad->second);
    const GradedMorphism d = X.diff(n);
    GradedMorphism dg = compose(d, g);
    const GradedModule& I = *X.term(n);
    const GradedModule& C = g.source();
    DimTable img = rank_table(d), inj = rank_table(g);
    for (int e = std::min(I.lo(), C.lo()); e <= std::max(I.hi(), C.hi()); ++e) {
        if (!w.contains(e)) continue;
        for (int v = 0; v < A.num_vertices(); ++v) {
            if (!dg.block(v, e).is_zero()) return "coaugmentation does not land in cycles at " + at(v, e, A);
            if (lookup(inj, v, e) != C.dim(v, e)) return "coaugmentation not injective at " + at(v, e, A);
            if (I.dim(v, e) - lookup(img, v, e) != C.dim(v, e))
                return "H^" + std::to_string(n) + " has dimension " + std::to_string(I.dim(v, e) - lookup(img, v, e)) +
                       ", expected " + std::to_string(C.dim(v, e)) + " at " + at(v, e, A);
        }
    }
    return std::nullopt;
}

// Map from the top term of an expanded projective complex: generator of
// summand k goes to images[k] in degree summands[k].degree, words act.
inline GradedMorphism map_from_generators(const ExpandedTerm& T, const std::vector<Summand>& summands,
                                          ModulePtr target, const std::vector<SparseVec>& images) {
    GradedMorphism f(T.module, target);
    std::map<std::pair<int, int>, std::vector<std::pair<int, SparseVec>>> cols;
    for (std::size_t k = 0; k < summands.size(); ++k)
        for (const Path& w : T.words[k]) {
            const int n = summands[k].degree + w.length();
            auto pos = locate(T, static_cast<int>(k), w, w.target, n);
            if (!pos) continue;
            if (n < target->lo() || n > target->hi()) continue;
            cols[{w.target, n}].push_back({*pos, apply_word(*target, w, summands[k].degree, images[k])});
        }
    for (auto& [vn, list] : cols) {
        SparseMatrix m(target->dim(vn.first, vn.second), T.module->dim(vn.first, vn.second));
        for (auto& [c, x] : list) m.set_column(c, std::move(x));
        f.set_block(vn.first, vn.second, std::move(m));
    }
    return f;
}

// Map into an expanded injective term with a single summand I(x)<d>, given by
// the functional `phi` on source(x, d): m |-> sum over words q of phi(q m) e_q.
inline GradedMorphism map_into_cogenerator(ModulePtr source, const ExpandedTerm& T, const Summand& s,
                                           const SparseVec& phi) {
    GradedMorphism g(source, T.module);
    const auto& C = *source;
    for (const Path& q : T.words[0]) {
        const int n = s.degree - q.length();
        const int v = q.source;
        if (n < C.lo() || n > C.hi() || C.dim(v, n) == 0) continue;
        auto pos = locate(T, 0, q, v, n);
        if (!pos) continue;
        SparseMatrix m = g.block(v, n);
        for (int i = 0; i < C.dim(v, n); ++i) {
            Rational c = dot(phi, apply_word(C, q, n, unit_vector(i)));
            if (c != 0) m.add(*pos, i, c);
        }
        g.set_block(v, n, std::move(m));
    }
    return g;
}

inline int max_length_or(const MonomialAlgebra& A, int fallback) {
    return A.finite_info().max_length ? *A.finite_info().max_length : fallback;
}

// Largest depth D <= cap such that the words of length <= D at x number at most `budget`.
inline int adaptive_depth(const MonomialAlgebra& A, int x, WordDirection dir, int cap, std::size_t budget) {
    WordLevels lv = enumerate_words(A, x, dir, cap, budget);
    return static_cast<int>(lv.levels.size()) - 1;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Koszulness certificate

struct CertificateLimits {
    int depth = 24;            // longest dual word followed
    std::size_t words = 400;   // basis budget per injective / projective followed
    std::size_t budget = 20000;
};

struct VertexCertificate {
    int vertex = 0;
    bool ok = true;
    std::optional<int> projective_dimension;  // nullopt: not finite within the window
    int certified_steps = 0;
    int dual_certified_steps = 0;
    std::vector<std::string> failures;
};

struct KoszulReport {
    bool ok = true;
    std::vector<VertexCertificate> vertices;
};

namespace detail {

inline void certify_resolution_side(const KoszulPair& P, int x, const CertificateLimits& cl, VertexCertificate& vc) {
    const auto& L = *P.lambda;
    const auto& D = *P.dual;
    auto fail = [&](const std::string& s) {
        vc.ok = false;
        vc.failures.push_back("K(I!(" + L.vertex_name(x) + ")): " + s);
    };
    const int depth = adaptive_depth(D, x, WordDirection::into, cl.depth, cl.words);
    GradedModule I = injective_module(P.dual, x, 0, {depth, cl.budget});
    vc.projective_dimension.reset();
    if (I.complete_below()) vc.projective_dimension = -I.support().first;
    SummandComplex K = koszul_K(I, P.lambda);
    if (auto c = check_complex(K); !c.ok) return fail(c.detail);
    if (auto s = linearity_failure(K)) fail(*s);
    if (auto s = minimality_failure(K)) fail(*s);
    const int steps = I.complete_below() ? -I.support().first : depth - 1;
    vc.certified_steps = steps;
    const int top = std::max(0, steps) + max_length_or(L, 2);
    const Limits lim{top, cl.budget};
    ExpandedComplex E = expand_with_bases(K, lim);
    const DegreeWindow w{INT_MIN / 4, top};
    for (int n = std::max(K.lo(), K.certified_from()); n < 0; ++n)
        if (auto s = cohomology_vanishes(E.complex, n, w)) fail(*s);
    auto S = share(simple_module(P.lambda, x));
    GradedMorphism eps = map_from_generators(E.terms.back(), K.term(0), S, {unit_vector(0)});
    if (auto s = check_augmentation(E.complex, 0, eps, w)) fail("H^0 vs S: " + *s);
    // Betti numbers of the engine resolution are the dual dimensions
    Resolution R = minimal_projective_resolution(*S, steps + 2, lim);
    for (auto& [key, m] : R.betti.entries) {
        auto [st, deg, v] = key;
        if (st > steps || !R.betti.certified(deg)) continue;
        if (deg != st || I.dim(v, -st) != m)
            fail("engine Betti number " + std::to_string(m) + " at step " + std::to_string(st) + " " + at(v, deg, L) +
                 " does not match");
    }
    for (int st = 0; st <= steps && st < R.betti.steps; ++st)
        for (int v = 0; v < L.num_vertices(); ++v)
            if (I.dim(v, -st) != R.betti.multiplicity(st, st, v))
                fail("step " + std::to_string(st) + " vertex " + L.vertex_name(v) + ": K gives " +
                     std::to_string(I.dim(v, -st)) + ", engine gives " + std::to_string(R.betti.multiplicity(st, st, v)));
    if (I.complete_below() && L.finite_info().max_length && !R.betti.terminated) fail("engine resolution does not terminate");
}

inline void certify_coresolution_side(const KoszulPair& P, int x, const CertificateLimits& cl, VertexCertificate& vc) {
    const auto& L = *P.lambda;
    const auto& D = *P.dual;
    auto fail = [&](const std::string& s) {
        vc.ok = false;
        vc.failures.push_back("G(P(" + L.vertex_name(x) + ")): " + s);
    };
    const int depth = adaptive_depth(L, x, WordDirection::from, cl.depth, cl.words);
    GradedModule Px = projective_module(P.lambda, x, 0, {depth, cl.budget});
    SummandComplex G = cokoszul_G(Px, P.dual);
    if (auto c = check_complex(G); !c.ok) return fail(c.detail);
    if (auto s = linearity_failure(G)) fail(*s);
    if (auto s = minimality_failure(G)) fail(*s);
    int steps = Px.complete_above() ? Px.support().second : depth - 1;
    if (!D.finite_info().max_length) {
        // keep every injective of the window within the word budget
        int dual_depth = cl.depth;
        for (int y = 0; y < D.num_vertices(); ++y)
            dual_depth = std::min(dual_depth, adaptive_depth(D, y, WordDirection::into, cl.depth, cl.budget));
        steps = std::max(0, std::min(steps, dual_depth - 2));
    }
    vc.dual_certified_steps = steps;
    const int bottom = std::max(0, steps) + max_length_or(D, 2);
    const Limits lim{bottom, cl.budget};
    ExpandedComplex E = expand_with_bases(G, lim);
    const DegreeWindow w{-bottom, INT_MAX / 4};
    for (int n = 1; n <= std::min(G.hi(), G.certified_to()); ++n)
        if (auto s = cohomology_vanishes(E.complex, n, w)) fail(*s);
    auto S = share(simple_module(P.dual, x));
    GradedMorphism eta = map_into_cogenerator(S, E.terms.front(), G.term(0).front(), unit_vector(0));
    if (auto s = check_coaugmentation(E.complex, 0, eta, w)) fail("H^0 vs S!: " + *s);
    // coBetti numbers down to degree -steps only need the window down to -steps
    Resolution R = minimal_injective_coresolution(*S, steps + 1, {steps, cl.budget});
    for (auto& [key, m] : R.betti.entries) {
        auto [st, deg, v] = key;
        if (st > steps || !R.betti.certified(deg)) continue;
        if (deg != -st || Px.dim(v, st) != m)
            fail("engine coBetti number " + std::to_string(m) + " at step " + std::to_string(st) + " " + at(v, deg, D) +
                 " does not match");
    }
    for (int st = 0; st <= steps && st < R.betti.steps; ++st)
        for (int v = 0; v < D.num_vertices(); ++v)
            if (Px.dim(v, st) != R.betti.multiplicity(st, -st, v))
                fail("step " + std::to_string(st) + " vertex " + D.vertex_name(v) + ": G gives " +
                     std::to_string(Px.dim(v, st)) + ", engine gives " +
                     std::to_string(R.betti.multiplicity(st, -st, v)));
}

}  // namespace detail

inline VertexCertificate certify_vertex(const KoszulPair& P, int x, const CertificateLimits& cl = {}) {
    VertexCertificate vc;
    vc.vertex = x;
    detail::certify_resolution_side(P, x, cl, vc);
    detail::certify_coresolution_side(P, x, cl, vc);
    return vc;
}

inline KoszulReport koszul_certificate(const KoszulPair& P, const CertificateLimits& cl = {}) {
    KoszulReport r;
    for (int x = 0; x < P.lambda->num_vertices(); ++x) {
        r.vertices.push_back(certify_vertex(P, x, cl));
        r.ok = r.ok && r.vertices.back().ok;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Arrow ideals and coideals

struct ArrowCheck {
    int arrow = 0;
    bool ok = true;
    std::vector<std::string> failures;
};

// H(K(C(a^op))) = L(a) in degree -1, and G(L(a)) is the minimal coresolution of C(a^op).
inline ArrowCheck check_arrow(const KoszulPair& P, int a, const Limits& lim) {
    const auto& L = *P.lambda;
    ArrowCheck r;
    r.arrow = a;
    auto fail = [&](const std::string& s) {
        r.ok = false;
        r.failures.push_back(s);
    };
    auto C = share(arrow_coideal(P.dual, a, lim));
    auto La = share(arrow_ideal(P.lambda, a, lim));
    {
        SummandComplex K = koszul_K(*C, P.lambda);
        if (auto c = check_complex(K); !c.ok) {
            fail("K(C): " + c.detail);
        } else if (K.hi() != -1 || K.term(-1).size() != 1) {
            fail("K(C) does not end with a single summand at -1");
        } else {
            ExpandedComplex E = expand_with_bases(K, lim);
            DegreeWindow w{INT_MIN / 4, La->complete_above() ? INT_MAX / 4 : La->hi()};
            for (int n = std::max(K.lo(), K.certified_from()); n < -1; ++n)
                if (auto s = detail::cohomology_vanishes(E.complex, n, w)) fail("K(C): " + *s);
            GradedMorphism phi = detail::map_from_generators(E.terms.back(), K.term(-1), La, {unit_vector(0)});
            if (auto s = detail::check_augmentation(E.complex, -1, phi, w)) fail("K(C) vs L: " + *s);
        }
    }
    {
        SummandComplex G = cokoszul_G(*La, P.dual);
        if (auto c = check_complex(G); !c.ok) return fail("G(L): " + c.detail), r;
        if (auto s = minimality_failure(G)) fail("G(L): " + *s);
        if (G.lo() != 1 || G.term(1).size() != 1) return fail("G(L) does not start with a single summand at 1"), r;
        ExpandedComplex E = expand_with_bases(G, lim);
        DegreeWindow w{C->complete_below() ? INT_MIN / 4 : C->lo(), INT_MAX / 4};
        for (int n = 2; n <= std::min(G.hi(), G.certified_to()); ++n)
            if (auto s = detail::cohomology_vanishes(E.complex, n, w)) fail("G(L): " + *s);
        GradedMorphism eta = detail::map_into_cogenerator(C, E.terms.front(), G.term(1).front(), unit_vector(0));
        if (auto s = detail::check_coaugmentation(E.complex, 1, eta, w)) fail("G(L) vs C: " + *s);
        const int steps = std::min(G.hi(), G.certified_to()) - 1;
        Resolution R = minimal_injective_coresolution(*C, steps + 1, lim);
        for (int st = 0; st <= steps && st < R.betti.steps; ++st) {
            std::map<std::pair<int, int>, int> g, e;
            for (auto& s : G.term(st + 1)) ++g[{s.vertex, s.degree}];
            for (auto& [key, m] : R.betti.entries)
                if (std::get<0>(key) == st && R.betti.certified(std::get<1>(key)))
                    e[{std::get<2>(key), std::get<1>(key)}] += m;
            if (g != e) fail("G(L) term " + std::to_string(st + 1) + " differs from coresolution step " + std::to_string(st));
        }
    }
    (void)L;
    return r;
}

// ---------------------------------------------------------------------------
// Roundtrip F(G(N)) ~ N

struct RoundtripReport {
    bool ok = true;
    int certified_from = 0;
    DegreeWindow window;
    std::vector<std::string> failures;
};

inline RoundtripReport roundtrip_check(const GradedModule& N, const AlgebraPtr& dual, const Limits& lim) {
    RoundtripReport r;
    const AlgebraPtr& lambda = N.algebra_ptr();
    auto fail = [&](const std::string& s) {
        r.ok = false;
        r.failures.push_back(s);
    };
    SummandComplex G = cokoszul_G(N, dual);
    ModuleComplex Gx = expand(G, lim);
    SummandComplex T = F_on_complex(Gx, lambda);
    if (auto c = check_complex(T); !c.ok) return fail("F(G(N)): " + c.detail), r;
    ExpandedComplex E = expand_with_bases(T, lim);
    r.window = {INT_MIN / 4, N.complete_above() ? lim.degree : std::min(lim.degree, N.hi())};
    r.certified_from = std::max(T.lo(), T.certified_from());
    if (T.hi() != 0 && !N.is_zero()) return fail("F(G(N)) does not end in degree 0"), r;
    for (int n = r.certified_from; n < T.hi(); ++n)
        if (auto s = detail::cohomology_vanishes(E.complex, n, r.window)) fail(*s);
    if (N.is_zero()) return r;
    // Tot^0 summands in order: column p, vertex v, basis j of N_p(v); the
    // column sign compensates the (-1)^p on the K differential.
    std::vector<SparseVec> images;
    for (int p = Gx.lo(); p <= Gx.hi(); ++p) {
        const GradedModule& Gp = *Gx.term(p);
        const long tri = static_cast<long>(p) * (p + 1) / 2;
        const Rational sign = tri % 2 == 0 ? 1 : -1;
        for (int v = 0; v < N.algebra().num_vertices(); ++v)
            for (int j = 0; j < Gp.dim(v, -p); ++j) images.push_back({{j, sign}});
    }
    if (images.size() != T.term(0).size()) return fail("unexpected degree 0 term"), r;
    GradedMorphism eps = detail::map_from_generators(E.terms.back(), T.term(0), share(N), images);
    if (auto s = detail::check_augmentation(E.complex, 0, eps, r.window)) fail(*s);
    return r;
}

// ---------------------------------------------------------------------------
// Shift compatibility: F(X<i>) = F(X)<-i>[-i]

struct ShiftReport {
    bool ok = true;
    bool literal_ok = true;  // the form F(X)<i>[-i]
    CohomologyTable lhs, rhs;
    std::string witness;
};

// One report per shift i in [from, to]. F(X) is expanded once; both shifted
// sides read their cohomology off it.
inline std::vector<ShiftReport> shift_compatibility(const SummandComplex& X, const AlgebraPtr& lambda, int from,
                                                    int to, const Limits& lim) {
    auto range = [](const SummandComplex& Y) {
        return std::make_pair(std::max(Y.lo(), Y.certified_from()), std::min(Y.hi(), Y.certified_to()));
    };
    auto table = [&](const SummandComplex& Y) {
        ModuleComplex E = expand(Y, lim);
        return cohomology_table(E, std::max(Y.lo(), E.certified_from()), std::min(Y.hi(), E.certified_to()));
    };
    SummandComplex FX = F_on_complex(expand(X, lim), lambda);
    const CohomologyTable base = table(FX);
    std::vector<ShiftReport> out;
    for (int i = from; i <= to; ++i) {
        ShiftReport r;
        SummandComplex lhs = F_on_complex(expand(grade_shift_complex(X, i), lim), lambda);
        r.lhs = table(lhs);
        r.rhs = shifted_table(base, -i, -i);
        auto [a1, b1] = range(lhs);
        auto [a2, b2] = range(grade_shift_complex(shift_complex(FX, -i), -i));
        const int lo = std::max(a1, a2), hi = std::min(b1, b2);
        auto restrict = [&](const CohomologyTable& t) {
            CohomologyTable o;
            for (auto& [k, d] : t)
                if (std::get<0>(k) >= lo && std::get<0>(k) <= hi && std::get<2>(k) <= lim.degree - std::abs(i))
                    o[k] = d;
            return o;
        };
        CohomologyTable x = restrict(r.lhs), y = restrict(r.rhs);
        r.ok = x == y;
        r.literal_ok = x == restrict(shifted_table(base, -i, i));
        if (!r.ok) {
            for (auto& [k, d] : x)
                if (!y.count(k) || y.at(k) != d) {
                    r.witness = "H^" + std::to_string(std::get<0>(k)) + " differs at vertex " +
                                lambda->vertex_name(std::get<1>(k)) + " degree " + std::to_string(std::get<2>(k));
                    break;
                }
            if (r.witness.empty()) r.witness = "extra cohomology on the shifted side";
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline ShiftReport shift_compatibility(const SummandComplex& X, const AlgebraPtr& lambda, int i, const Limits& lim) {
    return shift_compatibility(X, lambda, i, i, lim).front();
}

// ---------------------------------------------------------------------------
// Truncation into a finite part and a colinear tail

enum class TruncationRule { lowest, below_top };

struct TruncationReport {
    int r = 0;
    std::map<int, DimTable> k_cohomology;  // n -> dims of H^n(K(M)) (nonzero only)
    int certified_from = 0;
    int certified_to = 0;
    GradedModule finite_part;
    GradedModule tail;  // tau_{<= r} M <-r>
    bool finite = false;
    BettiTable tail_cobetti;
    bool tail_colinear = false;
    std::string witness;
    bool ok() const { return finite && tail_colinear; }
};

inline TruncationReport find_linear_truncation(const GradedModule& M, const AlgebraPtr& lambda, TruncationRule rule,
                                               const Limits& lim, int steps = 8) {
    if (!M.complete_above()) throw WindowError("module must be bounded above");
    TruncationReport rep;
    SummandComplex K = koszul_K(M, lambda);
    ExpandedComplex E = expand_with_bases(K, lim);
    rep.certified_from = std::max(K.lo(), K.certified_from());
    rep.certified_to = std::min(K.hi(), K.certified_to());
    for (int n = rep.certified_from; n <= rep.certified_to; ++n) {
        DimTable d = cohomology_dims(E.complex, n, INT_MIN, lim.degree);
        if (!d.empty()) rep.k_cohomology[n] = std::move(d);
    }
    if (rep.k_cohomology.empty()) {
        if (!M.is_zero() && M.completeness() != Completeness::exact)
            throw WindowError("no K-cohomology inside the certified window");
        rep.r = M.is_zero() ? 0 : M.support().second;
    } else if (rule == TruncationRule::lowest) {
        rep.r = rep.k_cohomology.begin()->first;
        if (rep.r == rep.certified_from && rep.certified_from > K.lo())
            throw WindowError("lowest K-cohomology sits at the edge of the certified window");
    } else {
        rep.r = rep.k_cohomology.rbegin()->first - 1;
    }
    Truncation t = truncate(M, TruncMode::le, rep.r);
    rep.finite_part = t.sub;
    rep.finite = t.sub.completeness() == Completeness::exact;
    rep.tail = shift(t.quotient, -rep.r);
    Resolution R = minimal_injective_coresolution(rep.tail, steps, lim);
    rep.tail_cobetti = R.betti;
    rep.tail_colinear = true;
    for (auto& [key, m] : R.betti.entries) {
        auto [st, deg, v] = key;
        if (!R.betti.certified(deg)) continue;
        if (deg != -st) {
            rep.tail_colinear = false;
            rep.witness = "tail coresolution step " + std::to_string(st) + " cogenerated in degree " +
                          std::to_string(deg) + " at vertex " + M.algebra().vertex_name(v);
            break;
        }
    }
    return rep;
}

}  // namespace koszulkit

#include <gtest/gtest.h>

#include "koszulkit/generators.hpp"
#include "koszulkit/series.hpp"
#include "test_util.hpp"

using namespace koszulkit;

namespace {

const std::vector<std::string> kCorpus = {"sl2", "sl2_dual", "a3", "loop_sq", "free_loop", "rad2_zero3"};

Poly t_poly(std::vector<long> c) {
    std::vector<Integer> v;
    for (long x : c) v.emplace_back(x);
    return Poly(std::move(v));
}

RationalSeries ts(std::vector<long> num, std::vector<long> den, int shift = 0, Side side = Side::t) {
    return RationalSeries(t_poly(std::move(num)), t_poly(std::move(den)), shift, side);
}

// words x -> y of length n by walking arrow sequences
long walk_count(const MonomialAlgebra& A, int x, int y, int n) {
    long count = 0;
    auto walk = [&](auto&& self, int at, int last, int left) -> void {
        if (left == 0) {
            count += at == y;
            return;
        }
        for (int b : A.out_arrows(at))
            if (last < 0 || A.allowed(last, b)) self(self, A.target(b), b, left - 1);
    };
    walk(walk, x, -1, n);
    return count;
}

// Compares a per-vertex module series with the module's dimensions on its known window.
void expect_matches_dims(const ModuleSeries& s, const GradedModule& M, int D) {
    ASSERT_TRUE(s.closed) << s.note;
    const int nv = M.algebra().num_vertices();
    const bool up = s.side == Side::t;
    const int from = up ? std::min(M.lo(), 0) : std::min(-M.hi(), 0);
    const int to = up ? (M.complete_above() ? D : M.hi()) : (M.complete_below() ? D : -M.lo());
    for (int v = 0; v < nv; ++v)
        for (int k = from; k <= to; ++k) {
            const int n = up ? k : -k;
            EXPECT_EQ(s.per_vertex[v].coefficient(k), M.dim(v, n))
                << "vertex " << M.algebra().vertex_name(v) << " degree " << n << " series " << s.per_vertex[v].str();
        }
}

void expect_matches_betti(const PoincareSeries& p, const Resolution& R) {
    ASSERT_TRUE(p.closed) << p.note;
    const int nv = R.syzygies.front()->algebra().num_vertices();
    for (int s = 0; s < R.betti.steps; ++s) {
        std::vector<int> per(nv, 0);
        for (auto& [k, m] : R.betti.entries)
            if (std::get<0>(k) == s) per[std::get<2>(k)] += m;
        for (int v = 0; v < nv; ++v) EXPECT_EQ(p.per_vertex[v].coefficient(s), per[v]) << "step " << s;
        EXPECT_EQ(p.total.coefficient(s), R.betti.total(s)) << "step " << s;
    }
}

}  // namespace

TEST(Series, ProductWithDenominatorIsOne) {
    EXPECT_EQ(ts({1}, {1, -1}) * ts({1, -1}, {1}), ts({1}, {1}));
    EXPECT_EQ(ts({1}, {1}).shifted(2).str(), "(t^2)/(1)");
    EXPECT_EQ(ts({1}, {1, -1}).str(), "(1)/(1 - t)");
    EXPECT_EQ(ts({1}, {1}, -2, Side::t).str(), "t^-2*(1)/(1)");
}

TEST(Series, CanonicalFormIsUnique) {
    RationalSeries a = ts({2, -2}, {2, -4, 2});
    EXPECT_EQ(a, ts({1}, {1, -1}));
    EXPECT_EQ(ts({0, 0, 3}, {0, 3, -3}), ts({1}, {1, -1}, 1));
    EXPECT_EQ(ts({-1}, {-1, 1}), ts({1}, {1, -1}));
    RationalSeries b = RationalSeries(a.numerator(), a.denominator(), a.shift());
    EXPECT_EQ(a, b);
    EXPECT_EQ(a - a, RationalSeries());
    EXPECT_EQ((a + a).str(), "(2)/(1 - t)");
}

TEST(Series, ExpansionAndNegation) {
    RationalSeries geo = ts({1}, {1, -1});
    std::vector<Integer> c = geo.expand(5);
    EXPECT_EQ(c, std::vector<Integer>(6, 1));
    RationalSeries alt = geo.negate_variable();
    EXPECT_EQ(alt, ts({1}, {1, 1}));
    EXPECT_EQ(ts({1}, {1}, 3).negate_variable(), ts({-1}, {1}, 3));
    EXPECT_EQ(ts({1}, {1, -1}, -1).coefficient(-1), 1);
    EXPECT_EQ(ts({1}, {1, -1}, -1).coefficient(-2), 0);
}

TEST(Series, RandomArithmeticIsFieldLike) {
    Rng rng(11);
    auto rnd = [&] {
        std::vector<long> n(rng.uniform(1, 3)), d(rng.uniform(1, 3));
        for (auto& x : n) x = rng.uniform(-3, 3);
        for (auto& x : d) x = rng.uniform(-3, 3);
        d[0] = rng.uniform(1, 3);
        return ts(n, d, rng.uniform(-2, 2));
    };
    for (int i = 0; i < 100; ++i) {
        RationalSeries a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(a + b - b, a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a.negate_variable().negate_variable(), a);
        RationalSeries re(a.numerator(), a.denominator(), a.shift());
        EXPECT_EQ(re, a);
    }
}

TEST(Series, DeterminantMatchesExpansion) {
    // 3x3 integer polynomial matrix with a zero pivot
    PolyMatrix m = {{Poly(), t_poly({1, 1}), Poly(2)},
                    {t_poly({0, 1}), Poly(1), t_poly({1, 0, 1})},
                    {Poly(3), Poly(), t_poly({-1, 2})}};
    Poly cofactor = Poly() * (Poly(1) * t_poly({-1, 2}) - t_poly({1, 0, 1}) * Poly()) -
                    t_poly({1, 1}) * (t_poly({0, 1}) * t_poly({-1, 2}) - t_poly({1, 0, 1}) * Poly(3)) +
                    Poly(2) * (t_poly({0, 1}) * Poly() - Poly(1) * Poly(3));
    EXPECT_EQ(determinant(m), cofactor);
}

TEST(HilbertAlgebra, Examples) {
    auto F = corpus_algebra("free_loop");
    EXPECT_EQ(hilbert_algebra_closed(*F)[0][0], ts({1}, {1, -1}));
    EXPECT_EQ(hilbert_algebra_closed(*F)[0][0].str(), "(1)/(1 - t)");
    auto H = hilbert_algebra_closed(*corpus_algebra("sl2"));
    RationalSeries total;
    for (auto& row : H)
        for (auto& e : row) total = total + e;
    EXPECT_EQ(total, ts({2, 2, 1}, {1}));
    MonomialAlgebra semi = parse_algebra("vertex 1\nvertex 2\nvertex 3\n");
    auto I = hilbert_algebra_closed(semi);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) EXPECT_EQ(I[x][y], ts({x == y ? 1 : 0}, {1}));
}

TEST(HilbertAlgebra, MatchesPathCountsOnCorpus) {
    for (auto& name : kCorpus) {
        auto A = corpus_algebra(name);
        auto H = hilbert_algebra_closed(*A);
        for (int x = 0; x < A->num_vertices(); ++x)
            for (int y = 0; y < A->num_vertices(); ++y) {
                auto c = H[x][y].expand(30);
                for (int n = 0; n <= 30; ++n) {
                    EXPECT_EQ(c[n], Integer(walk_count(*A, x, y, n))) << name << " " << x << "," << y << " n=" << n;
                    EXPECT_EQ(c[n], count_paths(*A, x, y, n));
                }
            }
    }
}

TEST(HilbertAlgebra, MatchesPathCountsOnRandomAlgebras) {
    Rng rng(2024);
    for (int i = 0; i < 40; ++i) {
        AlgebraShape shape;
        shape.max_vertices = 4;
        shape.max_arrows = 6;
        shape.finite_only = i % 2 == 0;
        MonomialAlgebra A = random_algebra(rng, shape);
        auto H = hilbert_algebra_closed(A);
        const int D = std::min(3 * A.num_arrows() + 5, 14);
        for (int x = 0; x < A.num_vertices(); ++x)
            for (int y = 0; y < A.num_vertices(); ++y) {
                auto c = H[x][y].expand(D);
                for (int n = 0; n <= D; ++n) ASSERT_EQ(c[n], Integer(walk_count(A, x, y, n))) << serialize(A);
            }
    }
}

TEST(HilbertModule, ArrowIdealAndCoideal) {
    auto L = corpus_algebra("sl2");
    auto D = corpus_algebra("sl2_dual");
    auto h = hilbert_arrow_ideal(*L, L->arrow_id("alpha"));
    EXPECT_EQ(h[1], ts({0, 1}, {1}));
    EXPECT_TRUE(h[0].is_zero());
    GradedModule C = arrow_coideal(D, D->arrow_id("alpha_op"), {});
    ModuleSeries s = hilbert_module_closed(C, natural_side(C), {});
    EXPECT_EQ(s.side, Side::u);
    EXPECT_EQ(s.total, ts({0, 1, 1}, {1}, 0, Side::u));
    EXPECT_EQ(s.total.str(), "(u + u^2)/(1)");
    expect_matches_dims(s, C, 30);
}

TEST(HilbertModule, ProjectivesMatchAlgebraRows) {
    for (auto& name : kCorpus) {
        auto A = corpus_algebra(name);
        auto H = hilbert_algebra_closed(*A);
        for (int x = 0; x < A->num_vertices(); ++x) {
            ModuleSeries s = hilbert_module_closed(projective_module(A, x, 0, {}), Side::t, {});
            ASSERT_TRUE(s.closed);
            for (int y = 0; y < A->num_vertices(); ++y) EXPECT_EQ(s.per_vertex[y], H[x][y]) << name;
        }
    }
}

TEST(HilbertModule, CorpusModulesMatchDimensions) {
    Limits lim;
    for (auto& name : kCorpus) {
        auto A = corpus_algebra(name);
        auto dual = share_algebra(koszul_dual(*A));
        std::vector<GradedModule> mods;
        for (int x = 0; x < A->num_vertices(); ++x) {
            mods.push_back(simple_module(A, x, 1));
            mods.push_back(projective_module(A, x, -1, lim));
            mods.push_back(injective_module(dual, x, 0, lim));
            mods.push_back(simple_module(dual, x));
        }
        for (int a = 0; a < A->num_arrows(); ++a) {
            mods.push_back(arrow_ideal(A, a, lim));
            mods.push_back(arrow_coideal(dual, a, lim));
        }
        for (auto& M : mods) {
            SCOPED_TRACE(name);
            expect_matches_dims(hilbert_module_closed(M, natural_side(M), lim), M, 30);
        }
    }
}

TEST(HilbertModule, RandomPresentedModulesMatchDimensions) {
    Rng rng(77);
    Limits lim;
    for (auto& name : kCorpus) {
        auto A = corpus_algebra(name);
        for (int i = 0; i < 8; ++i) {
            for (SummandKind kind : {SummandKind::projective, SummandKind::injective}) {
                Presentation p = random_presentation(rng, *A, kind);
                GradedModule M = presented_module(A, p, lim);
                SCOPED_TRACE(name + " " + presentation_expr(*A, p));
                ModuleSeries s = hilbert_module_closed(M, kind == SummandKind::projective ? Side::t : Side::u, lim);
                if (!A->finite_info().max_length && !s.closed) continue;
                expect_matches_dims(s, M, 30);
            }
        }
    }
}

TEST(Poincare, Examples) {
    auto L = corpus_algebra("sl2");
    EXPECT_EQ(poincare_closed(simple_module(L, 0), SummandKind::projective, {}).total, ts({1, 1, 1}, {1}));
    auto Q = corpus_algebra("loop_sq");
    EXPECT_EQ(poincare_closed(simple_module(Q, 0), SummandKind::projective, {}).total, ts({1}, {1, -1}));
    EXPECT_EQ(poincare_closed(projective_module(L, 1, 3, {}), SummandKind::projective, {}).total, ts({1}, {1}));
    auto F = corpus_algebra("free_loop");
    EXPECT_EQ(poincare_closed(simple_module(F, 0), SummandKind::projective, {}).total, ts({1, 1}, {1}));
}

TEST(Poincare, CorpusMatchesEngineBetti) {
    Limits lim;
    for (auto& name : kCorpus) {
        auto A = corpus_algebra(name);
        auto dual = share_algebra(koszul_dual(*A));
        for (int x = 0; x < A->num_vertices(); ++x) {
            SCOPED_TRACE(name);
            GradedModule S = simple_module(A, x);
            expect_matches_betti(poincare_closed(S, SummandKind::projective, lim),
                                 minimal_projective_resolution(S, 20, lim));
            GradedModule T = simple_module(dual, x);
            expect_matches_betti(poincare_closed(T, SummandKind::injective, lim),
                                 minimal_injective_coresolution(T, 20, lim));
        }
        for (int a = 0; a < A->num_arrows(); ++a) {
            GradedModule La = arrow_ideal(A, a, lim);
            expect_matches_betti(poincare_closed(La, SummandKind::projective, lim),
                                 minimal_projective_resolution(La, 20, lim));
        }
    }
}

TEST(Poincare, RandomModulesMatchEngineBetti) {
    Rng rng(5);
    Limits lim;
    for (auto& name : {"sl2", "a3", "loop_sq", "rad2_zero3"}) {
        auto A = corpus_algebra(name);
        for (int i = 0; i < 6; ++i)
            for (SummandKind kind : {SummandKind::projective, SummandKind::injective}) {
                Presentation p = random_presentation(rng, *A, kind);
                GradedModule M = presented_module(A, p, lim);
                SCOPED_TRACE(std::string(name) + " " + presentation_expr(*A, p));
                Resolution R = kind == SummandKind::projective ? minimal_projective_resolution(M, 10, lim)
                                                               : minimal_injective_coresolution(M, 10, lim);
                expect_matches_betti(poincare_closed(M, kind, lim), R);
            }
    }
}

TEST(Poincare, FiniteGlobalDimensionGivesPolynomials) {
    Rng rng(9);
    Limits lim;
    for (auto& name : {"sl2", "sl2_dual", "a3"}) {
        auto A = corpus_algebra(name);
        for (int i = 0; i < 8; ++i) {
            GradedModule M = presented_module(A, random_presentation(rng, *A, SummandKind::projective), lim);
            PoincareSeries p = poincare_closed(M, SummandKind::projective, lim);
            ASSERT_TRUE(p.closed);
            EXPECT_TRUE(p.total.is_polynomial()) << p.total.str();
        }
    }
}

TEST(Reciprocity, CalibratedVariantHoldsOnCorpus) {
    std::vector<ReciprocityVariant> found;
    for (auto v : all_reciprocity_variants()) {
        bool ok = true;
        for (auto& name : {"sl2", "a3"}) {
            auto A = corpus_algebra(name);
            ok = ok && reciprocity_holds(*A, koszul_dual(*A), v, 20);
        }
        if (ok) found.push_back(v);
    }
    ASSERT_FALSE(found.empty());
    for (auto& name : kCorpus) {
        auto A = corpus_algebra(name);
        MonomialAlgebra D = koszul_dual(*A);
        EXPECT_TRUE(reciprocity_holds(*A, D, found.front(), 20)) << name;
        EXPECT_TRUE(reciprocity_holds_closed(*A, D, found.front())) << name;
    }
    auto Q = corpus_algebra("loop_sq");
    EXPECT_EQ(hilbert_algebra_closed(*Q)[0][0], ts({1, 1}, {1}));
    EXPECT_EQ(hilbert_algebra_closed(koszul_dual(*Q))[0][0].negate_variable(), ts({1}, {1, 1}));
}

TEST(Reciprocity, FailsForNonDualPair) {
    auto A = corpus_algebra("sl2");
    for (auto v : all_reciprocity_variants()) EXPECT_FALSE(reciprocity_holds(*A, *A, v, 10));
}

TEST(HilbertModule, RandomAlgebrasAndModules) {
    Rng rng(31);
    Limits lim;
    AlgebraShape shape;
    shape.max_vertices = 4;
    shape.max_arrows = 6;
    for (int i = 0; i < 20; ++i) {
        auto A = share_algebra(random_algebra(rng, shape));
        for (SummandKind kind : {SummandKind::projective, SummandKind::injective}) {
            Presentation p = random_presentation(rng, *A, kind);
            GradedModule M = presented_module(A, p, lim);
            SCOPED_TRACE(serialize(*A) + presentation_expr(*A, p));
            expect_matches_dims(hilbert_module_closed(M, natural_side(M), lim), M, 30);
            Resolution R = kind == SummandKind::projective ? minimal_projective_resolution(M, 5, lim)
                                                           : minimal_injective_coresolution(M, 5, lim);
            expect_matches_betti(poincare_closed(M, kind, lim), R);
        }
    }
}

#include <gtest/gtest.h>

#include "koszulkit/generators.hpp"
#include "koszulkit/koszul.hpp"
#include "test_util.hpp"

using namespace koszulkit;

namespace {

struct Pair {
    AlgebraPtr lambda, dual;
};

Pair corpus_pair(const std::string& name) {
    KoszulPair P(parse_algebra(read_file(std::string(KOSZULKIT_CORPUS) + "/" + name + ".alg")));
    return {P.lambda, P.dual};
}

// words from x to y of length n, by walking every arrow sequence
long long brute_words(const MonomialAlgebra& A, int x, int y, int n) {
    if (n == 0) return x == y;
    long long count = 0;
    std::function<void(int, int, int)> walk = [&](int at, int last, int left) {
        if (left == 0) {
            count += at == y;
            return;
        }
        for (int b = 0; b < A.num_arrows(); ++b) {
            if (A.source(b) != at) continue;
            if (last >= 0 && !A.is_nonzero({last, b})) continue;
            walk(A.target(b), b, left - 1);
        }
    };
    walk(x, -1, n);
    return count;
}

const std::vector<std::string> kCorpus = {"sl2", "sl2_dual", "a3", "loop_sq", "free_loop", "rad2_zero3"};

}  // namespace

TEST(KoszulFunctor, InjectiveOfSl2) {
    auto [L, D] = corpus_pair("sl2");
    SummandComplex K = koszul_K(injective_module(D, 0, 0, {}), L);
    EXPECT_EQ(format_complex(K),
              "term -2: P(1)<2>\n  d 0 0: beta\nterm -1: P(2)<1>\n  d 0 0: alpha\nterm 0: P(1)<0>\n");
    EXPECT_TRUE(check_complex(K).ok);
    EXPECT_FALSE(linearity_failure(K));
}

TEST(KoszulFunctor, SimpleGivesProjective) {
    auto [L, D] = corpus_pair("a3");
    for (int x = 0; x < 3; ++x) {
        SummandComplex K = koszul_K(simple_module(D, x), L);
        EXPECT_EQ(K.lo(), 0);
        EXPECT_EQ(K.hi(), 0);
        ASSERT_EQ(K.term(0).size(), 1u);
        EXPECT_EQ(K.term(0)[0].vertex, x);
        SummandComplex G = cokoszul_G(simple_module(L, x), D);
        ASSERT_EQ(G.term(0).size(), 1u);
        EXPECT_EQ(G.kind(), SummandKind::injective);
    }
}

TEST(KoszulFunctor, CoidealOfSl2) {
    auto [L, D] = corpus_pair("sl2");
    SummandComplex K = koszul_K(arrow_coideal(D, D->arrow_id("alpha_op"), {}), L);
    EXPECT_EQ(format_complex(K), "term -2: P(1)<2>\n  d 0 0: beta\nterm -1: P(2)<1>\n");
}

TEST(KoszulFunctor, CoKoszulOfProjectiveSl2) {
    auto [L, D] = corpus_pair("sl2");
    SummandComplex G = cokoszul_G(projective_module(L, 0, 0, {}), D);
    EXPECT_EQ(format_complex(G), "term 0: I(1)<0>\n  d 0 0: alpha_op\nterm 1: I(2)<-1>\n");
    Resolution R = minimal_injective_coresolution(simple_module(D, 0), 5, {});
    EXPECT_EQ(format_complex(R.complex), format_complex(G));
}

TEST(KoszulFunctor, SquareZeroOnRandomModules) {
    Rng rng(11);
    for (int t = 0; t < 40; ++t) {
        KoszulPair P(random_algebra(rng, {1, 5, 8, 50, true}));
        auto kind = t % 2 ? SummandKind::injective : SummandKind::projective;
        GradedModule M = presented_module(P.dual, random_presentation(rng, *P.dual, kind), {8, 2000});
        SummandComplex K = koszul_K(M, P.lambda);
        EXPECT_TRUE(check_complex(K).ok) << check_complex(K).detail;
        EXPECT_FALSE(linearity_failure(K));
        GradedModule N = presented_module(P.lambda, random_presentation(rng, *P.lambda, kind), {8, 2000});
        SummandComplex G = cokoszul_G(N, P.dual);
        EXPECT_TRUE(check_complex(G).ok) << check_complex(G).detail;
        EXPECT_FALSE(linearity_failure(G));
    }
}

TEST(KoszulFunctor, EulerCharacteristicMatchesWordCounts) {
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
        KoszulPair P(random_algebra(rng, {1, 4, 6, 50, true}));
        GradedModule M = presented_module(P.dual, random_presentation(rng, *P.dual, SummandKind::injective), {6, 2000});
        if (!M.complete_below()) continue;
        const int top = 8;
        ModuleComplex E = expand(koszul_K(M, P.lambda), {top, 20000});
        for (int v = 0; v < P.lambda->num_vertices(); ++v)
            for (int e = -2; e <= top; ++e) {
                long long chi = 0, oracle = 0;
                for (int n = E.lo(); n <= E.hi(); ++n) chi += (n % 2 ? -1 : 1) * E.term(n)->dim(v, e);
                for (int n = M.lo(); n <= M.hi(); ++n)
                    for (int x = 0; x < P.lambda->num_vertices(); ++x)
                        if (e + n >= 0) oracle += (n % 2 ? -1 : 1) * M.dim(x, n) * brute_words(*P.lambda, x, v, e + n);
                EXPECT_EQ(chi, oracle) << "vertex " << v << " degree " << e;
            }
    }
}

TEST(Totalization, SingleDegreeIsKoszulFunctor) {
    auto [L, D] = corpus_pair("sl2");
    GradedModule I = injective_module(D, 0, 0, {});
    ModuleComplex X(D, 0);
    X.push_term(share(I));
    EXPECT_EQ(format_complex(F_on_complex(X, L)), format_complex(koszul_K(I, L)));
}

TEST(Totalization, ProjectionOntoCoideal) {
    auto [L, D] = corpus_pair("sl2");
    auto I = share(injective_module(D, 0, 0, {}));
    auto C = share(arrow_coideal(D, D->arrow_id("alpha_op"), {}));
    GradedMorphism pr(I, C);
    for (int n = -2; n <= -1; ++n)
        for (int v = 0; v < 2; ++v) pr.set_block(v, n, SparseMatrix::identity(I->dim(v, n)));
    ASSERT_TRUE(pr.is_module_map());
    ModuleComplex X(D, 0);
    X.push_term(I);
    X.push_term(C);
    X.set_diff(0, pr);
    ASSERT_FALSE(double_complex_failure(koszul_double_complex(X, L)));
    SummandComplex T = F_on_complex(X, L);
    ASSERT_TRUE(check_complex(T).ok) << check_complex(T).detail;
    ModuleComplex E = expand(T, {});
    for (int n = E.lo(); n <= E.hi(); ++n)
        if (n != 0) {
            EXPECT_TRUE(cohomology(E, n).is_zero()) << n;
        }
    EXPECT_EQ(dims(cohomology(E, 0)), dims(projective_module(L, 0, 0, {})));
}

TEST(KoszulCertificate, Sl2) {
    KoszulPair P(*corpus_pair("sl2").lambda);
    KoszulReport r = koszul_certificate(P);
    ASSERT_TRUE(r.ok) << r.vertices[0].failures.size();
    EXPECT_EQ(r.vertices[0].projective_dimension, 2);
    EXPECT_EQ(r.vertices[1].projective_dimension, 1);
}

TEST(KoszulCertificate, A3AndSemisimple) {
    KoszulPair P(*corpus_pair("a3").lambda);
    KoszulReport r = koszul_certificate(P);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.vertices[0].projective_dimension, 2);
    KoszulPair S(parse_algebra("vertex 1\nvertex 2\n"));
    KoszulReport s = koszul_certificate(S);
    EXPECT_TRUE(s.ok);
    for (auto& v : s.vertices) EXPECT_EQ(v.projective_dimension, 0);
}

TEST(KoszulCertificate, Corpus) {
    for (auto& name : kCorpus) {
        KoszulPair P(*corpus_pair(name).lambda);
        KoszulReport r = koszul_certificate(P);
        for (auto& v : r.vertices)
            for (auto& f : v.failures) ADD_FAILURE() << name << ": " << f;
    }
    // infinite global dimension is reported as such
    KoszulPair Q(*corpus_pair("loop_sq").lambda);
    EXPECT_FALSE(koszul_certificate(Q).vertices[0].projective_dimension);
}

TEST(KoszulCertificate, RandomAlgebras) {
    Rng rng(13);
    for (int t = 0; t < 15; ++t) {
        KoszulPair P(random_algebra(rng, {1, 6, 10, 50, true}));
        KoszulReport r = koszul_certificate(P);
        for (auto& v : r.vertices)
            for (auto& f : v.failures) ADD_FAILURE() << serialize(*P.lambda) << f;
    }
}

TEST(ArrowChecks, Corpus) {
    for (auto& name : kCorpus) {
        KoszulPair P(*corpus_pair(name).lambda);
        for (int a = 0; a < P.lambda->num_arrows(); ++a) {
            ArrowCheck c = check_arrow(P, a, {12, 20000});
            for (auto& f : c.failures) ADD_FAILURE() << name << " arrow " << P.lambda->arrow_name(a) << ": " << f;
        }
    }
}

TEST(Roundtrip, Sl2Examples) {
    auto [L, D] = corpus_pair("sl2");
    for (int x = 0; x < 2; ++x) EXPECT_TRUE(roundtrip_check(simple_module(L, x), D, {}).ok);
    RoundtripReport r = roundtrip_check(projective_module(L, 0, 0, {}), D, {});
    EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures[0]);
    EXPECT_TRUE(roundtrip_check(arrow_ideal(L, L->arrow_id("alpha"), {}), D, {}).ok);
}

TEST(Roundtrip, Corpus) {
    const Limits lim{12, 20000};
    for (auto& name : kCorpus) {
        auto [L, D] = corpus_pair(name);
        std::vector<GradedModule> ms;
        for (int x = 0; x < L->num_vertices(); ++x) {
            ms.push_back(simple_module(L, x));
            ms.push_back(projective_module(L, x, 0, lim));
        }
        for (int a = 0; a < L->num_arrows(); ++a) ms.push_back(arrow_ideal(L, a, lim));
        for (auto& N : ms) {
            RoundtripReport r = roundtrip_check(N, D, lim);
            for (auto& f : r.failures) ADD_FAILURE() << name << ": " << f;
        }
    }
}

TEST(Roundtrip, WrongAugmentationIsCaught) {
    auto [L, D] = corpus_pair("sl2");
    SummandComplex K = koszul_K(injective_module(D, 0, 0, {}), L);
    ExpandedComplex E = expand_with_bases(K, {});
    auto S = share(simple_module(L, 0));
    GradedMorphism zero = detail::map_from_generators(E.terms.back(), K.term(0), S, {SparseVec{}});
    EXPECT_TRUE(detail::check_augmentation(E.complex, 0, zero, {}));
    auto S2 = share(simple_module(L, 1, 1));
    GradedMorphism onto_wrong = detail::map_from_generators(E.terms.back(), K.term(0), S2, {unit_vector(0)});
    EXPECT_TRUE(detail::check_augmentation(E.complex, 0, onto_wrong, {}));
}

TEST(ShiftCompatibility, SimpleDual) {
    auto [L, D] = corpus_pair("sl2");
    SummandComplex X(SummandKind::injective, D, 0);
    X.push_term({{0, 0, ""}});
    for (int i = -2; i <= 2; ++i) {
        ShiftReport r = shift_compatibility(X, L, i, {});
        EXPECT_TRUE(r.ok) << r.witness;
        EXPECT_EQ(r.literal_ok, i == 0);
    }
}

TEST(ShiftCompatibility, RandomTwoTerm) {
    Rng rng(14);
    for (int t = 0; t < 10; ++t) {
        KoszulPair P(random_algebra(rng, {1, 4, 6, 50, true}));
        auto kind = t % 2 ? SummandKind::injective : SummandKind::projective;
        SummandComplex X = random_two_term(rng, P.dual, kind, 0);
        for (int i = -2; i <= 2; ++i) {
            ShiftReport r = shift_compatibility(X, P.lambda, i, {10, 4000});
            EXPECT_TRUE(r.ok) << r.witness;
        }
    }
}

TEST(ShiftCompatibility, RelabelledTableMatchesDirectExpansion) {
    auto [L, D] = corpus_pair("sl2");
    SummandComplex X(SummandKind::injective, D, 0);
    X.push_term({{0, 0, ""}, {1, -1, ""}});
    const Limits lim{10, 4000};
    SummandComplex FX = F_on_complex(expand(X, lim), L);
    auto table = [&](const SummandComplex& Y) {
        ModuleComplex E = expand(Y, lim);
        return cohomology_table(E, std::max(Y.lo(), E.certified_from()), std::min(Y.hi(), E.certified_to()));
    };
    const CohomologyTable base = table(FX);
    ASSERT_FALSE(base.empty());
    for (int k = -2; k <= 2; ++k)
        for (int j = -2; j <= 2; ++j) {
            CohomologyTable direct = table(grade_shift_complex(shift_complex(FX, k), j));
            CohomologyTable relabelled;
            for (auto& [key, d] : shifted_table(base, k, j))
                if (std::get<2>(key) <= lim.degree - std::abs(j)) relabelled[key] = d;
            for (auto it = direct.begin(); it != direct.end();)
                it = std::get<2>(it->first) <= lim.degree - std::abs(j) ? std::next(it) : direct.erase(it);
            EXPECT_EQ(direct, relabelled) << k << " " << j;
        }
}

TEST(Truncation, ColinearHasNoFinitePart) {
    auto [L, D] = corpus_pair("sl2");
    GradedModule C = arrow_coideal(D, D->arrow_id("alpha_op"), {});
    TruncationReport r = find_linear_truncation(C, L, TruncationRule::lowest, {});
    EXPECT_TRUE(r.ok()) << r.witness;
    EXPECT_TRUE(r.finite_part.is_zero());
    EXPECT_EQ(r.r, -1);
    TruncationReport s = find_linear_truncation(shift(C, -2), L, TruncationRule::lowest, {});
    EXPECT_EQ(s.r, -3);
    EXPECT_TRUE(s.finite_part.is_zero());
}

TEST(Truncation, SplitsOffShiftedSimple) {
    auto [L, D] = corpus_pair("sl2");
    GradedModule M = direct_sum({injective_module(D, 0, 0, {}), shift(simple_module(D, 1), -3)}, D);
    TruncationReport r = find_linear_truncation(M, L, TruncationRule::lowest, {});
    EXPECT_EQ(r.r, -3);
    EXPECT_TRUE(r.ok()) << r.witness;
    EXPECT_EQ(r.finite_part.total_dim(), 3);
    TruncationReport p = find_linear_truncation(M, L, TruncationRule::below_top, {});
    EXPECT_EQ(p.r, -1);
    EXPECT_FALSE(p.tail_colinear);
    GradedModule N = direct_sum({injective_module(D, 0, 0, {}), simple_module(D, 1)}, D);
    TruncationReport q = find_linear_truncation(N, L, TruncationRule::below_top, {});
    EXPECT_TRUE(q.ok());
    EXPECT_EQ(q.finite_part.total_dim(), 2);
    EXPECT_EQ(q.finite_part.dim(1, 0), 1);
}

TEST(Truncation, RandomCopresented) {
    Rng rng(15);
    for (int t = 0; t < 15; ++t) {
        KoszulPair P(random_algebra(rng, {1, 4, 6, 50, true}));
        GradedModule M = presented_module(P.dual, random_presentation(rng, *P.dual, SummandKind::injective), {10, 4000});
        if (M.is_zero()) continue;
        TruncationReport r = find_linear_truncation(M, P.lambda, TruncationRule::lowest, {10, 4000});
        EXPECT_TRUE(r.finite) << serialize(*P.lambda);
        EXPECT_TRUE(r.tail_colinear) << r.witness << "\n" << serialize(*P.lambda);
    }
}

#include <gtest/gtest.h>

#include "koszulkit/random.hpp"
#include "test_util.hpp"

using namespace koszulkit;

namespace {

MonomialAlgebra relabel_dual_dual(const MonomialAlgebra& D) {
    // strip the two "_op" suffixes added by dualizing twice
    Quiver q = D.quiver();
    for (auto& a : q.arrows) a.name = a.name.substr(0, a.name.size() - 6);
    return MonomialAlgebra(q, D.relations());
}

}  // namespace

TEST(Algebra, ParsesSl2) {
    auto A = corpus_algebra("sl2");
    EXPECT_EQ(A->num_vertices(), 2);
    EXPECT_EQ(A->num_arrows(), 2);
    EXPECT_EQ(A->num_relations(), 1);
    EXPECT_TRUE(A->is_relation(A->arrow_id("alpha"), A->arrow_id("beta")));
    EXPECT_TRUE(A->allowed(A->arrow_id("beta"), A->arrow_id("alpha")));
}

TEST(Algebra, ParseErrorsCarryLineNumbers) {
    try {
        parse_algebra("vertex 1\nvertex 2\narrow alpha 1 2\nrelation alpha alpha\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 4);
        EXPECT_NE(std::string(e.what()).find("relation not composable"), std::string::npos);
    }
    EXPECT_THROW(parse_algebra("vertex 1\nvertex 1\n"), ParseError);
    EXPECT_THROW(parse_algebra("vertex 1\narrow a 1 2\n"), ParseError);
    EXPECT_THROW(parse_algebra("vertex 1\nedge a 1 1\n"), ParseError);
    EXPECT_THROW(parse_algebra("vertex 1\narrow 1 1 1\n"), ParseError);
    EXPECT_THROW(parse_algebra("vertex 1\narrow a 1 1\nrelation a b\n"), ParseError);
    EXPECT_THROW(parse_algebra("vertex 1\narrow a 1 1\nrelation a a\nrelation a a\n"), ParseError);
}

TEST(Algebra, EmptyRelationsAndComments) {
    auto A = parse_algebra("# free\nvertex x   # comment\narrow l x x\n\n");
    EXPECT_EQ(A.num_relations(), 0);
    EXPECT_FALSE(A.finite_dimensional());
}

TEST(Algebra, SerializeRoundTrip) {
    auto A = corpus_algebra("sl2");
    EXPECT_EQ(parse_algebra(serialize(*A)), *A);
    EXPECT_EQ(serialize(*A), "vertex 1\nvertex 2\narrow alpha 1 2\narrow beta 2 1\nrelation alpha beta\n");
}

TEST(Algebra, DualOfSl2) {
    auto A = corpus_algebra("sl2");
    MonomialAlgebra D = koszul_dual(*A);
    EXPECT_EQ(serialize(D), "vertex 1\nvertex 2\narrow alpha_op 2 1\narrow beta_op 1 2\nrelation alpha_op beta_op\n");
    EXPECT_EQ(D, *corpus_algebra("sl2_dual"));
}

TEST(Algebra, DualOfSquareZeroLoopIsFree) {
    auto A = corpus_algebra("loop_sq");
    MonomialAlgebra D = koszul_dual(*A);
    EXPECT_EQ(D.num_relations(), 0);
    EXPECT_EQ(D, *[] {
        auto F = corpus_algebra("free_loop");
        Quiver q = F->quiver();
        q.arrows[0].name = "l_op";
        return share_algebra(MonomialAlgebra(q, {}));
    }());
}

TEST(Algebra, DualIsInvolution) {
    EXPECT_EQ(relabel_dual_dual(koszul_dual(koszul_dual(*corpus_algebra("a3")))), *corpus_algebra("a3"));
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        auto A = random_algebra(rng, {1, 6, 10, 50, t % 2 == 0});
        EXPECT_EQ(relabel_dual_dual(koszul_dual(koszul_dual(A))), A);
    }
}

TEST(Algebra, DualAllowedGraphIsTransposedComplement) {
    Rng rng(22);
    for (int t = 0; t < 100; ++t) {
        auto A = random_algebra(rng, {1, 6, 10, 50, false});
        auto D = koszul_dual(A);
        for (int a = 0; a < A.num_arrows(); ++a)
            for (int b = 0; b < A.num_arrows(); ++b) {
                bool composable = A.composable(a, b);
                EXPECT_EQ(D.composable(b, a), composable);
                if (composable) {
                    EXPECT_EQ(D.allowed(b, a), !A.allowed(a, b));
                }
            }
    }
}

TEST(Algebra, MultiplyWords) {
    auto A = corpus_algebra("sl2");
    int al = A->arrow_id("alpha"), be = A->arrow_id("beta");
    auto ba = multiply_words(*A, A->make_path(1, {be}), A->make_path(0, {al}));
    ASSERT_TRUE(ba);
    EXPECT_EQ(ba->source, 1);
    EXPECT_EQ(ba->target, 1);
    EXPECT_EQ(ba->length(), 2);
    EXPECT_FALSE(multiply_words(*A, A->make_path(0, {al}), A->make_path(1, {be})));
    EXPECT_EQ(*multiply_words(*A, A->make_path(0, {}), A->make_path(0, {al})), A->make_path(0, {al}));
    EXPECT_FALSE(multiply_words(*A, A->make_path(1, {}), A->make_path(0, {al})));
}

TEST(Algebra, MultiplicationAssociative) {
    Rng rng(23);
    for (int t = 0; t < 50; ++t) {
        auto A = random_algebra(rng, {1, 4, 8, 40, false});
        std::vector<Path> ws;
        for (int v = 0; v < A.num_vertices(); ++v)
            for (auto& level : enumerate_words(A, v, WordDirection::from, 2).levels)
                for (auto& w : level) ws.push_back(w);
        for (int k = 0; k < 200 && !ws.empty(); ++k) {
            const Path &p = rng.pick(ws), &q = rng.pick(ws), &r = rng.pick(ws);
            auto pq = multiply_words(A, p, q);
            auto qr = multiply_words(A, q, r);
            auto left = pq ? multiply_words(A, *pq, r) : std::nullopt;
            auto right = qr ? multiply_words(A, p, *qr) : std::nullopt;
            EXPECT_EQ(left, right);
        }
    }
}

TEST(Algebra, CountPathsSl2) {
    auto A = corpus_algebra("sl2");
    EXPECT_EQ(count_paths(*A, 1, 1, 2), 1);
    EXPECT_EQ(count_paths(*A, 0, 0, 2), 0);
    EXPECT_EQ(count_paths(*A, 0, 0, 0), 1);
    EXPECT_EQ(count_paths(*A, 0, 1, 0), 0);
}

TEST(Algebra, CountPathsMatchesBruteForce) {
    Rng rng(24);
    for (int t = 0; t < 40; ++t) {
        auto A = random_algebra(rng, {1, 6, 10, 50, false});
        for (int n = 0; n <= 12; ++n) {
            Integer total = 0;
            for (int x = 0; x < A.num_vertices(); ++x)
                for (int y = 0; y < A.num_vertices(); ++y) total += count_paths(A, x, y, n);
            const long cap = 2000000;
            if (total > cap) break;
            EXPECT_EQ(total, Integer(static_cast<long>(brute_force_sequences(A, n, cap)))) << "n=" << n;
        }
    }
}

TEST(Algebra, FiniteDimensional) {
    auto sl2 = corpus_algebra("sl2")->finite_info();
    EXPECT_TRUE(sl2.finite);
    EXPECT_EQ(*sl2.max_length, 2);
    EXPECT_EQ(*sl2.dimension, 5);
    EXPECT_FALSE(corpus_algebra("free_loop")->finite_dimensional());
    auto semi = parse_algebra("vertex a\nvertex b\nvertex c\n").finite_info();
    EXPECT_TRUE(semi.finite);
    EXPECT_EQ(*semi.max_length, 0);
    EXPECT_EQ(*semi.dimension, 3);
}

TEST(Algebra, FiniteDimensionMatchesEnumeration) {
    Rng rng(25);
    for (int t = 0; t < 50; ++t) {
        auto A = random_algebra(rng);
        ASSERT_TRUE(A.finite_dimensional());
        Integer total = 0;
        int longest = 0;
        for (int v = 0; v < A.num_vertices(); ++v) {
            auto lv = enumerate_words(A, v, WordDirection::from, 100);
            EXPECT_TRUE(lv.complete);
            for (auto& level : lv.levels) total += static_cast<long>(level.size());
            longest = std::max(longest, static_cast<int>(lv.levels.size()) - 1);
        }
        EXPECT_EQ(*A.finite_info().dimension, total);
        EXPECT_EQ(*A.finite_info().max_length, longest);
    }
}

TEST(Algebra, RadicalSquareZero) {
    EXPECT_TRUE(is_radical_square_zero(*corpus_algebra("loop_sq")));
    EXPECT_FALSE(is_radical_square_zero(*corpus_algebra("sl2")));
    EXPECT_TRUE(is_radical_square_zero(parse_algebra("vertex 1\nvertex 2\narrow a 1 2\n")));
    EXPECT_TRUE(is_radical_square_zero(*corpus_algebra("rad2_zero3")));
}

TEST(Algebra, WordsIntoAreSortedAndNonzero) {
    auto D = corpus_algebra("sl2_dual");
    auto lv = enumerate_words(*D, 0, WordDirection::into, 5);
    ASSERT_EQ(lv.levels.size(), 3u);
    EXPECT_EQ(D->word_string(lv.levels[2][0]), "beta_op.alpha_op");
    EXPECT_TRUE(lv.complete);
}

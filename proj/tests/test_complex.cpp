#include <gtest/gtest.h>

#include "koszulkit/complex.hpp"
#include "koszulkit/generators.hpp"
#include "test_util.hpp"

using namespace koszulkit;

namespace {

PathCombination word(const AlgebraPtr& A, int start, std::vector<std::string> arrows) {
    std::vector<int> ids;
    for (auto& a : arrows) ids.push_back(A->arrow_id(a));
    return {{A->make_path(start, ids), Rational(1)}};
}

// P(1)<2> -beta-> P(2)<1> -alpha-> P(1)<0>, the resolution of S(1) over sl2.
SummandComplex sl2_resolution(const AlgebraPtr& A) {
    SummandComplex X(SummandKind::projective, A, -2);
    X.push_term({{0, 2, ""}});
    X.push_term({{1, 1, ""}});
    X.push_term({{0, 0, ""}});
    X.set_diff(-2, {{{0, 0}, word(A, 1, {"beta"})}});
    X.set_diff(-1, {{{0, 0}, word(A, 0, {"alpha"})}});
    return X;
}

DimTable euler(const ModuleComplex& X, bool homology) {
    DimTable e;
    for (int n = X.lo(); n <= X.hi(); ++n) {
        const int sign = n % 2 == 0 ? 1 : -1;
        for (auto& [vd, d] : dims(homology ? cohomology(X, n) : *X.term(n))) e[vd] += sign * d;
    }
    std::erase_if(e, [](const auto& kv) { return kv.second == 0; });
    return e;
}

}  // namespace

TEST(Complex, EmptyIsValid) {
    auto A = corpus_algebra("sl2");
    SummandComplex X(SummandKind::projective, A, 0);
    EXPECT_TRUE(check_complex(X).ok);
}

TEST(Complex, ResolutionOfSimple) {
    auto A = corpus_algebra("sl2");
    SummandComplex X = sl2_resolution(A);
    EXPECT_TRUE(check_complex(X).ok);
    EXPECT_FALSE(linearity_failure(X));
    EXPECT_FALSE(minimality_failure(X));
    ModuleComplex M = expand(X, {});
    EXPECT_TRUE(check_complex(M).ok);
    EXPECT_TRUE(cohomology(M, -2).is_zero());
    EXPECT_TRUE(cohomology(M, -1).is_zero());
    EXPECT_EQ(dims(cohomology(M, 0)), (DimTable{{{0, 0}, 1}}));
}

TEST(Complex, SquareNonzeroDetected) {
    auto A = corpus_algebra("sl2");
    SummandComplex X(SummandKind::projective, A, -2);
    X.push_term({{1, 2, ""}});
    X.push_term({{0, 1, ""}});
    X.push_term({{1, 0, ""}});
    X.set_diff(-2, {{{0, 0}, word(A, 0, {"alpha"})}});
    X.set_diff(-1, {{{0, 0}, word(A, 1, {"beta"})}});
    ComplexCheck c = check_complex(X);
    EXPECT_FALSE(c.ok);
    EXPECT_EQ(c.n, -2);
    EXPECT_NE(c.detail.find("beta.alpha"), std::string::npos) << c.detail;
}

TEST(Complex, IncompatibleEntryDetected) {
    auto A = corpus_algebra("sl2");
    SummandComplex X(SummandKind::projective, A, -1);
    X.push_term({{1, 2, ""}});
    X.push_term({{0, 0, ""}});
    X.set_diff(-1, {{{0, 0}, word(A, 0, {"alpha"})}});
    EXPECT_FALSE(check_complex(X).ok);
    EXPECT_TRUE(linearity_failure(X));
}

TEST(Complex, ScalarEntryIsNotMinimal) {
    auto A = corpus_algebra("sl2");
    SummandComplex X(SummandKind::projective, A, -1);
    X.push_term({{0, 0, ""}});
    X.push_term({{0, 0, ""}});
    X.set_diff(-1, {{{0, 0}, {{A->make_path(0, {}), Rational(3)}}}});
    EXPECT_TRUE(check_complex(X).ok);
    EXPECT_TRUE(minimality_failure(X));
    ModuleComplex M = expand(X, {});
    EXPECT_TRUE(cohomology(M, -1).is_zero());
    EXPECT_TRUE(cohomology(M, 0).is_zero());
}

TEST(Complex, InjectiveCoresolution) {
    auto D = corpus_algebra("sl2_dual");
    // S(1) -> I(1)<0> -> I(2)<-1>, cut by alpha_op
    SummandComplex X(SummandKind::injective, D, 0);
    X.push_term({{0, 0, ""}});
    X.push_term({{1, -1, ""}});
    X.set_diff(0, {{{0, 0}, word(D, 1, {"alpha_op"})}});
    ASSERT_TRUE(check_complex(X).ok) << check_complex(X).detail;
    ModuleComplex M = expand(X, {});
    EXPECT_EQ(dims(cohomology(M, 0)), (DimTable{{{0, 0}, 1}}));
    EXPECT_TRUE(cohomology(M, 1).is_zero());
}

TEST(Complex, RandomTwoTermProperties) {
    Rng rng(7);
    for (int t = 0; t < 40; ++t) {
        auto A = share_algebra(random_algebra(rng, {1, 4, 6, 50, true}));
        SummandKind kind = t % 2 ? SummandKind::injective : SummandKind::projective;
        SummandComplex X = random_two_term(rng, A, kind, rng.uniform(-2, 2));
        ASSERT_TRUE(check_complex(X).ok) << check_complex(X).detail;
        ModuleComplex M = expand(X, {});
        ASSERT_TRUE(check_complex(M).ok);
        EXPECT_EQ(euler(M, true), euler(M, false));
        const int k = rng.uniform(-2, 2), i = rng.uniform(-2, 2);
        ModuleComplex S = expand(shift_complex(X, k), {});
        ModuleComplex G = expand(grade_shift_complex(X, i), {});
        for (int n = X.lo(); n <= X.hi(); ++n) {
            GradedModule H = cohomology(M, n);
            EXPECT_EQ(dims(cohomology(S, n - k)), dims(H));
            EXPECT_EQ(dims(cohomology(G, n)), dims(shift(H, i)));
        }
    }
}

TEST(Complex, TotalOfSingleColumn) {
    auto A = corpus_algebra("sl2");
    SummandComplex X = sl2_resolution(A);
    DoubleComplex B{SummandKind::projective, A, {}, {}, {}, {}, {}};
    for (int q = X.lo(); q <= X.hi(); ++q) B.terms[{0, q}] = X.term(q);
    for (int q = X.lo(); q < X.hi(); ++q) B.d2[{0, q}] = X.diff(q);
    EXPECT_FALSE(double_complex_failure(B));
    EXPECT_EQ(format_complex(total_complex(B)), format_complex(X));
}

TEST(Complex, ConeOfIdentityIsAcyclic) {
    auto A = corpus_algebra("sl2");
    SummandComplex X = sl2_resolution(A);
    DoubleComplex B{SummandKind::projective, A, {}, {}, {}, {}, {}};
    for (int p = 0; p < 2; ++p) {
        for (int q = X.lo(); q <= X.hi(); ++q) B.terms[{p, q}] = X.term(q);
        for (int q = X.lo(); q < X.hi(); ++q) B.d2[{p, q}] = X.diff(q);
    }
    for (int q = X.lo(); q <= X.hi(); ++q) {
        Entries id;
        for (std::size_t j = 0; j < X.term(q).size(); ++j)
            id[{static_cast<int>(j), static_cast<int>(j)}] = {{A->make_path(X.term(q)[j].vertex, {}), Rational(1)}};
        B.d1[{0, q}] = id;
    }
    ASSERT_FALSE(double_complex_failure(B));
    SummandComplex T = total_complex(B);
    ASSERT_TRUE(check_complex(T).ok) << check_complex(T).detail;
    ModuleComplex M = expand(T, {});
    for (int n = M.lo(); n <= M.hi(); ++n) EXPECT_TRUE(cohomology(M, n).is_zero()) << n;
}

TEST(Complex, NoncommutingSquareDetected) {
    auto A = corpus_algebra("sl2");
    SummandComplex X = sl2_resolution(A);
    DoubleComplex B{SummandKind::projective, A, {}, {}, {}, {}, {}};
    for (int p = 0; p < 2; ++p) {
        for (int q = X.lo(); q <= X.hi(); ++q) B.terms[{p, q}] = X.term(q);
        for (int q = X.lo(); q < X.hi(); ++q) B.d2[{p, q}] = X.diff(q);
    }
    B.d1[{0, 0}] = {{{0, 0}, {{A->make_path(0, {}), Rational(1)}}}};
    EXPECT_TRUE(double_complex_failure(B));
}

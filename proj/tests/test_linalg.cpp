#include <gtest/gtest.h>

#include "koszulkit/random.hpp"
#include "test_util.hpp"

using namespace koszulkit;

namespace {

SparseMatrix random_matrix(Rng& rng, int rows, int cols, int density) {
    SparseMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            if (rng.chance(density, 100)) {
                Rational x(rng.uniform(-3, 3), rng.uniform(1, 2));
                x.canonicalize();
                m.add(i, j, x);
            }
    return m;
}

// low-rank product to force nontrivial kernels
SparseMatrix random_low_rank(Rng& rng, int rows, int cols) {
    int r = rng.uniform(0, std::min(rows, cols));
    return multiply(random_matrix(rng, rows, r, 60), random_matrix(rng, r, cols, 60));
}

}  // namespace

TEST(Linalg, AxpyCancelsAndStaysSorted) {
    SparseVec a{{0, 1}, {3, 2}};
    SparseVec b{{1, 5}, {3, 1}};
    SparseVec c = axpy(a, -2, b);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].index, 0);
    EXPECT_EQ(c[1].index, 1);
    EXPECT_EQ(c[1].value, -10);
}

TEST(Linalg, RankMatchesDenseOracle) {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        int rows = rng.uniform(0, 7), cols = rng.uniform(0, 7);
        SparseMatrix m = t % 2 ? random_matrix(rng, rows, cols, 40) : random_low_rank(rng, rows, cols);
        EXPECT_EQ(rank(m), dense_rank(to_dense(m)));
    }
}

TEST(Linalg, NullSpaceIsKernelWithRankNullity) {
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        int rows = rng.uniform(0, 6), cols = rng.uniform(0, 8);
        SparseMatrix m = random_low_rank(rng, rows, cols);
        Subspace k = null_space(m);
        EXPECT_EQ(k.dim() + dense_rank(to_dense(m)), cols);
        for (auto& v : k.basis()) EXPECT_TRUE(m.apply(v).empty());
        EXPECT_EQ(dense_rank(to_dense(k.basis_matrix())), k.dim());
    }
}

TEST(Linalg, SubspaceReducedFormAndCoordinates) {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        int n = rng.uniform(1, 8);
        Subspace s(n);
        std::vector<SparseVec> inserted;
        for (int k = 0; k < rng.uniform(0, 6); ++k) {
            SparseMatrix col = random_matrix(rng, n, 1, 50);
            s.insert(col.column(0));
            inserted.push_back(col.column(0));
        }
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j)
                EXPECT_EQ(get(s.basis()[i], s.pivots()[j]), i == j ? 1 : 0);
        for (auto& v : inserted) {
            EXPECT_TRUE(s.contains(v));
            SparseVec back;
            for (auto& e : s.coordinates(v)) back = axpy(back, e.value, s.basis()[e.index]);
            EXPECT_EQ(back, v);
        }
        EXPECT_EQ(static_cast<int>(s.complement().size()) + s.dim(), n);
    }
}

TEST(Linalg, IntersectionDimension) {
    Rng rng(14);
    for (int t = 0; t < 100; ++t) {
        int n = rng.uniform(1, 6);
        SparseMatrix a = random_matrix(rng, n, rng.uniform(0, 4), 50);
        SparseMatrix b = random_matrix(rng, n, rng.uniform(0, 4), 50);
        Subspace sa = column_space(a), sb = column_space(b);
        Subspace both = column_space(a);
        for (int j = 0; j < b.cols(); ++j) both.insert(b.column(j));
        EXPECT_EQ(intersect(sa, sb).dim(), sa.dim() + sb.dim() - both.dim());
    }
}

TEST(Linalg, ParseRational) {
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("x"), Error);
}

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "equiwitt/abelian.hpp"
#include "test_util.hpp"

using namespace equiwitt;

namespace {

// Bareiss determinant on small long long matrices; independent of the library.
long long det_small(std::vector<std::vector<long long>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    long long sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Determinantal divisors D_k = gcd of k x k minors; d_k = D_k / D_{k-1}.
std::vector<long long> factors_by_minors(const std::vector<std::vector<long long>>& a) {
    std::size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
    std::vector<long long> out;
    long long prev = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        long long g = 0;
        std::vector<int> rs(r), cs(c);
        std::vector<bool> rsel(r, false), csel(c, false);
        std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
        do {
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
            do {
                std::vector<std::vector<long long>> m;
                for (std::size_t i = 0; i < r; ++i) {
                    if (!rsel[i]) continue;
                    std::vector<long long> row;
                    for (std::size_t j = 0; j < c; ++j)
                        if (csel[j]) row.push_back(a[i][j]);
                    m.push_back(row);
                }
                g = std::gcd(g, std::llabs(det_small(m)));
            } while (std::prev_permutation(csel.begin(), csel.end()));
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

std::vector<std::vector<long long>> random_sparse(std::mt19937& rng, std::size_t r, std::size_t c, double density, int bound) {
    std::bernoulli_distribution keep(density);
    std::uniform_int_distribution<int> val(-bound, bound);
    std::vector<std::vector<long long>> a(r, std::vector<long long>(c, 0));
    for (auto& row : a)
        for (auto& x : row)
            if (keep(rng)) x = val(rng);
    return a;
}

}  // namespace

TEST(SmithNormalForm, FuzzPostconditionOnSparseMatrices) {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> dim(1, 12);
    int checked_with_minors = 0;
    for (int trial = 0; trial < 1200; ++trial) {
        std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        auto rows = random_sparse(rng, r, c, 0.3, trial % 3 == 0 ? 40 : 5);
        IntMatrix a = IntMatrix::from_rows(rows);
        SmithForm s = smith_normal_form(a, true);
        ASSERT_EQ(s.U * a * s.V, s.D) << "trial " << trial;
        ASSERT_TRUE((s.U * s.U_inv).is_identity()) << "trial " << trial;
        ASSERT_TRUE((s.V * s.V_inv).is_identity()) << "trial " << trial;
        for (std::size_t i = 0; i < s.D.rows(); ++i)
            for (std::size_t j = 0; j < s.D.cols(); ++j)
                if (i != j) ASSERT_EQ(s.D(i, j), 0);
        for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
            ASSERT_GT(s.diagonal[i], 0);
            ASSERT_EQ(s.D(i, i), s.diagonal[i]);
            if (i + 1 < s.diagonal.size()) ASSERT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
        }
        if (r <= 5 && c <= 5) {
            auto expect = factors_by_minors(rows);
            ASSERT_EQ(expect.size(), s.diagonal.size()) << "trial " << trial;
            for (std::size_t i = 0; i < expect.size(); ++i) ASSERT_EQ(Integer(expect[i]), s.diagonal[i]);
            ++checked_with_minors;
        }
    }
    EXPECT_GT(checked_with_minors, 100);
}

TEST(SmithNormalForm, LargeEntriesPromoteToBigIntegers) {
    long long big = 3037000499LL;  // squares overflow int64
    IntMatrix a = IntMatrix::from_rows({{big, big - 1, 7}, {big + 2, big, 11}, {5, 3, big}});
    SmithForm s = smith_normal_form(a, true);
    EXPECT_EQ(s.U * a * s.V, s.D);
    EXPECT_TRUE((s.U * s.U_inv).is_identity());
    Integer prod = 1;
    for (auto& d : s.diagonal) prod *= d;
    Integer det = determinant(a);
    EXPECT_EQ(prod, det < 0 ? Integer(-det) : det);
}

TEST(SmithNormalForm, SparseAndDenseFactorsAgree) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto rows = random_sparse(rng, 9, 11, 0.25, 6);
        IntMatrix a = IntMatrix::from_rows(rows);
        InvariantFactors d = invariant_factors(a), s = invariant_factors(SparseIntMatrix::from_dense(a));
        ASSERT_EQ(d.rank, s.rank);
        ASSERT_EQ(d.nonunit, s.nonunit);
    }
}

TEST(SmithNormalForm, RankMod2MatchesFactorCount) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        auto rows = random_sparse(rng, 8, 8, 0.4, 4);
        IntMatrix a = IntMatrix::from_rows(rows);
        InvariantFactors f = invariant_factors(a);
        std::size_t odd = 0;
        for (auto& d : f.nonunit)
            if (d % 2 == 0) ++odd;
        ASSERT_EQ(rank_mod2(SparseIntMatrix::from_dense(a)), f.rank - odd);
    }
}

TEST(FGAbGroup, CanonicalFormAndParsing) {
    FGAbGroup g(2, {Integer(4), Integer(6), Integer(1), Integer(0)});
    EXPECT_EQ(g.free_rank(), 3);
    EXPECT_EQ(g.str(), "Z^3 (+) Z/2 (+) Z/12");
    EXPECT_EQ(FGAbGroup::parse(g.str()), g);
    EXPECT_EQ(FGAbGroup::parse("Z/2 + Z/2 + (Z/4)^2"), FGAbGroup(0, {2, 2, 4, 4}));
    EXPECT_EQ(FGAbGroup::parse("0"), FGAbGroup::trivial());
    EXPECT_EQ(FGAbGroup::trivial().str(), "0");
    EXPECT_EQ(FGAbGroup::cyclic(6), FGAbGroup(0, {2, 3}));
    EXPECT_THROW(FGAbGroup::parse("Z/"), InputError);
    EXPECT_THROW(FGAbGroup::parse("Q"), InputError);
}

TEST(FGAbGroup, TwoTorsionAndSums) {
    FGAbGroup g = FGAbGroup::parse("Z^2 (+) Z/4 (+) Z/3 (+) Z/6");
    EXPECT_EQ(two_torsion(g), FGAbGroup::elementary(2));
    EXPECT_EQ(direct_sum(FGAbGroup::cyclic(2), FGAbGroup::cyclic(3)), FGAbGroup::cyclic(6));
    EXPECT_EQ(g.torsion_order(), 72);
    EXPECT_EQ(g.exponent(), 12);
    EXPECT_TRUE(FGAbGroup::elementary(3).annihilated_by(2));
}

TEST(FGAbGroup, CokernelOfDiagonal) {
    IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 0}, {0, 3}});
    EXPECT_EQ(cokernel(a), FGAbGroup::parse("Z (+) Z/6"));
}

TEST(Homology, CircleAndProjectivePlane) {
    ChainComplex circle;
    circle.sizes = {3, 3};
    SparseIntMatrix d1(3, 3);
    // edges 01, 12, 02
    d1.add(0, 0, -1); d1.add(1, 0, 1);
    d1.add(1, 1, -1); d1.add(2, 1, 1);
    d1.add(0, 2, -1); d1.add(2, 2, 1);
    d1.finalize();
    circle.boundary = {SparseIntMatrix(0, 3), d1};
    circle.validate();
    EXPECT_EQ(homology(circle, 0), FGAbGroup::free(1));
    EXPECT_EQ(homology(circle, 1), FGAbGroup::free(1));
    EXPECT_EQ(cohomology(dual(circle), 1), FGAbGroup::free(1));
}

TEST(Homology, RejectsNonComplex) {
    ChainComplex bad;
    bad.sizes = {1, 1, 1};
    SparseIntMatrix d1(1, 1), d2(1, 1);
    d1.add(0, 0, 1);
    d2.add(0, 0, 1);
    d1.finalize();
    d2.finalize();
    bad.boundary = {SparseIntMatrix(0, 1), d1, d2};
    EXPECT_THROW(bad.validate(), Error);
}

TEST(Tate, StandardModules) {
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 2; ++c) {
                IntMatrix s = test::involution_block(a, b, c);
                TateGroups t = tate_cohomology(InvolutionModule{s});
                EXPECT_EQ(t.even, FGAbGroup::elementary(a));
                EXPECT_EQ(t.odd, FGAbGroup::elementary(b));
            }
}

TEST(Tate, F2Module) {
    // F2[G] is induced: trivial Tate cohomology.
    TateGroups t = tate_cohomology(F2InvolutionModule{{{0, 1}, {1, 0}}});
    EXPECT_TRUE(t.even.is_trivial());
    EXPECT_TRUE(t.odd.is_trivial());
    TateGroups u = tate_cohomology(F2InvolutionModule{{{1}}});
    EXPECT_EQ(u.even, FGAbGroup::elementary(1));
    EXPECT_EQ(u.odd, FGAbGroup::elementary(1));
}

TEST(Comessatti, RecoversTypeOfRandomConjugates) {
    std::mt19937 rng(314159);
    std::uniform_int_distribution<int> small(0, 3);
    int trials = 0;
    while (trials < 1000) {
        int a = small(rng), b = small(rng), c = small(rng) % 3;
        if (a + b + 2 * c == 0 || a + b + 2 * c > 8) continue;
        IntMatrix s = test::involution_block(a, b, c);
        auto [p, pinv] = test::random_unimodular(rng, s.rows(), 12);
        IntMatrix conj = p * s * pinv;
        ASSERT_TRUE((conj * conj).is_identity());
        Comessatti got = comessatti_decompose(InvolutionModule{conj});
        ASSERT_EQ(got, (Comessatti{a, b, c})) << "trial " << trials << " matrix " << conj.str();
        ++trials;
    }
}

TEST(Comessatti, RejectsNonInvolution) {
    EXPECT_THROW(comessatti_decompose(InvolutionModule{IntMatrix::from_rows({{1, 1}, {0, 1}})}), InputError);
}

TEST(IntegerKernel, SaturatedBasis) {
    IntMatrix a = IntMatrix::from_rows({{2, 4, 6}});
    KernelBasis k = integer_kernel(a);
    EXPECT_EQ(k.basis.cols(), 2u);
    EXPECT_TRUE((a * k.basis).is_zero());
    EXPECT_TRUE((k.left_inv * k.basis).is_identity());
}

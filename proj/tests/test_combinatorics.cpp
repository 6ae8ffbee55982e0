#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pmlab/combinatorics.hpp"
#include "pmlab/errors.hpp"

using namespace pmlab;

TEST(Binomial, MatchesPascal) {
    for (std::uint64_t n = 0; n <= 40; ++n)
        for (std::uint64_t k = 0; k <= n + 1; ++k) EXPECT_EQ(binomial(n, k), oracle::choose(n, k)) << n << "," << k;
}

TEST(Binomial, KnownValues) {
    EXPECT_EQ(binomial(4, 2), 6u);
    EXPECT_EQ(binomial(8, 3), 56u);
    EXPECT_EQ(binomial(16, 6), 8008u);
    EXPECT_EQ(binomial(63, 2) * 64, 124992u);
    EXPECT_EQ(binomial(67, 33), 14226520737620288370ULL);
}

TEST(Binomial, SaturatesAndChecked) {
    EXPECT_EQ(binomial(200, 100), kBinomialOverflow);
    EXPECT_THROW(binomial_checked(200, 100), FamilyTooLarge);
    EXPECT_EQ(binomial_checked(10, 5), 252u);
}

TEST(Binomial, Log2) {
    EXPECT_NEAR(log2_binomial(10, 5), std::log2(252.0), 1e-9);
    EXPECT_NEAR(log2_binomial(6, 0), 0.0, 1e-12);
    EXPECT_NEAR(log2_binomial(100, 50), std::log2(1.0089134454556417e29), 1e-6);
}

TEST(CeilRoot, Exact) {
    EXPECT_EQ(ceil_root(6, 2), 3u);
    EXPECT_EQ(ceil_root(4, 2), 2u);
    EXPECT_EQ(ceil_root(1, 2), 1u);
    EXPECT_EQ(ceil_root(27, 3), 3u);
    EXPECT_EQ(ceil_root(28, 3), 4u);
    EXPECT_EQ(ceil_root(0, 3), 0u);
    EXPECT_EQ(ceil_root(UINT64_MAX, 1), UINT64_MAX);
    EXPECT_THROW(ceil_root(5, 0), ParameterError);
}

TEST(Colex, RankMatchesEnumerationOrder) {
    for (std::uint32_t n = 1; n <= 9; ++n)
        for (std::uint32_t k = 1; k <= n; ++k) {
            const auto all = oracle::colex_subsets(n, k);
            ASSERT_EQ(all.size(), binomial(n, k));
            for (std::size_t r = 0; r < all.size(); ++r) {
                EXPECT_EQ(colex_rank(all[r]), r);
                EXPECT_EQ(colex_unrank(r, k), all[r]);
            }
        }
}

TEST(Colex, LargeRoundTrip) {
    const std::vector<std::uint32_t> s = {3, 17, 40, 41, 63};
    EXPECT_EQ(colex_unrank(colex_rank(s), 5), s);
}

TEST(NextCombination, LexOrderAndCount) {
    std::vector<std::vector<std::uint32_t>> seen;
    for_each_combination(6, 3, [&](const std::vector<std::uint32_t>& s) { seen.push_back(s); });
    ASSERT_EQ(seen.size(), 20u);
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    EXPECT_EQ(seen.front(), (std::vector<std::uint32_t>{0, 1, 2}));
    EXPECT_EQ(seen.back(), (std::vector<std::uint32_t>{3, 4, 5}));
}

TEST(NextCombination, EdgeCases) {
    int calls = 0;
    for_each_combination(3, 4, [&](const auto&) { ++calls; });
    EXPECT_EQ(calls, 0);
    for_each_combination(3, 0, [&](const auto& s) {
        EXPECT_TRUE(s.empty());
        ++calls;
    });
    EXPECT_EQ(calls, 1);
}

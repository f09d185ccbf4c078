#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace symgen;
using namespace testsupport;

namespace {

// Transpose the set of Young diagram cells.
Partition conjugate_by_cells(const Partition &p)
{
    std::set<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < p.length(); ++i)
        for (int j = 0; j < p.parts()[i]; ++j)
            cells.insert({j, static_cast<int>(i)});
    std::vector<int> rows;
    for (auto [r, c] : cells) {
        if (static_cast<int>(rows.size()) <= r)
            rows.resize(r + 1, 0);
        ++rows[r];
    }
    return Partition(rows);
}

// Repeated adjacent swaps s(..,a,b,..) = -s(..,b-1,a+1,..) until weakly decreasing.
StraightenResult straighten_by_swaps(IntegerVector a)
{
    int sign = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < a.size(); ++i) {
            if (a[i] < a[i + 1]) {
                if (a[i + 1] - 1 == a[i])
                    return StraightenResult::zero();
                int x = a[i + 1] - 1, y = a[i] + 1;
                a[i] = x;
                a[i + 1] = y;
                sign = -sign;
                changed = true;
            }
        }
    }
    while (!a.empty() && a.back() == 0)
        a.pop_back();
    for (int v : a)
        if (v < 0)
            return StraightenResult::zero();
    return {sign, Partition(a)};
}

// Restricted growth strings enumerate set partitions.
std::uint64_t count_set_partitions(int m, int k)
{
    std::uint64_t count = 0;
    std::vector<int> rg(m, 0);
    std::function<void(int, int)> rec = [&](int pos, int blocks) {
        if (pos == m) {
            count += blocks == k;
            return;
        }
        for (int b = 0; b <= blocks && b < k; ++b) {
            rg[pos] = b;
            rec(pos + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
    return count;
}

} // namespace

TEST(Partition, CanonicalForm)
{
    EXPECT_EQ(Partition({3, 1, 0, 0}), Partition({3, 1}));
    EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
    EXPECT_THROW(Partition({2, -1}), std::invalid_argument);
    EXPECT_EQ(Partition({4, 2, 1}).weight(), 7);
}

TEST(Conjugate, Examples)
{
    EXPECT_EQ(conjugate(Partition{3}), Partition({1, 1, 1}));
    EXPECT_EQ(conjugate(Partition{2, 1}), Partition({2, 1}));
    EXPECT_EQ(conjugate(Partition{4, 2, 1}), Partition({3, 2, 1, 1}));
    EXPECT_EQ(conjugate(Partition{}), Partition{});
}

TEST(Conjugate, MatchesCellTransposeAndIsInvolution)
{
    for (const auto &p : partitions_up_to(10)) {
        EXPECT_EQ(conjugate(p), conjugate_by_cells(p));
        EXPECT_EQ(conjugate(conjugate(p)), p);
        EXPECT_EQ(conjugate(p).weight(), p.weight());
    }
}

TEST(Straighten, Examples)
{
    EXPECT_EQ(straighten({1, 3}), (StraightenResult{-1, Partition{2, 2}}));
    EXPECT_EQ(straighten({2, 1}), (StraightenResult{1, Partition{2, 1}}));
    EXPECT_TRUE(straighten({1, 2}).is_zero());
    EXPECT_EQ(straighten({2, -1, 3}), (StraightenResult{-1, Partition{2, 2}}));
    EXPECT_EQ(straighten({1, -1, 4}), (StraightenResult{1, Partition{2, 2}}));
    EXPECT_EQ(straighten({}), (StraightenResult{1, Partition{}}));
    EXPECT_TRUE(straighten({-1}).is_zero());
}

TEST(Straighten, AgreesWithSwapRuleOnSweep)
{
    for (int len = 0; len <= 5; ++len) {
        for (const auto &a : integer_vectors_in_box(len, -5, 8)) {
            ASSERT_EQ(straighten(a), straighten_by_swaps(a)) << format_vector(a);
        }
    }
}

TEST(Straighten, ZeroIffRepeatOrNegative)
{
    for (int len = 1; len <= 4; ++len) {
        for (const auto &a : integer_vectors_in_box(len, -5, 8)) {
            std::vector<int> beta;
            for (int i = 0; i < len; ++i)
                beta.push_back(a[i] - (i + 1));
            std::sort(beta.rbegin(), beta.rend());
            bool repeat = std::adjacent_find(beta.begin(), beta.end()) != beta.end();
            bool negative = !repeat && beta.back() + len < 0;
            EXPECT_EQ(straighten(a).is_zero(), repeat || negative) << format_vector(a);
        }
    }
}

TEST(FallingFactorial, Examples)
{
    EXPECT_EQ(falling_factorial(Rational(5), 0), Rational(1));
    EXPECT_EQ(falling_factorial(Rational(5), 2), Rational(20));
    EXPECT_EQ(falling_factorial(Rational(5), -1), Rational(1, 6));
    EXPECT_THROW(falling_factorial(Rational(-2), -3), division_by_zero);
}

TEST(FallingFactorial, AdditionRule)
{
    auto &g = rng();
    for (int s = 0; s < 20; ++s) {
        Rational u = Rational(20) + random_rational(g, 6, 7);
        for (int k = -4; k <= 4; ++k)
            for (int m = -4; m <= 4; ++m)
                EXPECT_EQ(falling_factorial(u, k + m), falling_factorial(u, k) * falling_factorial(u - Rational(k), m));
    }
}

TEST(Stirling, Examples)
{
    EXPECT_EQ(stirling2(4, 4), 1u);
    EXPECT_EQ(stirling2(0, 0), 1u);
    EXPECT_EQ(stirling2(3, 2), 3u);
    EXPECT_EQ(stirling2(2, 3), 0u);
}

TEST(Stirling, CountsSetPartitions)
{
    for (int m = 0; m <= 9; ++m)
        for (int k = 0; k <= m; ++k)
            EXPECT_EQ(stirling2(m, k), count_set_partitions(m, k)) << m << "," << k;
}

TEST(Stirling, PowerExpansion)
{
    auto &g = rng();
    for (int s = 0; s < 10; ++s) {
        Rational x = random_rational(g);
        for (int m = 0; m <= 8; ++m) {
            Rational acc;
            for (int k = 0; k <= m; ++k)
                acc += Rational(static_cast<long>(stirling2(m, k))) * falling_factorial(x, k);
            EXPECT_EQ(acc, pow(x, m));
        }
    }
}

TEST(Enumeration, Counts)
{
    EXPECT_EQ(partitions_of(8).size(), 22u);
    EXPECT_EQ(partitions_of(6, -1, 2).size(), 4u);
    EXPECT_EQ(strict_partitions_up_to(8).size(), 1u + 1 + 1 + 2 + 2 + 3 + 4 + 5 + 6);
}

TEST(TextForm, RoundTrip)
{
    EXPECT_EQ(format_partition(Partition{4, 2, 1}), "4,2,1");
    EXPECT_EQ(parse_vector("2,-1,3"), (IntegerVector{2, -1, 3}));
    EXPECT_EQ(parse_partition("4,2,1"), (Partition{4, 2, 1}));
    EXPECT_THROW(parse_partition("1,2"), parse_error);
    EXPECT_THROW(parse_vector("1,x"), parse_error);
}

// Frozen values below were computed by an independent reference
// implementation (exact fractions, direct digit extraction, binomial sums).

#include "symindiv/constructions.hpp"
#include "symindiv/generators.hpp"

#include <gtest/gtest.h>

using namespace symindiv;

TEST(Rado, BitPredicate) {
    EXPECT_TRUE(rado_edge(0, 1));
    EXPECT_FALSE(rado_edge(0, 2));
    EXPECT_TRUE(rado_edge(1, 2));
    EXPECT_TRUE(rado_edge(2, 4));
    EXPECT_TRUE(rado_edge(4, 20));
    EXPECT_TRUE(rado_edge(20, 2));
    EXPECT_FALSE(rado_edge(3, 3));
    EXPECT_FALSE(rado_edge(64, 1));
}

TEST(Rationals, CalkinWilfSequence) {
    const char* expected[] = {"1", "1/2", "2", "1/3", "3/2", "2/3", "3", "1/4", "4/3", "3/5", "5/2", "2/5"};
    for (Index i = 0; i < 12; ++i) EXPECT_EQ(to_string(calkin_wilf(i)), expected[i]) << i;
}

TEST(Rationals, ValuesCoverQ) {
    const char* expected[] = {"0",   "-1",   "1",   "-2",   "1/2", "-1/2", "2",    "-3",
                              "1/3", "-2/3", "3/2", "-3/2", "2/3", "-1/3", "3", "-4"};
    for (Index i = 0; i < 16; ++i) EXPECT_EQ(to_string(rationals_value(i)), expected[i]) << i;
    EXPECT_TRUE(rationals_less(1, 0));
    EXPECT_TRUE(rationals_less(0, 2));
    EXPECT_TRUE(rationals_less(5, 4));
}

TEST(Rationals, IndexInvertsValue) {
    for (Index i = 0; i < 500; ++i) EXPECT_EQ(rationals_index(rationals_value(i)), i);
}

TEST(GammaK, DigitColours) {
    // k = 2: digit a of b in base 3
    const Index table[6][6] = {{0, 1, 2, 0, 1, 2}, {1, 0, 0, 1, 1, 1}, {2, 0, 0, 0, 0, 0},
                               {0, 1, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, {2, 1, 0, 0, 0, 0}};
    for (Index i = 0; i < 6; ++i)
        for (Index j = 0; j < 6; ++j) EXPECT_EQ(gamma_k_color(2, i, j), table[i][j]) << i << "," << j;
    EXPECT_EQ(gamma_k_color(3, 1, 13), 3u);
    EXPECT_EQ(gamma_k_color(2, 2, 20), 2u);
    EXPECT_THROW(gamma_k_color(0, 1, 2), InvalidInput);
}

TEST(GammaK, SymbolsAreEdgeDisjoint) {
    auto g = eval("(gammak 2)");
    ASSERT_EQ(g.signature().size(), 2u);
    EXPECT_EQ(g.signature().edge_disjoint_groups().size(), 1u);
    for (Index a = 0; a < 30; ++a)
        for (Index b = a + 1; b < 30; ++b) {
            const bool r1 = g.holds(std::size_t{0}, {a, b}), r2 = g.holds(std::size_t{1}, {a, b});
            EXPECT_FALSE(r1 && r2);
            EXPECT_EQ(r1, gamma_k_color(2, a, b) == 1);
        }
}

TEST(Hyper, ColexRanks) {
    std::vector<std::vector<Index>> sets{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {2, 3}, {0, 1, 2}, {1, 3, 4}};
    const Index expected[] = {0, 1, 2, 3, 5, 0, 8};
    for (std::size_t i = 0; i < sets.size(); ++i) EXPECT_EQ(colex_rank(sets[i]), expected[i]);
}

TEST(Hyper, TriplesBelowSix) {
    std::set<Tuple> expected{{0, 1, 3}, {0, 1, 5}, {0, 2, 3}, {1, 2, 4}, {1, 2, 5}};
    EXPECT_EQ(prefix(eval("(hyper 3)"), 6).tuples(0), expected);
    std::vector<Index> repeated{1, 1, 2};
    EXPECT_THROW(hyper_edge(3, repeated), InvalidInput);
}

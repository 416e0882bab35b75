#include "symindiv/constructions.hpp"
#include "symindiv/generators.hpp"

#include <gtest/gtest.h>

using namespace symindiv;

TEST(Interleave, FiniteSidesContinueOnTheLongerSide) {
    EXPECT_EQ(split_interleaved(0, std::nullopt, 2), (SideIndex{Side::kLeft, 0}));
    EXPECT_EQ(split_interleaved(3, std::nullopt, 2), (SideIndex{Side::kRight, 1}));
    EXPECT_EQ(split_interleaved(4, std::nullopt, 2), (SideIndex{Side::kLeft, 2}));
    EXPECT_EQ(split_interleaved(5, std::nullopt, 2), (SideIndex{Side::kLeft, 3}));
    EXPECT_EQ(split_interleaved(4, 1, 4), (SideIndex{Side::kRight, 3}));
    for (Index k = 0; k < 40; ++k) EXPECT_EQ(join_interleaved(split_interleaved(k, 3, std::nullopt), 3, std::nullopt), k);
}

TEST(Union, KeepsSidesApart) {
    auto u = eval("(union (rado) (finite-graph 2 (0 1)))");
    EXPECT_TRUE(u.is_infinite());
    EXPECT_TRUE(u.holds(std::size_t{0}, {1, 3}));   // right 0 - right 1
    EXPECT_FALSE(u.holds(std::size_t{0}, {0, 1}));  // across sides
    EXPECT_TRUE(u.holds(std::size_t{0}, {0, 2}));   // rado 0 - 1
    EXPECT_EQ(eval("(union (finite-graph 2) (finite-graph 3))").size(), 5u);
    EXPECT_THROW(eval("(union (finite-order 2) (finite-order 3))"), InvalidInput);
    EXPECT_THROW(eval("(union (rado) (gammak 2))"), InvalidInput);
}

TEST(Concat, LeftPrecedesRight) {
    auto c = eval("(concat (finite-order 2) (rationals))");
    // 0 = left 0, 1 = right 0 (q=0), 2 = left 1, 3 = right 1 (q=-1)
    EXPECT_TRUE(c.holds(std::size_t{0}, {0, 1}));
    EXPECT_TRUE(c.holds(std::size_t{0}, {2, 3}));
    EXPECT_TRUE(c.holds(std::size_t{0}, {3, 1}));
    EXPECT_FALSE(c.holds(std::size_t{0}, {1, 2}));
}

TEST(LexQ, Pairings) {
    for (Index z = 0; z < 200; ++z) {
        auto [i, j] = cantor_unpair(z);
        EXPECT_EQ(cantor_pair(i, j), z);
    }
    EXPECT_EQ(cantor_unpair(7), (std::pair<Index, Index>{2, 1}));
    EXPECT_EQ(lexq_pair(1, 3, 2), 7u);
    auto l = eval("(lexq (finite-order 2))");
    // (a_0, q_j) < (a_1, q_k) for all j, k
    EXPECT_TRUE(l.holds(std::size_t{0}, {0, 1}));
    EXPECT_TRUE(l.holds(std::size_t{0}, {2, 1}));  // (a_0, -1) < (a_1, 0)
    EXPECT_TRUE(l.holds(std::size_t{0}, {2, 0}));  // (a_0, -1) < (a_0, 0)
    EXPECT_THROW(eval("(lexq (rado))"), InvalidInput);
}

TEST(GammaStar, BlockLayout) {
    EXPECT_EQ(gamma_star_classify(0), GammaStarClass(GammaVertex{0}));
    EXPECT_EQ(gamma_star_classify(2), GammaStarClass(CliqueVertex{1, 0}));
    EXPECT_EQ(gamma_star_classify(3), GammaStarClass(GammaVertex{2}));
    EXPECT_EQ(gamma_star_classify(5), GammaStarClass(CliqueVertex{2, 1}));
    EXPECT_EQ(gamma_star_classify(11), GammaStarClass(CliqueVertex{4, 0}));
    for (Index v = 0; v < 300; ++v) EXPECT_EQ(gamma_star_index(gamma_star_classify(v)), v);
}

TEST(GammaStar, EdgesBelowTwelve) {
    std::set<Tuple> expected{{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {4, 5}, {0, 6}, {1, 6},
                             {6, 7}, {6, 8}, {7, 8}, {6, 9}, {7, 9}, {8, 9}, {3, 10}, {10, 11}};
    EXPECT_EQ(prefix(eval("(gammastar)"), 12).tuples(0), expected);
    EXPECT_EQ(gamma_star_eventual_degree(4), 2u);
    EXPECT_FALSE(gamma_star_eventual_degree(3).has_value());
}

TEST(Endow, AddsIndexOrder) {
    auto e = eval("(endow (rado))");
    ASSERT_EQ(e.signature().size(), 2u);
    EXPECT_EQ(e.signature()[1].name, kEndowSymbol);
    EXPECT_TRUE(e.holds(kEndowSymbol, {3, 7}));
    EXPECT_FALSE(e.holds(kEndowSymbol, {7, 3}));
    EXPECT_THROW(eval("(endow (endow (rado)))"), InvalidInput);
}

TEST(Henson, SlotEnumeration) {
    const std::pair<std::uint64_t, Index> expected[] = {
        {0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {0, 2}, {1, 2}, {2, 2}, {3, 2},
        {4, 0}, {4, 1}, {4, 2}, {5, 0}, {5, 1}, {5, 2}, {6, 0}, {6, 1}, {6, 2}, {7, 0}, {7, 1}, {7, 2}};
    for (Index p = 0; p < 24; ++p) {
        EXPECT_EQ(henson_slot(p), (WitnessSlot{expected[p].first, expected[p].second})) << p;
        EXPECT_EQ(henson_slot_index(henson_slot(p)), p);
    }
    for (Index p = 0; p < 5000; ++p) EXPECT_EQ(henson_slot_index(henson_slot(p)), p);
}

TEST(Henson, WitnessesFollowTheirMembers) {
    auto h = eval("(henson (finite-graph 4 (0 1) (1 2) (2 3) (3 0)))");
    // graph vertices at even indices below 8
    EXPECT_TRUE(h.holds(std::size_t{0}, {0, 2}));
    EXPECT_FALSE(h.holds(std::size_t{0}, {0, 4}));
    for (Index k = 1; k < 200; ++k) {
        auto c = henson_classify(k, 4);
        if (auto w = std::get_if<WitnessSlot>(&c)) {
            for (Index u = 0; u < k && u < 64; ++u)
                EXPECT_EQ(h.holds(std::size_t{0}, {u, k}), ((w->members >> u) & 1U) != 0) << u << "," << k;
            EXPECT_LT(std::bit_width(w->members), k);
        }
        EXPECT_EQ(henson_index(c, 4), k);
    }
    EXPECT_THROW(eval("(henson (rationals))"), InvalidInput);
}

TEST(DecodeGraph, RecoversTheEncodedGraph) {
    auto g = parse_term("(finite-graph 3 (0 1) (1 2))");
    auto d = decode_graph(term::encode_graph(g), 64);
    EXPECT_TRUE(structurally_equal(d.graph, g));
    EXPECT_TRUE(d.certificate.left_connected);
    EXPECT_EQ(d.certificate.cross_edges, 0u);
    ASSERT_EQ(d.certificate.right_components.size(), 1u);
    auto iso = decode_graph(term::encode_graph(parse_term("(finite-graph 2)")), 64);
    EXPECT_EQ(iso.certificate.right_components.size(), 2u);
    EXPECT_THROW(decode_graph(term::rado(), 64), NotAnEncoding);
}

TEST(DecodeOrder, FindsTheGapAndTheTail) {
    auto r = decode_order(term::encode_order(term::finite_order(3)), 512);
    ASSERT_TRUE(found(r));
    const auto& d = value(r);
    EXPECT_EQ(d.indices.size(), 3u);
    EXPECT_EQ(d.provenance_match, true);
    EXPECT_TRUE(structurally_equal(d.order, term::finite_order(3)));
    EXPECT_FALSE(d.certificate.density.empty());
    EXPECT_FALSE(found(decode_order(term::rationals(), 512)));
    EXPECT_THROW(decode_order(term::rado(), 512), InvalidInput);
}

TEST(Eval, ReportsPathOfIllFormedNode) {
    try {
        eval("(union (rado) (lexq (rado)))");
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_NE(e.path().find("lexq"), std::string::npos) << e.what();
    }
}

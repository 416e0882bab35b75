#include "symindiv/constructions.hpp"
#include "symindiv/core.hpp"

#include <gtest/gtest.h>

using namespace symindiv;

TEST(Signature, ValidatesDeclarations) {
    EXPECT_THROW(Signature({{"E", 2}, {"E", 2}}), InvalidInput);
    EXPECT_THROW(Signature({{"E", 0}}), InvalidInput);
    EXPECT_THROW(Signature({{"E", 2}}, {{"F"}}), InvalidInput);
    EXPECT_TRUE(Signature::graph().is_graph());
    EXPECT_TRUE(Signature::order().is_order());
    EXPECT_FALSE(Signature::graph().has_order_symbol());
    EXPECT_THROW(Signature::graph().index_of("<"), InvalidInput);
}

TEST(Signature, CompatibilityIsStructural) {
    EXPECT_TRUE(compatible(Signature::graph("E"), Signature::graph("R1")));
    EXPECT_FALSE(compatible(Signature::graph(), Signature::order()));
    EXPECT_THROW(require_compatible(Signature::graph(), Signature::order()), SignatureMismatch);
}

TEST(FiniteStructure, SerializesSortedTuples) {
    FiniteStructure f(Signature::graph(), 3);
    f.add(0, {2, 1});
    f.add(0, {0, 1});
    EXPECT_TRUE(f.holds(0, {1, 2}));
    EXPECT_TRUE(f.holds(0, {2, 1}));
    EXPECT_FALSE(f.holds(0, {0, 2}));
    EXPECT_EQ(f.serialize(), "size 3\nrel E 2\n0 1\n1 2\n");
    EXPECT_THROW(f.add(0, {0, 3}), InvalidInput);
    EXPECT_THROW(f.add(0, {0, 1, 2}), InvalidInput);
    EXPECT_TRUE(f.violations().empty());
}

TEST(FiniteStructure, DetectsNonTransitiveOrder) {
    FiniteStructure f(Signature::order(), 3);
    f.add(0, {0, 1});
    f.add(0, {1, 2});
    EXPECT_FALSE(f.violations().empty());
    EXPECT_THROW(f.validate(), InvalidInput);
    f.add(0, {0, 2});
    EXPECT_NO_THROW(f.validate());
}

TEST(CountableStructure, HoldsIsTotal) {
    auto rado = eval("(rado)");
    EXPECT_TRUE(rado.holds("E", {0, 1}));
    EXPECT_TRUE(rado.holds("E", {1, 0}));
    EXPECT_FALSE(rado.holds("E", {1, 1}));
    EXPECT_FALSE(rado.holds(std::size_t{0}, {1, 2, 3}));
    auto small = eval("(finite-order 3)");
    EXPECT_FALSE(small.holds(std::size_t{0}, {0, 3}));
    EXPECT_EQ(small.count_below(10), 3u);
}

TEST(Prefix, RadoPrefixOfSix) {
    // bit a of b, for a < b
    auto f = prefix(eval("(rado)"), 6);
    std::set<Tuple> expected{{0, 1}, {1, 2}, {0, 3}, {1, 3}, {2, 4}, {0, 5}, {2, 5}};
    EXPECT_EQ(f.tuples(0), expected);
}

TEST(Induced, RelabelsAndValidates) {
    auto rado = eval("(rado)");
    std::vector<Index> idx{2, 4, 20};
    auto f = induced(rado, idx);
    EXPECT_EQ(f.tuples(0).size(), 3u);  // a triangle
    std::vector<Index> unsorted{4, 2};
    EXPECT_THROW(induced(rado, unsorted), InvalidInput);
    std::vector<Index> outside{1, 5};
    EXPECT_THROW(induced(eval("(finite-order 3)"), outside), InvalidInput);
}

TEST(PartialIsomorphism, ChecksRelationsBothWays) {
    auto rado = eval("(rado)");
    PartialIsomorphism m;
    m.insert(0, 2);
    m.insert(1, 4);  // edge 0-1 -> edge 2-4
    EXPECT_TRUE(is_partial_isomorphism(rado, rado, m));
    EXPECT_FALSE(extends_partial_isomorphism(rado, rado, m, 2, 3));  // 2 ~ 1 needs 3 ~ 4
    EXPECT_FALSE(extends_partial_isomorphism(rado, rado, m, 2, 4));  // not injective
    EXPECT_FALSE(extends_partial_isomorphism(rado, rado, m, 2, 20));  // 0 !~ 2 but 2 ~ 20
    EXPECT_TRUE(extends_partial_isomorphism(rado, rado, m, 2, 16));
    m.insert(2, 5);
    EXPECT_FALSE(is_partial_isomorphism(rado, rado, m));
    EXPECT_EQ(m.inverse().image(4), 1u);
}

TEST(Reduct, KeepsNamedSymbols) {
    auto endowed = eval("(endow (rado))");
    auto r = reduct(endowed, {"E"});
    EXPECT_EQ(r.signature().size(), 1u);
    for (Index a = 0; a < 20; ++a)
        for (Index b = a + 1; b < 20; ++b) EXPECT_EQ(r.holds(std::size_t{0}, {a, b}), (b >> a) & 1U);
    EXPECT_THROW(reduct(endowed, {"F"}), InvalidInput);
}

TEST(AgeMember, FindsTrianglesAndRejectsInOrders) {
    FiniteStructure triangle(Signature::graph(), 3);
    triangle.add(0, {0, 1});
    triangle.add(0, {1, 2});
    triangle.add(0, {0, 2});
    auto r = age_member(triangle, eval("(rado)"), 16);
    ASSERT_TRUE(found(r));
    EXPECT_EQ(value(r).size(), 3u);
    auto none = age_member(triangle, eval("(finite-graph 3 (0 1) (1 2))"), 16);
    EXPECT_FALSE(found(none));
    EXPECT_THROW(age_member(triangle, eval("(rationals)"), 16), SignatureMismatch);
}

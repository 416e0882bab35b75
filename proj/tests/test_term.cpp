#include "symindiv/term.hpp"

#include <gtest/gtest.h>

using namespace symindiv;

TEST(Term, CanonicalPrintRoundTrips) {
    const char* texts[] = {
        "(rado)",
        "(rationals)",
        "(gammak 3)",
        "(hyper 4)",
        "(finite-graph 3 (0 1) (1 2))",
        "(finite-order 5)",
        "(union (rado) (finite-graph 2))",
        "(concat (rationals) (finite-order 1))",
        "(lexq (finite-order 2))",
        "(gammastar)",
        "(endow (gammastar))",
        "(henson (finite-graph 4 (0 1) (1 2) (2 3) (3 0)))",
        "(reduct (endow (rado)) E)",
        "(encode-graph (finite-graph 2))",
        "(encode-order (rationals))",
    };
    for (const char* text : texts) {
        auto t = parse_term(text);
        EXPECT_EQ(to_string(t), text);
        EXPECT_TRUE(structurally_equal(parse_term(to_string(t)), t));
    }
}

TEST(Term, WhitespaceIsInsignificant) {
    auto t = parse_term("  ( union\n(rado)\t( finite-order 2 ) ) ");
    EXPECT_EQ(to_string(t), "(union (rado) (finite-order 2))");
}

TEST(Term, ParseErrorsCarryByteOffsets) {
    try {
        parse_term("(rado");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 5u);
        EXPECT_EQ(e.expected(), "')'");
    }
    try {
        parse_term("(union (rado) (bogus))");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 15u);
    }
    EXPECT_THROW(parse_term("(rado) (rado)"), ParseError);
    EXPECT_THROW(parse_term("(finite-order x)"), ParseError);
}

TEST(Term, RejectsIllFormedParameters) {
    EXPECT_THROW(parse_term("(gammak 0)"), InvalidInput);
    EXPECT_THROW(parse_term("(gammak omega)"), InvalidInput);
    EXPECT_THROW(parse_term("(hyper 1)"), InvalidInput);
    EXPECT_THROW(parse_term("(finite-graph 2 (0 2))"), InvalidInput);
    EXPECT_THROW(parse_term("(finite-graph 2 (1 1))"), InvalidInput);
    EXPECT_THROW(term::gamma_k(0), InvalidInput);
    EXPECT_THROW(term::endow(nullptr), InvalidInput);
}

TEST(Term, StructuralEqualityComparesParameters) {
    EXPECT_TRUE(structurally_equal(term::gamma_k(2), parse_term("(gammak 2)")));
    EXPECT_FALSE(structurally_equal(term::gamma_k(2), term::gamma_k(3)));
    EXPECT_FALSE(structurally_equal(term::rado(), term::rationals()));
    EXPECT_FALSE(structurally_equal(parse_term("(finite-graph 2 (0 1))"), parse_term("(finite-graph 2)")));
}

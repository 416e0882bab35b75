#include "symindiv/constructions.hpp"
#include "symindiv/indivisibility.hpp"

#include <gtest/gtest.h>

using namespace symindiv;

TEST(Coloring, Evaluation) {
    Coloring parity(coloring::Parity{});
    EXPECT_EQ(color_of(parity, 4), kRed);
    EXPECT_EQ(color_of(parity, 7), kBlue);
    Coloring part(coloring::GammaStarPart{});
    EXPECT_EQ(color_of(part, 2), kBlue);
    EXPECT_EQ(color_of(part, 3), kRed);
    Coloring mod(coloring::Mod{3, 1});
    EXPECT_EQ(mod.palette_size(), 3u);
    EXPECT_EQ(color_of(mod, 0), 1u);
    EXPECT_EQ(color_of(mod, 2), 0u);
    Coloring threshold(coloring::Threshold{5});
    EXPECT_EQ(color_of(threshold, 4), kRed);
    EXPECT_EQ(color_of(threshold, 5), kBlue);
    Coloring list(coloring::Explicit{{1, 0, 1}, 0});
    EXPECT_EQ(color_of(list, 0), kBlue);
    EXPECT_EQ(color_of(list, 100), kRed);
}

TEST(Coloring, ParseAndPrint) {
    for (const char* text : {"parity", "mod:3:1", "gammastar-part", "threshold:7", "list:1,0,1:0", "list::1"})
        EXPECT_EQ(to_string(Coloring::parse(text)), text);
    EXPECT_EQ(to_string(Coloring::parse("list:red,blue:blue")), "list:0,1:1");
    EXPECT_THROW(Coloring::parse("stripes"), InvalidInput);
    EXPECT_THROW(Coloring::parse("mod:1:0"), InvalidInput);
    EXPECT_THROW(Coloring::parse("mod:3"), InvalidInput);
    EXPECT_THROW(Coloring::parse("list:2:0"), InvalidInput);
}

TEST(Monochromatic, RedTriangleInRado) {
    SearchOptions o;
    o.steps = 3;
    auto r = find_monochromatic_copy(eval("(rado)"), Coloring(coloring::Parity{}),
                                     eval("(finite-graph 3 (0 1) (1 2) (0 2))"), kRed, o);
    ASSERT_TRUE(found(r));
    EXPECT_EQ(value(r).color, kRed);
    EXPECT_EQ(value(r).embedding.dump(), "strategy: greedy\n0 -> 2\n1 -> 4\n2 -> 20\n");
}

TEST(Monochromatic, UnspecifiedColourTriesPaletteInOrder) {
    SearchOptions o;
    o.steps = 0;
    auto r = find_monochromatic_copy(eval("(rado)"), Coloring(coloring::Parity{}), eval("(rado)"), std::nullopt, o);
    ASSERT_TRUE(found(r));
    EXPECT_EQ(value(r).color, kRed);
    EXPECT_EQ(value(r).embedding.resolved().size(), 0u);
}

TEST(Monochromatic, NoBlueRadoInGammaStar) {
    SearchOptions o;
    o.steps = 8;
    auto r = find_monochromatic_copy(eval("(gammastar)"), Coloring(coloring::GammaStarPart{}), eval("(rado)"),
                                     kBlue, o);
    ASSERT_FALSE(found(r));
    EXPECT_NE(exhausted(r).detail.find("blue"), std::string::npos);
    EXPECT_THROW(find_monochromatic_copy(eval("(rationals)"), Coloring(coloring::Parity{}), eval("(rado)"),
                                         std::nullopt, o),
                 SignatureMismatch);
}

TEST(GammaStarDegrees, BlueBoundedRedGrows) {
    auto gs = eval("(gammastar)");
    Coloring part(coloring::GammaStarPart{});
    long long previous_red = 0;
    for (Index n : {55, 105, 210}) {
        auto deg = prefix_color_max_degree(gs, part, n);
        Index blocks = 0;  // largest complete block in the prefix
        while ((blocks + 2) * (blocks + 3) / 2 <= n) ++blocks;
        EXPECT_LE(deg[kBlue], static_cast<long long>(blocks)) << n;
        EXPECT_GT(deg[kRed], previous_red) << n;
        previous_red = deg[kRed];
    }
}

TEST(Obstruction, NEqualsTwo) {
    auto [swap, fixed] = gamma_star_obstruction(2, 12);
    ASSERT_TRUE(std::holds_alternative<TranspositionAutomorphism>(swap.kind));
    EXPECT_EQ(std::get<TranspositionAutomorphism>(swap.kind), (TranspositionAutomorphism{2, 4, 5}));
    EXPECT_TRUE(swap.passed());
    // within the prefix, 4 and 5 are adjacent exactly to 3 and each other
    for (const auto& e : swap.evidence)
        EXPECT_EQ(e.expected, e.tuple[1] == 3 || (e.tuple[0] == 4 && e.tuple[1] == 5)) << e.tuple[1];
    ASSERT_TRUE(std::holds_alternative<GammaFixedPoint>(fixed.kind));
    EXPECT_EQ(std::get<GammaFixedPoint>(fixed.kind), (GammaFixedPoint{1, 2, 1, 3}));
    EXPECT_TRUE(fixed.passed());
    ASSERT_EQ(fixed.evidence.size(), 2u);
    EXPECT_EQ(fixed.evidence[0], (EvidenceCheck{{1, 2}, true, true}));
    EXPECT_EQ(fixed.evidence[1], (EvidenceCheck{{3, 2}, false, false}));
    EXPECT_EQ(replay(swap), swap);
    EXPECT_EQ(replay(fixed), fixed);
    EXPECT_EQ(swap.to_json().dump(), replay(swap).to_json().dump());
}

TEST(Obstruction, Preconditions) {
    EXPECT_THROW(gamma_star_obstruction(1, 12), InvalidInput);
    EXPECT_THROW(gamma_star_obstruction(3, 9), InvalidInput);
    EXPECT_NO_THROW(gamma_star_obstruction(3, 10));
}

TEST(Transfer, RadoParityIdentityHandles) {
    auto rado = eval("(rado)");
    auto id = SymmetricEmbeddingHandle::identity(rado);
    auto r = transfer_symmetric_copy(rado, rado, id, id, Coloring(coloring::Parity{}), greedy_base_finder(), 8, 65536);
    ASSERT_TRUE(found(r));
    const auto& rep = value(r);
    EXPECT_EQ(rep.color, kRed);
    EXPECT_TRUE(rep.monochromatic);
    EXPECT_TRUE(rep.composition_verified);
    EXPECT_EQ(rep.symmetric_status, SymmetricStatus::kClaimed);
    std::vector<Index> t;
    for (const auto& [s, x] : rep.final_embedding.resolved().pairs) t.push_back(x);
    EXPECT_EQ(t, (std::vector<Index>{4, 2, 6, 20, 64, 80, 68, 84}));
    EXPECT_EQ(rep.to_json()["symmetric_status"], "claimed");
}

TEST(Transfer, CertifiedBaseGivesCertifiedStatus) {
    auto rado = eval("(rado)");
    auto id = SymmetricEmbeddingHandle::identity(rado);
    BaseFinder certified = [](const CountableStructure& m, const ColorFn&, Color, Index steps, Index) {
        LazyEmbedding e(m, m, Strategy::kComposite);
        for (Index i = 0; i < steps; ++i) e.extend(i, i);
        return Outcome<BaseCopy>(BaseCopy{e, kRed, true});
    };
    auto r = transfer_symmetric_copy(rado, rado, id, id, Coloring(coloring::Threshold{100}), certified, 5, 64);
    ASSERT_TRUE(found(r));
    EXPECT_EQ(value(r).symmetric_status, SymmetricStatus::kCertified);
}

TEST(Transfer, ErrorsIdentifyTheCause) {
    auto rado = eval("(rado)");
    auto q = eval("(rationals)");
    auto id = SymmetricEmbeddingHandle::identity(rado);
    auto idq = SymmetricEmbeddingHandle::identity(q);
    EXPECT_THROW(transfer_symmetric_copy(rado, q, id, idq, Coloring(coloring::Parity{}), greedy_base_finder(), 4, 64),
                 SignatureMismatch);
    auto r = transfer_symmetric_copy(rado, rado, id, id, Coloring(coloring::Parity{}), greedy_base_finder(), 4, 0);
    ASSERT_FALSE(found(r));
    EXPECT_EQ(exhausted(r).stage.rfind("hop 2", 0), 0u);
}

TEST(Rigidity, EndowedPrefixesOnlyHaveIdentity) {
    EXPECT_TRUE(nontrivial_prefix_self_embeddings(eval("(endow (gammastar))"), 6).empty());
    // without the enumeration order there are non-trivial ones
    EXPECT_FALSE(nontrivial_prefix_self_embeddings(eval("(rado)"), 4).empty());
}

TEST(ReductDemo, StagesAndHash) {
    auto a = reduct_counterexample_demo(64, 0, 1 << 16);
    EXPECT_TRUE(a.passed());
    EXPECT_EQ(a.hash(), reduct_counterexample_demo(64, 0, 1 << 16).hash());
    EXPECT_EQ(a.to_json()["schema"], "symindiv.demo-reduct/1");

    auto starved = reduct_counterexample_demo(64, 24, 1);
    ASSERT_TRUE(starved.exhausted.has_value());
    EXPECT_EQ(starved.exhausted->stage.rfind("1:", 0), 0u);
    EXPECT_EQ(starved.stages.at(3).status, "passed");
    EXPECT_EQ(starved.stages.at(4).status, "passed");
}

TEST(Fnv, KnownVectors) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

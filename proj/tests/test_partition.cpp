#include <gtest/gtest.h>

#include "partcat/generators.hpp"
#include "partcat/partition.hpp"
#include "partcat/text.hpp"
#include "support.hpp"

namespace partcat {
namespace {

using testing::P;

TEST(Parse, PairPartition) {
    Partition p = P("P(; a a)");
    EXPECT_EQ(p.upper_count(), 0u);
    EXPECT_EQ(p.lower_count(), 2u);
    EXPECT_EQ(p.block_count(), 1);
    EXPECT_EQ(to_string(p), "P(; a a)");
}

TEST(Parse, PositionerextFromBlocks) {
    Partition built({Color::line, Color::extra}, {Color::extra, Color::line}, std::vector<int>{0, 1, 2, 0});
    EXPECT_EQ(built, P("P(a x:t ; y:t a)"));
    EXPECT_EQ(built, generator("positionerext"));
}

TEST(Parse, ExtraInsideBlockIsRejected) {
    EXPECT_THROW(Partition({Color::extra}, {Color::line}, std::vector<int>{0, 0}), Error);
    try {
        P("P(a:t ; a)");
        FAIL();
    } catch (const Error& e) {
        EXPECT_TRUE(e.code() == ErrorCode::extra_singleton_in_block || e.code() == ErrorCode::mixed_regime);
    }
}

TEST(Parse, MixedRegimeIsRejected) {
    try {
        P("P(x:t ; a:w a:w)");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::mixed_regime);
    }
}

TEST(Parse, SyntaxErrorsCarryPosition) {
    try {
        P("P(a a");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_GT(e.position(), 0u);
    }
    EXPECT_THROW(P("Q(;)"), SyntaxError);
}

TEST(Parse, LabelsAreCanonicalised) {
    EXPECT_EQ(P("P(q r ; r q)"), P("P(a b ; b a)"));
    EXPECT_EQ(to_string(P("P(z z q ;)")), "P(a a x ;)");
}

TEST(Tensor, PairTimesPair) {
    Partition t = tensor(P("P(; a a)"), P("P(; a a)"));
    EXPECT_EQ(t, P("P(; a a b b)"));
}

TEST(Tensor, ExtraTimesExtra) {
    EXPECT_EQ(tensor(generator("extra_singleton"), generator("extra_singleton")), generator("extpair"));
}

TEST(Tensor, EmptyIsUnit) {
    Partition p = generator("globcolext");
    EXPECT_EQ(tensor(empty_partition(), p), p);
    EXPECT_EQ(tensor(p, empty_partition()), p);
}

TEST(Compose, DisplayedExampleHasTwoLoops) {
    // q: block {U2,L3,L4},{U3,L2}; singletons U1,U4,L1.  p: block {U1,U2,U3,L2,L3}; singletons L1,L4.
    Partition q = P("P(x a b y ; z b a a)");
    Partition p = P("P(a a a ; x a a y)");
    Composition c = compose(q, p);
    EXPECT_EQ(c.result, P("P(a a a ; x a a a)"));
    EXPECT_EQ(c.loops, 2);
    EXPECT_EQ(c.extra_loops, 0);
}

TEST(Compose, CupAfterCapIsOneLoop) {
    Composition c = compose(P("P(a a ;)"), P("P(; a a)"));
    EXPECT_EQ(c.result, empty_partition());
    EXPECT_EQ(c.loops, 1);
}

TEST(Compose, IdentityAfterIdentity) {
    Composition c = compose(P("P(a ; a)"), P("P(a ; a)"));
    EXPECT_EQ(c.result, P("P(a ; a)"));
    EXPECT_EQ(c.loops, 0);
}

TEST(Compose, ExtraLoopsAreCountedSeparately) {
    Composition c = compose(P("P(x:t ;)"), P("P(; x:t)"));
    EXPECT_EQ(c.result, empty_partition());
    EXPECT_EQ(c.loops, 0);
    EXPECT_EQ(c.extra_loops, 1);
}

TEST(Compose, MismatchedRowsThrow) {
    EXPECT_THROW(compose(P("P(a ; a)"), P("P(; a a)")), Error);
    EXPECT_THROW(compose(P("P(a:w ; a:w)"), P("P(a:b ; a:b)")), Error);
}

TEST(Involute, CapToCup) {
    EXPECT_EQ(involute(P("P(; a a)")), P("P(a a ;)"));
    EXPECT_EQ(involute(P("P(a ; a)")), P("P(a ; a)"));
}

TEST(Involute, DisplayedPartition) {
    Partition p = P("P(a a a ; x a a y)");
    EXPECT_EQ(involute(p), P("P(x a a y ; a a a)"));
}

TEST(Rotate, CapRightUpIsIdentity) {
    EXPECT_EQ(rotate(P("P(; a a)"), Side::right, Direction::up), P("P(a ; a)"));
}

TEST(Rotate, InverseOnPositionerext) {
    Partition p = generator("positionerext");
    Partition q = rotate(rotate(p, Side::left, Direction::up), Side::left, Direction::up);
    q = rotate(rotate(q, Side::right, Direction::down), Side::right, Direction::down);
    EXPECT_EQ(to_one_row(q), to_one_row(p));
}

TEST(Rotate, ColorsFlipAcrossRows) {
    EXPECT_EQ(rotate(P("P(; a:w a:b)"), Side::left, Direction::up), P("P(a:b ; a:b)"));
}

TEST(ColorInvert, Pair) { EXPECT_EQ(color_invert(P("P(; a:w a:b)")), P("P(; a:b a:w)")); }

TEST(Generators, Catalogue) {
    EXPECT_EQ(generator("pairpart"), P("P(; a a)"));
    EXPECT_EQ(generator("fourpart"), P("P(; a a a a)"));
    EXPECT_EQ(generator("b_k_ext", {3}), P("P(; a x:t a y:t a z:t)"));
    EXPECT_EQ(generator_spec("alt_tensor:2"), P("P(; x y:t z x1:t)"));
    EXPECT_THROW(generator("nope"), Error);
    EXPECT_THROW(generator("b_k_ext"), Error);
}

TEST(Families, CatalanCounts) {
    const std::size_t catalan[] = {1, 1, 2, 5, 14};
    for (std::size_t m = 0; m <= 4; ++m) {
        Signature sig{{}, Word(2 * m, Color::line)};
        EXPECT_EQ(named_family("nc-pairs", sig).size(), catalan[m]) << m;
    }
    EXPECT_EQ(named_family("all", Signature{{}, Word(4, Color::line)}).size(), 15u);
    EXPECT_EQ(named_family("nc", Signature{{}, Word(4, Color::line)}).size(), 14u);
}

TEST(NonCrossing, Basics) {
    EXPECT_TRUE(is_noncrossing(P("P(; a b b a)")));
    EXPECT_FALSE(is_noncrossing(P("P(; a b a b)")));
    EXPECT_FALSE(is_noncrossing(P("P(a b ; b a)")));
}

class RandomPartitions : public ::testing::TestWithParam<Regime> {};

TEST_P(RandomPartitions, PrintParseRoundTrip) {
    auto rng = testing::rng(1);
    for (int i = 0; i < 500; ++i) {
        Partition p = random_partition(rng, GetParam(), 8);
        EXPECT_EQ(parse_partition(to_string(p)), p) << to_string(p);
    }
}

TEST_P(RandomPartitions, InvolutionIsAnInvolution) {
    auto rng = testing::rng(2);
    for (int i = 0; i < 500; ++i) {
        Partition p = random_partition(rng, GetParam(), 8);
        EXPECT_EQ(involute(involute(p)), p);
    }
}

TEST_P(RandomPartitions, OneRowRoundTrip) {
    auto rng = testing::rng(3);
    for (int i = 0; i < 500; ++i) {
        Partition p = random_partition(rng, GetParam(), 8);
        EXPECT_EQ(from_one_row(to_one_row(p), p.upper_count()), p);
    }
}

TEST_P(RandomPartitions, RotationsUndo) {
    auto rng = testing::rng(4);
    for (int i = 0; i < 500; ++i) {
        Partition p = random_partition(rng, GetParam(), 8);
        if (p.lower_count() > 0)
            EXPECT_EQ(rotate(rotate(p, Side::left, Direction::up), Side::left, Direction::down), p);
        if (p.upper_count() > 0)
            EXPECT_EQ(rotate(rotate(p, Side::right, Direction::down), Side::right, Direction::up), p);
    }
}

TEST_P(RandomPartitions, CompositionIsAssociative) {
    auto rng = testing::rng(5);
    for (int i = 0; i < 300; ++i) {
        Partition a = random_partition(rng, GetParam(), 3, 3);
        Partition b = random_partition_above(rng, GetParam(), a.lower_word(), 3);
        Partition c = random_partition_above(rng, GetParam(), b.lower_word(), 2);
        Composition ba = compose(b, a), cb = compose(c, b);
        Composition left = compose(c, ba.result), right = compose(cb.result, a);
        EXPECT_EQ(left.result, right.result);
        EXPECT_EQ(left.loops + ba.loops, right.loops + cb.loops);
        EXPECT_EQ(left.extra_loops + ba.extra_loops, right.extra_loops + cb.extra_loops);
    }
}

TEST_P(RandomPartitions, InvolutionReversesComposition) {
    auto rng = testing::rng(6);
    for (int i = 0; i < 300; ++i) {
        Partition a = random_partition(rng, GetParam(), 3, 3);
        Partition b = random_partition_above(rng, GetParam(), a.lower_word(), 3);
        EXPECT_EQ(involute(compose(b, a).result), compose(involute(a), involute(b)).result);
    }
}

INSTANTIATE_TEST_SUITE_P(Regimes, RandomPartitions,
                         ::testing::Values(Regime::plain, Regime::extra, Regime::two_colored),
                         [](const auto& info) {
                             std::string s = regime_name(info.param);
                             std::replace(s.begin(), s.end(), '-', '_');
                             return s;
                         });

}  // namespace
}  // namespace partcat

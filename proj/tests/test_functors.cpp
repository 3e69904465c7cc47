#include <gtest/gtest.h>

#include "partcat/functor_f.hpp"
#include "partcat/functor_u.hpp"
#include "partcat/generators.hpp"
#include "partcat/tensor_maps.hpp"
#include "support.hpp"

namespace partcat {
namespace {

using testing::P;

Partition random_even_extra(std::mt19937_64& rng, std::size_t k, std::size_t max_l) {
    std::uniform_int_distribution<std::size_t> len(0, max_l);
    for (;;) {
        Partition p = random_partition(rng, Regime::extra, k, len(rng));
        if (p.size() % 2 == 0) return p;
    }
}

bool small_blocks(const Partition& p) {
    for (auto s : p.block_sizes())
        if (s > 2) return false;
    return true;
}

Partition random_small_blocks(std::mt19937_64& rng, std::size_t k, std::size_t l) {
    for (;;) {
        Partition p = random_partition(rng, Regime::plain, k, l);
        if (small_blocks(p)) return p;
    }
}

TEST(FunctorF, Dictionary) {
    EXPECT_EQ(functor_f(generator("positionerext")), P("P(a:w ; a:b)"));
    EXPECT_EQ(functor_f(generator("globcolext")), P("P(a:w b:b ; a:b b:w)"));
    EXPECT_EQ(functor_f(generator("globcolext")), tensor(P("P(a:w ; a:b)"), P("P(a:b ; a:w)")));
    EXPECT_EQ(functor_f(P("P(x a y:t z:t a ; x1:t a a y1:t z1)")), P("P(x:w a:b a:w ; a:b a:w y:w)"));
    EXPECT_EQ(functor_f(P("P(; a a)")), P("P(; a:w a:b)"));
}

TEST(FunctorF, OddLengthIsAnError) {
    try {
        functor_f(P("P(; x)"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::odd_length);
    }
}

TEST(FunctorF, SameMatrices) {
    auto rng = testing::rng(30);
    for (int i = 0; i < 200; ++i) {
        Partition p = random_even_extra(rng, 3, 4);
        for (long n : {1L, 2L, 3L}) ASSERT_EQ(t_matrix(p, n), t_matrix(functor_f(p), n)) << to_string(p);
    }
}

TEST(FunctorF, PreservesCompositionAndInvolution) {
    auto rng = testing::rng(31);
    for (int i = 0; i < 300; ++i) {
        Partition p = random_even_extra(rng, 2, 4);
        std::uniform_int_distribution<std::size_t> len(0, 4);
        Partition q;
        do q = random_partition_above(rng, Regime::extra, p.lower_word(), len(rng));
        while (q.size() % 2);
        Composition c = compose(q, p);
        Composition fc = compose(functor_f(q), functor_f(p));
        ASSERT_EQ(functor_f(c.result), fc.result) << to_string(q) << " after " << to_string(p);
        EXPECT_EQ(c.loops, fc.loops);
        EXPECT_EQ(functor_f(involute(p)), involute(functor_f(p)));
    }
}

TEST(FunctorF, PreservesTensorOfEvenRows) {
    auto rng = testing::rng(32);
    for (int i = 0; i < 300; ++i) {
        Partition p = random_partition(rng, Regime::extra, 2, 2);
        Partition q = random_even_extra(rng, 2, 4);
        EXPECT_EQ(functor_f(tensor(p, q)), tensor(functor_f(p), functor_f(q)));
    }
}

TEST(Preimage, Examples) {
    EXPECT_EQ(shortest_preimage(P("P(a:w ; a:w)")), P("P(a ; a)"));
    EXPECT_EQ(shortest_preimage(functor_f(generator("positionerext"))), generator("positionerext"));
    EXPECT_EQ(shortest_preimage(P("P(; a:b a:b)")), P("P(; x:t a y:t a)"));
}

TEST(Preimage, SectionOfF) {
    auto rng = testing::rng(33);
    for (int i = 0; i < 500; ++i) {
        Partition t = random_partition(rng, Regime::two_colored, 6);
        Partition pre = shortest_preimage(t);
        EXPECT_EQ(pre.size() % 2, 0u);
        ASSERT_EQ(functor_f(pre), t) << to_string(t);
    }
}

TEST(Preimage, NormalizeIsIdempotentAndConstantOnFibres) {
    auto rng = testing::rng(34);
    for (int i = 0; i < 500; ++i) {
        Partition p = random_even_extra(rng, 3, 5);
        Partition n = preimage_normalize(p);
        EXPECT_EQ(preimage_normalize(n), n);
        EXPECT_EQ(n, shortest_preimage(functor_f(p)));
        Partition padded = tensor(p, generator("extpair"));
        EXPECT_EQ(preimage_normalize(padded), n) << to_string(p);
    }
}

TEST(Preimage, TrailingExtrasDisappear) {
    Partition p = generator("positionerext");
    Partition padded = tensor(p, P("P(x:t ; y:t)"));
    EXPECT_EQ(preimage_normalize(padded), p);
}

TEST(Colorings, Alternating) {
    auto cs = alt_colorings(P("P(; a a b b)"));
    ASSERT_EQ(cs.size(), 2u);
    EXPECT_EQ(cs[0], P("P(; a:w a:b b:w b:b)"));
    EXPECT_EQ(cs[1], P("P(; a:b a:w b:b b:w)"));
    EXPECT_TRUE(alt_colorings(P("P(; a a x)")).empty());
}

TEST(ColorSum, Values) {
    EXPECT_EQ(color_sum(P("P(; a:w a:w)")), 2);
    EXPECT_EQ(color_sum(P("P(; a:w a:b)")), 0);
    EXPECT_EQ(color_sum(P("P(a:w ; a:w)")), 0);
    EXPECT_EQ(color_sum(P("P(a:b ; x:w)")), 2);
}

TEST(Degree, SampleGcd) {
    EXPECT_EQ(degree_of_reflection({P("P(; a:w a:b)")}, 2).gcd, 0);
    EXPECT_EQ(degree_of_reflection({P("P(; a:w a:w)"), P("P(; a:w a:b)")}, 2).gcd, 2);
    auto d = degree_of_reflection({P("P(; x:w)")}, 1);
    EXPECT_EQ(d.gcd, 1);
    EXPECT_NE(d.label().find("at most 1 points"), std::string::npos);
}

TEST(SplitOdd, ContractsToSingleton) {
    auto split = split_odd_generators({P("P(; a a a)"), P("P(; a a)")});
    ASSERT_EQ(split.even.size(), 2u);
    ASSERT_EQ(split.singletons.size(), 1u);
    EXPECT_EQ(split.singletons[0], P("P(; x)"));
}

class UMatrixTest : public ::testing::TestWithParam<std::tuple<long, Sign>> {};

TEST_P(UMatrixTest, OrthogonalWithUniformLastRow) {
    auto [n, sign] = GetParam();
    UMatrix u = u_matrix(n, sign);
    ExactMatrix m = u.matrix();
    EXPECT_EQ(m * m.transpose(), ExactMatrix::identity(n));
    const Scalar last = Scalar(1) / Scalar::sqrt_of(n);
    for (long j = 0; j < n; ++j) EXPECT_EQ(u.e[n - 1][j], last);
}

TEST_P(UMatrixTest, TheoremOnDottedBasis) {
    auto [n, sign] = GetParam();
    for (std::size_t total = 0; total <= 4; ++total)
        for (std::size_t k = 0; k <= total; ++k) {
            Signature sig{Word(k, Color::line), Word(total - k, Color::line)};
            for (const auto& q : all_partitions(sig)) {
                auto r = verify_theorem_u(dotted(q, n), sign);
                EXPECT_TRUE(r.ok) << to_string(q) << ": " << r.detail;
                EXPECT_EQ(r.rhs_only, !small_blocks(q));
            }
        }
}

INSTANTIATE_TEST_SUITE_P(Sizes, UMatrixTest,
                         ::testing::Combine(::testing::Values(2L, 3L, 4L), ::testing::Values(Sign::plus, Sign::minus)),
                         [](const auto& info) {
                             return "N" + std::to_string(std::get<0>(info.param)) +
                                    (std::get<1>(info.param) == Sign::plus ? "_plus" : "_minus");
                         });

TEST(FunctorU, PairsAndSingletons) {
    const long n = 3;
    SignatureSum s = u_functor(P("P(; x y)"), n);
    EXPECT_EQ(to_string(s), "3 * P(; x:t y:t)");
    SignatureSum id = u_functor(LinearCombination::of(P("P(a ; a)"), n));
    // id = dotted(id) + (1/N)·disconnecter; the disconnecter goes to N·(▲ id)
    ASSERT_EQ(id.size(), 2u);
    EXPECT_EQ(to_string(id), "1 * P(a ; a) + 1 * P(x:t ; y:t)");
}

TEST(FunctorU, RejectsLargeBlocks) {
    try {
        u_functor(P("P(; a a a a)"), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::block_too_large);
    }
}

TEST(FunctorU, InverseRoundTrip) {
    auto rng = testing::rng(35);
    for (int i = 0; i < 100; ++i) {
        Partition p = random_small_blocks(rng, 2, 3);
        LinearCombination lc = LinearCombination::of(p, 3);
        EXPECT_EQ(u_inverse(u_functor(lc)), lc) << to_string(p);
    }
}

TEST(FunctorU, MonoidalAndInvolutive) {
    auto rng = testing::rng(36);
    const long n = 3;
    for (int i = 0; i < 100; ++i) {
        Partition p = random_small_blocks(rng, 2, 2);
        Partition q = random_small_blocks(rng, 1, 2);
        LinearCombination a = LinearCombination::of(p, n), b = LinearCombination::of(q, n);
        EXPECT_EQ(u_functor(lin_tensor(a, b)), sum_tensor(u_functor(a), u_functor(b)));
        EXPECT_EQ(u_functor(lin_involute(a)), sum_involute(u_functor(a)));
        Partition r;
        do r = random_partition_above(rng, Regime::plain, p.lower_word(), 2);
        while (!small_blocks(r));
        LinearCombination c = LinearCombination::of(r, n);
        EXPECT_EQ(u_functor(lin_compose(c, a)), sum_compose(u_functor(c), u_functor(a)))
            << to_string(r) << " after " << to_string(p);
    }
}

}  // namespace
}  // namespace partcat

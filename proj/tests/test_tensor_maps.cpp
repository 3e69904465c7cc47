#include <gtest/gtest.h>

#include "partcat/generators.hpp"
#include "partcat/scalar.hpp"
#include "partcat/tensor_maps.hpp"
#include "support.hpp"

namespace partcat {
namespace {

using testing::P;

TEST(Scalar, FieldArithmetic) {
    Scalar r = Scalar::sqrt_of(3);
    EXPECT_EQ(r * r, Scalar(3));
    EXPECT_EQ((Scalar(1) + r) * (Scalar(1) - r), Scalar(-2));
    EXPECT_EQ(Scalar(1) / (Scalar(1) + r) * (Scalar(1) + r), Scalar(1));
    EXPECT_TRUE((r - r).is_zero());
}

TEST(Scalar, PerfectSquareFolds) {
    Scalar r = Scalar::sqrt_of(4);
    EXPECT_TRUE(r.is_rational());
    EXPECT_EQ(r, Scalar(2));
}

TEST(Scalar, Printing) {
    EXPECT_EQ(Scalar::rational(-3, 6).str(), "-1/2");
    EXPECT_EQ((Scalar(1) + Scalar::sqrt_of(2)).str(), "(1+1*sqrtN)");
}

TEST(DeltaP, Identity) {
    Partition id = P("P(a ; a)");
    EXPECT_EQ(delta_p(id, {3}, {3}), 1);
    EXPECT_EQ(delta_p(id, {3}, {4}), 0);
}

TEST(TMatrix, PairIsSumOfDiagonal) {
    ExactMatrix m = t_matrix(P("P(; a a)"), 2);
    ASSERT_EQ(m.rows(), 4u);
    ASSERT_EQ(m.cols(), 1u);
    EXPECT_EQ(m.at(0, 0), Scalar(1));
    EXPECT_EQ(m.at(1, 0), Scalar(0));
    EXPECT_EQ(m.at(2, 0), Scalar(0));
    EXPECT_EQ(m.at(3, 0), Scalar(1));
}

TEST(TMatrix, PositionerextIsIdentity) {
    for (long n : {1, 2, 3, 4}) EXPECT_EQ(t_matrix(generator("positionerext"), n), ExactMatrix::identity(n)) << n;
}

TEST(TMatrix, EntriesAreZeroOne) {
    auto rng = testing::rng(10);
    for (int i = 0; i < 100; ++i) {
        Partition p = random_partition(rng, Regime::plain, 5);
        const ExactMatrix m = t_matrix(p, 2);
        for (const auto& [ix, v] : m.entries()) EXPECT_EQ(v, Scalar(1));
    }
}

TEST(TMatrix, DumpFormat) {
    EXPECT_EQ(dump_matrix(t_matrix(P("P(a ; a)"), 2), Signature::parse("-;-"), 2), "T -;- N=2\n0 0 1 0\n1 1 1 0\n");
}

TEST(MorDim, NonCrossingPairings) {
    Signature sig = Signature::parse(";----");
    EXPECT_EQ(mor_dim(named_family("nc-pairs", sig), sig, 3), 2u);
    EXPECT_EQ(mor_dim(named_family("nc-pairs", sig), sig, 1), 1u);
}

TEST(MorDim, SinglePartition) {
    EXPECT_EQ(mor_dim({P("P(a b ; b a)")}, Signature::parse("--;--"), 3), 1u);
    EXPECT_EQ(mor_dim({P("P(; a a b b)")}, Signature::parse(";----"), 1), 1u);
}

TEST(MorDim, CatalanRanksForLargeN) {
    const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132};
    for (std::size_t m = 1; m <= 3; ++m) {
        Signature sig{{}, Word(2 * m, Color::line)};
        EXPECT_EQ(mor_dim(named_family("nc-pairs", sig), sig, 4), catalan[m]) << m;
        EXPECT_EQ(mor_dim(named_family("nc", sig), sig, 2 * static_cast<long>(m)), catalan[2 * m]) << m;
    }
}

class Functoriality : public ::testing::TestWithParam<Regime> {};

TEST_P(Functoriality, RandomTriples) {
    auto rng = testing::rng(11 + static_cast<int>(GetParam()));
    for (int i = 0; i < 150; ++i) {
        Partition p = random_partition(rng, GetParam(), 2, 3);
        Partition q = random_partition_above(rng, GetParam(), p.lower_word(), 2);
        for (long n : {1, 2, 3}) {
            FunctorReport r = verify_t_functor(p, q, n);
            ASSERT_TRUE(r.ok) << to_string(p) << " " << to_string(q) << " N=" << n << ": " << r.detail;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Regimes, Functoriality,
                         ::testing::Values(Regime::plain, Regime::extra, Regime::two_colored),
                         [](const auto& info) {
                             std::string s = regime_name(info.param);
                             std::replace(s.begin(), s.end(), '-', '_');
                             return s;
                         });

TEST(TMatrix, ExtraPointsHaveDimensionOne) {
    ExactMatrix m = t_matrix(generator("extpair"), 5);
    EXPECT_EQ(m.rows(), 1u);
    EXPECT_EQ(m.cols(), 1u);
    EXPECT_EQ(m.at(0, 0), Scalar(1));
}

}  // namespace
}  // namespace partcat

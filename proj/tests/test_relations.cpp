#include <gtest/gtest.h>

#include "partcat/functor_f.hpp"
#include "partcat/generators.hpp"
#include "partcat/relations.hpp"
#include "support.hpp"

namespace partcat {
namespace {

using testing::P;

std::string tex(const Relation& rel) { return strip_whitespace(render(rel, RelationStyle::latex)); }

TEST(Relations, PairLatex) {
    EXPECT_EQ(tex(emit_relation(generator("pairpart"))), "\\delta_{s_1s_2}=\\sum_{j=1}^Nu_{s_1j}u_{s_2j}");
}

TEST(Relations, PairHuman) {
    EXPECT_EQ(render(emit_relation(generator("pairpart"))), "δ_{s₁s₂} = Σ_{j} u_{s₁j} u_{s₂j}");
}

TEST(Relations, ExtraDictionary) {
    EXPECT_EQ(render(emit_relation(generator("positionerext"))), "v_{ij} r = r v_{ij}");
    EXPECT_EQ(render(emit_relation(generator("globcolext"))), "v_{ij} v_{kl} r = r v_{ij} v_{kl}");
    EXPECT_EQ(tex(emit_relation(generator("globcolext"))), "v_{ij}v_{kl}r=rv_{ij}v_{kl}");
}

TEST(Relations, Crossing) {
    EXPECT_EQ(render(emit_relation(generator("crosspart"))), "u_{ij} u_{kl} = u_{kl} u_{ij}");
}

TEST(Relations, SingletonAndEmptySide) {
    EXPECT_EQ(render(emit_relation(P("P(; x)"))), "1 = Σ_{j} u_{s₁j}");
}

TEST(Relations, TwoColoredUsesConjugate) {
    EXPECT_EQ(render(emit_relation(P("P(; a:w a:b)"))), "δ_{s₁s₂} = Σ_{j} u_{s₁j} u*_{s₂j}");
}

TEST(Relations, MissingName) {
    try {
        emit_relation(generator("positionerext"), SymbolNames::defaults(Regime::plain));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::missing_name);
    }
}

TEST(Relations, MachineForm) {
    EXPECT_EQ(render(emit_relation(generator("crosspart")), RelationStyle::machine),
              "(relation (lhs (term (coef 1) (npow 0) (sym u s2 i1) (sym u s1 i2))) "
              "(rhs (term (coef 1) (npow 0) (sym u s1 i2) (sym u s2 i1))))");
}

TEST(Separated, HalfLiberation) {
    const Partition h = generator("halflibpart");
    auto a = emit_separated_relation(h, parse_dotted_word("soo"), parse_dotted_word("oos"));
    ASSERT_TRUE(a.letter_form);
    EXPECT_EQ(strip_whitespace(a.letters()), "rbc=cbr");
    EXPECT_EQ(a.dotted_letters, "bc");
    auto b = emit_separated_relation(h, parse_dotted_word("ooo"), parse_dotted_word("ooo"));
    EXPECT_EQ(strip_whitespace(b.letters()), "abc=cba");
    EXPECT_EQ(b.str(), "abc = cba with a,b,c ∈ span{u_{ij} − (1/N)r}");
}

TEST(Separated, IdentityThroughSingletons) {
    auto s = emit_separated_relation(generator("idpart"), parse_dotted_word("s"), parse_dotted_word("s"));
    EXPECT_EQ(strip_whitespace(render(s.relation)), "(1/N)r=(1/N)r");
}

TEST(Separated, ArityChecked) {
    EXPECT_THROW(emit_separated_relation(generator("idpart"), parse_dotted_word("ss"), parse_dotted_word("s")),
                 Error);
}

TEST(Presentation, FreeExtra) {
    std::string doc = emit_presentation({}, Regime::extra, 3);
    EXPECT_EQ(doc, "PRESENTATION N=3 regime=extra\nv = v̄\nv vᵗ = vᵗ v = 1\nr = r*\nr² = 1\n");
}

TEST(Presentation, PositionerextAddsCommutation) {
    std::string doc = emit_presentation({generator("positionerext")}, Regime::extra, 3);
    EXPECT_NE(doc.find("v_{ij} r = r v_{ij}\n"), std::string::npos);
}

TEST(Presentation, MachineLines) {
    std::string doc = emit_presentation({generator("globcolext")}, Regime::extra, 2, RelationStyle::machine);
    EXPECT_EQ(doc.rfind("PRESENTATION N=2 regime=extra\n", 0), 0u);
    EXPECT_NE(doc.find("(generator \"P(a b x:t ; y:t a b)\" (relation"), std::string::npos);
}

class RandomRelations : public ::testing::TestWithParam<Regime> {};

TEST_P(RandomRelations, InvolutionGivesFormalAdjoint) {
    auto rng = testing::rng(50);
    for (int i = 0; i < 100; ++i) {
        Partition p = random_partition(rng, GetParam(), 6);
        const SymbolNames names = SymbolNames::defaults(GetParam());
        Relation rel = emit_relation(p, names);
        ASSERT_EQ(formal_adjoint(rel), emit_relation(involute(p), names)) << to_string(p);
        EXPECT_EQ(formal_adjoint(formal_adjoint(rel)), rel);
    }
}

TEST_P(RandomRelations, RenderingIsDeterministic) {
    auto rng = testing::rng(51);
    for (int i = 0; i < 100; ++i) {
        Partition p = random_partition(rng, GetParam(), 6);
        Relation rel = emit_relation(p, SymbolNames::defaults(GetParam()));
        for (auto style : {RelationStyle::human, RelationStyle::latex, RelationStyle::machine})
            EXPECT_EQ(render(rel, style), render(emit_relation(p, SymbolNames::defaults(GetParam())), style));
    }
}

INSTANTIATE_TEST_SUITE_P(Regimes, RandomRelations,
                         ::testing::Values(Regime::plain, Regime::extra, Regime::two_colored),
                         [](const auto& info) {
                             std::string s = regime_name(info.param);
                             std::replace(s.begin(), s.end(), '-', '_');
                             return s;
                         });

// The glued product of a row is p's row times r^(row length mod 2), up to r² = 1.
void append_extra(std::vector<Term>& side) {
    Factor r;
    r.symbol = "r";
    for (auto& t : side) t.factors.push_back(r);
}

TEST(GluedSubstitution, ReproducesExtraRelation) {
    auto rng = testing::rng(52);
    SymbolNames glued;
    glued.by_color[Color::white] = {"w", false};
    glued.by_color[Color::black] = {"w", true};
    const SymbolNames ext = SymbolNames::defaults(Regime::extra);
    std::uniform_int_distribution<std::size_t> len(0, 4);
    int done = 0;
    while (done < 100) {
        Partition p = random_partition(rng, Regime::extra, len(rng), len(rng));
        if (p.size() % 2) continue;
        ++done;
        Relation got = glue_substitute(emit_relation(functor_f(p), glued), "w", "v", "r");
        Relation want = emit_relation(p, ext);
        if (p.upper_count() % 2) {
            append_extra(want.lhs);
            append_extra(want.rhs);
        }
        // substituting an absent symbol only cancels r r
        want = glue_substitute(want, "-", "v", "r");
        ASSERT_EQ(got, want) << to_string(p) << ": " << render(got) << " vs " << render(want);
    }
}

}  // namespace
}  // namespace partcat

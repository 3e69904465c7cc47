#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace partcat {
namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

TEST(Cli, ComposeLinear) {
    auto r = run({"compose", "P(x a b y; z b a a)", "P(a a a; x a a y)", "--linear", "--N", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "9 * P(a a a ; x a a a)\n");
}

TEST(Cli, ComposeSetModeReportsLoops) {
    auto r = run({"compose", "P(x a b y; z b a a)", "P(a a a; x a a y)"});
    EXPECT_EQ(r.out, "P(a a a ; x a a a)\nloops 2\n");
    auto m = run({"compose", "P(a a ;)", "P(; a a)", "--format", "machine"});
    EXPECT_EQ(m.out, "result P(;)\nloops 1\nextra_loops 0\n");
}

TEST(Cli, FunctorF) {
    auto r = run({"functor-f", "P(a x:t ; y:t a)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "P(a:w ; a:b)\n");
}

TEST(Cli, MorDim) {
    auto r = run({"mordim", "--N", "3", "--sig", ";----", "--gens", "nc-pairs"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "2\n");
}

TEST(Cli, TensorInvoluteRotate) {
    EXPECT_EQ(run({"tensor", "P(;a a)", "@pairpart"}).out, "P(; a a b b)\n");
    EXPECT_EQ(run({"involute", "P(; a a)"}).out, "P(a a ;)\n");
    EXPECT_EQ(run({"rotate", "P(; a a)", "--side", "right", "--dir", "up"}).out, "P(a ; a)\n");
}

TEST(Cli, TpDump) {
    EXPECT_EQ(run({"tp", "P(a ; a)", "--N", "2"}).out, "T -;- N=2\n0 0 1 0\n1 1 1 0\n");
}

TEST(Cli, ClosureDumpIsIndependentOfJobs) {
    auto a = run({"closure", "--gens", "@positionerext", "--points", "6", "--jobs", "1"});
    auto b = run({"closure", "--gens", "@positionerext", "--points", "6", "--jobs", "8"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("CLOSURE regime=extra P=6 s=4 mode=set\n", 0), 0u);
    EXPECT_NE(a.err.find("saturated=yes"), std::string::npos);
}

TEST(Cli, ContainsAndCertify) {
    EXPECT_EQ(run({"contains", "P(a b ; b a)", "--gens", "@crosspart", "--points", "4"}).out, "CertifiedIn\n");
    EXPECT_EQ(run({"contains", "@globcolext", "--regime", "extra", "--points", "6"}).out, "NotFound\n");
    EXPECT_EQ(run({"certify", "@globcolext", "--regime", "extra"}).out,
              "Excluded noncrossing-extra-pairing: extra singletons pair up without splitting any ordinary block\n");
    EXPECT_EQ(run({"certify", "@wsingleton", "--gens", "@wwpair"}).out, "Excluded color-sum-lattice: color sum in 2Z\n");
    EXPECT_EQ(run({"certify", "@crosspart", "--gens", "@crosspart"}).out, "NoCertificate\n");
}

TEST(Cli, PreimageAndU) {
    EXPECT_EQ(run({"preimage", "P(a:w ; a:b)"}).out, "P(a x:t ; y:t a)\n");
    EXPECT_EQ(run({"functor-u", "P(; x y)", "--N", "3"}).out, "3 * P(; x:t y:t)\n");
    auto v = run({"verify-u", "P(a b ; b a)", "--N", "3", "--dotted", "--sign", "minus"});
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out, "PASS: ok\n");
    auto big = run({"verify-u", "@fourpart", "--N", "2", "--dotted"});
    EXPECT_EQ(big.out, "PASS (rhs only): rhs only; support ok\n");
    EXPECT_EQ(run({"functor-u", "--matrix", "--N", "2"}).out.rfind("T -;- N=2\n", 0), 0u);
}

TEST(Cli, DottedAndSandwich) {
    EXPECT_EQ(run({"dotted", "P(a ; a)", "--N", "2"}).out, "1 * P(a ; a) + -1/2 * P(x ; y)\n");
    EXPECT_EQ(run({"dotted", "--basis", "P(a ; a)", "--N", "2"}).out, "1 * P(a ; a) + 1/2 * P(x ; y)\n");
    EXPECT_EQ(run({"sandwich", "P(a ; a)", "--w1", "o", "--w2", "s", "--N", "2"}).out, "0\n");
}

TEST(Cli, Relations) {
    EXPECT_EQ(run({"relations", "@positionerext"}).out, "v_{ij} r = r v_{ij}\n");
    EXPECT_EQ(run({"relations", "@pairpart", "--format", "latex"}).out,
              "\\delta_{s_1s_2} = \\sum_{j=1}^Nu_{s_1j}u_{s_2j}\n");
    EXPECT_EQ(run({"relations", "@halflibpart", "--w1", "soo", "--w2", "oos"}).out,
              "rbc = cbr with b,c ∈ span{u_{ij} − (1/N)r}\n");
    EXPECT_EQ(run({"relations", "@pairpart", "--adjoint"}).out, "Σ_{t} u_{ti₁} u_{ti₂} = δ_{i₁i₂}\n");
}

TEST(Cli, PresentationAndProducts) {
    EXPECT_EQ(run({"presentation", "--regime", "extra", "--N", "3"}).out,
              "PRESENTATION N=3 regime=extra\nv = v̄\nv vᵗ = vᵗ v = 1\nr = r*\nr² = 1\n");
    EXPECT_EQ(run({"products", "--kind", "times0"}).out, "P(a b x:t ; y:t a b)\n");
    EXPECT_EQ(run({"products", "--kind", "times2k", "--k", "2"}).out, "P(a x:t b y:t ; z:t a x1:t b)\n");
}

TEST(Cli, GeneratorFile) {
    const std::string path = ::testing::TempDir() + "partcat_gens.txt";
    {
        std::ofstream f(path);
        f << "# four-block\nN=3\nP(; a a a a)\n\n";
    }
    auto r = run({"closure", "--gens-file", path, "--linear", "--points", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("CLOSURE regime=plain P=4 s=4 mode=linear N=3\n", 0), 0u);
    EXPECT_EQ(run({"closure", "--gens-file", path, "--linear", "--N", "2"}).code, 1);
    std::remove(path.c_str());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    auto missing = run({"compose", "P(a;a)", "P(a;a)", "--linear"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("Usage: compose"), std::string::npos);
    EXPECT_EQ(run({"tp", "P(a;a)", "--N", "0"}).code, 2);
    EXPECT_EQ(run({"relations", "@pairpart", "--format", "pdf"}).code, 2);
    EXPECT_EQ(run({"compose", "P(a;a)", "P(;a a)"}).code, 1);
    EXPECT_EQ(run({"functor-f", "P(;x)"}).code, 1);
    EXPECT_EQ(run({"functor-f", "P(a"}).code, 1);
    EXPECT_EQ(run({"closure", "--gens", "@fourpart", "--points", "2"}).code, 1);
    EXPECT_EQ(run({"compose", "--help"}).code, 0);
}

TEST(Cli, PrintedPartitionsReparse) {
    auto r = run({"closure", "--gens", "@globcol2", "--points", "4"});
    std::istringstream in(r.out);
    std::string line;
    int parsed = 0;
    while (std::getline(in, line))
        if (line.rfind("P(", 0) == 0) {
            Partition p = parse_partition(line);
            EXPECT_EQ(to_string(p), line);
            ++parsed;
        }
    EXPECT_GT(parsed, 10);
}

}  // namespace
}  // namespace partcat

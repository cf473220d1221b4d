#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the CLI from the source directory so relative paths in arguments and
// output stay stable.
CliRun run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const fs::path err = fs::temp_directory_path() / ("koszulkit_cli_err_" + std::to_string(::getpid()) + "_" +
                                                      std::to_string(counter++));
    const std::string cmd = "cd '" KOSZULKIT_SOURCE_DIR "' && " + env + " '" KOSZULKIT_CLI "' " + args + " 2>'" +
                            err.string() + "'";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    fs::remove(err);
    return r;
}

struct GoldenCase {
    std::string name;
    std::string args;
    int code = 0;
};

std::ostream& operator<<(std::ostream& os, const GoldenCase& c) { return os << c.name; }

const std::vector<GoldenCase>& golden_cases() {
    static const std::vector<GoldenCase> cases = {
        {"validate_sl2", "validate corpus/sl2.alg"},
        {"dual_sl2", "dual corpus/sl2.alg"},
        {"dual_a3", "dual corpus/a3.alg"},
        {"basis_sl2", "basis corpus/sl2.alg"},
        {"basis_free_loop", "basis corpus/free_loop.alg --cutoff 3"},
        {"basis_injective_dual", "basis corpus/sl2.alg --over dual --module 'I(1)'"},
        {"dim_sl2", "dim corpus/sl2.alg"},
        {"dim_sl2_dual", "dim corpus/sl2.alg --over dual"},
        {"dim_free_loop", "dim corpus/free_loop.alg"},
        {"hilbert_sl2", "hilbert corpus/sl2.alg --closed"},
        {"hilbert_free_loop", "hilbert corpus/free_loop.alg"},
        {"hilbert_rad2_truncated", "hilbert corpus/rad2_zero3.alg --truncate 4"},
        {"hilbert_injective_dual", "hilbert corpus/sl2.alg --over dual --module 'I(1)'"},
        {"hilbert_coideal_dual", "hilbert corpus/sl2.alg --over dual --module 'C(alpha_op)' --closed"},
        {"hilbert_projective_truncated", "hilbert corpus/loop_sq.alg --over dual --module 'P(v)' --truncate 6"},
        {"resolve_sl2_simple", "resolve corpus/sl2.alg --module 'S(1)'"},
        {"resolve_coker", "resolve corpus/a3.alg --module 'coker(1@0, 2@0; 2@1; 3*a | )' --format tsv"},
        {"coresolve_dual_simple", "coresolve corpus/sl2.alg --over dual --module 'S(1)' --steps 4"},
        {"betti_sl2_simple", "betti corpus/sl2.alg --module 'S(1)'"},
        {"betti_sl2_simple_tsv", "betti corpus/sl2.alg --module 'S(1)' --format tsv"},
        {"betti_loop_sq", "betti corpus/loop_sq.alg --module 'S(v)' --steps 5"},
        {"poincare_sl2", "poincare corpus/sl2.alg --module 'S(1)'"},
        {"poincare_loop_sq", "poincare corpus/loop_sq.alg --module 'S(v)' --truncate 6"},
        {"poincare_injective_dual", "poincare corpus/sl2.alg --over dual --module 'S(2)' --kind injective"},
        {"lindefect_sl2", "lindefect corpus/sl2.alg --module 'S(1)'"},
        {"lindefect_rad2", "lindefect corpus/rad2_zero3.alg --module 'sum(S(1), shift(P(2), 1))'"},
        {"koszul_check_sl2", "koszul-check corpus/sl2.alg"},
        {"koszul_check_free_loop", "koszul-check corpus/free_loop.alg"},
        {"kfunctor_coideal", "kfunctor corpus/sl2.alg --module 'C(alpha_op)'"},
        {"kfunctor_injective", "kfunctor corpus/sl2.alg --module 'I(1)'"},
        {"gfunctor_ideal", "gfunctor corpus/sl2.alg --module 'L(alpha)'"},
        {"roundtrip_sl2", "roundtrip corpus/sl2.alg"},
        {"roundtrip_module", "roundtrip corpus/a3.alg --module 'P(1)'"},
        {"truncation_lowest", "truncation corpus/sl2.alg --module 'sum(I(1), S(2))'"},
        {"truncation_below_top", "truncation corpus/sl2.alg --module 'sum(I(1), S(2))' --rule below-top"},
        {"reciprocity_sl2", "reciprocity corpus/sl2.alg --order 10"},
        {"reciprocity_loop_sq", "reciprocity corpus/loop_sq.alg"},
        {"suite_corpus", "suite corpus --seed 1"},
        {"suite_corpus_tsv", "suite corpus --seed 3 --format tsv"},
        {"suite_empty", "suite tests/data/empty"},
        {"suite_corrupted", "suite tests/data/corrupted", 1},
    };
    return cases;
}

class CliGolden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(CliGolden, MatchesGoldenOutput) {
    const GoldenCase& c = GetParam();
    CliRun r = run_cli(c.args);
    EXPECT_EQ(r.code, c.code) << r.err;
    const fs::path golden = fs::path(KOSZULKIT_SOURCE_DIR) / "tests" / "golden" / (c.name + ".out");
    if (std::getenv("KOSZULKIT_UPDATE_GOLDEN")) {
        std::ofstream(golden) << r.out;
        return;
    }
    ASSERT_TRUE(fs::exists(golden)) << golden << " missing; rerun with KOSZULKIT_UPDATE_GOLDEN=1";
    EXPECT_EQ(r.out, slurp(golden));
}

INSTANTIATE_TEST_SUITE_P(Subcommands, CliGolden, ::testing::ValuesIn(golden_cases()),
                         [](const auto& info) { return info.param.name; });

TEST(Cli, DimExampleLine) {
    CliRun r = run_cli("dim corpus/sl2.alg");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "finite: true, max_path_len: 2, dim: 5\n");
}

TEST(Cli, DualHasOppositeRelation) {
    CliRun r = run_cli("dual corpus/sl2.alg");
    EXPECT_NE(r.out.find("relation alpha_op beta_op\n"), std::string::npos);
}

TEST(Cli, BrokenAlgebraIsInputErrorWithLine) {
    CliRun r = run_cli("validate tests/data/bad/broken.alg");
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("line 6"), std::string::npos) << r.err;
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run_cli("dim corpus/missing.alg").code, 2);
    EXPECT_EQ(run_cli("betti corpus/sl2.alg --module 'S(9)'").code, 2);
    EXPECT_EQ(run_cli("betti corpus/sl2.alg --module 'S(1'").code, 2);
    EXPECT_EQ(run_cli("betti corpus/sl2.alg").code, 2);
    EXPECT_EQ(run_cli("betti corpus/sl2.alg --module 'S(1)' --steps 0").code, 2);
    EXPECT_EQ(run_cli("frobnicate corpus/sl2.alg").code, 2);
    EXPECT_EQ(run_cli("suite tests/data/missing").code, 2);
    EXPECT_EQ(run_cli("dim corpus/sl2.alg", "KOSZULKIT_STEPS=abc").code, 2);
}

TEST(Cli, EnvironmentSetsDefaultCutoffs) {
    CliRun a = run_cli("betti corpus/loop_sq.alg --module 'S(v)'", "KOSZULKIT_STEPS=3");
    CliRun b = run_cli("betti corpus/loop_sq.alg --module 'S(v)' --steps 3");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    CliRun c = run_cli("betti corpus/loop_sq.alg --module 'S(v)' --steps 5", "KOSZULKIT_STEPS=3");
    EXPECT_NE(c.out, a.out);
}

TEST(Cli, EmptyCorpusWarnsOnStderr) {
    CliRun r = run_cli("suite tests/data/empty");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
    EXPECT_NE(r.out.find("overall: PASS"), std::string::npos);
}

TEST(Cli, CorruptedCorpusFailsWithWitnessAndReproduction) {
    CliRun r = run_cli("suite tests/data/corrupted --seed 4");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("FAIL  betti-golden"), std::string::npos);
    EXPECT_NE(r.out.find("witness: sl2.betti"), std::string::npos);
    EXPECT_NE(r.out.find("reproduce: koszulkit suite tests/data/corrupted --seed 4"), std::string::npos);
}

TEST(Cli, GeneratedCorpusIsSeededAndLoadable) {
    const fs::path dir = fs::temp_directory_path() / ("koszulkit_gen_" + std::to_string(::getpid()));
    CliRun a = run_cli("gen-corpus '" + dir.string() + "' --seed 9 --count 3");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, "random_1.alg\nrandom_2.alg\nrandom_3.alg\n");
    const std::string first = slurp(dir / "random_2.alg");
    run_cli("gen-corpus '" + dir.string() + "' --seed 9 --count 3");
    EXPECT_EQ(slurp(dir / "random_2.alg"), first);
    for (int i = 1; i <= 3; ++i)
        EXPECT_EQ(run_cli("validate '" + (dir / ("random_" + std::to_string(i) + ".alg")).string() + "'").code, 0);
    fs::remove_all(dir);
}

}  // namespace

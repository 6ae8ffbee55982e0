#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "pmlab/cli.hpp"
#include "pmlab/instance_io.hpp"
#include "small_params.hpp"

using namespace pmlab;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "pmlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("pmlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::filesystem::path dir_;
};

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"gen"}).code, kExitUsage);
    EXPECT_EQ(run({"gen", "3p"}).code, kExitUsage);
    EXPECT_EQ(run({"gen", "2p", "--params", "sigma"}).code, kExitUsage);
    EXPECT_EQ(run({"gen", "2p", "--params", "colour=red"}).code, kExitUsage);
    EXPECT_EQ(run({"verify", "min-output", "--in", path("missing.inst")}).code, kExitUsage);
    EXPECT_EQ(run({"--help"}).code, kExitPass);
}

TEST_F(Cli, GenWritesRegenerableFiles) {
    for (const auto& [family, header] : small::headers()) {
        SCOPED_TRACE(family);
        const Outcome r = run({"gen", family, "--params", header, "--out", path(family + ".inst")});
        ASSERT_EQ(r.code, kExitPass) << r.err;
        const std::string text = slurp(path(family + ".inst"));
        EXPECT_EQ(text, emit_instance(generate_from_header(family, parse_param_list(header))));
        EXPECT_TRUE(regenerates_identically(parse_instance(text)));
        const Outcome again = run({"gen", family, "--params", header});
        EXPECT_EQ(again.out, text);
    }
}

TEST_F(Cli, SeedFlagOverridesParams) {
    const Outcome a = run({"gen", "2p", "--params", "sigma=2,p=1,D=64,ell=3,beta=40,seed=1", "--seed", "11"});
    const Outcome b = run({"gen", "2p", "--params", small::headers()[0].second});
    ASSERT_EQ(a.code, kExitPass);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, GenFailureIsPropertyFailure) {
    const Outcome r = run({"gen", "2p", "--params", "sigma=2,p=1,D=8,ell=2,beta=8,max_attempts=2"});
    EXPECT_EQ(r.code, kExitPropertyFailure);
    EXPECT_NE(r.err.find("eq-int"), std::string::npos);
}

TEST_F(Cli, Describe) {
    const Outcome r = run({"gen", "wci-query", "--describe", "--params", "c=2.5"});
    ASSERT_EQ(r.code, kExitPass);
    EXPECT_NE(r.out.find("beta=4\n"), std::string::npos);
    EXPECT_NE(r.out.find("r=4\n"), std::string::npos);
}

TEST_F(Cli, VerifyChecks) {
    EXPECT_EQ(run({"verify", "eq-int", "--params", "sigma=6,p=3,ell=8,beta=6,D=4096"}).code, kExitPass);
    EXPECT_EQ(run({"verify", "eq-int", "--params", "sigma=6,p=3,ell=3,beta=6,D=4096"}).code, kExitPropertyFailure);
    const Outcome gpi = run({"verify", "gpi-count", "--params", "p=2,kappa=1,gamma=3,blocks=4"});
    EXPECT_EQ(gpi.code, kExitPass);
    EXPECT_EQ(gpi.out.rfind("check=gpi-count ", 0), 0u);
    EXPECT_EQ(run({"verify", "gpi-common"}).code, kExitPass);
    EXPECT_EQ(run({"verify", "mc-rate", "--params", "sigma=4,p=2,trials=20000", "--seed", "3"}).code, kExitPass);
    EXPECT_EQ(run({"verify", "count-ineq", "--params", "sigma=6,p=2,beta=6,D=193,q_time=1"}).code, kExitPass);
    EXPECT_EQ(run({"verify", "count-ineq", "--params", "sigma=6,p=2,beta=6,D=192,q_time=1"}).code,
              kExitPropertyFailure);

    ASSERT_EQ(run({"gen", "2p", "--params", small::headers()[0].second, "--out", path("a.inst")}).code, kExitPass);
    EXPECT_EQ(run({"verify", "min-output", "--in", path("a.inst")}).code, kExitPass);
    EXPECT_EQ(run({"verify", "max-sharing", "--in", path("a.inst")}).code, kExitPass);

    ASSERT_EQ(run({"gen", "wci-query", "--params", small::headers()[4].second, "--out", path("w.inst")}).code, kExitPass);
    EXPECT_EQ(run({"verify", "wci-spread", "--in", path("w.inst"), "--params", "samples=200"}).code, kExitPass);
    ASSERT_EQ(run({"gen", "wci-space", "--params", small::headers()[5].second, "--out", path("s.inst")}).code, kExitPass);
    EXPECT_EQ(run({"verify", "wci-pairs", "--in", path("s.inst"), "--params", "trials=20000"}).code, kExitPass);
}

TEST_F(Cli, Bound) {
    const Outcome r = run({"bound", "chazelle", "--params", "q=1e6,t=20,ell=8,beta=6"});
    ASSERT_EQ(r.code, kExitPass);
    EXPECT_NE(r.out.find("chazelle"), std::string::npos);
    EXPECT_EQ(run({"bound", "afshani", "--params", "t=16,v=0.01,beta=2"}).code, kExitPass);
    EXPECT_EQ(run({"bound", "kirkpatrick"}).code, kExitUsage);
}

TEST_F(Cli, BenchAndFaultInjection) {
    ASSERT_EQ(run({"gen", "2p", "--params", small::headers()[0].second, "--out", path("a.inst")}).code, kExitPass);
    const Outcome ok = run({"bench", "--in", path("a.inst"), "--structure", "inverted", "--queries", "8", "--seed", "2"});
    ASSERT_EQ(ok.code, kExitPass) << ok.err;
    EXPECT_EQ(ok.out.rfind("query_rank,output_size,time_units,space_cells\n", 0), 0u);
    EXPECT_NE(ok.out.find("#footer queries=8\n"), std::string::npos);
    const Outcome bad = run({"bench", "--in", path("a.inst"), "--structure", "naive", "--inject-fault", "0,3"});
    EXPECT_EQ(bad.code, kExitPropertyFailure);
    EXPECT_NE(bad.err.find("query 0"), std::string::npos);

    ASSERT_EQ(run({"gen", "gpi", "--out", path("g.inst")}).code, kExitPass);
    EXPECT_EQ(run({"bench", "--in", path("g.inst"), "--structure", "full"}).code, kExitPass);
}

TEST_F(Cli, AuditSingletons) {
    ASSERT_EQ(run({"gen", "2p", "--params", small::headers()[0].second, "--out", path("a.inst")}).code, kExitPass);
    const Outcome r = run({"audit-sg", "--in", path("a.inst")});
    EXPECT_EQ(r.code, kExitPass) << r.out;
    EXPECT_EQ(r.out.rfind("sum_id,size,usable_queries,flagged\n", 0), 0u);
    EXPECT_NE(r.out.find("#footer flagged=0\n"), std::string::npos);
    EXPECT_NE(r.out.find("#footer certified=1\n"), std::string::npos);

    // With beta lowered to 2 the sharing precondition no longer holds.
    std::ofstream(path("s.txt")) << "sum 0 docs 0,1\n";
    const Outcome low = run({"audit-sg", "--in", path("a.inst"), "--scheme", path("s.txt"), "--params", "beta=2"});
    EXPECT_EQ(low.code, kExitPropertyFailure);
    EXPECT_NE(low.out.find("#footer certified=0\n"), std::string::npos);
}

TEST_F(Cli, PartitionTree) {
    const Outcome r = run({"partition-tree", "--params", "n=500,beta=4", "--seed", "6"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_NE(r.out.find("check=partition-tree mode=exact"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("pass=true"), std::string::npos);
}

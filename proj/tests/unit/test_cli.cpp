#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "iazf/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = iazf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, AssignMatchesFixtures) {
    const auto k5 = run({"assign", "--k", "5", "--l", "5", "--format", "markdown"});
    EXPECT_EQ(k5.code, 0);
    EXPECT_EQ(k5.out, slurp(IAZF_FIXTURE_DIR "/table_k5_l5.md"));
    const auto k6 = run({"assign", "--k", "6", "--l", "5,6"});
    EXPECT_EQ(k6.out, slurp(IAZF_FIXTURE_DIR "/table_k6_l56.md"));
}

TEST(Cli, ValidateExitCodes) {
    EXPECT_EQ(run({"validate", "--input", IAZF_FIXTURE_DIR "/corrupted_k5_l5.json"}).code, 1);
    EXPECT_EQ(run({"validate", "--k", "9"}).code, 0);
    const auto missing = run({"validate", "--input", "/nonexistent/table.json"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("cannot read"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"assign"}).code, 2);
    EXPECT_EQ(run({"assign", "--k", "4"}).code, 2);
    EXPECT_EQ(run({"assign", "--k", "five"}).code, 2);
    EXPECT_EQ(run({"assign", "--k", "5", "--l", "4,5"}).code, 2);
    EXPECT_EQ(run({"assign", "--k", "5", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"zf-check", "--k", "5", "--modulus", "15"}).code, 2);
    EXPECT_EQ(run({"tradeoff", "--k-min", "9", "--k-max", "6"}).code, 2);
    EXPECT_EQ(run({"k5-blocks", "--k", "6"}).code, 2);
    const auto bad = run({"assign", "--bogus"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("Usage"), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, TradeoffCsv) {
    const auto r = run({"tradeoff", "--k-min", "5", "--k-max", "15", "--format", "csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 12);
    EXPECT_NE(r.out.find("5,2,13,100,0.13,3,20,0.15,1/50,true"), std::string::npos);
    const auto plot = run({"tradeoff", "--k-min", "5", "--k-max", "6", "--plot-data"});
    EXPECT_EQ(plot.out, "K,delta_ach,delta_lb\n5,0.13,0.15\n6,0.138889,0.144444\n");
}

TEST(Cli, IndependenceDeterministicJson) {
    const auto a = run({"verify-independence", "--k", "6", "--trials", "3"});
    const auto b = run({"verify-independence", "--k", "6", "--trials", "3"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '{'), 15);
    EXPECT_EQ(a.out.find("\"full_rank\": false"), std::string::npos);
    const auto other = run({"verify-independence", "--k", "6", "--trials", "3", "--seed", "7"});
    EXPECT_NE(a.out, other.out);
}

TEST(Cli, ModulusFromEnvironment) {
    ::setenv("IAZF_FIELD_MODULUS", "1000000007", 1);
    const auto env = run({"verify-independence", "--k", "5", "--l", "5", "--trials", "1"});
    ::unsetenv("IAZF_FIELD_MODULUS");
    const auto flag = run({"verify-independence", "--k", "5", "--l", "5", "--trials", "1", "--modulus", "1000000007"});
    const auto dflt = run({"verify-independence", "--k", "5", "--l", "5", "--trials", "1"});
    EXPECT_EQ(env.code, 0);
    EXPECT_EQ(env.out, flag.out);
    EXPECT_NE(env.out, dflt.out);  // the failure bound depends on p
}

TEST(Cli, OutputFileAndOtherCommands) {
    const auto path = (std::filesystem::temp_directory_path() / "iazf_cli_test.json").string();
    const auto r = run({"converse-count", "--k", "5", "--output", path});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(slurp(path).find("\"V\": 15"), std::string::npos);
    std::filesystem::remove(path);
    EXPECT_EQ(run({"zf-check", "--k", "6", "--trials", "2"}).code, 0);
    EXPECT_EQ(run({"k5-blocks", "--points", "5", "--format", "csv"}).code, 0);
    EXPECT_EQ(run({"assign", "--k", "7", "--format", "json"}).code, 0);
}

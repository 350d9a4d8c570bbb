#include "commands.hpp"

#include "support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

using nlohmann::json;
using steenrod::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args)
{
    args.insert(args.begin(), "steenrod");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string rp2 = R"({"builtin": "bar_skeleton", "q": 2, "dim": 2})";
const std::string rp3 = R"({"builtin": "bar_skeleton", "q": 2, "dim": 3})";

std::string data(const char* name) { return (steenrod::test::data_dir() / name).string(); }

} // namespace

TEST(Cli, CohomologyJson)
{
    const auto r = call({"cohomology", "--space", rp3, "--prime", "2", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["betti"], json::parse("[1, 1, 1, 1]"));
    const auto r3 = call({"cohomology", "--space", rp3, "--prime", "3", "--json"});
    EXPECT_EQ(json::parse(r3.out)["betti"], json::parse("[1, 0, 0, 1]"));
}

TEST(Cli, SteenrodBothMethodsAgree)
{
    const auto r = call({"steenrod", "--space", rp2, "--prime", "2", "--method", "both", "--cap", "5", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_TRUE(j["agreement"].get<bool>());
    EXPECT_TRUE(j.contains("elapsed_seconds"));
    bool saw_sq1 = false;
    for (const auto& row : j["operations"])
        if (row["degree"] == 1 && row["k"] == 1) {
            saw_sq1 = true;
            EXPECT_EQ(row["operation"], "Sq^1");
            EXPECT_EQ(row["diagonal"], json::parse("[1]"));
        }
    EXPECT_TRUE(saw_sq1);
}

TEST(Cli, SingleClassTable)
{
    const auto r = call({"steenrod", "--space", rp3, "--prime", "2", "--class", "1:0", "--k", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("Sq^1"), std::string::npos);
    EXPECT_EQ(r.out.find("Sq^0"), std::string::npos);
}

TEST(Cli, OddPrimeRendering)
{
    const auto r = call({"steenrod", "--space", R"({"builtin": "bar_skeleton", "q": 3, "dim": 2})", "--prime", "3",
                         "--class", "1:0", "--method", "both", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["degree_cap"], 4);
    EXPECT_EQ(j["operations"][1]["operation"], "-βP^0");
    EXPECT_TRUE(j["agreement"].get<bool>());
}

TEST(Cli, BadInputs)
{
    EXPECT_EQ(call({"cohomology", "--space", rp2, "--prime", "4"}).code, 2);
    EXPECT_EQ(call({"cohomology", "--space", "/nonexistent/space.json", "--prime", "2"}).code, 2);
    EXPECT_EQ(call({"cohomology", "--space", "{broken", "--prime", "2"}).code, 2);
    EXPECT_EQ(call({"steenrod", "--space", rp2, "--method", "magic"}).code, 2);
    EXPECT_EQ(call({"steenrod", "--space", rp2, "--class", "one"}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
    const auto trunc = call({"steenrod", "--space", rp2, "--prime", "2", "--class", "2:0", "--cap", "3"});
    EXPECT_EQ(trunc.code, 2);
    EXPECT_NE(trunc.err.find("raise cap"), std::string::npos);
}

TEST(Cli, ResourceGuard)
{
    const auto r = call({"steenrod", "--space", rp3, "--prime", "2", "--class", "1:0", "--limit", "5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("desk-scale exceeded"), std::string::npos);
    ::setenv("STEENROD_PRODUCT_LIMIT", "5", 1);
    const auto env = call({"steenrod", "--space", rp3, "--prime", "2", "--class", "1:0"});
    ::unsetenv("STEENROD_PRODUCT_LIMIT");
    EXPECT_EQ(env.code, 2);
    EXPECT_NE(env.err.find("desk-scale exceeded"), std::string::npos);
}

TEST(Cli, VerifySuites)
{
    const auto lemmas = call({"verify", "--suite", "lemmas", "--space", rp2, "--prime", "2", "--cap", "3", "--json"});
    ASSERT_EQ(lemmas.code, 0) << lemmas.out << lemmas.err;
    EXPECT_TRUE(json::parse(lemmas.out)["passed"].get<bool>());
    const auto uniq = call({"verify", "--suite", "uniqueness", "--space", rp2, "--prime", "2", "--cap", "5"});
    EXPECT_EQ(uniq.code, 0) << uniq.out;
    EXPECT_NE(uniq.out.find("all checks passed"), std::string::npos);
    const auto nat = call({"verify", "--suite", "naturality", "--maps", data("quotient.json"), "--prime", "2"});
    EXPECT_EQ(nat.code, 0) << nat.out << nat.err;
    EXPECT_EQ(call({"verify", "--suite", "naturality", "--prime", "2"}).code, 2);
}

TEST(Cli, NaturalityWeights)
{
    const auto r = call({"naturality", "--maps", data("rotate_plus_constant.json"), "--prime", "3", "--weights",
                         "2,1", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(json::parse(r.out)["passed"].get<bool>());
    EXPECT_EQ(call({"naturality", "--maps", data("rotate_plus_constant.json"), "--weights", "1"}).code, 2);
    EXPECT_EQ(call({"naturality", "--maps", data("rotate_plus_constant.json"), "--weights", "a,b"}).code, 2);
}

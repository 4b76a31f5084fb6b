#include "sollink/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

using namespace sollink;

namespace {

RunResult run(std::vector<std::string> args)
{
    args.insert(args.begin(), "sollink");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    return run_cli(int(argv.size()), argv.data());
}

std::string capture(const std::string& cmd, int* status)
{
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    *status = pclose(p);
    return out;
}

} // namespace

TEST(Json, QExpansionRoundTrip)
{
    QExpansion q = lk_qexpansion(make_field(13), 1, 12);
    std::string text = qexpansion_json(q).dump();
    QExpansion back = qexpansion_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(back.coeffs, q.coeffs);
    EXPECT_EQ(back.d, 13);
    EXPECT_EQ(back.nmax, 12);
    EXPECT_NE(text.find("\"coeffs\":{\"1\":"), std::string::npos);
}

TEST(Json, RationalsAsStrings)
{
    QExpansion q;
    q.d = 5;
    q.nmax = 2;
    q.coeffs[1] = ratio(-3, 7);
    q.coeffs[2] = 4;
    auto j = qexpansion_json(q);
    EXPECT_EQ(j["coeffs"]["1"], "-3/7");
    EXPECT_EQ(j["coeffs"]["2"], "4");
    EXPECT_EQ(j["weight"], 2);
}

TEST(Json, InteriorTable)
{
    auto t = interior_from_json(nlohmann::json::parse(R"({"m": 1, "entries": {"1": "1/2", "3": "-2", "2": 5}, "provenance": "hand"})"));
    EXPECT_EQ(t.m, 1);
    EXPECT_EQ(t.entries.at(1), ratio(1, 2));
    EXPECT_EQ(t.entries.at(2), 5);
    EXPECT_EQ(t.entries.at(3), -2);
    EXPECT_EQ(t.provenance, "hand");
    EXPECT_THROW(interior_from_json(nlohmann::json::parse(R"({"entries": {}})")), InputError);
    EXPECT_THROW(interior_from_json(nlohmann::json::parse(R"({"m": 1, "entries": {"0": "1"}})")), InputError);
    EXPECT_THROW(interior_from_json(nlohmann::json::parse(R"({"m": 1, "entries": {"1": "1/0"}})")), InputError);
    EXPECT_THROW(interior_from_json(nlohmann::json::parse(R"({"m": 1, "entries": {"1": 0.5}})")), InputError);
}

TEST(Csv, Header)
{
    std::string csv = series_csv(min_series(make_field(5), 3, 20));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,value,tail_estimate");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(Tau, Parsing)
{
    EXPECT_EQ(parse_tau("0+1i"), std::complex<double>(0, 1));
    EXPECT_EQ(parse_tau("0.25+2i"), std::complex<double>(0.25, 2));
    EXPECT_EQ(parse_tau("-1+1e-1i"), std::complex<double>(-1, 0.1));
    EXPECT_EQ(parse_tau("0+i"), std::complex<double>(0, 1));
    EXPECT_THROW(parse_tau("1-1i"), InputError);
    EXPECT_THROW(parse_tau("1+0i"), InputError);
    EXPECT_THROW(parse_tau("i"), InputError);
    EXPECT_THROW(parse_tau("1+2"), InputError);
    EXPECT_THROW(parse_tau("a+bi"), InputError);
}

TEST(Cli, SolLink)
{
    RunResult r = run({"sol-link", "--f", "2,1,1,1", "--a", "1,0", "--b", "0,1"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out, "-1\n");
    RunResult j = run({"sol-link", "--f", "2,1,1,1", "--a", "1,0", "--b", "1,0", "--format", "json"});
    EXPECT_EQ(nlohmann::json::parse(j.out)["lk"], "1");
}

TEST(Cli, QExp)
{
    RunResult r = run({"qexp", "--d", "5", "--m", "1", "--nmax", "5"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["coeffs"]["1"], "2");
    EXPECT_EQ(j["coeffs"]["2"], "0");
    EXPECT_EQ(j["coeffs"]["4"], "4");
    EXPECT_EQ(j["coeffs"]["5"], "4");
    EXPECT_EQ(j["weight"], 2);
}

TEST(Cli, FieldInfoValidation)
{
    EXPECT_EQ(run({"field-info", "--d", "6"}).exit_code, 0);
    RunResult bad = run({"field-info", "--d", "12"});
    EXPECT_EQ(bad.exit_code, 2);
    EXPECT_NE(bad.err.find("--d"), std::string::npos);
    EXPECT_EQ(run({"field-info"}).exit_code, 2);
    EXPECT_EQ(run({"field-info", "--d", "5", "--bogus", "1"}).exit_code, 2);
    EXPECT_EQ(run({"nonsense"}).exit_code, 2);
    EXPECT_EQ(run({}).exit_code, 2);
}

TEST(Cli, UsageErrorsNameFlags)
{
    auto err_of = [](std::vector<std::string> a) {
        RunResult r = run(std::move(a));
        EXPECT_EQ(r.exit_code, 2) << r.out;
        return r.err;
    };
    EXPECT_NE(err_of({"sol-link", "--f", "1,1,0,1", "--a", "1,0", "--b", "0,1"}).find("--f"), std::string::npos);
    EXPECT_NE(err_of({"sol-link", "--f", "2,1,1,1", "--a", "1", "--b", "0,1"}).find("--a"), std::string::npos);
    EXPECT_NE(err_of({"w-eval", "--d", "5", "--tau", "0-1i"}).find("--tau"), std::string::npos);
    EXPECT_NE(err_of({"w-eval", "--d", "5", "--box", "0"}).find("--box"), std::string::npos);
    EXPECT_NE(err_of({"boundary", "--d", "5", "--n", "-1"}).find("--n"), std::string::npos);
    EXPECT_NE(err_of({"sol-link", "--f", "2,1,1,1", "--a", "1,0", "--b", "0,1", "--format", "csv"}).find("--format"), std::string::npos);
    EXPECT_NE(err_of({"combine", "--d", "5", "--interior", "/nonexistent/x.json", "--nmax", "3"}).find("--interior"), std::string::npos);
    EXPECT_NE(err_of({"sol-cap", "--f", "2,1,1,1", "--a", "1,0", "--s-b", "1"}).find("--s-b"), std::string::npos);
}

TEST(Cli, Boundary)
{
    RunResult r = run({"boundary", "--d", "5", "--n", "4"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["components"].size(), 1u);
    EXPECT_EQ(j["components"][0]["multiplicity"], "2");
    EXPECT_TRUE(nlohmann::json::parse(run({"boundary", "--d", "5", "--n", "2"}).out)["components"].empty());
}

TEST(Cli, SolCap)
{
    RunResult r = run({"sol-cap", "--f", "2,1,1,1", "--a", "1,0", "--offset", "1/3,1/2"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["area_period"], "0");
    EXPECT_EQ(j["boundary_exact"], true);
    for (auto& c : j["oracle"]) EXPECT_EQ(c["agree"], true);
}

TEST(Cli, LkTable)
{
    RunResult r = run({"lk-table", "--d", "5", "--nmax", "3"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["rows"][0][0], "2");
    EXPECT_EQ(j["rows"][1][0], "0");
}

TEST(Cli, WEvalAndRatio)
{
    RunResult w = run({"w-eval", "--d", "5", "--tau", "0+1i", "--k-range", "60", "--box", "40"});
    ASSERT_EQ(w.exit_code, 0) << w.err;
    auto j = nlohmann::json::parse(w.out);
    EXPECT_TRUE(j["holomorphic_sum"]["re"].is_number());
    EXPECT_GE(j["beta_sum"]["tail_estimate"].get<double>(), 0);
    RunResult csv = run({"w-eval", "--d", "5", "--format", "csv"});
    EXPECT_EQ(csv.out.substr(0, 22), "n,value,tail_estimate\n");

    RunResult r = run({"ratio-test", "--d", "13", "--nmax", "20", "--k-range", "80"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_LE(nlohmann::json::parse(r.out)["relative_spread"].get<double>(), 1e-8);
}

TEST(Cli, Combine)
{
    std::string path = ::testing::TempDir() + "interior_d5.json";
    {
        std::ofstream o(path);
        o << R"({"m": 1, "entries": {"1": "2", "2": "0", "3": "0", "4": "1/2"}, "provenance": "test data"})";
    }
    RunResult r = run({"combine", "--d", "5", "--interior", path, "--nmax", "4"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["coeffs"]["1"], "0");
    EXPECT_EQ(j["coeffs"]["4"], "-7/2");
    EXPECT_EQ(j["provenance"], "test data");
    RunResult missing = run({"combine", "--d", "5", "--interior", path, "--nmax", "6"});
    EXPECT_EQ(missing.exit_code, 2);
    EXPECT_NE(missing.err.find("(5,1)"), std::string::npos);
}

TEST(Cli, OutputFile)
{
    std::string path = ::testing::TempDir() + "qexp_out.json";
    RunResult r = run({"qexp", "--d", "5", "--nmax", "3", "--output", path});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    EXPECT_EQ(nlohmann::json::parse(in)["coeffs"]["1"], "2");
}

TEST(Cli, ThreadsEnv)
{
    ::setenv("SOLLINK_THREADS", "0", 1);
    EXPECT_EQ(run({"lk-table", "--d", "5", "--nmax", "3"}).exit_code, 2);
    ::setenv("SOLLINK_THREADS", "3", 1);
    std::string three = run({"lk-table", "--d", "13", "--nmax", "12"}).out;
    ::setenv("SOLLINK_THREADS", "1", 1);
    std::string one = run({"lk-table", "--d", "13", "--nmax", "12"}).out;
    ::unsetenv("SOLLINK_THREADS");
    EXPECT_EQ(three, one);
}

TEST(Cli, InProcessDeterminism)
{
    for (auto args : std::vector<std::vector<std::string>>{
             {"field-info", "--d", "17"},
             {"qexp", "--d", "13", "--nmax", "15"},
             {"w-eval", "--d", "5", "--tau", "0.3+0.7i"},
             {"ratio-test", "--d", "5", "--nmax", "20", "--format", "csv"},
         }) {
        EXPECT_EQ(run(args).out, run(args).out);
    }
}

TEST(Cli, BinaryExitCodes)
{
    int status = 0;
    std::string out = capture(std::string(SOLLINK_CLI_PATH) + " sol-link --f 2,1,1,1 --a 1,0 --b 0,1 2>/dev/null", &status);
    EXPECT_EQ(WEXITSTATUS(status), 0);
    EXPECT_EQ(out, "-1\n");
    capture(std::string(SOLLINK_CLI_PATH) + " field-info --d 12 2>/dev/null", &status);
    EXPECT_EQ(WEXITSTATUS(status), 2);
}

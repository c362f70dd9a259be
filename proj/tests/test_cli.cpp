#include "eqcurv/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace eqcurv;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "eqcurv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
    const auto path = fs::temp_directory_path() / ("eqcurv_test_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST(Cli, ComputeFamily) {
    const auto r = run({"compute", "--family", "cycle:6"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["curvature"]["K"], "2/3");
    EXPECT_EQ(j["curvature"]["status"], "exact_canonical");
    EXPECT_EQ(j["graph"]["source"], "family:cycle:6");
    EXPECT_TRUE(j["theorems"].empty());
}

TEST(Cli, ComputeEdgeList) {
    const auto path = temp_file("p3.txt", "0 1\n1 2\n");
    const auto r = run({"compute", "--edge-list", path.string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(json::parse(r.out)["curvature"]["w"], json::array({"3/2", "0", "3/2"}));
    fs::remove(path);
}

TEST(Cli, InconsistentExitCode) {
    const auto r = run({"compute", "--family", "complete_multipartite:1,1,1,4"});
    EXPECT_EQ(r.code, cli::kInconsistent);
    EXPECT_EQ(json::parse(r.out)["curvature"]["status"], "inconsistent");
}

TEST(Cli, Errors) {
    auto r = run({"compute", "--family", "petersen:10"});
    EXPECT_EQ(r.code, cli::kError);
    EXPECT_NE(r.err.find("error: unknown family"), std::string::npos);

    const auto bad = temp_file("loop.txt", "0 1\n2 2\n");
    r = run({"compute", "--edge-list", bad.string()});
    EXPECT_EQ(r.code, cli::kError);
    EXPECT_NE(r.err.find("line 2"), std::string::npos);
    fs::remove(bad);

    const auto split = temp_file("split.txt", "0 1\n2 3\n");
    r = run({"compute", "--edge-list", split.string()});
    EXPECT_EQ(r.code, cli::kError);
    EXPECT_NE(r.err.find("disconnected"), std::string::npos);
    fs::remove(split);

    EXPECT_EQ(run({"compute", "--edge-list", "/nonexistent/file"}).code, cli::kError);
    EXPECT_EQ(run({"compute"}).code, cli::kError);
    EXPECT_EQ(run({"compute", "--family", "cycle:5", "--edge-list", "x"}).code, cli::kError);
    EXPECT_EQ(run({}).code, cli::kError);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kError);
    EXPECT_EQ(run({"verify", "--family", "cycle:5", "--theorems", "nope"}).code, cli::kError);
    EXPECT_EQ(run({"corpus", "--n-range", "9"}).code, cli::kError);
}

TEST(Cli, HelpAndVersion) {
    auto r = run({"--help"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("compute"), std::string::npos);
    r = run({"compute", "--help"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("johnson:n,k"), std::string::npos);
    r = run({"--version"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("1.0.0"), std::string::npos);
}

TEST(Cli, VerifySelectedTheorems) {
    const auto r = run({"verify", "--family", "hypercube:3", "--theorems", "bonnet_myers,lichnerowicz", "--seed", "4"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto j = json::parse(r.out);
    ASSERT_EQ(j["theorems"].size(), 2U);
    EXPECT_EQ(j["theorems"][0]["theorem"], "bonnet_myers");
    EXPECT_EQ(j["theorems"][0]["verdict"], "pass");
    EXPECT_EQ(j["seed"], 4);
}

TEST(Cli, VerifyAllIsDeterministic) {
    const auto a = run({"verify", "--family", "erdos_renyi:15,0.3,2", "--seed", "9"});
    const auto b = run({"verify", "--family", "erdos_renyi:15,0.3,2", "--seed", "9"});
    EXPECT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Corpus) {
    const auto r = run({"corpus", "--count", "5", "--n-range", "5..8", "--seed", "3", "--json-lines", "--threads", "2"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    for (int i = 0; i < 5; ++i) {
        ASSERT_TRUE(std::getline(lines, line));
        EXPECT_EQ(json::parse(line)["schema_version"], "1");
    }
    std::string rest((std::istreambuf_iterator<char>(lines)), std::istreambuf_iterator<char>());
    const auto summary = json::parse(rest);
    EXPECT_EQ(summary["kind"], "corpus_summary");
    EXPECT_EQ(summary["count"], 5);
    EXPECT_EQ(summary["n_range"], json::array({5, 8}));
}

TEST(Cli, ExportDot) {
    const auto path = fs::temp_directory_path() / "eqcurv_test_out.dot";
    const auto r = run({"export-dot", "--family", "path:3", "--out", path.string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_NE(buf.str().find("0 -- 1;"), std::string::npos);
    fs::remove(path);

    const auto stdout_run = run({"export-dot", "--family", "cycle:4"});
    EXPECT_EQ(stdout_run.code, cli::kOk);
    EXPECT_EQ(stdout_run.out.rfind("graph ", 0), 0U);
}

TEST(Cli, ParseRange) {
    EXPECT_EQ(cli::parse_range("5..40"), (std::pair<std::size_t, std::size_t>{5, 40}));
    EXPECT_THROW(cli::parse_range("5-40"), std::invalid_argument);
    EXPECT_THROW(cli::parse_range("a..3"), std::invalid_argument);
}

TEST(Cli, KnightBoardIsInconsistent) {
    const auto r = run({"compute", "--family", "knight:7,7"});
    EXPECT_EQ(r.code, cli::kInconsistent);
    const auto c = json::parse(r.out)["curvature"];
    EXPECT_EQ(c["status"], "inconsistent");
    EXPECT_NEAR(c["residual_range"][0].get<double>(), 46.42, 0.01);
    EXPECT_NEAR(c["residual_range"][1].get<double>(), 52.22, 0.01);
}

TEST(Cli, VerifyExamples) {
    auto r = run({"verify", "--family", "hypercube:4", "--theorems", "all"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto j = json::parse(r.out);
    bool equality_noted = false;
    for (const auto& t : j["theorems"]) {
        EXPECT_NE(t["verdict"], "fail") << t["theorem"];
        if (t["theorem"] == "bonnet_myers")
            for (const auto& n : t["notes"]) equality_noted |= n.get<std::string>().find("equality") != std::string::npos;
    }
    EXPECT_TRUE(equality_noted);

    r = run({"verify", "--family", "complete:5", "--theorems", "reverse_bm"});
    ASSERT_EQ(r.code, cli::kOk);
    j = json::parse(r.out);
    EXPECT_EQ(j["theorems"][0]["verdict"], "pass");
    EXPECT_NE(j["theorems"][0]["notes"].dump().find("complete graph"), std::string::npos);

    r = run({"verify", "--family", "path:4", "--theorems", "lichnerowicz"});
    ASSERT_EQ(r.code, cli::kOk);
    j = json::parse(r.out);
    EXPECT_EQ(j["theorems"][0]["verdict"], "not_applicable");
    EXPECT_EQ(j["theorems"][0]["hypothesis_satisfied"], false);
}

TEST(Cli, CorpusWithCertainEdgesIsComplete) {
    const auto r = run({"corpus", "--count", "1", "--n-range", "5..5", "--p", "1.0", "--json-lines"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto first = json::parse(r.out.substr(0, r.out.find('\n')));
    EXPECT_EQ(first["graph"]["n"], 5);
    EXPECT_EQ(first["graph"]["edges"], 10);
    EXPECT_EQ(first["curvature"]["K"], "5/4");
}

TEST(Cli, CorpusIsByteIdenticalAcrossRuns) {
    const std::vector<std::string> args = {"corpus", "--count", "12", "--n-range", "5..15", "--seed", "21", "--json-lines"};
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, cli::kOk);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, DotColoring) {
    auto r = run({"export-dot", "--family", "path:5"});
    ASSERT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("0 [label=\"0\\n5/4\", tooltip=\"w = 5/4\", fillcolor=\"#ff0000\"]"), std::string::npos);
    EXPECT_NE(r.out.find("4 [label=\"4\\n5/4\", tooltip=\"w = 5/4\", fillcolor=\"#ff0000\"]"), std::string::npos);
    for (const char* v : {"1", "2", "3"})
        EXPECT_NE(r.out.find(std::string(v) + " [label=\"" + v + "\\n0\", tooltip=\"w = 0\", fillcolor=\"#ffffff\"]"),
                  std::string::npos);

    r = run({"export-dot", "--family", "cycle:8"});
    ASSERT_EQ(r.code, cli::kOk);
    std::size_t reds = 0;
    for (auto pos = r.out.find("fillcolor=\"#ff0000\""); pos != std::string::npos; pos = r.out.find("fillcolor=\"#ff0000\"", pos + 1))
        ++reds;
    EXPECT_EQ(reds, 8U);

    // The knight board's pseudo solution has negative entries, drawn in blue.
    r = run({"export-dot", "--family", "knight:7,7"});
    ASSERT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("fillcolor=\"#0000ff\""), std::string::npos);
}

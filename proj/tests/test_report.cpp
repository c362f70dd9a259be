#include "eqcurv/corpus.hpp"
#include "eqcurv/report.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace eqcurv;
using oracle::frac;

namespace {

AnalysisReport full_report(const FamilySpec& spec, std::uint64_t seed = 3) {
    AnalysisOptions opts;
    opts.theorems = all_theorem_ids();
    opts.seed = seed;
    opts.invariance_samples = 200;
    return analyze(generate(spec), to_string(spec), opts);
}

}  // namespace

TEST(Json, RationalsAreStrings) {
    const json j = frac(-7, 3);
    EXPECT_EQ(j, "-7/3");
    EXPECT_EQ(j.get<Rational>(), frac(-7, 3));
    EXPECT_EQ(json(Rational(4)).get<std::string>(), "4");
    EXPECT_THROW(json("1/0").get<Rational>(), std::invalid_argument);
    EXPECT_THROW(json("x").get<Rational>(), std::invalid_argument);
}

TEST(Json, CurvatureFields) {
    const auto rep = full_report(FamilySpec::path(3));
    const json j = rep;
    EXPECT_EQ(j["schema_version"], "1");
    EXPECT_EQ(j["graph"]["n"], 3);
    EXPECT_EQ(j["graph"]["avdiam"], "8/9");
    const auto& c = j["curvature"];
    EXPECT_EQ(c["status"], "exact_unique");
    EXPECT_EQ(c["w"], json::array({"3/2", "0", "3/2"}));
    EXPECT_EQ(c["K"], "0");
    EXPECT_EQ(c["K_label"], "exact");
    EXPECT_EQ(c["total"], "3");
    EXPECT_EQ(c["negatively_curved"], false);

    const json inc = full_report(FamilySpec::complete_multipartite({1, 1, 1, 4}));
    EXPECT_EQ(inc["curvature"]["status"], "inconsistent");
    EXPECT_TRUE(inc["curvature"]["w"].is_null());
    EXPECT_EQ(inc["curvature"]["K_label"], "pseudo");
    EXPECT_EQ(inc["curvature"]["residual_range"].size(), 2U);
}

TEST(Json, RoundTripThroughText) {
    for (const auto& spec : {FamilySpec::path(4), FamilySpec::cycle(6), FamilySpec::hypercube(3),
                             FamilySpec::complete_multipartite({1, 1, 1, 4}), FamilySpec::erdos_renyi(12, 0.3, 5)}) {
        const auto rep = full_report(spec);
        const auto text = json(rep).dump();
        const auto back = json::parse(text).get<AnalysisReport>();
        EXPECT_EQ(back, rep) << to_string(spec);
        EXPECT_EQ(json(back).dump(), text);
    }
}

TEST(Json, MissingFieldsAreRejected) {
    json j = full_report(FamilySpec::cycle(5));
    j["curvature"].erase("status");
    EXPECT_THROW(j.get<AnalysisReport>(), json::exception);
}

TEST(Json, CorpusSummaryShape) {
    CorpusOptions opts;
    opts.count = 6;
    opts.n_min = 5;
    opts.n_max = 9;
    opts.seed = 11;
    opts.threads = 2;
    const auto entries = run_corpus(opts);
    ASSERT_EQ(entries.size(), 6U);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        EXPECT_EQ(entries[i].index, i);
        EXPECT_EQ(to_string(entries[i].spec), to_string(corpus_spec(opts, i)));
    }
    const auto s = summarize(entries);
    const auto j = summary_json(s, opts);
    EXPECT_EQ(j["count"], 6);
    EXPECT_EQ(j["failure_count"], 0);
    EXPECT_TRUE(j["c_G"].contains("fraction_above_0.95"));
    std::size_t statuses = 0;
    for (const auto& [k, v] : j["statuses"].items()) statuses += v.get<std::size_t>();
    EXPECT_EQ(statuses, 6U);
}

TEST(Corpus, ResultsDoNotDependOnThreadCount) {
    CorpusOptions opts;
    opts.count = 8;
    opts.n_min = 5;
    opts.n_max = 12;
    opts.seed = 99;
    opts.threads = 1;
    const auto serial = run_corpus(opts);
    opts.threads = 4;
    const auto parallel = run_corpus(opts);
    for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(serial[i].report, parallel[i].report);
}

TEST(Corpus, RejectsBadOptions) {
    CorpusOptions opts;
    opts.n_min = 10;
    opts.n_max = 5;
    EXPECT_THROW(run_corpus(opts), SpecError);
    opts = {};
    opts.p = 1.5;
    EXPECT_THROW(run_corpus(opts), SpecError);
}

TEST(Dot, Colors) {
    EXPECT_EQ(curvature_color(0.0, 1.0), "#ffffff");
    EXPECT_EQ(curvature_color(1.0, 1.0), "#ff0000");
    EXPECT_EQ(curvature_color(-1.0, 1.0), "#0000ff");
    EXPECT_EQ(curvature_color(5.0, 1.0), "#ff0000");
    EXPECT_EQ(curvature_color(0.5, 1.0), "#ff8080");
    EXPECT_EQ(curvature_color(3.0, 0.0), "#ffffff");
}

TEST(Dot, ContainsLabelsAndEdges) {
    const auto g = generate(FamilySpec::path(3));
    const auto text = to_dot(g, compute_curvature(g), "P3");
    EXPECT_NE(text.find("graph \"P3\" {"), std::string::npos);
    EXPECT_NE(text.find("0 [label=\"0\\n3/2\""), std::string::npos);
    EXPECT_NE(text.find("1 [label=\"1\\n0\""), std::string::npos);
    EXPECT_NE(text.find("fillcolor=\"#ffffff\""), std::string::npos);
    EXPECT_NE(text.find("fillcolor=\"#ff0000\""), std::string::npos);
    EXPECT_NE(text.find("0 -- 1;"), std::string::npos);
    EXPECT_NE(text.find("1 -- 2;"), std::string::npos);

    const auto j = generate(FamilySpec::johnson(4, 2));
    EXPECT_NE(to_dot(j, compute_curvature(j)).find("{1,2}\\n1"), std::string::npos);
}

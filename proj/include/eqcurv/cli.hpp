#pragma once

#include "eqcurv/corpus.hpp"
#include "eqcurv/curvature.hpp"
#include "eqcurv/graph.hpp"
#include "eqcurv/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace eqcurv::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kError = 1,
    kInconsistent = 2,      // compute: no exact solution, pseudo report printed
    kTheoremFailure = 3,    // verify / corpus: a verifier with satisfied hypothesis failed
};

struct GraphSource {
    std::string edge_list;
    std::string family;
};

inline std::pair<Graph, std::string> load_graph(const GraphSource& src) {
    if (!src.edge_list.empty() && !src.family.empty())
        throw std::invalid_argument("give either --edge-list or --family, not both");
    if (!src.family.empty()) return {generate(parse_family_spec(src.family)), "family:" + src.family};
    if (src.edge_list.empty()) throw std::invalid_argument("a graph source is required: --edge-list <path> or --family <spec>");
    std::ifstream in(src.edge_list);
    if (!in) throw std::runtime_error("cannot read edge list '" + src.edge_list + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return {parse_edge_list(buf.str()), "edge-list:" + src.edge_list};
}

inline constexpr const char* kFamilyHelp =
    "Graph family as name:arg1,arg2,... e.g. cycle:6, johnson:4,2, hypercube:4, "
    "complete_multipartite:1,1,1,4, knight_board:7,7, erdos_renyi:20,0.3,7. Families: "
    "complete:n, cycle:n, path:n, hypercube:n, cocktail_party:n, johnson:n,k, demicube:n, "
    "complete_multipartite:a,b,..., knight_board:rows,cols, erdos_renyi:n,p,seed";

inline std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("range must look like a..b, got '" + text + "'");
    auto lo = detail::parse_uint(text.substr(0, dots));
    auto hi = detail::parse_uint(text.substr(dots + 2));
    if (!lo || !hi) throw std::invalid_argument("range bounds must be non-negative integers: '" + text + "'");
    return {static_cast<std::size_t>(*lo), static_cast<std::size_t>(*hi)};
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equilibrium-measure curvature of finite graphs", "eqcurv"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    GraphSource source;
    std::uint64_t seed = 0;
    std::string theorems = "all";
    std::string out_path;
    std::size_t count = 500;
    std::string n_range = "5..40";
    std::optional<double> p;
    bool json_lines = false;
    unsigned threads = 0;

    auto add_source = [&](CLI::App* sub) {
        auto* el = sub->add_option("--edge-list", source.edge_list, "Edge list file: one 'u v' pair per line, 0-indexed");
        auto* fam = sub->add_option("--family", source.family, kFamilyHelp);
        el->excludes(fam);
    };

    auto* compute = app.add_subcommand("compute", "Compute curvature and print a JSON report");
    add_source(compute);
    compute->add_option("--seed", seed, "Seed recorded in the report");

    auto* verify = app.add_subcommand("verify", "Run theorem verifiers and print a JSON report");
    add_source(verify);
    verify->add_option("--theorems", theorems, "Comma-separated verifier ids or 'all'")->capture_default_str();
    verify->add_option("--seed", seed, "Seed for the random measure battery and samplers");

    auto* corpus = app.add_subcommand("corpus", "Verify all theorems on seeded random connected graphs");
    corpus->add_option("--count", count, "Number of graphs")->capture_default_str();
    corpus->add_option("--n-range", n_range, "Vertex-count range a..b")->capture_default_str();
    corpus->add_option("--p", p, "Edge probability (default: drawn per graph)");
    corpus->add_option("--seed", seed, "Corpus seed");
    corpus->add_flag("--json-lines", json_lines, "Print one JSON report per graph before the summary");
    corpus->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* dot = app.add_subcommand("export-dot", "Write a curvature-colored DOT file");
    add_source(dot);
    dot->add_option("--out", out_path, "Output path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kError;
    }

    try {
        if (compute->parsed()) {
            auto [g, src] = load_graph(source);
            AnalysisOptions opts;
            opts.seed = seed;
            const auto rep = analyze(g, src, opts);
            out << json(rep).dump(2) << '\n';
            return rep.curvature.is_exact() ? kOk : kInconsistent;
        }
        if (verify->parsed()) {
            auto [g, src] = load_graph(source);
            AnalysisOptions opts;
            opts.seed = seed;
            opts.theorems = parse_theorem_list(theorems);
            const auto rep = analyze(g, src, opts);
            out << json(rep).dump(2) << '\n';
            return rep.any_failure() ? kTheoremFailure : kOk;
        }
        if (corpus->parsed()) {
            CorpusOptions opts;
            opts.count = count;
            std::tie(opts.n_min, opts.n_max) = parse_range(n_range);
            opts.p = p;
            opts.seed = seed;
            opts.threads = threads;
            const auto entries = run_corpus(opts);
            if (json_lines)
                for (const auto& e : entries) out << json(e.report).dump() << '\n';
            const auto summary = summarize(entries);
            out << summary_json(summary, opts).dump(2) << '\n';
            return summary.failure_count() == 0 ? kOk : kTheoremFailure;
        }
        if (dot->parsed()) {
            auto [g, src] = load_graph(source);
            const auto r = compute_curvature(g);
            const auto text = to_dot(g, r, src);
            if (out_path.empty()) {
                out << text;
            } else {
                std::ofstream f(out_path);
                if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
                f << text;
            }
            return kOk;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}

}  // namespace eqcurv::cli

#pragma once

#include "eqcurv/curvature.hpp"
#include "eqcurv/graph.hpp"
#include "eqcurv/rational.hpp"
#include "eqcurv/theorems.hpp"

#include <json.hpp>  // nlohmann/json, vendored

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

// Rationals travel through JSON as "p/q" strings.
template <>
struct nlohmann::adl_serializer<mpq_class> {
    static void to_json(json& j, const mpq_class& q) { j = q.get_str(); }
    static void from_json(const json& j, mpq_class& q) { q = eqcurv::parse_rational(j.get<std::string>()); }
};

namespace eqcurv {

using nlohmann::json;

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kSchemaVersion = "1";

struct GraphMeta {
    std::string source;
    std::size_t n = 0;
    std::size_t edges = 0;
    std::uint32_t diameter = 0;
    Rational avdiam;

    bool operator==(const GraphMeta&) const = default;
};

struct AnalysisReport {
    std::string schema_version{kSchemaVersion};
    std::string tool_version{kToolVersion};
    std::uint64_t seed = 0;
    GraphMeta graph;
    CurvatureResult curvature;
    SpectralInfo spectral;
    std::vector<TheoremReport> theorems;

    bool any_failure() const {
        return std::any_of(theorems.begin(), theorems.end(), [](const auto& t) { return t.failed(); });
    }

    bool operator==(const AnalysisReport&) const = default;
};

// ---------------------------------------------------------------------------
// JSON

inline void to_json(json& j, const GraphMeta& g) {
    j = json{{"source", g.source},   {"n", g.n},           {"edges", g.edges},
             {"diameter", g.diameter}, {"avdiam", g.avdiam}, {"avdiam_value", g.avdiam.get_d()}};
}

inline void from_json(const json& j, GraphMeta& g) {
    j.at("source").get_to(g.source);
    j.at("n").get_to(g.n);
    j.at("edges").get_to(g.edges);
    j.at("diameter").get_to(g.diameter);
    j.at("avdiam").get_to(g.avdiam);
}

inline void to_json(json& j, const CurvatureResult& r) {
    const bool exact = r.is_exact();
    j = json{
        {"status", status_name(r.status)},
        {"w", exact ? json(r.w_exact) : json(nullptr)},
        {"w_values", r.w},
        {"K", exact ? json(r.K_exact) : json(nullptr)},
        {"K_value", r.K},
        {"K_label", exact ? "exact" : "pseudo"},
        {"total", exact ? json(r.total_exact) : json(nullptr)},
        {"total_value", r.total},
        {"residual_range", {r.residual_min, r.residual_max}},
        {"nullspace_dimension", r.nullspace_dimension},
        {"nullspace", r.nullspace},
        {"lp_unbounded", r.lp_unbounded},
        {"unbounded_direction", r.unbounded_direction},
        {"negatively_curved", r.negatively_curved()},
    };
}

inline void from_json(const json& j, CurvatureResult& r) {
    r = CurvatureResult{};
    r.status = parse_status(j.at("status").get<std::string>());
    if (r.is_exact()) {
        j.at("w").get_to(r.w_exact);
        j.at("K").get_to(r.K_exact);
        j.at("total").get_to(r.total_exact);
    }
    j.at("w_values").get_to(r.w);
    j.at("K_value").get_to(r.K);
    j.at("total_value").get_to(r.total);
    const auto& range = j.at("residual_range");
    range.at(0).get_to(r.residual_min);
    range.at(1).get_to(r.residual_max);
    j.at("nullspace_dimension").get_to(r.nullspace_dimension);
    j.at("nullspace").get_to(r.nullspace);
    j.at("lp_unbounded").get_to(r.lp_unbounded);
    j.at("unbounded_direction").get_to(r.unbounded_direction);
}

inline void to_json(json& j, const SpectralInfo& s) {
    j = json{{"lambda1", s.lambda1},
             {"laplacian_spectrum", s.laplacian_spectrum},
             {"distance_spectrum", s.distance_spectrum},
             {"perron_vector", s.perron_vector},
             {"c_G", s.c_G}};
}

inline void from_json(const json& j, SpectralInfo& s) {
    j.at("lambda1").get_to(s.lambda1);
    j.at("laplacian_spectrum").get_to(s.laplacian_spectrum);
    j.at("distance_spectrum").get_to(s.distance_spectrum);
    j.at("perron_vector").get_to(s.perron_vector);
    j.at("c_G").get_to(s.c_G);
}

inline void to_json(json& j, const Comparison& c) {
    j = json{{"label", c.label},         {"lhs", c.lhs},          {"relation", c.relation}, {"rhs", c.rhs},
             {"lhs_value", c.lhs_value}, {"rhs_value", c.rhs_value}, {"holds", c.holds}};
}

inline void from_json(const json& j, Comparison& c) {
    j.at("label").get_to(c.label);
    j.at("lhs").get_to(c.lhs);
    j.at("relation").get_to(c.relation);
    j.at("rhs").get_to(c.rhs);
    j.at("lhs_value").get_to(c.lhs_value);
    j.at("rhs_value").get_to(c.rhs_value);
    j.at("holds").get_to(c.holds);
}

inline void to_json(json& j, const TheoremReport& t) {
    j = json{{"theorem", t.theorem},
             {"hypothesis_satisfied", t.hypothesis_satisfied},
             {"verdict", verdict_name(t.verdict)},
             {"pass", t.pass()},
             {"comparisons", t.comparisons},
             {"notes", t.notes},
             {"seed", t.seed ? json(*t.seed) : json(nullptr)}};
}

inline void from_json(const json& j, TheoremReport& t) {
    j.at("theorem").get_to(t.theorem);
    j.at("hypothesis_satisfied").get_to(t.hypothesis_satisfied);
    t.verdict = parse_verdict(j.at("verdict").get<std::string>());
    j.at("comparisons").get_to(t.comparisons);
    j.at("notes").get_to(t.notes);
    const auto& seed = j.at("seed");
    t.seed = seed.is_null() ? std::nullopt : std::optional<std::uint64_t>(seed.get<std::uint64_t>());
}

inline void to_json(json& j, const AnalysisReport& r) {
    j = json{{"schema_version", r.schema_version},
             {"tool_version", r.tool_version},
             {"seed", r.seed},
             {"graph", r.graph},
             {"curvature", r.curvature},
             {"spectral", r.spectral},
             {"theorems", r.theorems}};
}

inline void from_json(const json& j, AnalysisReport& r) {
    j.at("schema_version").get_to(r.schema_version);
    if (r.schema_version != kSchemaVersion)
        throw std::invalid_argument("unsupported report schema_version '" + r.schema_version + "'");
    j.at("tool_version").get_to(r.tool_version);
    j.at("seed").get_to(r.seed);
    j.at("graph").get_to(r.graph);
    j.at("curvature").get_to(r.curvature);
    j.at("spectral").get_to(r.spectral);
    j.at("theorems").get_to(r.theorems);
}

// ---------------------------------------------------------------------------
// Analysis driver

inline const std::vector<std::string>& all_theorem_ids() {
    static const std::vector<std::string> ids = {
        std::string(theorem_id::bonnet_myers),     std::string(theorem_id::reverse_bonnet_myers),
        std::string(theorem_id::lichnerowicz),     std::string(theorem_id::minimax),
        std::string(theorem_id::weighted_bounds),         std::string(theorem_id::spectral_criterion),
        std::string(theorem_id::perron_alignment), std::string(theorem_id::invariance),
        std::string(theorem_id::nullspace_sum),
    };
    return ids;
}

/// Parses "all" or a comma-separated list of theorem ids.
inline std::vector<std::string> parse_theorem_list(std::string_view text) {
    if (text == "all") return all_theorem_ids();
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string id(detail::trim(text.substr(pos, comma - pos)));
        pos = comma + 1;
        if (id.empty()) continue;
        const auto& known = all_theorem_ids();
        if (std::find(known.begin(), known.end(), id) == known.end()) {
            std::string catalog;
            for (const auto& k : known) catalog += (catalog.empty() ? "" : ", ") + k;
            throw std::invalid_argument("unknown theorem '" + id + "'; known: all, " + catalog);
        }
        out.push_back(std::move(id));
    }
    return out;
}

struct AnalysisOptions {
    std::vector<std::string> theorems;  // empty: curvature and spectrum only
    std::uint64_t seed = 0;
    std::size_t invariance_samples = kInvarianceSamples;
};

inline std::vector<TheoremReport> run_weighted_bounds(const DistanceMatrix& d, const CurvatureResult& r,
                                               const SpectralInfo& spec) {
    std::vector<TheoremReport> out;
    auto ones = check_weighted_bounds(d, std::vector<double>(d.order(), 1.0), spec);
    ones.notes.push_back("w = all-ones");
    out.push_back(std::move(ones));
    const bool positive = std::all_of(r.w.begin(), r.w.end(), [](double x) { return x > 0.0; });
    if (positive) {
        auto own = check_weighted_bounds(d, r.w, spec);
        own.notes.push_back(r.is_exact() ? "w = curvature vector" : "w = pseudo-inverse curvature vector");
        out.push_back(std::move(own));
    } else {
        out.push_back(detail::unmet(theorem_id::weighted_bounds, "curvature vector has nonpositive entries"));
    }
    return out;
}

inline AnalysisReport analyze(const Graph& g, std::string source, const AnalysisOptions& opts = {}) {
    AnalysisReport rep;
    rep.seed = opts.seed;
    const auto d = apsp(g);
    rep.graph = GraphMeta{std::move(source), g.order(), g.edge_count(), diameter(d), average_distance(d)};
    rep.curvature = compute_curvature(d);
    rep.spectral = spectral_gap(g, d);
    const auto& r = rep.curvature;

    for (const auto& id : opts.theorems) {
        if (id == theorem_id::bonnet_myers) {
            rep.theorems.push_back(check_bonnet_myers(d, r));
        } else if (id == theorem_id::reverse_bonnet_myers) {
            rep.theorems.push_back(check_reverse_bonnet_myers(d, r));
        } else if (id == theorem_id::lichnerowicz) {
            rep.theorems.push_back(check_lichnerowicz(d, r, rep.spectral));
        } else if (id == theorem_id::minimax) {
            rep.theorems.push_back(check_minimax(d, r, opts.seed));
        } else if (id == theorem_id::weighted_bounds) {
            for (auto& t : run_weighted_bounds(d, r, rep.spectral)) rep.theorems.push_back(std::move(t));
        } else if (id == theorem_id::spectral_criterion) {
            rep.theorems.push_back(spectral_criterion(rep.spectral, r.is_exact()));
        } else if (id == theorem_id::perron_alignment) {
            rep.theorems.push_back(perron_alignment(rep.spectral));
        } else if (id == theorem_id::invariance) {
            rep.theorems.push_back(check_invariance(r, opts.seed, opts.invariance_samples));
        } else if (id == theorem_id::nullspace_sum) {
            rep.theorems.push_back(check_nullspace_sum(d, r));
        } else {
            throw std::invalid_argument("unknown theorem '" + id + "'");
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// DOT export

/// Diverging red/white/blue fill anchored at zero: positive values shade towards
/// red, negative towards blue, |value| = scale is fully saturated.
inline std::string curvature_color(double value, double scale) {
    double t = scale > 0.0 ? value / scale : 0.0;
    t = std::clamp(t, -1.0, 1.0);
    const auto fade = [](double x) { return static_cast<int>(std::lround(255.0 * (1.0 - x))); };
    int r = 255, g = 255, b = 255;
    if (t > 0.0) {
        g = b = fade(t);
    } else if (t < 0.0) {
        r = g = fade(-t);
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

namespace detail {

inline std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace detail

inline std::string to_dot(const Graph& g, const CurvatureResult& r, std::string_view name = "G") {
    double scale = 0.0;
    for (double x : r.w) scale = std::max(scale, std::abs(x));
    std::string out = "graph \"" + detail::dot_escape(name) + "\" {\n";
    out += "  node [style=filled, shape=circle, fontname=\"Helvetica\"];\n";
    for (Vertex v = 0; v < g.order(); ++v) {
        const std::string value = r.is_exact() ? to_string(r.w_exact[v]) : detail::fmt(r.w[v]);
        const std::string display = g.labels().empty() ? std::to_string(v) : g.labels()[v];
        out += "  " + std::to_string(v) + " [label=\"" + detail::dot_escape(display) + "\\n" + value +
               "\", tooltip=\"w = " + value + "\", fillcolor=\"" + curvature_color(r.w[v], scale) + "\"];\n";
    }
    for (const auto& [u, v] : g.edges()) out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace eqcurv

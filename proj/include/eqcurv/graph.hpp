#pragma once

#include "eqcurv/random.hpp"
#include "eqcurv/rational.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eqcurv {

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
public:
    ParseError(std::size_t line, const std::string& what)
        : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Edges are stored normalized (u < v), sorted and deduplicated; self-loops and
/// out-of-range endpoints are rejected at construction.
class Graph {
public:
    explicit Graph(std::size_t n, std::vector<Edge> edges = {}, std::vector<std::string> labels = {})
        : n_(n), adjacency_(n) {
        if (n == 0) throw GraphError("graph must have at least one vertex");
        if (!labels.empty() && labels.size() != n) throw GraphError("label count does not match vertex count");
        for (auto& [u, v] : edges) {
            if (u >= n || v >= n) {
                throw GraphError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range for n=" +
                                 std::to_string(n));
            }
            if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (const auto& [u, v] : edges) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
        edges_ = std::move(edges);
        labels_ = std::move(labels);
    }

    std::size_t order() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
    bool adjacent(Vertex u, Vertex v) const {
        const auto& nb = adjacency_.at(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::string> labels_;
};

/// All-pairs hop distances of a connected graph.
class DistanceMatrix {
public:
    DistanceMatrix(std::size_t n, std::vector<std::uint32_t> entries) : n_(n), d_(std::move(entries)) {
        if (d_.size() != n * n) throw std::invalid_argument("distance matrix entry count mismatch");
    }

    std::size_t order() const noexcept { return n_; }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    std::span<const std::uint32_t> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }
    std::uint64_t row_sum(std::size_t i) const {
        std::uint64_t s = 0;
        for (auto x : row(i)) s += x;
        return s;
    }

private:
    std::size_t n_;
    std::vector<std::uint32_t> d_;
};

// ---------------------------------------------------------------------------
// Ingestion

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::optional<std::uint64_t> parse_uint(std::string_view s) {
    std::uint64_t value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace detail

/// Parses "u v" lines (0-indexed). Blank lines and '#' comments are ignored;
/// n is one more than the largest index seen.
inline Graph parse_edge_list(std::string_view text) {
    std::vector<Edge> edges;
    std::size_t max_vertex = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        std::istringstream fields{std::string(line)};
        std::string a, b, extra;
        if (!(fields >> a >> b) || (fields >> extra)) throw ParseError(line_no, "expected two vertex indices");
        auto u = detail::parse_uint(a);
        auto v = detail::parse_uint(b);
        if (!u || !v) throw ParseError(line_no, "vertex indices must be non-negative integers");
        if (*u == *v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(*u));
        max_vertex = std::max<std::size_t>({max_vertex, *u, *v});
        edges.emplace_back(*u, *v);
    }
    if (edges.empty()) throw GraphError("edge list contains no edges");
    return Graph(max_vertex + 1, std::move(edges));
}

inline std::string to_edge_list(const Graph& g) {
    std::string out;
    for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Families

enum class Family {
    complete,
    cycle,
    path,
    hypercube,
    cocktail_party,
    johnson,
    demicube,
    complete_multipartite,
    knight_board,
    erdos_renyi,
};

struct FamilySpec {
    Family family{Family::complete};
    /// n; or n,k; or part sizes; or rows,cols; or n (erdos_renyi keeps p and seed separately).
    std::vector<std::size_t> params;
    double p{0.0};
    std::uint64_t seed{0};

    static FamilySpec complete(std::size_t n) { return {Family::complete, {n}}; }
    static FamilySpec cycle(std::size_t n) { return {Family::cycle, {n}}; }
    static FamilySpec path(std::size_t n) { return {Family::path, {n}}; }
    static FamilySpec hypercube(std::size_t n) { return {Family::hypercube, {n}}; }
    static FamilySpec cocktail_party(std::size_t n) { return {Family::cocktail_party, {n}}; }
    static FamilySpec johnson(std::size_t n, std::size_t k) { return {Family::johnson, {n, k}}; }
    static FamilySpec demicube(std::size_t n) { return {Family::demicube, {n}}; }
    static FamilySpec complete_multipartite(std::vector<std::size_t> parts) {
        return {Family::complete_multipartite, std::move(parts)};
    }
    static FamilySpec knight_board(std::size_t rows, std::size_t cols) { return {Family::knight_board, {rows, cols}}; }
    static FamilySpec erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
        return {Family::erdos_renyi, {n}, p, seed};
    }
};

inline constexpr std::pair<std::string_view, Family> kFamilyNames[] = {
    {"complete", Family::complete},
    {"cycle", Family::cycle},
    {"path", Family::path},
    {"hypercube", Family::hypercube},
    {"cocktail_party", Family::cocktail_party},
    {"johnson", Family::johnson},
    {"demicube", Family::demicube},
    {"complete_multipartite", Family::complete_multipartite},
    {"knight_board", Family::knight_board},
    {"erdos_renyi", Family::erdos_renyi},
};

inline constexpr std::pair<std::string_view, Family> kFamilyAliases[] = {
    {"cocktail", Family::cocktail_party},
    {"multipartite", Family::complete_multipartite},
    {"knight", Family::knight_board},
    {"er", Family::erdos_renyi},
};

inline std::string_view family_name(Family f) {
    for (const auto& [name, fam] : kFamilyNames)
        if (fam == f) return name;
    return "unknown";
}

inline std::string family_catalog() {
    std::string out;
    for (const auto& [name, fam] : kFamilyNames) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

/// "name:arg1,arg2,...", e.g. "johnson:4,2", "complete_multipartite:1,1,1,4", "erdos_renyi:20,0.3,7".
inline FamilySpec parse_family_spec(std::string_view text) {
    const auto colon = text.find(':');
    const auto name = detail::trim(text.substr(0, colon));
    std::optional<Family> family;
    for (const auto& [n, f] : kFamilyNames)
        if (n == name) family = f;
    for (const auto& [n, f] : kFamilyAliases)
        if (n == name) family = f;
    if (!family) throw SpecError("unknown family '" + std::string(name) + "'; known families: " + family_catalog());

    std::vector<std::string> args;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string_view::npos) comma = rest.size();
            args.emplace_back(detail::trim(rest.substr(pos, comma - pos)));
            pos = comma + 1;
        }
    }
    auto as_uint = [&](const std::string& s) {
        auto v = detail::parse_uint(s);
        if (!v) throw SpecError("bad integer argument '" + s + "' in family spec '" + std::string(text) + "'");
        return static_cast<std::size_t>(*v);
    };

    FamilySpec spec;
    spec.family = *family;
    if (*family == Family::erdos_renyi) {
        if (args.size() != 3) throw SpecError("erdos_renyi expects n,p,seed");
        spec.params = {as_uint(args[0])};
        try {
            std::size_t used = 0;
            spec.p = std::stod(args[1], &used);
            if (used != args[1].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw SpecError("bad probability '" + args[1] + "'");
        }
        spec.seed = as_uint(args[2]);
        return spec;
    }
    for (const auto& a : args) spec.params.push_back(as_uint(a));
    return spec;
}

inline std::string to_string(const FamilySpec& spec) {
    std::string out(family_name(spec.family));
    out += ':';
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(spec.params[i]);
    }
    if (spec.family == Family::erdos_renyi) {
        std::ostringstream tail;
        tail.precision(17);
        tail << ',' << spec.p << ',' << spec.seed;
        out += tail.str();
    }
    return out;
}

inline void validate(const FamilySpec& spec) {
    const auto& p = spec.params;
    auto need = [&](std::size_t count) {
        if (p.size() != count) {
            throw SpecError(std::string(family_name(spec.family)) + " expects " + std::to_string(count) +
                            " parameter(s), got " + std::to_string(p.size()));
        }
    };
    auto at_least = [&](std::size_t value, std::size_t lo, const char* what) {
        if (value < lo) {
            throw SpecError(std::string(family_name(spec.family)) + ": " + what + " must be >= " + std::to_string(lo));
        }
    };
    switch (spec.family) {
        case Family::complete:
        case Family::path: need(1); at_least(p[0], 1, "n"); break;
        case Family::cycle: need(1); at_least(p[0], 3, "n"); break;
        case Family::hypercube:
            need(1);
            at_least(p[0], 1, "n");
            if (p[0] > 20) throw SpecError("hypercube: n must be <= 20");
            break;
        case Family::cocktail_party: need(1); at_least(p[0], 2, "n"); break;
        case Family::demicube:
            need(1);
            at_least(p[0], 2, "n");
            if (p[0] > 21) throw SpecError("demicube: n must be <= 21");
            break;
        case Family::johnson:
            need(2);
            if (p[1] < 1 || p[1] + 1 > p[0]) throw SpecError("johnson: requires 1 <= k <= n-1");
            if (p[0] > 30) throw SpecError("johnson: n must be <= 30");
            break;
        case Family::complete_multipartite:
            if (p.empty()) throw SpecError("complete_multipartite expects at least one part size");
            for (auto s : p) at_least(s, 1, "part size");
            break;
        case Family::knight_board:
            need(2);
            at_least(p[0], 1, "rows");
            at_least(p[1], 1, "cols");
            break;
        case Family::erdos_renyi:
            need(1);
            at_least(p[0], 1, "n");
            if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw SpecError("erdos_renyi: p must lie in [0,1]");
            break;
    }
}

// ---------------------------------------------------------------------------
// Traversal

/// Hop distances from `source`; unreachable vertices stay at -1.
inline std::vector<std::int64_t> bfs_distances(const Graph& g, Vertex source) {
    std::vector<std::int64_t> dist(g.order(), -1);
    std::queue<Vertex> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        const auto u = frontier.front();
        frontier.pop();
        for (auto v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                frontier.push(v);
            }
        }
    }
    return dist;
}

inline bool is_connected(const Graph& g) {
    const auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](auto d) { return d < 0; });
}

inline DistanceMatrix apsp(const Graph& g) {
    const auto n = g.order();
    std::vector<std::uint32_t> entries(n * n);
    for (Vertex s = 0; s < n; ++s) {
        const auto dist = bfs_distances(g, s);
        for (Vertex t = 0; t < n; ++t) {
            if (dist[t] < 0) {
                throw GraphError("graph is disconnected: no path between vertices " + std::to_string(s) + " and " +
                                 std::to_string(t));
            }
            entries[s * n + t] = static_cast<std::uint32_t>(dist[t]);
        }
    }
    return DistanceMatrix(n, std::move(entries));
}

inline std::uint32_t diameter(const DistanceMatrix& d) {
    std::uint32_t best = 0;
    for (std::size_t i = 0; i < d.order(); ++i)
        for (auto x : d.row(i)) best = std::max(best, x);
    return best;
}

/// Mean over all n^2 entries, diagonal included.
inline Rational average_distance(const DistanceMatrix& d) {
    mpz_class total = 0;
    for (std::size_t i = 0; i < d.order(); ++i) total += static_cast<unsigned long>(d.row_sum(i));
    const auto n = static_cast<unsigned long>(d.order());
    Rational avg(total, mpz_class(n) * n);
    avg.canonicalize();
    return avg;
}

/// The common row sum R when every row of D sums to R (the graph then has constant curvature n/R).
inline std::optional<Rational> constant_row_sum(const DistanceMatrix& d) {
    const auto first = d.row_sum(0);
    for (std::size_t i = 1; i < d.order(); ++i)
        if (d.row_sum(i) != first) return std::nullopt;
    return Rational(static_cast<unsigned long>(first));
}

inline bool is_complete(const DistanceMatrix& d) { return diameter(d) <= 1; }

// ---------------------------------------------------------------------------
// Generators

inline Graph cartesian_product(const Graph& g, const Graph& h) {
    const auto ng = g.order();
    const auto nh = h.order();
    auto id = [nh](Vertex a, Vertex b) { return a * nh + b; };
    std::vector<Edge> edges;
    edges.reserve(ng * h.edge_count() + nh * g.edge_count());
    for (Vertex a = 0; a < ng; ++a)
        for (const auto& [u, v] : h.edges()) edges.emplace_back(id(a, u), id(a, v));
    for (Vertex b = 0; b < nh; ++b)
        for (const auto& [u, v] : g.edges()) edges.emplace_back(id(u, b), id(v, b));

    std::vector<std::string> labels;
    if (!g.labels().empty() || !h.labels().empty()) {
        auto label = [](const Graph& x, Vertex v) { return x.labels().empty() ? std::to_string(v) : x.labels()[v]; };
        for (Vertex a = 0; a < ng; ++a)
            for (Vertex b = 0; b < nh; ++b) labels.push_back("(" + label(g, a) + "," + label(h, b) + ")");
    }
    return Graph(ng * nh, std::move(edges), std::move(labels));
}

namespace detail {

inline std::string bitstring(std::uint64_t x, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i)
        if (x >> (width - 1 - i) & 1U) s[i] = '1';
    return s;
}

/// k-subsets of {0..n-1} in lexicographic order, as bitmasks.
inline std::vector<std::uint64_t> lexicographic_subsets(std::size_t n, std::size_t k) {
    std::vector<std::uint64_t> out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::uint64_t mask = 0;
        for (auto i : idx) mask |= std::uint64_t{1} << i;
        out.push_back(mask);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

inline std::string subset_label(std::uint64_t mask, std::size_t n) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1U) {
            if (!first) s += ',';
            s += std::to_string(i + 1);
            first = false;
        }
    }
    return s + "}";
}

inline Graph erdos_renyi_once(std::size_t n, double p, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (uniform01(rng) < p) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

}  // namespace detail

inline constexpr std::size_t kErdosRenyiMaxAttempts = 1000;

inline Graph generate(const FamilySpec& spec) {
    validate(spec);
    const auto& p = spec.params;
    std::vector<Edge> edges;
    switch (spec.family) {
        case Family::complete: {
            const auto n = p[0];
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
            return Graph(n, std::move(edges));
        }
        case Family::cycle: {
            const auto n = p[0];
            for (Vertex u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
            return Graph(n, std::move(edges));
        }
        case Family::path: {
            const auto n = p[0];
            for (Vertex u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
            return Graph(n, std::move(edges));
        }
        case Family::hypercube: {
            const auto dim = p[0];
            const std::size_t n = std::size_t{1} << dim;
            std::vector<std::string> labels;
            for (Vertex u = 0; u < n; ++u) {
                labels.push_back(detail::bitstring(u, dim));
                for (std::size_t b = 0; b < dim; ++b) {
                    const Vertex v = u ^ (std::size_t{1} << b);
                    if (u < v) edges.emplace_back(u, v);
                }
            }
            return Graph(n, std::move(edges), std::move(labels));
        }
        case Family::cocktail_party: {
            // Vertex 2i and 2i+1 form the i-th non-adjacent pair.
            const auto n = 2 * p[0];
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v)
                    if (u / 2 != v / 2) edges.emplace_back(u, v);
            return Graph(n, std::move(edges));
        }
        case Family::johnson: {
            const auto n = p[0];
            const auto k = p[1];
            const auto subsets = detail::lexicographic_subsets(n, k);
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < subsets.size(); ++i) {
                labels.push_back(detail::subset_label(subsets[i], n));
                for (std::size_t j = i + 1; j < subsets.size(); ++j)
                    if (static_cast<std::size_t>(__builtin_popcountll(subsets[i] & subsets[j])) == k - 1)
                        edges.emplace_back(i, j);
            }
            return Graph(subsets.size(), std::move(edges), std::move(labels));
        }
        case Family::demicube: {
            // Even-weight component, bitstrings in increasing order.
            const auto dim = p[0];
            std::vector<std::uint64_t> strings;
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << dim); ++x)
                if (__builtin_popcountll(x) % 2 == 0) strings.push_back(x);
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < strings.size(); ++i) {
                labels.push_back(detail::bitstring(strings[i], dim));
                for (std::size_t j = i + 1; j < strings.size(); ++j)
                    if (__builtin_popcountll(strings[i] ^ strings[j]) == 2) edges.emplace_back(i, j);
            }
            return Graph(strings.size(), std::move(edges), std::move(labels));
        }
        case Family::complete_multipartite: {
            std::vector<std::size_t> part;
            for (std::size_t i = 0; i < p.size(); ++i) part.insert(part.end(), p[i], i);
            const auto n = part.size();
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v)
                    if (part[u] != part[v]) edges.emplace_back(u, v);
            return Graph(n, std::move(edges));
        }
        case Family::knight_board: {
            const auto rows = static_cast<std::int64_t>(p[0]);
            const auto cols = static_cast<std::int64_t>(p[1]);
            constexpr std::pair<int, int> moves[] = {{1, 2}, {2, 1}, {1, -2}, {2, -1}};
            for (std::int64_t r = 0; r < rows; ++r) {
                for (std::int64_t c = 0; c < cols; ++c) {
                    for (const auto& [dr, dc] : moves) {
                        const auto r2 = r + dr;
                        const auto c2 = c + dc;
                        if (r2 >= 0 && r2 < rows && c2 >= 0 && c2 < cols)
                            edges.emplace_back(static_cast<Vertex>(r * cols + c), static_cast<Vertex>(r2 * cols + c2));
                    }
                }
            }
            return Graph(static_cast<std::size_t>(rows * cols), std::move(edges));
        }
        case Family::erdos_renyi: {
            std::mt19937_64 rng(spec.seed);
            for (std::size_t attempt = 0; attempt < kErdosRenyiMaxAttempts; ++attempt) {
                auto g = detail::erdos_renyi_once(p[0], spec.p, rng);
                if (is_connected(g)) return g;
            }
            throw SpecError("erdos_renyi: no connected sample in " + std::to_string(kErdosRenyiMaxAttempts) +
                            " attempts (n=" + std::to_string(p[0]) + ", p=" + std::to_string(spec.p) + ")");
        }
    }
    throw SpecError("unhandled family");
}

}  // namespace eqcurv

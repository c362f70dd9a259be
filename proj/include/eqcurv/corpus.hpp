#pragma once

#include "eqcurv/graph.hpp"
#include "eqcurv/random.hpp"
#include "eqcurv/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace eqcurv {

struct CorpusOptions {
    std::size_t count = 500;
    std::size_t n_min = 5;
    std::size_t n_max = 40;
    std::optional<double> p;  // per-graph draw when unset
    std::uint64_t seed = 0;
    unsigned threads = 0;     // 0: hardware concurrency
};

struct CorpusEntry {
    std::size_t index = 0;
    FamilySpec spec;
    AnalysisReport report;
};

/// Edge probability drawn when none is given: uniform on [ln(n)/n, ln(n)/n + 0.4],
/// capped at 1, which starts around the connectivity threshold.
inline double default_edge_probability(std::size_t n, std::mt19937_64& rng) {
    const double lo = n > 1 ? std::min(1.0, std::log(static_cast<double>(n)) / static_cast<double>(n)) : 1.0;
    return std::min(1.0, uniform(rng, lo, lo + 0.4));
}

/// The spec of graph `index`, a pure function of (options, index).
inline FamilySpec corpus_spec(const CorpusOptions& opts, std::size_t index) {
    std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(index)));
    const auto n = static_cast<std::size_t>(uniform_int(rng, opts.n_min, opts.n_max));
    const double p = opts.p ? *opts.p : default_edge_probability(n, rng);
    return FamilySpec::erdos_renyi(n, p, rng());
}

inline void validate(const CorpusOptions& opts) {
    if (opts.n_min < 1 || opts.n_min > opts.n_max) throw SpecError("corpus: need 1 <= n_min <= n_max");
    if (opts.p && !(*opts.p >= 0.0 && *opts.p <= 1.0)) throw SpecError("corpus: p must lie in [0,1]");
}

/// Generates and analyzes the corpus. Work is spread over threads; entries are
/// returned in index order, so output does not depend on scheduling.
inline std::vector<CorpusEntry> run_corpus(const CorpusOptions& opts,
                                           const std::vector<std::string>& theorems = all_theorem_ids()) {
    validate(opts);
    std::vector<CorpusEntry> entries(opts.count);
    std::vector<std::exception_ptr> errors(opts.count);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < opts.count;) {
            try {
                auto spec = corpus_spec(opts, i);
                AnalysisOptions ao;
                ao.theorems = theorems;
                ao.seed = spec.seed;
                entries[i] = CorpusEntry{i, spec, analyze(generate(spec), to_string(spec), ao)};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    unsigned threads = opts.threads ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, opts.count)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return entries;
}

struct TheoremTally {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t not_applicable = 0;
};

struct CorpusSummary {
    std::size_t count = 0;
    std::map<std::string, std::size_t> statuses;
    std::size_t negatively_curved = 0;
    std::map<std::string, TheoremTally> theorems;
    std::vector<std::pair<std::size_t, std::string>> failures;  // (graph index, theorem)
    double c_G_min = 1.0;
    double c_G_max = 0.0;
    double c_G_mean = 0.0;
    double c_G_fraction_above_095 = 0.0;
    std::size_t criterion_applicable = 0;
    std::size_t criterion_holds = 0;
    /// Observed range of (D w)_i / n over inconsistent graphs (w = pseudo-inverse solution).
    std::optional<std::pair<double, double>> pseudo_residual_ratio;
    /// Measurement only: nonnegative exact graphs with max w_i >= n/floor(n^2/4).
    std::size_t max_w_checked = 0;
    std::size_t max_w_at_least_cycle_value = 0;

    std::size_t failure_count() const { return failures.size(); }
};

inline CorpusSummary summarize(const std::vector<CorpusEntry>& entries) {
    CorpusSummary s;
    s.count = entries.size();
    for (auto name : {"exact_unique", "exact_canonical", "inconsistent"}) s.statuses[name] = 0;
    double c_sum = 0.0;
    std::size_t above = 0;
    for (const auto& e : entries) {
        const auto& rep = e.report;
        const auto& r = rep.curvature;
        ++s.statuses[std::string(status_name(r.status))];
        if (r.negatively_curved()) ++s.negatively_curved;
        for (const auto& t : rep.theorems) {
            auto& tally = s.theorems[t.theorem];
            switch (t.verdict) {
                case Verdict::pass: ++tally.pass; break;
                case Verdict::fail:
                    ++tally.fail;
                    s.failures.emplace_back(e.index, t.theorem);
                    break;
                case Verdict::not_applicable: ++tally.not_applicable; break;
            }
            if (t.theorem == theorem_id::spectral_criterion && t.hypothesis_satisfied) {
                ++s.criterion_applicable;
                if (criterion_holds(t)) ++s.criterion_holds;
            }
        }
        const double c = rep.spectral.c_G;
        s.c_G_min = std::min(s.c_G_min, c);
        s.c_G_max = std::max(s.c_G_max, c);
        c_sum += c;
        if (c > kNotableAlignment) ++above;

        const double n = static_cast<double>(rep.graph.n);
        if (!r.is_exact()) {
            const auto lo = r.residual_min / n;
            const auto hi = r.residual_max / n;
            if (!s.pseudo_residual_ratio) s.pseudo_residual_ratio = {lo, hi};
            s.pseudo_residual_ratio->first = std::min(s.pseudo_residual_ratio->first, lo);
            s.pseudo_residual_ratio->second = std::max(s.pseudo_residual_ratio->second, hi);
        } else if (sgn(r.K_exact) >= 0 && rep.graph.n >= 2) {
            ++s.max_w_checked;
            const auto n_int = rep.graph.n;
            const Rational cycle_value = detail::q(n_int, n_int * n_int / 4);
            if (*std::max_element(r.w_exact.begin(), r.w_exact.end()) >= cycle_value) ++s.max_w_at_least_cycle_value;
        }
    }
    if (s.count) {
        s.c_G_mean = c_sum / static_cast<double>(s.count);
        s.c_G_fraction_above_095 = static_cast<double>(above) / static_cast<double>(s.count);
    }
    return s;
}

inline json summary_json(const CorpusSummary& s, const CorpusOptions& opts) {
    json theorems = json::object();
    for (const auto& [id, t] : s.theorems)
        theorems[id] = json{{"pass", t.pass}, {"fail", t.fail}, {"not_applicable", t.not_applicable}};
    json failures = json::array();
    for (const auto& [i, id] : s.failures) failures.push_back(json{{"graph", i}, {"theorem", id}});
    return json{
        {"schema_version", kSchemaVersion},
        {"tool_version", kToolVersion},
        {"kind", "corpus_summary"},
        {"count", s.count},
        {"seed", opts.seed},
        {"n_range", {opts.n_min, opts.n_max}},
        {"p", opts.p ? json(*opts.p) : json(nullptr)},
        {"statuses", s.statuses},
        {"negatively_curved", s.negatively_curved},
        {"theorems", theorems},
        {"failures", failures},
        {"failure_count", s.failure_count()},
        {"c_G", {{"min", s.c_G_min}, {"max", s.c_G_max}, {"mean", s.c_G_mean},
                 {"fraction_above_0.95", s.c_G_fraction_above_095}}},
        {"spectral_criterion", {{"applicable", s.criterion_applicable}, {"holds", s.criterion_holds}}},
        {"pseudo_residual_ratio", s.pseudo_residual_ratio
                                      ? json{s.pseudo_residual_ratio->first, s.pseudo_residual_ratio->second}
                                      : json(nullptr)},
        {"max_w_measurement", {{"checked", s.max_w_checked}, {"at_least_n_over_floor_n2_4", s.max_w_at_least_cycle_value}}},
    };
}

}  // namespace eqcurv

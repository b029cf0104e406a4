#pragma once

#include "dsc/certify.hpp"
#include "dsc/game.hpp"
#include "dsc/generators.hpp"
#include "dsc/graph.hpp"
#include "dsc/rational.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace dsc {

enum class GraphFamily { complete, cycle, random };

inline const char* family_name(GraphFamily f) {
    switch (f) {
        case GraphFamily::complete: return "complete";
        case GraphFamily::cycle: return "cycle";
        case GraphFamily::random: return "random";
    }
    return "unknown";
}

struct BenchSpec {
    GraphFamily family = GraphFamily::complete;
    std::vector<std::size_t> sizes;
    std::size_t random_arcs_per_vertex = 3;  // random family: m = factor * n
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    Rational alpha = 1;
    WalkMode mode = WalkMode::exact;
    bool auto_search = false;
    std::size_t round_cap = 0;
};

struct BenchRow {
    GraphFamily family = GraphFamily::complete;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    std::string branch;
    std::size_t rounds = 0;          // rounds of the game (fixed alpha) or of all probes (search)
    std::size_t successful_rounds = 0;
    bool ended_by_forward_failure = false;
    std::size_t max_flow_calls = 0;
    double wall_ms = 0;
    std::optional<Rational> expansion;
    std::optional<Rational> oracle;  // n <= 14
    std::optional<Rational> ratio;   // expansion / oracle
};

inline DiGraph make_family_graph(GraphFamily family, std::size_t n, std::size_t arcs_per_vertex, std::uint64_t seed) {
    switch (family) {
        case GraphFamily::complete: return gen::bidirected_complete(n);
        case GraphFamily::cycle: return gen::directed_cycle(n);
        case GraphFamily::random: {
            std::mt19937_64 rng(seed);
            return gen::random_strongly_connected(n, arcs_per_vertex * n, rng);
        }
    }
    return DiGraph(n);
}

namespace detail {

inline void tally_trace(const std::vector<RoundTrace>& trace, BenchRow& row) {
    for (const RoundTrace& rt : trace) {
        ++row.rounds;
        if (rt.flow_values.size() == 2 && rt.flow_values[1] == static_cast<Capacity>(row.n / 2))
            ++row.successful_rounds;
        else if (rt.flow_values.size() == 1)
            row.ended_by_forward_failure = true;
    }
}

}  // namespace detail

inline std::vector<BenchRow> run_bench(const BenchSpec& spec, GameObserver* observer = nullptr) {
    std::vector<BenchRow> rows;
    for (std::size_t n : spec.sizes) {
        for (std::size_t trial = 0; trial < spec.trials; ++trial) {
            const std::uint64_t seed = spec.seed + trial;
            const DiGraph g = make_family_graph(spec.family, n, spec.random_arcs_per_vertex, seed);
            BenchRow row;
            row.family = spec.family;
            row.n = n;
            row.m = g.num_arcs();
            row.seed = seed;
            const auto start = std::chrono::steady_clock::now();
            if (spec.auto_search) {
                const auto approx = approximate_sparsest_cut(g, SearchConfig{spec.mode, spec.round_cap, seed}, observer);
                row.branch = "cut";
                row.max_flow_calls = approx.max_flow_calls;
                row.expansion = approx.best_cut.expansion;
                for (const auto& p : approx.probes) detail::tally_trace(p.result.trace, row);
            } else {
                const GameResult r = play_game(g, GameConfig{spec.alpha, spec.mode, spec.round_cap, seed, std::nullopt}, observer);
                row.branch = r.is_cut() ? "cut" : r.is_expander() ? "expander" : "inconclusive";
                row.max_flow_calls = r.max_flow_calls;
                if (r.is_cut()) row.expansion = r.cut().expansion;
                detail::tally_trace(r.trace, row);
            }
            row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            if (n <= union_bruteforce_cap) {
                row.oracle = brute_force_sparsest_cut(g).expansion;
                if (row.expansion && *row.oracle > 0) row.ratio = *row.expansion / *row.oracle;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

/// Tab-separated table with a header line.
inline void write_bench_table(std::ostream& os, const std::vector<BenchRow>& rows) {
    auto opt = [](const std::optional<Rational>& q) { return q ? to_display(*q) : std::string("-"); };
    os << "family\tn\tm\tseed\tbranch\trounds\tmax_flow_calls\twall_ms\texpansion\toracle\tratio\tratio_float\n";
    for (const BenchRow& r : rows) {
        os << family_name(r.family) << '\t' << r.n << '\t' << r.m << '\t' << r.seed << '\t' << r.branch << '\t'
           << r.rounds << '\t' << r.max_flow_calls << '\t' << r.wall_ms << '\t' << opt(r.expansion) << '\t'
           << opt(r.oracle) << '\t' << opt(r.ratio) << '\t' << (r.ratio ? std::to_string(to_double(*r.ratio)) : "-")
           << '\n';
    }
}

}  // namespace dsc

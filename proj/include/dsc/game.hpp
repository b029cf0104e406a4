#pragma once

// The cut-matching game loop and the multiplicative search over alpha.

#include "dsc/cut_player.hpp"
#include "dsc/error.hpp"
#include "dsc/graph.hpp"
#include "dsc/matching.hpp"
#include "dsc/matching_player.hpp"
#include "dsc/rational.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace dsc {

enum class WalkMode { exact, projected };

inline const char* mode_name(WalkMode m) { return m == WalkMode::exact ? "exact" : "projected"; }

/// ceil(10 * (log2 n)^2), at least 1.
inline std::size_t default_round_cap(std::size_t n) {
    const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(10.0 * lg * lg - 1e-9)));
}

/// 1 / (4 n^2).
inline Rational default_potential_threshold(std::size_t n) { return Rational(BigInt(1), BigInt(4 * n * n)); }

struct GameConfig {
    Rational alpha = 1;
    WalkMode mode = WalkMode::exact;
    std::size_t round_cap = 0;                    // 0: default_round_cap(n)
    std::uint64_t seed = 0;
    std::optional<Rational> potential_threshold;  // unset: 1/(4n^2)

    std::size_t round_cap_for(std::size_t n) const { return round_cap ? round_cap : default_round_cap(n); }
    Rational threshold_for(std::size_t n) const {
        return potential_threshold ? *potential_threshold : default_potential_threshold(n);
    }
};

enum class CutOrigin {
    matching_player,      // failed flow; expansion <= alpha by the min-cut argument
    strong_connectivity,  // sink component of the condensation; expansion 0
    bisection,            // a cut player bisection kept by the alpha search
};

inline const char* origin_name(CutOrigin o) {
    switch (o) {
        case CutOrigin::matching_player: return "matching_player";
        case CutOrigin::strong_connectivity: return "strong_connectivity";
        case CutOrigin::bisection: return "bisection";
    }
    return "unknown";
}

struct CutCertificate {
    Cut cut;
    Rational expansion;
    Rational alpha;  // expansion <= alpha
    CutOrigin origin = CutOrigin::matching_player;

    friend bool operator==(const CutCertificate&, const CutCertificate&) = default;
};

struct ExpanderCertificate {
    std::vector<DirectedPerfectMatching> matchings;
    Rational alpha;
    Rational congestion_bound;                // 2 t ceil(1/alpha)
    std::optional<Rational> final_potential;  // exact mode only
    bool heuristic = false;                   // projected mode: mixing not established
    Rational implied_lower_bound;             // (1/2) / congestion_bound

    std::size_t rounds() const noexcept { return matchings.size(); }

    friend bool operator==(const ExpanderCertificate&, const ExpanderCertificate&) = default;
};

/// Exact mode hit the round cap with the walk still not mixed.
struct Inconclusive {
    std::size_t rounds = 0;
    Rational final_potential;

    friend bool operator==(const Inconclusive&, const Inconclusive&) = default;
};

struct RoundTrace {
    std::vector<Vertex> bisection;           // low side S
    std::vector<Capacity> flow_values;       // forward, then backward if solved
    std::optional<Rational> potential;       // after the round, exact mode

    friend bool operator==(const RoundTrace&, const RoundTrace&) = default;
};

struct GameResult {
    std::variant<CutCertificate, ExpanderCertificate, Inconclusive> outcome;
    std::vector<RoundTrace> trace;
    std::optional<Rational> initial_potential;  // exact mode: n - 1
    std::size_t max_flow_calls = 0;

    bool is_cut() const { return std::holds_alternative<CutCertificate>(outcome); }
    bool is_expander() const { return std::holds_alternative<ExpanderCertificate>(outcome); }
    bool is_inconclusive() const { return std::holds_alternative<Inconclusive>(outcome); }
    const CutCertificate& cut() const { return std::get<CutCertificate>(outcome); }
    const ExpanderCertificate& expander() const { return std::get<ExpanderCertificate>(outcome); }
};

inline Rational congestion_bound(std::size_t rounds, const Rational& alpha) {
    return Rational(BigInt(2 * rounds) * BigInt(ceil_inverse(alpha)));
}

inline Rational implied_lower_bound(const Rational& congestion) { return Rational(1) / (Rational(2) * congestion); }

/// Observer invoked after every matching-player call, for callers that audit
/// each round (the acceptance suite does).
struct GameObserver {
    virtual ~GameObserver() = default;
    virtual void on_round(const DiGraph& g, const Rational& alpha, const Cut& bisection, const MatchingOutcome& outcome,
                          const WalkMatrix* before, const WalkMatrix* after) = 0;
};

inline GameResult play_game(const DiGraph& g, const GameConfig& config, GameObserver* observer = nullptr) {
    const std::size_t n = g.num_vertices();
    if (n < 2) throw Error(Errc::invalid_graph, "the game needs at least two vertices");
    if (n % 2 != 0) throw Error(Errc::odd_vertex_count, "the game needs an even vertex count, got n=" + std::to_string(n));
    if (config.alpha <= 0) throw Error(Errc::invalid_graph, "alpha must be positive");

    const std::size_t cap = config.round_cap_for(n);
    const Rational threshold = config.threshold_for(n);
    const bool exact = config.mode == WalkMode::exact;

    std::mt19937_64 rng(config.seed);
    GameResult result{Inconclusive{}, {}, std::nullopt, 0};
    std::vector<DirectedPerfectMatching> matchings;
    std::optional<WalkMatrix> walk;
    std::optional<Rational> psi;
    if (exact) {
        walk = WalkMatrix::identity(n);
        psi = potential(*walk);
        result.initial_potential = psi;
    }

    for (std::size_t round = 0; round < cap; ++round) {
        const auto r = sample_orthogonal_unit_vector(n, rng);
        const auto projection = replay_walk_projection(r, matchings);
        const Bisection bisection = median_bisection(projection.u);
        const Cut s = bisection.low_side(n);

        MatchingOutcome outcome = find_matching_or_cut(g, s, config.alpha);
        result.max_flow_calls += outcome.flow_values.size();
        RoundTrace trace{bisection.low, outcome.flow_values, std::nullopt};

        if (!outcome.is_matching()) {
            if (observer) observer->on_round(g, config.alpha, s, outcome, walk ? &*walk : nullptr, nullptr);
            const MatchingCut& mc = outcome.cut();
            result.trace.push_back(std::move(trace));
            result.outcome = CutCertificate{mc.cut, mc.expansion, config.alpha, CutOrigin::matching_player};
            return result;
        }

        matchings.push_back(outcome.matching());
        if (exact) {
            WalkMatrix next = apply_matching_exact(*walk, matchings.back());
            if (observer) observer->on_round(g, config.alpha, s, outcome, &*walk, &next);
            walk = std::move(next);
            psi = potential(*walk);
            trace.potential = psi;
        } else if (observer) {
            observer->on_round(g, config.alpha, s, outcome, nullptr, nullptr);
        }
        result.trace.push_back(std::move(trace));

        if (exact && *psi <= threshold) break;
    }

    if (exact && *psi > threshold) {
        result.outcome = Inconclusive{matchings.size(), *psi};
        return result;
    }
    ExpanderCertificate cert;
    cert.alpha = config.alpha;
    cert.congestion_bound = congestion_bound(matchings.size(), config.alpha);
    cert.implied_lower_bound = implied_lower_bound(cert.congestion_bound);
    cert.final_potential = psi;
    cert.heuristic = !exact;
    cert.matchings = std::move(matchings);
    result.outcome = std::move(cert);
    return result;
}

struct SearchConfig {
    WalkMode mode = WalkMode::exact;
    std::size_t round_cap = 0;
    std::uint64_t seed = 0;
};

struct SearchProbe {
    Rational alpha;
    std::uint64_t seed = 0;
    GameResult result;
};

struct SparsestCutApproximation {
    CutCertificate best_cut;
    std::optional<ExpanderCertificate> best_lower_bound;  // largest implied bound, certified (non-heuristic) only
    std::vector<SearchProbe> probes;
    std::size_t max_flow_calls = 0;

    /// best_cut.expansion / implied lower bound, when a bound exists.
    std::optional<Rational> ratio() const {
        if (!best_lower_bound) return std::nullopt;
        return best_cut.expansion / best_lower_bound->implied_lower_bound;
    }
};

/// Grid alpha_k = (2/n) 2^k for k = 0.. until it reaches m; the last point is
/// clamped to m.
inline std::vector<Rational> alpha_grid(std::size_t n, std::size_t m) {
    std::vector<Rational> grid;
    const Rational top(BigInt(std::max<std::size_t>(m, 1)));
    Rational a(BigInt(2), BigInt(n));
    while (a < top) {
        grid.push_back(a);
        a *= 2;
    }
    grid.push_back(top);
    return grid;
}

/// Binary search over alpha_grid for the boundary between "cut returned" and
/// "expander certified". Every cut player bisection seen along the way is
/// also kept as a candidate, so a cut is produced even when every probe
/// certifies an expander.
inline SparsestCutApproximation approximate_sparsest_cut(const DiGraph& g, const SearchConfig& config,
                                                         GameObserver* observer = nullptr) {
    const std::size_t n = g.num_vertices();
    if (n < 2) throw Error(Errc::invalid_graph, "need at least two vertices");
    if (n % 2 != 0) throw Error(Errc::odd_vertex_count, "the game needs an even vertex count, got n=" + std::to_string(n));

    if (auto zero = find_zero_expansion_cut(g)) {
        return SparsestCutApproximation{CutCertificate{*zero, 0, 0, CutOrigin::strong_connectivity}, std::nullopt, {}, 0};
    }

    const auto grid = alpha_grid(n, g.num_arcs());
    std::optional<CutCertificate> best_cut;
    auto offer = [&](CutCertificate candidate) {
        if (!best_cut || candidate.expansion < best_cut->expansion) best_cut = std::move(candidate);
    };

    SparsestCutApproximation out{CutCertificate{Cut(n, {0}), 0, 0, CutOrigin::bisection}, std::nullopt, {}, 0};
    std::ptrdiff_t lo = 0, hi = static_cast<std::ptrdiff_t>(grid.size()) - 1;
    while (lo <= hi) {
        const std::ptrdiff_t mid = lo + (hi - lo) / 2;
        GameConfig game{grid[static_cast<std::size_t>(mid)], config.mode, config.round_cap,
                        config.seed ^ static_cast<std::uint64_t>(mid), std::nullopt};
        GameResult result = play_game(g, game, observer);
        out.max_flow_calls += result.max_flow_calls;

        for (const RoundTrace& rt : result.trace) {
            const Cut low(n, rt.bisection);
            for (const Cut& side : {low, low.complement()}) {
                Rational e = expansion(g, side);
                offer(CutCertificate{side, e, e, CutOrigin::bisection});
            }
        }
        if (result.is_cut()) {
            offer(result.cut());
            hi = mid - 1;
        } else {
            if (result.is_expander() && !result.expander().heuristic &&
                (!out.best_lower_bound ||
                 result.expander().implied_lower_bound > out.best_lower_bound->implied_lower_bound))
                out.best_lower_bound = result.expander();
            lo = mid + 1;
        }
        out.probes.push_back(SearchProbe{game.alpha, game.seed, std::move(result)});
    }
    out.best_cut = std::move(*best_cut);
    return out;
}

}  // namespace dsc

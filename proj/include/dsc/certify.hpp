#pragma once

// Independent checks of everything the solver claims: an exhaustive
// sparsest-cut oracle, re-verification of cut and expander certificates, and
// Monte-Carlo statistics for the random projection.
//
// Expander certificates are checked by the conclusion of the timeline-graph
// argument (brute-force expansion of the union of matchings at small n) plus
// the double stochasticity that argument rests on. The timeline graph itself
// is never built.

#include "dsc/cut_player.hpp"
#include "dsc/error.hpp"
#include "dsc/game.hpp"
#include "dsc/generators.hpp"
#include "dsc/graph.hpp"
#include "dsc/matching.hpp"
#include "dsc/rational.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace dsc {

inline constexpr std::size_t oracle_vertex_cap = 20;
inline constexpr std::size_t union_bruteforce_cap = 14;

struct OracleResult {
    Cut cut;
    Rational expansion;
    std::uint64_t partitions = 0;  // 2^(n-1) - 1, each scored in both orientations
};

/// Exact minimum expansion over every proper nonempty side S. Ties go to the
/// lexicographically smallest side. Gray-code enumeration: each step moves
/// one vertex and updates the out-boundary count incrementally.
inline OracleResult brute_force_sparsest_cut(const DiGraph& g) {
    const std::size_t n = g.num_vertices();
    if (n < 2) throw Error(Errc::invalid_graph, "oracle needs at least two vertices");
    if (n > oracle_vertex_cap)
        throw Error(Errc::oracle_too_large, "oracle is capped at n=" + std::to_string(oracle_vertex_cap) +
                                                ", got n=" + std::to_string(n));
    std::vector<std::vector<Vertex>> out(n), in(n);
    for (const Arc& a : g.arcs()) {
        if (a.tail == a.head) continue;
        out[a.tail].push_back(a.head);
        in[a.head].push_back(a.tail);
    }

    std::vector<bool> member(n, false);
    std::size_t size = 0;
    std::uint64_t crossing = 0;

    bool have_best = false;
    std::uint64_t best_num = 0, best_den = 1;
    std::vector<Vertex> best_side;

    auto side_of = [&] {
        std::vector<Vertex> side;
        for (std::size_t v = 0; v < n; ++v)
            if (member[v]) side.push_back(static_cast<Vertex>(v));
        return side;
    };

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto v = static_cast<Vertex>(std::countr_zero(step));
        if (!member[v]) {
            for (Vertex w : out[v])
                if (!member[w]) ++crossing;
            for (Vertex w : in[v])
                if (member[w]) --crossing;
            member[v] = true;
            ++size;
        } else {
            member[v] = false;
            --size;
            for (Vertex w : out[v])
                if (!member[w]) --crossing;
            for (Vertex w : in[v])
                if (member[w]) ++crossing;
        }
        if (size == n) continue;  // (the empty set never appears after step 0)
        const std::uint64_t den = std::min(size, n - size);
        // crossing/den vs best_num/best_den
        const auto lhs = static_cast<unsigned __int128>(crossing) * best_den;
        const auto rhs = static_cast<unsigned __int128>(best_num) * den;
        if (!have_best || lhs < rhs) {
            have_best = true;
            best_num = crossing;
            best_den = den;
            best_side = side_of();
        } else if (lhs == rhs) {
            auto side = side_of();
            if (side < best_side) best_side = std::move(side);
        }
    }
    return OracleResult{Cut(n, std::move(best_side)), Rational(BigInt(best_num), BigInt(best_den)),
                        (std::uint64_t{1} << (n - 1)) - 1};
}

enum class VerdictCode {
    accept = 0,
    // cut certificates
    cut_invalid = 10,
    cut_expansion_mismatch = 11,
    cut_exceeds_alpha = 12,
    // expander certificates, numbered by check
    matching_not_perfect = 1,
    embedding_invalid = 2,
    congestion_exceeded = 3,
    walk_invalid = 4,
    not_mixing = 5,
    union_expansion_low = 6,
};

inline const char* verdict_name(VerdictCode c) {
    switch (c) {
        case VerdictCode::accept: return "accept";
        case VerdictCode::cut_invalid: return "cut_invalid";
        case VerdictCode::cut_expansion_mismatch: return "cut_expansion_mismatch";
        case VerdictCode::cut_exceeds_alpha: return "cut_exceeds_alpha";
        case VerdictCode::matching_not_perfect: return "matching_not_perfect";
        case VerdictCode::embedding_invalid: return "embedding_invalid";
        case VerdictCode::congestion_exceeded: return "congestion_exceeded";
        case VerdictCode::walk_invalid: return "walk_invalid";
        case VerdictCode::not_mixing: return "not_mixing";
        case VerdictCode::union_expansion_low: return "union_expansion_low";
    }
    return "unknown";
}

struct Verdict {
    VerdictCode code = VerdictCode::accept;
    std::string detail;

    bool accepted() const noexcept { return code == VerdictCode::accept; }
    static Verdict ok() { return {}; }
    static Verdict reject(VerdictCode c, std::string why) { return {c, std::move(why)}; }
};

inline Verdict verify_cut_certificate(const DiGraph& g, const CutCertificate& cert) {
    if (cert.cut.num_vertices() != g.num_vertices())
        return Verdict::reject(VerdictCode::cut_invalid, "cut is over a different vertex count");
    const Rational actual = expansion(g, cert.cut);
    if (actual != cert.expansion)
        return Verdict::reject(VerdictCode::cut_expansion_mismatch,
                               "recomputed expansion " + to_string(actual) + ", certificate says " +
                                   to_string(cert.expansion));
    if (actual > cert.alpha)
        return Verdict::reject(VerdictCode::cut_exceeds_alpha,
                               "expansion " + to_string(actual) + " exceeds alpha " + to_string(cert.alpha));
    return Verdict::ok();
}

inline Verdict verify_double_stochastic(const WalkMatrix& p) {
    const std::size_t n = p.size();
    const BigInt one = p.denominator();
    for (std::size_t i = 0; i < n; ++i) {
        BigInt row = 0, col = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (p.raw(i, j) < 0 || p.raw(i, j) > one)
                return Verdict::reject(VerdictCode::walk_invalid, "entry out of [0,1]");
            row += p.raw(i, j);
            col += p.raw(j, i);
        }
        if (row != one) return Verdict::reject(VerdictCode::walk_invalid, "row " + std::to_string(i) + " does not sum to 1");
        if (col != one)
            return Verdict::reject(VerdictCode::walk_invalid, "column " + std::to_string(i) + " does not sum to 1");
    }
    return Verdict::ok();
}

namespace detail {

inline std::string check_bipartite_sides(const DirectedPerfectMatching& m) {
    const std::size_t n = m.num_vertices;
    if (2 * m.forward.size() != n || 2 * m.backward.size() != n) return "each direction must match n/2 vertices";
    std::vector<int> side(n, -1);  // 0: origin of forward, 1: destination
    for (const auto& e : m.forward) {
        if (e.tail >= n || e.head >= n) return "matching arc out of range";
        side[e.tail] = 0;
        side[e.head] = 1;
    }
    for (const auto& e : m.backward)
        if (side[e.tail] != 1 || side[e.head] != 0) return "backward arcs do not reverse the forward bisection";
    return {};
}

}  // namespace detail

/// Runs checks (1)-(6) in order and reports the first failure.
inline Verdict verify_expander_certificate(const DiGraph& g, const ExpanderCertificate& cert) {
    const std::size_t n = g.num_vertices();

    // (1) perfect directed matchings across a bisection
    for (std::size_t r = 0; r < cert.matchings.size(); ++r) {
        const auto& m = cert.matchings[r];
        if (m.num_vertices != n)
            return Verdict::reject(VerdictCode::matching_not_perfect, "round " + std::to_string(r) + ": wrong vertex count");
        if (auto why = perfect_matching_violation(m); !why.empty())
            return Verdict::reject(VerdictCode::matching_not_perfect, "round " + std::to_string(r) + ": " + why);
        if (auto why = detail::check_bipartite_sides(m); !why.empty())
            return Verdict::reject(VerdictCode::matching_not_perfect, "round " + std::to_string(r) + ": " + why);
    }

    // (2) embeddings are directed G-paths from tail to head
    std::map<std::pair<Vertex, Vertex>, std::size_t> multiplicity;
    for (const Arc& a : g.arcs()) ++multiplicity[{a.tail, a.head}];
    std::map<std::pair<Vertex, Vertex>, std::size_t> load;
    for (std::size_t r = 0; r < cert.matchings.size(); ++r) {
        for (const auto* part : {&cert.matchings[r].forward, &cert.matchings[r].backward}) {
            for (const auto& e : *part) {
                const auto& p = e.path;
                if (p.size() < 2 || p.front() != e.tail || p.back() != e.head)
                    return Verdict::reject(VerdictCode::embedding_invalid,
                                           "round " + std::to_string(r) + ": path for (" + std::to_string(e.tail) + "," +
                                               std::to_string(e.head) + ") has wrong endpoints");
                for (std::size_t i = 0; i + 1 < p.size(); ++i) {
                    if (!multiplicity.contains({p[i], p[i + 1]}))
                        return Verdict::reject(VerdictCode::embedding_invalid,
                                               "round " + std::to_string(r) + ": (" + std::to_string(p[i]) + "," +
                                                   std::to_string(p[i + 1]) + ") is not an arc of G");
                    ++load[{p[i], p[i + 1]}];
                }
            }
        }
    }

    // (3) congestion: measured load within the stated bound, and the bound
    // itself is the one the round count and alpha imply
    if (cert.alpha <= 0) return Verdict::reject(VerdictCode::congestion_exceeded, "alpha must be positive");
    if (cert.congestion_bound != congestion_bound(cert.matchings.size(), cert.alpha))
        return Verdict::reject(VerdictCode::congestion_exceeded, "congestion bound is not 2 t ceil(1/alpha)");
    if (cert.implied_lower_bound != implied_lower_bound(cert.congestion_bound))
        return Verdict::reject(VerdictCode::congestion_exceeded, "implied lower bound is not 1/(2 congestion)");
    for (const auto& [arc, used] : load) {
        if (Rational(BigInt(used)) > cert.congestion_bound * Rational(BigInt(multiplicity[arc])))
            return Verdict::reject(VerdictCode::congestion_exceeded,
                                   "arc (" + std::to_string(arc.first) + "," + std::to_string(arc.second) +
                                       ") carries " + std::to_string(used) + " paths");
    }

    // (4) exact replay: doubly stochastic every round; potential as claimed
    WalkMatrix p = WalkMatrix::identity(n);
    for (std::size_t r = 0; r < cert.matchings.size(); ++r) {
        p = apply_matching_exact(p, cert.matchings[r]);
        if (auto v = verify_double_stochastic(p); !v.accepted()) {
            v.detail = "round " + std::to_string(r) + ": " + v.detail;
            return v;
        }
    }
    if (cert.final_potential) {
        const Rational psi = potential(p);
        if (psi != *cert.final_potential)
            return Verdict::reject(VerdictCode::walk_invalid,
                                   "replayed potential " + to_string(psi) + " differs from " + to_string(*cert.final_potential));
        if (psi > default_potential_threshold(n))
            return Verdict::reject(VerdictCode::walk_invalid, "potential " + to_string(psi) + " above 1/(4n^2)");
    }

    // (5) mixing
    if (!is_mixing(p))
        return Verdict::reject(VerdictCode::not_mixing, "min walk entry " + to_string(min_entry(p)) + " below 1/(2n)");

    // (6) the union is a 1/2-expander, by exhaustion where affordable
    if (n <= union_bruteforce_cap) {
        const DiGraph h = union_of_matchings(n, cert.matchings);
        const OracleResult best = brute_force_sparsest_cut(h);
        if (best.expansion < Rational(1, 2))
            return Verdict::reject(VerdictCode::union_expansion_low,
                                   "union of matchings has a cut of expansion " + to_string(best.expansion));
    }
    return Verdict::ok();
}

struct ProjectionVectorStat {
    std::vector<double> v;
    double expected = 0;  // |v|^2 / (n - 1)
    double mean = 0;      // empirical mean of (v.r)^2
    double relative_error = 0;
};

struct ProjectionReport {
    std::size_t n = 0;
    std::size_t samples = 0;
    std::vector<ProjectionVectorStat> vectors;
    double constant_c = 0;
    std::size_t pair_draws = 0;
    std::size_t pair_failures = 0;
    double failure_fraction() const { return pair_draws ? double(pair_failures) / double(pair_draws) : 0.0; }
};

/// The fixed battery of test vectors orthogonal to the all-ones vector.
inline std::vector<std::vector<double>> projection_test_vectors(std::size_t n) {
    std::vector<std::vector<double>> vs;
    std::vector<double> v(n, 0.0);
    v[0] = 1;
    v[1] = -1;
    vs.push_back(v);
    for (double& x : v) x *= 10;
    vs.push_back(v);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i) - static_cast<double>(n - 1) / 2.0;
    vs.push_back(v);
    for (std::size_t i = 0; i < n; ++i) v[i] = (i % 2 == 0) ? 1.0 : -1.0;
    if (n % 2 != 0) v[n - 1] = 0;
    vs.push_back(v);
    for (std::size_t i = 0; i < n; ++i) v[i] = -1.0;
    v[0] = static_cast<double>(n - 1);
    vs.push_back(v);
    return vs;
}

/// Empirical checks of the random projection: the mean of (v.r)^2 against
/// |v|^2/(n-1), and the failure rate of
///   |P_i - P_j|^2 >= (n-1) / (C ln n) * (u_i - u_j)^2
/// over walk states built from random perfect matchings.
template <class Urbg>
ProjectionReport projection_statistics(std::size_t n, std::size_t samples, Urbg& rng, double constant_c = 16.0,
                                       std::size_t pair_draws = 10000) {
    if (n < 4) throw Error(Errc::invalid_graph, "projection statistics need n >= 4");
    ProjectionReport report;
    report.n = n;
    report.samples = samples;
    report.constant_c = constant_c;

    for (auto& v : projection_test_vectors(n)) {
        ProjectionVectorStat stat;
        const double len2 = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
        stat.expected = len2 / static_cast<double>(n - 1);
        double sum = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            const auto r = sample_orthogonal_unit_vector(n, rng);
            const double dot = std::inner_product(v.begin(), v.end(), r.begin(), 0.0);
            sum += dot * dot;
        }
        stat.mean = sum / static_cast<double>(samples);
        stat.relative_error = std::abs(stat.mean - stat.expected) / stat.expected;
        stat.v = std::move(v);
        report.vectors.push_back(std::move(stat));
    }

    // Walk states in floating point; a fresh state every `per_state` draws.
    const std::size_t per_state = 100;
    const double scale = static_cast<double>(n - 1) / (constant_c * std::log(static_cast<double>(n)));
    const std::size_t max_rounds = default_round_cap(n) / 4 + 1;
    std::uniform_int_distribution<std::size_t> rounds_dist(1, max_rounds);
    std::uniform_int_distribution<std::size_t> vertex(0, n - 1);
    std::vector<double> p, next(n * n), u(n);
    while (report.pair_draws < pair_draws) {
        p.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1.0;
        const std::size_t rounds = rounds_dist(rng);
        for (std::size_t t = 0; t < rounds; ++t) {
            const auto m = gen::random_perfect_matching(n, rng);
            const auto pred = predecessor_map(m);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) next[j * n + k] = 0.5 * (p[pred[j] * n + k] + p[j * n + k]);
            p.swap(next);
        }
        for (std::size_t d = 0; d < per_state && report.pair_draws < pair_draws; ++d) {
            const auto r = sample_orthogonal_unit_vector(n, rng);
            std::size_t i = vertex(rng), j = vertex(rng);
            while (j == i) j = vertex(rng);
            double ui = 0, uj = 0, dist2 = 0;
            for (std::size_t k = 0; k < n; ++k) {
                ui += p[i * n + k] * r[k];
                uj += p[j * n + k] * r[k];
                const double diff = p[i * n + k] - p[j * n + k];
                dist2 += diff * diff;
            }
            ++report.pair_draws;
            const double du = ui - uj;
            if (dist2 < scale * du * du * (1 - 1e-12)) ++report.pair_failures;
        }
    }
    return report;
}

}  // namespace dsc

#pragma once

#include "dsc/error.hpp"
#include "dsc/graph.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dsc {

/// A matching arc together with the G-path (vertex sequence, tail first,
/// head last) that routes its unit of flow.
struct EmbeddedArc {
    Vertex tail = 0;
    Vertex head = 0;
    std::vector<Vertex> path;

    friend bool operator==(const EmbeddedArc&, const EmbeddedArc&) = default;
};

/// M = forward ∪ backward, where forward matches S into its complement and
/// backward matches the complement into S. Every vertex ends up with exactly
/// one out-arc and one in-arc.
struct DirectedPerfectMatching {
    std::size_t num_vertices = 0;
    std::vector<EmbeddedArc> forward;
    std::vector<EmbeddedArc> backward;

    std::vector<Arc> arcs() const {
        std::vector<Arc> all;
        all.reserve(forward.size() + backward.size());
        for (const auto& e : forward) all.push_back({e.tail, e.head});
        for (const auto& e : backward) all.push_back({e.tail, e.head});
        return all;
    }

    friend bool operator==(const DirectedPerfectMatching&, const DirectedPerfectMatching&) = default;
};

/// Empty string when every vertex has in- and out-degree exactly 1,
/// otherwise a description of the first violation.
inline std::string perfect_matching_violation(const DirectedPerfectMatching& m) {
    const std::size_t n = m.num_vertices;
    std::vector<int> in(n, 0), out(n, 0);
    for (const Arc& a : m.arcs()) {
        if (a.tail >= n || a.head >= n) return "matching arc out of range";
        ++out[a.tail];
        ++in[a.head];
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (out[v] != 1) return "vertex " + std::to_string(v) + " has out-degree " + std::to_string(out[v]);
        if (in[v] != 1) return "vertex " + std::to_string(v) + " has in-degree " + std::to_string(in[v]);
    }
    return {};
}

inline void require_perfect(const DirectedPerfectMatching& m) {
    if (auto why = perfect_matching_violation(m); !why.empty()) throw Error(Errc::not_perfect_matching, why);
}

/// pred[j] = i for the unique matching arc (i, j).
inline std::vector<Vertex> predecessor_map(const DirectedPerfectMatching& m) {
    require_perfect(m);
    std::vector<Vertex> pred(m.num_vertices);
    for (const Arc& a : m.arcs()) pred[a.head] = a.tail;
    return pred;
}

inline DiGraph union_of_matchings(std::size_t n, std::span<const DirectedPerfectMatching> matchings) {
    DiGraph g(n);
    for (const auto& m : matchings) {
        if (m.num_vertices != n)
            throw Error(Errc::mismatched_vertex_count, "matching over " + std::to_string(m.num_vertices) +
                                                           " vertices, expected " + std::to_string(n));
        for (const Arc& a : m.arcs()) g.add_arc(a.tail, a.head);
    }
    return g;
}

}  // namespace dsc

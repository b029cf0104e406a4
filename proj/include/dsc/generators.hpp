#pragma once

#include "dsc/graph.hpp"
#include "dsc/matching.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace dsc::gen {

/// Every ordered pair (u, v), u != v.
inline DiGraph bidirected_complete(std::size_t n) {
    DiGraph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != v) g.add_arc(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return g;
}

/// 0 -> 1 -> ... -> n-1 -> 0.
inline DiGraph directed_cycle(std::size_t n) {
    DiGraph g(n);
    for (std::size_t u = 0; u < n; ++u) g.add_arc(static_cast<Vertex>(u), static_cast<Vertex>((u + 1) % n));
    return g;
}

/// A directed Hamiltonian cycle through a random permutation (so the graph is
/// strongly connected) plus m - n further distinct random arcs, no self-loops.
template <class Urbg>
DiGraph random_strongly_connected(std::size_t n, std::size_t m, Urbg& rng) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::set<std::pair<Vertex, Vertex>> present;
    DiGraph g(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vertex u = perm[i], v = perm[(i + 1) % n];
        if (u == v) continue;
        g.add_arc(u, v);
        present.insert({u, v});
    }
    const std::size_t max_arcs = n * (n - 1);
    m = std::min(m, max_arcs);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    while (g.num_arcs() < m) {
        Vertex u = pick(rng), v = pick(rng);
        if (u == v || !present.insert({u, v}).second) continue;
        g.add_arc(u, v);
    }
    return g;
}

/// A uniformly random bisection with independent random pairings across it in
/// each direction. Embeddings are left empty.
template <class Urbg>
DirectedPerfectMatching random_perfect_matching(std::size_t n, Urbg& rng) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t half = n / 2;
    std::vector<Vertex> low(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<Vertex> high(perm.begin() + static_cast<std::ptrdiff_t>(half), perm.end());
    DirectedPerfectMatching m{n, {}, {}};
    std::shuffle(high.begin(), high.end(), rng);
    for (std::size_t i = 0; i < half; ++i) m.forward.push_back({low[i], high[i], {}});
    std::shuffle(high.begin(), high.end(), rng);
    for (std::size_t i = 0; i < half; ++i) m.backward.push_back({high[i], low[i], {}});
    return m;
}

}  // namespace dsc::gen

#include "dsc/generators.hpp"
#include "dsc/graph.hpp"
#include "dsc/matching.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

using dsc::Arc;
using dsc::Cut;
using dsc::DiGraph;
using dsc::Rational;

namespace {

DiGraph cycle4() { return DiGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

DiGraph two_triangles() {
    DiGraph g(6);
    for (dsc::Vertex base : {0u, 3u})
        for (dsc::Vertex a = 0; a < 3; ++a)
            for (dsc::Vertex b = 0; b < 3; ++b)
                if (a != b) g.add_arc(base + a, base + b);
    g.add_arc(2, 3);
    return g;
}

// Reachability by repeated BFS; strongly connected iff every vertex reaches
// every other.
bool reaches_all_pairs(const DiGraph& g) {
    const auto adj = g.out_adjacency();
    for (std::size_t s = 0; s < g.num_vertices(); ++s) {
        std::vector<bool> seen(g.num_vertices(), false);
        std::vector<dsc::Vertex> stack{static_cast<dsc::Vertex>(s)};
        seen[s] = true;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : adj[v])
                if (!seen[w]) seen[w] = true, stack.push_back(w);
        }
        for (bool b : seen)
            if (!b) return false;
    }
    return true;
}

DiGraph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    std::uniform_int_distribution<dsc::Vertex> pick(0, static_cast<dsc::Vertex>(n - 1));
    DiGraph g(n);
    for (std::size_t i = 0; i < m; ++i) g.add_arc(pick(rng), pick(rng));
    return g;
}

}  // namespace

TEST_CASE("out_boundary follows the tail-in, head-out definition", "[graph]") {
    DiGraph edge(2, {{0, 1}});
    CHECK(dsc::out_boundary(edge, Cut(2, {0})) == std::vector<Arc>{{0, 1}});
    CHECK(dsc::out_boundary(edge, Cut(2, {1})).empty());
    CHECK(dsc::out_boundary(cycle4(), Cut(4, {0, 1})) == std::vector<Arc>{{1, 2}});
}

TEST_CASE("out_boundary counts parallel arcs and ignores self-loops", "[graph]") {
    DiGraph g(3, {{0, 1}, {0, 1}, {0, 0}, {1, 2}});
    CHECK(dsc::out_boundary(g, Cut(3, {0})).size() == 2);
    CHECK(dsc::expansion(g, Cut(3, {0})) == 2);
}

TEST_CASE("invalid cuts are rejected", "[graph]") {
    CHECK_THROWS_AS(Cut(3, {}), dsc::Error);
    CHECK_THROWS_AS(Cut(3, {0, 1, 2}), dsc::Error);
    CHECK_THROWS_AS(Cut(3, {0, 0}), dsc::Error);
    CHECK_THROWS_AS(Cut(3, {5}), dsc::Error);
    CHECK_THROWS_AS(dsc::out_boundary(cycle4(), Cut(3, {0})), dsc::Error);
    try {
        Cut(2, {});
    } catch (const dsc::Error& e) {
        CHECK(e.code() == dsc::Errc::invalid_cut);
    }
}

TEST_CASE("expansion examples", "[graph]") {
    DiGraph edge(2, {{0, 1}});
    CHECK(dsc::expansion(edge, Cut(2, {0})) == 1);
    CHECK(dsc::expansion(edge, Cut(2, {1})) == 0);
    CHECK(dsc::expansion(cycle4(), Cut(4, {0, 1})) == Rational(1, 2));
}

TEST_CASE("expansion matches the definition for both orientations of every cut", "[graph][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 6;
        const DiGraph g = random_graph(n, 3 * n, rng);
        for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
            std::vector<dsc::Vertex> side;
            for (std::size_t v = 0; v < n; ++v)
                if (mask >> v & 1) side.push_back(static_cast<dsc::Vertex>(v));
            const Cut s(n, side);
            for (const Cut& c : {s, s.complement()}) {
                std::size_t leaving = 0;
                for (const Arc& a : g.arcs())
                    if (c.contains(a.tail) && !c.contains(a.head)) ++leaving;
                const std::size_t smaller = std::min(c.size(), n - c.size());
                const Rational e = dsc::expansion(g, c);
                CHECK(e == Rational(leaving, smaller));
                CHECK(e >= 0);
                CHECK(e <= Rational(g.num_arcs()));
            }
        }
    }
}

TEST_CASE("canonical cut is the smaller side, ties keep vertex 0", "[graph]") {
    CHECK(Cut(5, {0, 1, 2}).canonical() == Cut(5, {3, 4}));
    CHECK(Cut(4, {2, 3}).canonical() == Cut(4, {0, 1}));
    CHECK(Cut(4, {0, 3}).canonical() == Cut(4, {0, 3}));
    CHECK(Cut(4, {1}).canonical() == Cut(4, {1}));
}

TEST_CASE("find_zero_expansion_cut examples", "[graph]") {
    auto path = dsc::find_zero_expansion_cut(DiGraph(2, {{0, 1}}));
    REQUIRE(path);
    CHECK(*path == Cut(2, {1}));

    DiGraph triangle(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}});
    CHECK_FALSE(dsc::find_zero_expansion_cut(triangle));

    const DiGraph tt = two_triangles();
    auto sink = dsc::find_zero_expansion_cut(tt);
    REQUIRE(sink);
    CHECK(*sink == Cut(6, {3, 4, 5}));
    CHECK(dsc::expansion(tt, *sink) == 0);
}

TEST_CASE("find_zero_expansion_cut returns a cut iff the graph is not strongly connected", "[graph][property]") {
    std::mt19937_64 rng(5);
    int disconnected = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const DiGraph g = random_graph(n, n + trial % (2 * n), rng);
        const auto cut = dsc::find_zero_expansion_cut(g);
        CHECK(cut.has_value() == !reaches_all_pairs(g));
        if (cut) {
            ++disconnected;
            CHECK(dsc::expansion(g, *cut) == 0);
        }
    }
    CHECK(disconnected > 0);
    CHECK(disconnected < 300);
}

TEST_CASE("find_zero_expansion_cut handles deep graphs without recursion", "[graph]") {
    const std::size_t n = 200000;
    DiGraph g(n);
    for (std::size_t v = 0; v + 1 < n; ++v) g.add_arc(static_cast<dsc::Vertex>(v), static_cast<dsc::Vertex>(v + 1));
    auto cut = dsc::find_zero_expansion_cut(g);
    REQUIRE(cut);
    CHECK(*cut == Cut(n, {static_cast<dsc::Vertex>(n - 1)}));
    g.add_arc(static_cast<dsc::Vertex>(n - 1), 0);
    CHECK_FALSE(dsc::find_zero_expansion_cut(g));
}

TEST_CASE("union_of_matchings concatenates matching arcs", "[graph]") {
    CHECK(dsc::union_of_matchings(4, {}).num_arcs() == 0);

    dsc::DirectedPerfectMatching m{2, {{0, 1, {0, 1}}}, {{1, 0, {1, 0}}}};
    const DiGraph h = dsc::union_of_matchings(2, std::vector{m});
    CHECK(h == DiGraph(2, {{0, 1}, {1, 0}}));

    CHECK_THROWS_AS(dsc::union_of_matchings(4, std::vector{m}), dsc::Error);
}

TEST_CASE("union of t perfect matchings has in- and out-degree t", "[graph][property]") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {2u, 6u, 10u}) {
        std::vector<dsc::DirectedPerfectMatching> ms;
        for (std::size_t t = 1; t <= 5; ++t) {
            ms.push_back(dsc::gen::random_perfect_matching(n, rng));
            const DiGraph h = dsc::union_of_matchings(n, ms);
            CHECK(h.num_arcs() == t * n);
            std::vector<std::size_t> in(n, 0), out(n, 0);
            for (const Arc& a : h.arcs()) ++out[a.tail], ++in[a.head];
            for (std::size_t v = 0; v < n; ++v) {
                CHECK(in[v] == t);
                CHECK(out[v] == t);
            }
        }
    }
}

TEST_CASE("graph construction rejects out-of-range arcs", "[graph]") {
    CHECK_THROWS_AS(DiGraph(2, {{0, 2}}), dsc::Error);
    DiGraph g(2);
    CHECK_THROWS_AS(g.add_arc(3, 0), dsc::Error);
}

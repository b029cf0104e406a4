#include "dsc/generators.hpp"
#include "dsc/matching_player.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

using dsc::Cut;
using dsc::DiGraph;
using dsc::Direction;
using dsc::Rational;

namespace {

using ArcLoad = std::map<std::pair<dsc::Vertex, dsc::Vertex>, std::int64_t>;

ArcLoad multiplicities(const DiGraph& g) {
    ArcLoad mult;
    for (const dsc::Arc& a : g.arcs()) ++mult[{a.tail, a.head}];
    return mult;
}

// Every path is a G-walk from tail to head; returns per-arc usage.
ArcLoad check_paths(const DiGraph& g, const std::vector<dsc::EmbeddedArc>& arcs) {
    const ArcLoad mult = multiplicities(g);
    ArcLoad load;
    for (const auto& e : arcs) {
        REQUIRE(e.path.size() >= 2);
        CHECK(e.path.front() == e.tail);
        CHECK(e.path.back() == e.head);
        for (std::size_t i = 0; i + 1 < e.path.size(); ++i) {
            CHECK(mult.contains({e.path[i], e.path[i + 1]}));
            ++load[{e.path[i], e.path[i + 1]}];
        }
    }
    return load;
}

void check_matching_invariants(const DiGraph& g, const Cut& s, const Rational& alpha, const dsc::MatchingOutcome& out) {
    const auto& m = out.matching();
    CHECK(dsc::perfect_matching_violation(m).empty());
    const std::size_t half = g.num_vertices() / 2;
    CHECK(m.forward.size() == half);
    CHECK(m.backward.size() == half);
    for (const auto& e : m.forward) CHECK((s.contains(e.tail) && !s.contains(e.head)));
    for (const auto& e : m.backward) CHECK((!s.contains(e.tail) && s.contains(e.head)));
    const ArcLoad mult = multiplicities(g);
    const std::int64_t cap = dsc::ceil_inverse(alpha);
    for (const auto* part : {&m.forward, &m.backward})
        for (const auto& [arc, used] : check_paths(g, *part)) CHECK(used <= cap * mult.at(arc));
    CHECK(out.flow_values == std::vector<dsc::Capacity>{static_cast<dsc::Capacity>(half), static_cast<dsc::Capacity>(half)});
}

}  // namespace

TEST_CASE("flow network layout", "[matching_player]") {
    const DiGraph k4 = dsc::gen::bidirected_complete(4);
    const Cut s(4, {0, 1});
    const auto net = dsc::build_flow_network(k4, s, Direction::forward, 1);
    CHECK(net.num_nodes == 6);
    CHECK(net.source == 4);
    CHECK(net.sink == 5);
    REQUIRE(net.arcs.size() == 16);
    for (std::size_t k = 0; k < 12; ++k) CHECK(net.arcs[k].capacity == 1);
    CHECK(net.arcs[12].tail == 4);
    CHECK(net.arcs[12].head == 0);
    CHECK(net.arcs[13].head == 1);
    CHECK(net.arcs[14].tail == 2);
    CHECK(net.arcs[15].tail == 3);
    CHECK(net.arcs[15].head == 5);

    const auto back = dsc::build_flow_network(k4, s, Direction::backward, Rational(2, 3));
    CHECK(back.arcs[0].capacity == 2);
    CHECK(back.arcs[12].head == 2);
    CHECK(back.arcs[14].tail == 0);

    CHECK_THROWS_AS(dsc::build_flow_network(k4, Cut(4, {0}), Direction::forward, 1), dsc::Error);
}

TEST_CASE("complete graph yields a matching", "[matching_player]") {
    const DiGraph k4 = dsc::gen::bidirected_complete(4);
    const Cut s(4, {0, 1});
    const auto out = dsc::find_matching_or_cut(k4, s, 1);
    REQUIRE(out.is_matching());
    check_matching_invariants(k4, s, 1, out);
    // Direct arcs exist, so every embedding is a single hop.
    for (const auto* part : {&out.matching().forward, &out.matching().backward})
        for (const auto& e : *part) CHECK(e.path.size() == 2);
}

TEST_CASE("no arcs out of S gives an expansion-0 cut after one flow", "[matching_player]") {
    // Two bidirected pairs {0,1} and {2,3}, joined only by arcs into {0,1}.
    DiGraph g(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {2, 0}, {3, 1}});
    const auto out = dsc::find_matching_or_cut(g, Cut(4, {0, 1}), 1);
    REQUIRE_FALSE(out.is_matching());
    CHECK(out.flow_values == std::vector<dsc::Capacity>{0});
    CHECK(out.cut().expansion == 0);
    CHECK(out.cut().cut == Cut(4, {0, 1}));
    CHECK(out.cut().direction == Direction::forward);
}

TEST_CASE("the backward flow can be the one that fails", "[matching_player]") {
    DiGraph g(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {0, 2}, {1, 3}});
    const auto out = dsc::find_matching_or_cut(g, Cut(4, {0, 1}), 1);
    REQUIRE_FALSE(out.is_matching());
    CHECK(out.flow_values == std::vector<dsc::Capacity>{2, 0});
    CHECK(out.cut().direction == Direction::backward);
    CHECK(out.cut().expansion == 0);
}

TEST_CASE("directed 8-cycle with a contiguous bisection returns a sparse cut", "[matching_player]") {
    const DiGraph c8 = dsc::gen::directed_cycle(8);
    const auto out = dsc::find_matching_or_cut(c8, Cut(8, {0, 1, 2, 3}), 1);
    REQUIRE_FALSE(out.is_matching());
    CHECK(out.flow_values.front() == 1);
    CHECK(out.cut().expansion <= 1);
    CHECK(dsc::expansion(c8, out.cut().cut) == out.cut().expansion);
}

TEST_CASE("small alpha lets the 8-cycle route a full matching", "[matching_player]") {
    const DiGraph c8 = dsc::gen::directed_cycle(8);
    const Cut s(8, {0, 1, 2, 3});
    const auto out = dsc::find_matching_or_cut(c8, s, Rational(1, 4));
    REQUIRE(out.is_matching());
    check_matching_invariants(c8, s, Rational(1, 4), out);
}

TEST_CASE("odd vertex counts are rejected", "[matching_player]") {
    CHECK_THROWS_AS(dsc::find_matching_or_cut(dsc::gen::directed_cycle(5), Cut(5, {0, 1}), 1), dsc::Error);
}

TEST_CASE("matching player outcomes satisfy their guarantees", "[matching_player][property]") {
    std::mt19937_64 rng(12);
    int matchings = 0, cuts = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 * (1 + rng() % 7);
        const std::size_t m = n + rng() % (n * (n - 1) - n + 1);
        const DiGraph g = dsc::gen::random_strongly_connected(n, m, rng);
        std::vector<dsc::Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), dsc::Vertex{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        const Cut s(n, std::vector<dsc::Vertex>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n / 2)));
        const auto grid = std::vector<Rational>{Rational(1, 8), Rational(1, 3), Rational(1, 2), 1, 2};
        const Rational alpha = grid[rng() % grid.size()];

        const auto out = dsc::find_matching_or_cut(g, s, alpha);
        if (out.is_matching()) {
            ++matchings;
            check_matching_invariants(g, s, alpha, out);
        } else {
            ++cuts;
            const auto& mc = out.cut();
            CHECK(mc.expansion <= alpha);
            CHECK(dsc::expansion(g, mc.cut) == mc.expansion);
            CHECK(out.flow_values.back() < static_cast<dsc::Capacity>(n / 2));
        }
        CHECK(dsc::find_matching_or_cut(g, s, alpha).flow_values == out.flow_values);
    }
    CHECK(matchings > 0);
    CHECK(cuts > 0);
}

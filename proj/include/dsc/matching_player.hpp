#pragma once

// The matching player. For a bisection (S, S̄) it solves two unit-demand
// max-flow problems over G, one routing S into S̄ and one routing S̄ into S,
// with every G-arc given capacity ceil(1/alpha). If both saturate, the
// decomposed flow paths give a perfect directed matching together with its
// embedding in G. If either falls short of n/2, the source side of the min
// cut is a cut of G with expansion at most alpha.

#include "dsc/error.hpp"
#include "dsc/graph.hpp"
#include "dsc/matching.hpp"
#include "dsc/maxflow.hpp"
#include "dsc/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dsc {

enum class Direction { forward, backward };

inline const char* direction_name(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

/// Node layout: G's vertices keep their ids, then super-source n and
/// super-sink n+1. Arc layout: G's arcs in input order, then the source arcs,
/// then the sink arcs (both in ascending vertex order).
inline FlowNetwork build_flow_network(const DiGraph& g, const Cut& s, Direction direction, const Rational& alpha) {
    check_cut_for(g, s);
    const std::size_t n = g.num_vertices();
    if (2 * s.size() != n) throw Error(Errc::invalid_cut, "matching player needs a bisection (|S| = n/2)");
    const Capacity arc_capacity = ceil_inverse(alpha);

    FlowNetwork net;
    net.num_nodes = n + 2;
    net.source = n;
    net.sink = n + 1;
    net.arcs.reserve(g.num_arcs() + n);
    for (const Arc& a : g.arcs()) net.add_arc(a.tail, a.head, arc_capacity);
    const bool origin_is_s = direction == Direction::forward;
    for (std::size_t v = 0; v < n; ++v)
        if (s.contains(static_cast<Vertex>(v)) == origin_is_s) net.add_arc(net.source, v, 1);
    for (std::size_t v = 0; v < n; ++v)
        if (s.contains(static_cast<Vertex>(v)) != origin_is_s) net.add_arc(v, net.sink, 1);
    return net;
}

/// A sparse cut found by a failed flow.
struct MatchingCut {
    Cut cut;
    Rational expansion;
    Direction direction = Direction::forward;
    std::size_t cut_source_arcs = 0;  // origin vertices left on the sink side
    std::size_t cut_sink_arcs = 0;    // destination vertices on the source side
};

struct MatchingOutcome {
    std::variant<DirectedPerfectMatching, MatchingCut> result;
    std::vector<Capacity> flow_values;  // one entry per max-flow solved

    bool is_matching() const { return std::holds_alternative<DirectedPerfectMatching>(result); }
    const DirectedPerfectMatching& matching() const { return std::get<DirectedPerfectMatching>(result); }
    const MatchingCut& cut() const { return std::get<MatchingCut>(result); }
};

namespace detail {

inline MatchingCut extract_sparse_cut(const DiGraph& g, const Cut& s, Direction direction, const Rational& alpha,
                                      const FlowNetwork& net, const FlowAssignment& flow) {
    const MinCut mc = min_cut(net, flow);
    const std::size_t n = g.num_vertices();
    std::vector<bool> member(mc.source_side.begin(), mc.source_side.begin() + static_cast<std::ptrdiff_t>(n));
    const std::size_t side_size = static_cast<std::size_t>(std::ranges::count(member, true));
    if (side_size == 0 || side_size == n)
        throw Error(Errc::internal_consistency, "min cut of a failed flow does not split G's vertices");

    MatchingCut result{Cut::from_membership(member), 0, direction, 0, 0};
    const bool origin_is_s = direction == Direction::forward;
    for (std::size_t v = 0; v < n; ++v) {
        const bool origin = s.contains(static_cast<Vertex>(v)) == origin_is_s;
        if (origin && !member[v]) ++result.cut_source_arcs;
        if (!origin && member[v]) ++result.cut_sink_arcs;
    }
    result.expansion = expansion(g, result.cut);

    // The guarantee is re-derived, not trusted.
    if (result.expansion > alpha)
        throw Error(Errc::internal_consistency, "matching player cut has expansion " + to_string(result.expansion) +
                                                    " > alpha " + to_string(alpha));
    const std::size_t half = n / 2;
    const std::size_t worst = std::max(result.cut_source_arcs, result.cut_sink_arcs);
    const std::size_t smaller = std::min(result.cut.size(), n - result.cut.size());
    if (worst >= half || smaller < half - worst)
        throw Error(Errc::internal_consistency, "matching player cut is smaller than the min-cut accounting allows");
    return result;
}

inline std::vector<EmbeddedArc> extract_matching_arcs(const FlowNetwork& net, const FlowAssignment& flow) {
    const FlowAssignment acyclic = cancel_cycles(net, flow);
    const auto paths = decompose_paths(net, acyclic);
    std::vector<EmbeddedArc> arcs;
    arcs.reserve(paths.size());
    for (const FlowPath& p : paths) {
        // source, origin vertex, ..., destination vertex, sink
        if (p.nodes.size() < 3) throw Error(Errc::internal_consistency, "flow path skips G");
        EmbeddedArc e;
        e.path.reserve(p.nodes.size() - 2);
        for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) e.path.push_back(static_cast<Vertex>(p.nodes[i]));
        e.tail = e.path.front();
        e.head = e.path.back();
        arcs.push_back(std::move(e));
    }
    std::ranges::sort(arcs, {}, &EmbeddedArc::tail);
    return arcs;
}

}  // namespace detail

/// Either a perfect directed matching across (S, S̄) embedded in G with
/// per-direction congestion ceil(1/alpha), or a cut of expansion <= alpha.
/// The backward flow is only solved when the forward flow saturates.
inline MatchingOutcome find_matching_or_cut(const DiGraph& g, const Cut& s, const Rational& alpha) {
    const std::size_t n = g.num_vertices();
    if (n % 2 != 0) throw Error(Errc::odd_vertex_count, "matching player needs an even vertex count");
    const auto half = static_cast<Capacity>(n / 2);

    MatchingOutcome outcome{DirectedPerfectMatching{n, {}, {}}, {}};
    auto& matching = std::get<DirectedPerfectMatching>(outcome.result);
    for (Direction d : {Direction::forward, Direction::backward}) {
        const FlowNetwork net = build_flow_network(g, s, d, alpha);
        const FlowAssignment flow = max_flow(net);
        outcome.flow_values.push_back(flow.value);
        if (flow.value > half) throw Error(Errc::internal_consistency, "flow exceeds the source capacity n/2");
        if (flow.value < half) {
            outcome.result = detail::extract_sparse_cut(g, s, d, alpha, net, flow);
            return outcome;
        }
        min_cut(net, flow);  // duality check on every solve
        (d == Direction::forward ? matching.forward : matching.backward) = detail::extract_matching_arcs(net, flow);
    }
    require_perfect(matching);
    return outcome;
}

}  // namespace dsc

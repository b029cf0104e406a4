#pragma once

// Integral single-commodity max-flow (Dinic's blocking flow), min-cut
// extraction from the residual network, flow-cycle cancellation, and
// decomposition of an acyclic flow into unit source-sink paths.

#include "dsc/error.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace dsc {

using Capacity = std::int64_t;

struct FlowArc {
    std::size_t tail = 0;
    std::size_t head = 0;
    Capacity capacity = 0;
};

struct FlowNetwork {
    std::size_t num_nodes = 0;
    std::vector<FlowArc> arcs;
    std::size_t source = 0;
    std::size_t sink = 0;

    std::size_t add_arc(std::size_t tail, std::size_t head, Capacity capacity) {
        arcs.push_back({tail, head, capacity});
        return arcs.size() - 1;
    }

    void validate() const {
        if (source >= num_nodes || sink >= num_nodes)
            throw Error(Errc::invalid_network, "source/sink out of range");
        if (source == sink) throw Error(Errc::invalid_network, "source equals sink");
        for (const FlowArc& a : arcs) {
            if (a.tail >= num_nodes || a.head >= num_nodes)
                throw Error(Errc::invalid_network, "arc endpoint out of range");
            if (a.capacity < 0) throw Error(Errc::invalid_network, "negative capacity");
        }
    }
};

struct FlowAssignment {
    std::vector<Capacity> flow;  // per arc, same order as FlowNetwork::arcs
    Capacity value = 0;
};

struct MinCut {
    std::vector<bool> source_side;
    Capacity capacity = 0;
};

/// A unit source->sink path, as arc indices and the node sequence they visit.
struct FlowPath {
    std::vector<std::size_t> arcs;
    std::vector<std::size_t> nodes;
};

/// Net out-flow minus in-flow at every node.
inline std::vector<Capacity> divergence(const FlowNetwork& net, const FlowAssignment& f) {
    std::vector<Capacity> div(net.num_nodes, 0);
    for (std::size_t k = 0; k < net.arcs.size(); ++k) {
        div[net.arcs[k].tail] += f.flow[k];
        div[net.arcs[k].head] -= f.flow[k];
    }
    return div;
}

/// Throws unless f respects capacities, is conserved away from source and
/// sink, and its value is the source's net out-flow.
inline void check_flow(const FlowNetwork& net, const FlowAssignment& f) {
    if (f.flow.size() != net.arcs.size()) throw Error(Errc::internal_consistency, "flow size mismatch");
    for (std::size_t k = 0; k < net.arcs.size(); ++k)
        if (f.flow[k] < 0 || f.flow[k] > net.arcs[k].capacity)
            throw Error(Errc::internal_consistency, "flow violates capacity on arc " + std::to_string(k));
    const auto div = divergence(net, f);
    for (std::size_t v = 0; v < net.num_nodes; ++v)
        if (v != net.source && v != net.sink && div[v] != 0)
            throw Error(Errc::internal_consistency, "flow not conserved at node " + std::to_string(v));
    if (div[net.source] != f.value) throw Error(Errc::internal_consistency, "flow value mismatch");
}

namespace detail {

/// Residual graph with paired forward/backward edges. Edge 2k is the forward
/// copy of input arc k and edge 2k+1 its reverse.
class Residual {
  public:
    explicit Residual(const FlowNetwork& net) : head_(2 * net.arcs.size()), cap_(2 * net.arcs.size()), adj_(net.num_nodes) {
        for (std::size_t k = 0; k < net.arcs.size(); ++k) {
            const FlowArc& a = net.arcs[k];
            head_[2 * k] = a.head;
            cap_[2 * k] = a.capacity;
            head_[2 * k + 1] = a.tail;
            cap_[2 * k + 1] = 0;
            adj_[a.tail].push_back(2 * k);
            adj_[a.head].push_back(2 * k + 1);
        }
    }

    Capacity run(std::size_t s, std::size_t t) {
        Capacity total = 0;
        while (build_levels(s, t)) {
            iter_.assign(adj_.size(), 0);
            total += blocking_flow(s, t);
        }
        return total;
    }

    Capacity flow_on(std::size_t arc_index, Capacity capacity) const { return capacity - cap_[2 * arc_index]; }

  private:
    bool build_levels(std::size_t s, std::size_t t) {
        level_.assign(adj_.size(), -1);
        std::queue<std::size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            for (std::size_t e : adj_[v]) {
                if (cap_[e] > 0 && level_[head_[e]] < 0) {
                    level_[head_[e]] = level_[v] + 1;
                    q.push(head_[e]);
                }
            }
        }
        return level_[t] >= 0;
    }

    // Iterative augmenting-path search in the level graph; retreats to the
    // tail of the first saturated edge after each augmentation.
    Capacity blocking_flow(std::size_t s, std::size_t t) {
        Capacity pushed = 0;
        std::vector<std::size_t> path;
        std::size_t v = s;
        for (;;) {
            if (v == t) {
                Capacity bottleneck = std::numeric_limits<Capacity>::max();
                for (std::size_t e : path) bottleneck = std::min(bottleneck, cap_[e]);
                std::size_t first_saturated = path.size();
                for (std::size_t i = 0; i < path.size(); ++i) {
                    cap_[path[i]] -= bottleneck;
                    cap_[path[i] ^ 1] += bottleneck;
                    if (cap_[path[i]] == 0 && first_saturated == path.size()) first_saturated = i;
                }
                pushed += bottleneck;
                path.resize(first_saturated);
                v = path.empty() ? s : head_[path.back()];
                continue;
            }
            bool advanced = false;
            while (iter_[v] < adj_[v].size()) {
                std::size_t e = adj_[v][iter_[v]];
                if (cap_[e] > 0 && level_[head_[e]] == level_[v] + 1) {
                    path.push_back(e);
                    v = head_[e];
                    advanced = true;
                    break;
                }
                ++iter_[v];
            }
            if (advanced) continue;
            if (v == s) break;
            level_[v] = -1;  // dead end for this phase
            path.pop_back();
            v = path.empty() ? s : head_[path.back()];
            ++iter_[v];
        }
        return pushed;
    }

    std::vector<std::size_t> head_;
    std::vector<Capacity> cap_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> iter_;
};

}  // namespace detail

/// Maximum integral flow. Deterministic for a fixed arc order.
inline FlowAssignment max_flow(const FlowNetwork& net) {
    net.validate();
    detail::Residual residual(net);
    FlowAssignment result;
    result.value = residual.run(net.source, net.sink);
    result.flow.resize(net.arcs.size());
    for (std::size_t k = 0; k < net.arcs.size(); ++k) result.flow[k] = residual.flow_on(k, net.arcs[k].capacity);
    return result;
}

/// Source side = nodes reachable from the source in the residual network of
/// `flow`. Max-flow/min-cut duality is checked, not assumed.
inline MinCut min_cut(const FlowNetwork& net, const FlowAssignment& flow) {
    net.validate();
    std::vector<std::vector<std::size_t>> out(net.num_nodes), in(net.num_nodes);
    for (std::size_t k = 0; k < net.arcs.size(); ++k) {
        out[net.arcs[k].tail].push_back(k);
        in[net.arcs[k].head].push_back(k);
    }
    MinCut cut;
    cut.source_side.assign(net.num_nodes, false);
    std::vector<std::size_t> stack{net.source};
    cut.source_side[net.source] = true;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t k : out[v]) {
            std::size_t w = net.arcs[k].head;
            if (!cut.source_side[w] && flow.flow[k] < net.arcs[k].capacity) {
                cut.source_side[w] = true;
                stack.push_back(w);
            }
        }
        for (std::size_t k : in[v]) {
            std::size_t w = net.arcs[k].tail;
            if (!cut.source_side[w] && flow.flow[k] > 0) {
                cut.source_side[w] = true;
                stack.push_back(w);
            }
        }
    }
    if (cut.source_side[net.sink])
        throw Error(Errc::internal_consistency, "sink reachable in residual network: flow is not maximum");
    for (const FlowArc& a : net.arcs)
        if (cut.source_side[a.tail] && !cut.source_side[a.head]) cut.capacity += a.capacity;
    if (cut.capacity != flow.value)
        throw Error(Errc::internal_consistency, "min-cut capacity " + std::to_string(cut.capacity) +
                                                    " differs from flow value " + std::to_string(flow.value));
    return cut;
}

/// Removes every directed cycle of positive flow. Value and divergence at
/// every node are unchanged; per-arc flow only decreases.
inline FlowAssignment cancel_cycles(const FlowNetwork& net, FlowAssignment flow) {
    const std::size_t n = net.num_nodes;
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t k = 0; k < net.arcs.size(); ++k) out[net.arcs[k].tail].push_back(k);

    enum : char { white, gray, black };
    std::vector<char> color(n, white);
    std::vector<std::size_t> iter(n, 0);
    std::vector<std::size_t> pos_in_path(n, 0);

    for (std::size_t root = 0; root < n; ++root) {
        if (color[root] != white) continue;
        std::vector<std::size_t> nodes{root};  // DFS path
        std::vector<std::size_t> path;         // arcs between consecutive path nodes
        color[root] = gray;
        pos_in_path[root] = 0;
        while (!nodes.empty()) {
            const std::size_t v = nodes.back();
            bool moved = false;
            while (iter[v] < out[v].size()) {
                const std::size_t k = out[v][iter[v]];
                if (flow.flow[k] == 0) {
                    ++iter[v];
                    continue;
                }
                const std::size_t w = net.arcs[k].head;
                if (color[w] == white) {
                    color[w] = gray;
                    pos_in_path[w] = nodes.size();
                    nodes.push_back(w);
                    path.push_back(k);
                    moved = true;
                    break;
                }
                if (color[w] == gray) {
                    // Cycle: path arcs from w onwards, then k.
                    const std::size_t start = pos_in_path[w];
                    Capacity delta = flow.flow[k];
                    for (std::size_t i = start; i < path.size(); ++i) delta = std::min(delta, flow.flow[path[i]]);
                    for (std::size_t i = start; i < path.size(); ++i) flow.flow[path[i]] -= delta;
                    flow.flow[k] -= delta;
                    // Unwind to the tail of the first zeroed arc on the cycle.
                    std::size_t cut_at = path.size();
                    for (std::size_t i = start; i < path.size(); ++i)
                        if (flow.flow[path[i]] == 0) {
                            cut_at = i;
                            break;
                        }
                    while (path.size() > cut_at) {
                        color[nodes.back()] = white;
                        nodes.pop_back();
                        path.pop_back();
                    }
                    moved = true;
                    break;
                }
                ++iter[v];  // black: no cycle through w
            }
            if (moved) continue;
            color[v] = black;
            nodes.pop_back();
            if (!path.empty()) {
                path.pop_back();
                ++iter[nodes.back()];
            }
        }
    }
    return flow;
}

/// Splits an acyclic integral flow into `value` unit source->sink paths by
/// greedy walks along positive-flow arcs. Throws if mass is left over.
inline std::vector<FlowPath> decompose_paths(const FlowNetwork& net, const FlowAssignment& flow) {
    std::vector<std::vector<std::size_t>> out(net.num_nodes);
    for (std::size_t k = 0; k < net.arcs.size(); ++k) out[net.arcs[k].tail].push_back(k);
    std::vector<Capacity> remaining = flow.flow;
    std::vector<std::size_t> iter(net.num_nodes, 0);

    std::vector<FlowPath> paths;
    paths.reserve(static_cast<std::size_t>(std::max<Capacity>(flow.value, 0)));
    for (Capacity unit = 0; unit < flow.value; ++unit) {
        FlowPath p;
        std::size_t v = net.source;
        p.nodes.push_back(v);
        while (v != net.sink) {
            while (iter[v] < out[v].size() && remaining[out[v][iter[v]]] == 0) ++iter[v];
            if (iter[v] == out[v].size())
                throw Error(Errc::internal_consistency, "path walk stuck at node " + std::to_string(v));
            if (p.arcs.size() > net.arcs.size())
                throw Error(Errc::internal_consistency, "path walk revisits arcs: flow has a cycle");
            const std::size_t k = out[v][iter[v]];
            --remaining[k];
            p.arcs.push_back(k);
            v = net.arcs[k].head;
            p.nodes.push_back(v);
        }
        paths.push_back(std::move(p));
    }
    for (std::size_t k = 0; k < remaining.size(); ++k)
        if (remaining[k] != 0)
            throw Error(Errc::internal_consistency,
                        "flow mass left on arc " + std::to_string(k) + " after extracting all paths");
    return paths;
}

}  // namespace dsc

#pragma once

#include "dsc/error.hpp"
#include "dsc/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dsc {

using Vertex = std::uint32_t;

struct Arc {
    Vertex tail = 0;
    Vertex head = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Directed multigraph on vertices 0..n-1. Parallel arcs and self-loops are
/// kept; arc order is the insertion order and is significant for
/// reproducibility of everything downstream.
class DiGraph {
  public:
    DiGraph() = default;

    explicit DiGraph(std::size_t n, std::vector<Arc> arcs = {}) : n_(n), arcs_(std::move(arcs)) {
        for (const Arc& a : arcs_) check_arc(a);
    }

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_arcs() const noexcept { return arcs_.size(); }
    std::span<const Arc> arcs() const noexcept { return arcs_; }

    void add_arc(Vertex tail, Vertex head) {
        Arc a{tail, head};
        check_arc(a);
        arcs_.push_back(a);
    }

    /// Sorted arc multiset; two graphs with equal canonical arcs are the same
    /// instance.
    std::vector<Arc> canonical_arcs() const {
        std::vector<Arc> sorted = arcs_;
        std::ranges::sort(sorted);
        return sorted;
    }

    std::vector<std::vector<Vertex>> out_adjacency() const {
        std::vector<std::vector<Vertex>> adj(n_);
        for (const Arc& a : arcs_) adj[a.tail].push_back(a.head);
        return adj;
    }

    friend bool operator==(const DiGraph& a, const DiGraph& b) {
        return a.n_ == b.n_ && a.canonical_arcs() == b.canonical_arcs();
    }

  private:
    void check_arc(const Arc& a) const {
        if (a.tail >= n_ || a.head >= n_)
            throw Error(Errc::invalid_graph, "arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) +
                                                 ") out of range for n=" + std::to_string(n_));
    }

    std::size_t n_ = 0;
    std::vector<Arc> arcs_;
};

/// One side S of a partition (S, V\S). Expansion is measured on the arcs
/// leaving the stored side, so the side is kept exactly as given.
class Cut {
  public:
    Cut(std::size_t n, std::vector<Vertex> side) : n_(n), side_(std::move(side)), member_(n, false) {
        std::ranges::sort(side_);
        if (std::ranges::adjacent_find(side_) != side_.end())
            throw Error(Errc::invalid_cut, "cut side contains a duplicate vertex");
        for (Vertex v : side_) {
            if (v >= n_) throw Error(Errc::invalid_cut, "cut vertex " + std::to_string(v) + " out of range");
            member_[v] = true;
        }
        if (side_.empty() || side_.size() >= n_)
            throw Error(Errc::invalid_cut, "cut side must be a proper nonempty subset (|S|=" +
                                               std::to_string(side_.size()) + ", n=" + std::to_string(n_) + ")");
    }

    static Cut from_membership(const std::vector<bool>& member) {
        std::vector<Vertex> side;
        for (std::size_t v = 0; v < member.size(); ++v)
            if (member[v]) side.push_back(static_cast<Vertex>(v));
        return Cut(member.size(), std::move(side));
    }

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t size() const noexcept { return side_.size(); }
    std::span<const Vertex> side() const noexcept { return side_; }
    bool contains(Vertex v) const { return v < n_ && member_[v]; }
    const std::vector<bool>& membership() const noexcept { return member_; }

    Cut complement() const {
        std::vector<Vertex> other;
        other.reserve(n_ - side_.size());
        for (std::size_t v = 0; v < n_; ++v)
            if (!member_[v]) other.push_back(static_cast<Vertex>(v));
        return Cut(n_, std::move(other));
    }

    /// The smaller side (ties: the side holding vertex 0). Used only for
    /// comparing partitions, never for measuring expansion.
    Cut canonical() const {
        const std::size_t k = side_.size();
        if (2 * k < n_ || (2 * k == n_ && member_[0])) return *this;
        return complement();
    }

    friend bool operator==(const Cut& a, const Cut& b) { return a.n_ == b.n_ && a.side_ == b.side_; }

  private:
    std::size_t n_;
    std::vector<Vertex> side_;
    std::vector<bool> member_;
};

inline void check_cut_for(const DiGraph& g, const Cut& s) {
    if (s.num_vertices() != g.num_vertices())
        throw Error(Errc::invalid_cut, "cut is over " + std::to_string(s.num_vertices()) +
                                           " vertices, graph has " + std::to_string(g.num_vertices()));
}

/// Arcs with tail in S and head outside S, with multiplicity, in graph order.
inline std::vector<Arc> out_boundary(const DiGraph& g, const Cut& s) {
    check_cut_for(g, s);
    std::vector<Arc> boundary;
    for (const Arc& a : g.arcs())
        if (s.contains(a.tail) && !s.contains(a.head)) boundary.push_back(a);
    return boundary;
}

inline std::size_t out_boundary_size(const DiGraph& g, const Cut& s) {
    check_cut_for(g, s);
    return static_cast<std::size_t>(std::ranges::count_if(
        g.arcs(), [&](const Arc& a) { return s.contains(a.tail) && !s.contains(a.head); }));
}

/// |delta_out(S)| / min(|S|, n - |S|), exact.
inline Rational expansion(const DiGraph& g, const Cut& s) {
    const std::size_t crossing = out_boundary_size(g, s);
    const std::size_t smaller = std::min(s.size(), g.num_vertices() - s.size());
    return Rational(BigInt(crossing), BigInt(smaller));
}

/// Strongly connected components, numbered in the order Tarjan's algorithm
/// completes them (a reverse topological order of the condensation, so
/// component 0 is a sink).
inline std::vector<std::size_t> strongly_connected_components(const DiGraph& g, std::size_t* count = nullptr) {
    const std::size_t n = g.num_vertices();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    const auto adj = g.out_adjacency();

    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> stack;
    std::size_t next_index = 0, next_comp = 0;

    struct Frame {
        Vertex v;
        std::size_t edge;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({static_cast<Vertex>(root), 0});
        index[root] = low[root] = next_index++;
        stack.push_back(static_cast<Vertex>(root));
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge < adj[f.v].size()) {
                Vertex w = adj[f.v][f.edge++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const Vertex v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                } while (w != v);
                ++next_comp;
            }
        }
    }
    if (count) *count = next_comp;
    return comp;
}

/// If G is not strongly connected, a sink component of the condensation: it
/// has no leaving arcs, so its expansion is exactly 0.
inline std::optional<Cut> find_zero_expansion_cut(const DiGraph& g) {
    if (g.num_vertices() < 2) throw Error(Errc::invalid_graph, "need at least two vertices");
    std::size_t count = 0;
    const auto comp = strongly_connected_components(g, &count);
    if (count == 1) return std::nullopt;
    std::vector<Vertex> side;
    for (std::size_t v = 0; v < comp.size(); ++v)
        if (comp[v] == 0) side.push_back(static_cast<Vertex>(v));
    return Cut(g.num_vertices(), std::move(side));
}

inline bool is_strongly_connected(const DiGraph& g) {
    std::size_t count = 0;
    strongly_connected_components(g, &count);
    return count <= 1;
}

}  // namespace dsc

#pragma once

// Edge-list text format:
//
//   # comment lines are ignored, as are blank lines
//   n m
//   tail head        (m lines, 0-indexed)
//
// The flow variant adds a "s t" line after the header and a capacity column.

#include "dsc/error.hpp"
#include "dsc/graph.hpp"
#include "dsc/maxflow.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dsc {

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::string_view> fields;
};

/// Splits text into non-comment, non-blank lines of whitespace-separated
/// fields. Views point into `text`.
inline std::vector<Line> tokenize_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        std::size_t eol = text.find('\n');
        std::string_view raw = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        std::size_t first = raw.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || raw[first] == '#') continue;
        Line line{number, {}};
        std::size_t pos = 0;
        while (pos < raw.size()) {
            pos = raw.find_first_not_of(" \t\r", pos);
            if (pos == std::string_view::npos) break;
            std::size_t end = raw.find_first_of(" \t\r", pos);
            if (end == std::string_view::npos) end = raw.size();
            line.fields.push_back(raw.substr(pos, end - pos));
            pos = end;
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

template <class Int>
Int parse_field(const Line& line, std::size_t i, const char* what) {
    std::string_view f = line.fields[i];
    Int value{};
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (ec != std::errc{} || ptr != f.data() + f.size())
        throw ParseError(line.number, std::string("bad ") + what + " '" + std::string(f) + "'");
    return value;
}

inline void expect_fields(const Line& line, std::size_t count, const char* shape) {
    if (line.fields.size() != count)
        throw ParseError(line.number, std::string("expected \"") + shape + "\", got " +
                                          std::to_string(line.fields.size()) + " fields");
}

}  // namespace detail

inline DiGraph parse_graph(std::string_view text) {
    const auto lines = detail::tokenize_lines(text);
    if (lines.empty()) throw ParseError(1, "missing \"n m\" header");
    detail::expect_fields(lines[0], 2, "n m");
    const auto n = detail::parse_field<std::uint32_t>(lines[0], 0, "vertex count");
    const auto m = detail::parse_field<std::size_t>(lines[0], 1, "arc count");
    if (lines.size() - 1 != m)
        throw ParseError(lines.size() > m + 1 ? lines[m + 1].number : lines.back().number,
                         "header declares " + std::to_string(m) + " arcs, found " + std::to_string(lines.size() - 1));
    std::vector<Arc> arcs;
    arcs.reserve(m);
    for (std::size_t i = 1; i <= m; ++i) {
        const auto& line = lines[i];
        detail::expect_fields(line, 2, "tail head");
        const auto tail = detail::parse_field<std::uint32_t>(line, 0, "tail");
        const auto head = detail::parse_field<std::uint32_t>(line, 1, "head");
        if (tail >= n || head >= n)
            throw ParseError(line.number, "vertex out of range for n=" + std::to_string(n));
        arcs.push_back({tail, head});
    }
    return DiGraph(n, std::move(arcs));
}

inline std::string serialize_graph(const DiGraph& g) {
    std::ostringstream os;
    os << g.num_vertices() << ' ' << g.num_arcs() << '\n';
    for (const Arc& a : g.arcs()) os << a.tail << ' ' << a.head << '\n';
    return os.str();
}

/// Serialization of the sorted arc multiset; input to the graph digest.
inline std::string serialize_canonical(const DiGraph& g) {
    return serialize_graph(DiGraph(g.num_vertices(), g.canonical_arcs()));
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline DiGraph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

/// "n m", "s t", then m lines "tail head capacity".
inline FlowNetwork parse_flow_network(std::string_view text) {
    const auto lines = detail::tokenize_lines(text);
    if (lines.size() < 2) throw ParseError(lines.empty() ? 1 : lines[0].number, "missing \"n m\" / \"s t\" header");
    detail::expect_fields(lines[0], 2, "n m");
    detail::expect_fields(lines[1], 2, "s t");
    FlowNetwork net;
    net.num_nodes = detail::parse_field<std::size_t>(lines[0], 0, "node count");
    const auto m = detail::parse_field<std::size_t>(lines[0], 1, "arc count");
    net.source = detail::parse_field<std::size_t>(lines[1], 0, "source");
    net.sink = detail::parse_field<std::size_t>(lines[1], 1, "sink");
    if (net.source >= net.num_nodes || net.sink >= net.num_nodes)
        throw ParseError(lines[1].number, "source/sink out of range");
    if (net.source == net.sink) throw ParseError(lines[1].number, "source equals sink");
    if (lines.size() - 2 != m)
        throw ParseError(lines.back().number,
                         "header declares " + std::to_string(m) + " arcs, found " + std::to_string(lines.size() - 2));
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto& line = lines[i];
        detail::expect_fields(line, 3, "tail head capacity");
        const auto tail = detail::parse_field<std::size_t>(line, 0, "tail");
        const auto head = detail::parse_field<std::size_t>(line, 1, "head");
        const auto cap = detail::parse_field<Capacity>(line, 2, "capacity");
        if (tail >= net.num_nodes || head >= net.num_nodes) throw ParseError(line.number, "node out of range");
        if (cap < 0) throw ParseError(line.number, "negative capacity");
        net.add_arc(tail, head, cap);
    }
    return net;
}

}  // namespace dsc

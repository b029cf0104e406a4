#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsc {

enum class Errc {
    invalid_graph,
    invalid_cut,
    parse_error,
    odd_vertex_count,
    not_perfect_matching,
    mismatched_vertex_count,
    invalid_network,
    oracle_too_large,
    internal_consistency,
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::invalid_graph: return "invalid_graph";
        case Errc::invalid_cut: return "invalid_cut";
        case Errc::parse_error: return "parse_error";
        case Errc::odd_vertex_count: return "odd_vertex_count";
        case Errc::not_perfect_matching: return "not_perfect_matching";
        case Errc::mismatched_vertex_count: return "mismatched_vertex_count";
        case Errc::invalid_network: return "invalid_network";
        case Errc::oracle_too_large: return "oracle_too_large";
        case Errc::internal_consistency: return "internal_consistency";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : Error(Errc::parse_error, "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

}  // namespace dsc

#pragma once

// Certificate documents: a self-contained JSON record of a solver run, bound
// to its graph by a SHA-256 digest of the canonical (sorted) edge list. All
// rationals are written as exact "num/den" strings.

#include "dsc/certify.hpp"
#include "dsc/game.hpp"
#include "dsc/graph.hpp"
#include "dsc/graph_io.hpp"
#include "dsc/rational.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dsc {

inline constexpr int certificate_schema_version = 1;

inline std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error(Errc::internal_consistency, "SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

inline std::string graph_hash(const DiGraph& g) { return sha256_hex(serialize_canonical(g)); }

struct ConfigEcho {
    std::optional<Rational> alpha;  // unset for --auto
    bool auto_search = false;
    WalkMode mode = WalkMode::exact;
    std::uint64_t seed = 0;
    std::size_t round_cap = 0;

    friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct ProbeSummary {
    Rational alpha;
    std::uint64_t seed = 0;
    std::string branch;
    std::size_t rounds = 0;
    std::size_t max_flow_calls = 0;
    std::vector<RoundTrace> trace;

    friend bool operator==(const ProbeSummary&, const ProbeSummary&) = default;
};

struct CertificateDocument {
    int schema_version = certificate_schema_version;
    std::size_t num_vertices = 0;
    std::size_t num_arcs = 0;
    std::string graph_hash;
    std::string branch;  // "cut" | "expander" | "inconclusive"
    ConfigEcho config;
    std::optional<CutCertificate> cut;
    std::optional<ExpanderCertificate> expander;  // with --auto: the best certified lower bound
    std::optional<Inconclusive> inconclusive;
    std::optional<Rational> initial_potential;
    std::vector<RoundTrace> trace;
    std::vector<ProbeSummary> search;
    std::size_t max_flow_calls = 0;

    friend bool operator==(const CertificateDocument&, const CertificateDocument&) = default;
};

inline const char* branch_name(const GameResult& r) {
    if (r.is_cut()) return "cut";
    if (r.is_expander()) return "expander";
    return "inconclusive";
}

inline CertificateDocument make_document(const DiGraph& g, const GameConfig& config, const GameResult& result) {
    CertificateDocument doc;
    doc.num_vertices = g.num_vertices();
    doc.num_arcs = g.num_arcs();
    doc.graph_hash = graph_hash(g);
    doc.branch = branch_name(result);
    doc.config = ConfigEcho{config.alpha, false, config.mode, config.seed, config.round_cap_for(g.num_vertices())};
    if (result.is_cut()) doc.cut = result.cut();
    if (result.is_expander()) doc.expander = result.expander();
    if (result.is_inconclusive()) doc.inconclusive = std::get<Inconclusive>(result.outcome);
    doc.initial_potential = result.initial_potential;
    doc.trace = result.trace;
    doc.max_flow_calls = result.max_flow_calls;
    return doc;
}

/// Certificate for a graph that is not strongly connected: the zero cut,
/// found before any game is played.
inline CertificateDocument make_zero_cut_document(const DiGraph& g, const ConfigEcho& config, const Cut& zero) {
    CertificateDocument doc;
    doc.num_vertices = g.num_vertices();
    doc.num_arcs = g.num_arcs();
    doc.graph_hash = graph_hash(g);
    doc.branch = "cut";
    doc.config = config;
    doc.cut = CutCertificate{zero, expansion(g, zero), config.alpha.value_or(Rational(0)), CutOrigin::strong_connectivity};
    return doc;
}

inline CertificateDocument make_document(const DiGraph& g, const SearchConfig& config,
                                         const SparsestCutApproximation& approx) {
    CertificateDocument doc;
    doc.num_vertices = g.num_vertices();
    doc.num_arcs = g.num_arcs();
    doc.graph_hash = graph_hash(g);
    doc.branch = "cut";
    doc.config = ConfigEcho{std::nullopt, true, config.mode, config.seed,
                            config.round_cap ? config.round_cap : default_round_cap(g.num_vertices())};
    doc.cut = approx.best_cut;
    doc.expander = approx.best_lower_bound;
    for (const SearchProbe& p : approx.probes) {
        std::size_t rounds = p.result.trace.size();
        doc.search.push_back(ProbeSummary{p.alpha, p.seed, branch_name(p.result), rounds, p.result.max_flow_calls,
                                          p.result.trace});
    }
    doc.max_flow_calls = approx.max_flow_calls;
    return doc;
}

// ---- JSON ------------------------------------------------------------------

namespace detail {

using nlohmann::json;

inline json rational_json(const std::optional<Rational>& q) { return q ? json(to_string(*q)) : json(nullptr); }

inline std::optional<Rational> optional_rational(const json& j) {
    if (j.is_null()) return std::nullopt;
    return parse_rational(j.get<std::string>());
}

inline Rational required_rational(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw Error(Errc::parse_error, std::string("certificate field '") + key + "' must be a \"num/den\" string");
    return parse_rational(j.at(key).get<std::string>());
}

inline json trace_json(const std::vector<RoundTrace>& trace) {
    json arr = json::array();
    for (const RoundTrace& t : trace)
        arr.push_back({{"bisection", t.bisection}, {"flow_values", t.flow_values}, {"potential", rational_json(t.potential)}});
    return arr;
}

inline std::vector<RoundTrace> trace_from_json(const json& arr) {
    std::vector<RoundTrace> trace;
    for (const json& t : arr)
        trace.push_back(RoundTrace{t.at("bisection").get<std::vector<Vertex>>(),
                                   t.at("flow_values").get<std::vector<Capacity>>(), optional_rational(t.at("potential"))});
    return trace;
}

inline json embedded_arcs_json(const std::vector<EmbeddedArc>& arcs) {
    json arr = json::array();
    for (const EmbeddedArc& e : arcs) arr.push_back({{"tail", e.tail}, {"head", e.head}, {"path", e.path}});
    return arr;
}

inline std::vector<EmbeddedArc> embedded_arcs_from_json(const json& arr) {
    std::vector<EmbeddedArc> arcs;
    for (const json& e : arr)
        arcs.push_back(EmbeddedArc{e.at("tail").get<Vertex>(), e.at("head").get<Vertex>(),
                                   e.at("path").get<std::vector<Vertex>>()});
    return arcs;
}

inline CutOrigin origin_from_name(const std::string& s) {
    if (s == "matching_player") return CutOrigin::matching_player;
    if (s == "strong_connectivity") return CutOrigin::strong_connectivity;
    if (s == "bisection") return CutOrigin::bisection;
    throw Error(Errc::parse_error, "unknown cut origin '" + s + "'");
}

}  // namespace detail

inline nlohmann::json to_json(const CertificateDocument& doc) {
    using nlohmann::json;
    using namespace detail;
    json j;
    j["schema_version"] = doc.schema_version;
    j["graph"] = {{"n", doc.num_vertices}, {"m", doc.num_arcs}, {"sha256", doc.graph_hash}};
    j["branch"] = doc.branch;
    j["config"] = {{"alpha", rational_json(doc.config.alpha)},
                   {"auto", doc.config.auto_search},
                   {"mode", mode_name(doc.config.mode)},
                   {"seed", doc.config.seed},
                   {"round_cap", doc.config.round_cap}};
    if (doc.cut) {
        j["cut"] = {{"side", std::vector<Vertex>(doc.cut->cut.side().begin(), doc.cut->cut.side().end())},
                    {"expansion", to_string(doc.cut->expansion)},
                    {"alpha", to_string(doc.cut->alpha)},
                    {"origin", origin_name(doc.cut->origin)}};
    } else {
        j["cut"] = nullptr;
    }
    if (doc.expander) {
        const auto& e = *doc.expander;
        json rounds = json::array();
        for (const auto& m : e.matchings)
            rounds.push_back({{"forward", embedded_arcs_json(m.forward)}, {"backward", embedded_arcs_json(m.backward)}});
        j["expander"] = {{"alpha", to_string(e.alpha)},
                         {"rounds", e.rounds()},
                         {"matchings", rounds},
                         {"congestion_bound", to_string(e.congestion_bound)},
                         {"final_potential", rational_json(e.final_potential)},
                         {"heuristic", e.heuristic},
                         {"implied_lower_bound", to_string(e.implied_lower_bound)}};
    } else {
        j["expander"] = nullptr;
    }
    if (doc.inconclusive)
        j["inconclusive"] = {{"rounds", doc.inconclusive->rounds},
                             {"final_potential", to_string(doc.inconclusive->final_potential)}};
    else
        j["inconclusive"] = nullptr;
    j["initial_potential"] = rational_json(doc.initial_potential);
    j["trace"] = trace_json(doc.trace);
    json search = json::array();
    for (const ProbeSummary& p : doc.search)
        search.push_back({{"alpha", to_string(p.alpha)},
                          {"seed", p.seed},
                          {"branch", p.branch},
                          {"rounds", p.rounds},
                          {"max_flow_calls", p.max_flow_calls},
                          {"trace", trace_json(p.trace)}});
    j["search"] = search;
    j["max_flow_calls"] = doc.max_flow_calls;
    return j;
}

inline std::string serialize_document(const CertificateDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline CertificateDocument parse_document(std::string_view text) {
    using nlohmann::json;
    using namespace detail;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, std::string("certificate is not valid JSON: ") + e.what());
    }
    try {
        CertificateDocument doc;
        doc.schema_version = j.at("schema_version").get<int>();
        if (doc.schema_version != certificate_schema_version)
            throw Error(Errc::parse_error, "unsupported certificate schema version " + std::to_string(doc.schema_version));
        const json& gj = j.at("graph");
        doc.num_vertices = gj.at("n").get<std::size_t>();
        doc.num_arcs = gj.at("m").get<std::size_t>();
        doc.graph_hash = gj.at("sha256").get<std::string>();
        doc.branch = j.at("branch").get<std::string>();
        if (doc.branch != "cut" && doc.branch != "expander" && doc.branch != "inconclusive")
            throw Error(Errc::parse_error, "unknown branch '" + doc.branch + "'");

        const json& cj = j.at("config");
        doc.config.alpha = optional_rational(cj.at("alpha"));
        doc.config.auto_search = cj.at("auto").get<bool>();
        const auto mode = cj.at("mode").get<std::string>();
        if (mode != "exact" && mode != "projected") throw Error(Errc::parse_error, "unknown mode '" + mode + "'");
        doc.config.mode = mode == "exact" ? WalkMode::exact : WalkMode::projected;
        doc.config.seed = cj.at("seed").get<std::uint64_t>();
        doc.config.round_cap = cj.at("round_cap").get<std::size_t>();

        if (const json& c = j.at("cut"); !c.is_null()) {
            doc.cut = CutCertificate{Cut(doc.num_vertices, c.at("side").get<std::vector<Vertex>>()),
                                     required_rational(c, "expansion"), required_rational(c, "alpha"),
                                     origin_from_name(c.at("origin").get<std::string>())};
        }
        if (const json& e = j.at("expander"); !e.is_null()) {
            ExpanderCertificate cert;
            cert.alpha = required_rational(e, "alpha");
            for (const json& m : e.at("matchings"))
                cert.matchings.push_back(DirectedPerfectMatching{doc.num_vertices, embedded_arcs_from_json(m.at("forward")),
                                                                 embedded_arcs_from_json(m.at("backward"))});
            if (e.at("rounds").get<std::size_t>() != cert.matchings.size())
                throw Error(Errc::parse_error, "expander round count disagrees with its matching list");
            cert.congestion_bound = required_rational(e, "congestion_bound");
            cert.final_potential = optional_rational(e.at("final_potential"));
            cert.heuristic = e.at("heuristic").get<bool>();
            cert.implied_lower_bound = required_rational(e, "implied_lower_bound");
            doc.expander = std::move(cert);
        }
        if (const json& ic = j.at("inconclusive"); !ic.is_null())
            doc.inconclusive = Inconclusive{ic.at("rounds").get<std::size_t>(), required_rational(ic, "final_potential")};
        doc.initial_potential = optional_rational(j.at("initial_potential"));
        doc.trace = trace_from_json(j.at("trace"));
        for (const json& p : j.at("search"))
            doc.search.push_back(ProbeSummary{required_rational(p, "alpha"), p.at("seed").get<std::uint64_t>(),
                                              p.at("branch").get<std::string>(), p.at("rounds").get<std::size_t>(),
                                              p.at("max_flow_calls").get<std::size_t>(), trace_from_json(p.at("trace"))});
        doc.max_flow_calls = j.at("max_flow_calls").get<std::size_t>();

        if (doc.branch == "cut" && !doc.cut) throw Error(Errc::parse_error, "cut branch without a cut payload");
        if (doc.branch == "expander" && !doc.expander)
            throw Error(Errc::parse_error, "expander branch without an expander payload");
        if (doc.branch == "inconclusive" && !doc.inconclusive)
            throw Error(Errc::parse_error, "inconclusive branch without its payload");
        return doc;
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, std::string("malformed certificate: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw Error(Errc::parse_error, std::string("malformed certificate: ") + e.what());
    }
}

struct DocumentVerdict {
    bool hash_matches = false;
    Verdict verdict;
};

/// Checks the graph binding, then every certificate the document carries.
inline DocumentVerdict verify_document(const DiGraph& g, const CertificateDocument& doc) {
    DocumentVerdict out;
    out.hash_matches = doc.graph_hash == graph_hash(g) && doc.num_vertices == g.num_vertices();
    if (!out.hash_matches) return out;
    if (doc.cut) {
        out.verdict = verify_cut_certificate(g, *doc.cut);
        if (!out.verdict.accepted()) return out;
    }
    if (doc.expander && !(doc.config.auto_search && doc.expander->heuristic)) {
        out.verdict = verify_expander_certificate(g, *doc.expander);
        if (!out.verdict.accepted()) return out;
    }
    return out;
}

}  // namespace dsc

#include "dsc/certificate_io.hpp"
#include "dsc/generators.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

using dsc::DiGraph;
using dsc::GameConfig;
using dsc::Rational;
using dsc::WalkMode;

TEST_CASE("sha256 of known inputs", "[certificate_io]") {
    CHECK(dsc::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(dsc::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("graph hash ignores arc order but not arcs", "[certificate_io]") {
    const DiGraph a(3, {{0, 1}, {1, 2}, {2, 0}});
    const DiGraph b(3, {{2, 0}, {0, 1}, {1, 2}});
    const DiGraph c(3, {{0, 1}, {1, 2}, {2, 1}});
    CHECK(dsc::graph_hash(a) == dsc::graph_hash(b));
    CHECK(dsc::graph_hash(a) != dsc::graph_hash(c));
    CHECK(dsc::graph_hash(a) == dsc::sha256_hex("3 3\n0 1\n1 2\n2 0\n"));
}

TEST_CASE("documents round-trip through JSON for every branch", "[certificate_io][property]") {
    std::mt19937_64 rng(41);
    std::set<std::string> branches;
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 * (2 + rng() % 4);
        const DiGraph g = dsc::gen::random_strongly_connected(n, n + rng() % (2 * n), rng);
        const std::vector<Rational> alphas{Rational(1, 8), Rational(1, 2), 2};
        const GameConfig cfg{alphas[rng() % alphas.size()], trial % 5 == 0 ? WalkMode::projected : WalkMode::exact,
                             trial % 7 == 0 ? std::size_t{2} : std::size_t{0}, rng(), std::nullopt};
        const auto result = dsc::play_game(g, cfg);
        const auto doc = dsc::make_document(g, cfg, result);
        branches.insert(doc.branch);
        const auto text = dsc::serialize_document(doc);
        const auto back = dsc::parse_document(text);
        CHECK(back == doc);
        CHECK(dsc::serialize_document(back) == text);
    }
    CHECK(branches.size() == 3);
}

TEST_CASE("search documents round-trip and verify", "[certificate_io]") {
    const DiGraph k8 = dsc::gen::bidirected_complete(8);
    const dsc::SearchConfig cfg{WalkMode::exact, 0, 3};
    const auto approx = dsc::approximate_sparsest_cut(k8, cfg);
    const auto doc = dsc::make_document(k8, cfg, approx);
    const auto back = dsc::parse_document(dsc::serialize_document(doc));
    CHECK(back == doc);
    CHECK(back.config.auto_search);
    CHECK_FALSE(back.config.alpha);
    CHECK(back.search.size() == approx.probes.size());
    const auto v = dsc::verify_document(k8, back);
    CHECK(v.hash_matches);
    CHECK(v.verdict.accepted());
}

TEST_CASE("zero-cut documents", "[certificate_io]") {
    const DiGraph g(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}});
    const auto zero = dsc::find_zero_expansion_cut(g);
    REQUIRE(zero);
    const auto doc = dsc::make_zero_cut_document(g, dsc::ConfigEcho{Rational(1), false, WalkMode::exact, 0, 40}, *zero);
    CHECK(doc.cut->expansion == 0);
    CHECK(doc.trace.empty());
    CHECK(dsc::parse_document(dsc::serialize_document(doc)) == doc);
    CHECK(dsc::verify_document(g, doc).verdict.accepted());
}

TEST_CASE("documents are bound to their graph", "[certificate_io]") {
    const DiGraph c8 = dsc::gen::directed_cycle(8);
    const GameConfig cfg{1, WalkMode::exact, 0, 1, std::nullopt};
    const auto doc = dsc::make_document(c8, cfg, dsc::play_game(c8, cfg));
    CHECK(dsc::verify_document(c8, doc).hash_matches);
    DiGraph edited = c8;
    edited.add_arc(0, 4);
    CHECK_FALSE(dsc::verify_document(edited, doc).hash_matches);
}

TEST_CASE("malformed documents are rejected with parse errors", "[certificate_io]") {
    auto code_of = [](const std::string& text) {
        try {
            dsc::parse_document(text);
        } catch (const dsc::Error& e) {
            return e.code();
        }
        return dsc::Errc::internal_consistency;
    };
    CHECK(code_of("not json") == dsc::Errc::parse_error);
    CHECK(code_of("{}") == dsc::Errc::parse_error);
    CHECK(code_of("[1,2]") == dsc::Errc::parse_error);

    const DiGraph c8 = dsc::gen::directed_cycle(8);
    const GameConfig cfg{1, WalkMode::exact, 0, 1, std::nullopt};
    auto j = dsc::to_json(dsc::make_document(c8, cfg, dsc::play_game(c8, cfg)));
    auto broken = j;
    broken["schema_version"] = 99;
    CHECK(code_of(broken.dump()) == dsc::Errc::parse_error);
    broken = j;
    broken["cut"]["expansion"] = 0.5;
    CHECK(code_of(broken.dump()) == dsc::Errc::parse_error);
    broken = j;
    broken["cut"]["expansion"] = "x/y";
    CHECK(code_of(broken.dump()) == dsc::Errc::parse_error);
    broken = j;
    broken["branch"] = "maybe";
    CHECK(code_of(broken.dump()) == dsc::Errc::parse_error);
    broken = j;
    broken["cut"] = nullptr;
    CHECK(code_of(broken.dump()) == dsc::Errc::parse_error);
}

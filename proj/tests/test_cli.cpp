#include "dsc/dsc.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(DSC_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const char* name) { return std::string(DSC_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
    fs::path dir = fs::current_path() / "cli_scratch";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("oracle prints the exact optimum", "[cli]") {
    auto r = run("oracle " + data("cycle4.txt"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.starts_with("OPT = 1/2\n"));

    r = run("oracle " + data("path2.txt"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "OPT = 0\nside = 1\n");

    r = run("oracle " + data("k4bi.txt"));
    CHECK(r.out.starts_with("OPT = 2\n"));

    r = run("oracle " + data("two_triangles.txt"));
    CHECK(r.out == "OPT = 0\nside = 3 4 5\n");
}

TEST_CASE("solve writes exactly the library's certificate", "[cli]") {
    const auto out = scratch("c8.json");
    auto r = run("solve " + data("cycle8.txt") + " --alpha 1 --seed 4 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.starts_with("cut: expansion "));

    const dsc::DiGraph g = dsc::read_graph_file(data("cycle8.txt"));
    const dsc::GameConfig cfg{1, dsc::WalkMode::exact, 0, 4, std::nullopt};
    CHECK(dsc::read_text_file(out.string()) == dsc::serialize_document(dsc::make_document(g, cfg, dsc::play_game(g, cfg))));

    const auto k8 = scratch("k8.json");
    r = run("solve " + data("k8bi.txt") + " --alpha 1 --seed 2 --out " + k8.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.starts_with("expander: rounds "));
    const dsc::DiGraph gk = dsc::read_graph_file(data("k8bi.txt"));
    const dsc::GameConfig kcfg{1, dsc::WalkMode::exact, 0, 2, std::nullopt};
    CHECK(dsc::read_text_file(k8.string()) ==
          dsc::serialize_document(dsc::make_document(gk, kcfg, dsc::play_game(gk, kcfg))));

    r = run("verify " + data("k8bi.txt") + " " + k8.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.starts_with("accept"));
}

TEST_CASE("solve --auto and stdout output", "[cli]") {
    auto r = run("solve " + data("cycle8.txt") + " --auto --seed 1 --out -");
    REQUIRE(r.exit_code == 0);
    const auto json_end = r.out.rfind("}\n");
    REQUIRE(json_end != std::string::npos);
    const auto doc = dsc::parse_document(r.out.substr(0, json_end + 2));
    CHECK(doc.config.auto_search);
    REQUIRE(doc.cut);
    CHECK(doc.cut->expansion == dsc::Rational(1, 4));
}

TEST_CASE("solve is byte-for-byte deterministic", "[cli]") {
    const auto a = scratch("det_a.json"), b = scratch("det_b.json");
    REQUIRE(run("solve " + data("k8bi.txt") + " --auto --seed 9 --out " + a.string()).exit_code == 0);
    REQUIRE(run("solve " + data("k8bi.txt") + " --auto --seed 9 --out " + b.string()).exit_code == 0);
    CHECK(dsc::read_text_file(a.string()) == dsc::read_text_file(b.string()));
}

TEST_CASE("exit codes", "[cli]") {
    const auto odd = scratch("odd.txt");
    write_file(odd, "3 3\n0 1\n1 2\n2 0\n");
    CHECK(run("solve " + odd.string() + " --alpha 1").exit_code == 1);
    CHECK(run("solve " + data("missing.txt") + " --alpha 1").exit_code == 1);
    CHECK(run("solve " + data("cycle8.txt") + " --alpha 1 --auto").exit_code == 1);
    CHECK(run("solve " + data("cycle8.txt")).exit_code == 1);
    CHECK(run("solve " + data("cycle8.txt") + " --alpha 0").exit_code == 1);
    CHECK(run("solve " + data("cycle8.txt") + " --alpha abc").exit_code == 1);
    CHECK(run("bogus").exit_code == 1);
    CHECK(run("solve " + data("k8bi.txt") + " --alpha 1 --round-cap 1").exit_code == 2);

    const auto bad = scratch("bad.txt");
    write_file(bad, "4 2\n0 1\n1 9\n");
    CHECK(run("oracle " + bad.string()).exit_code == 1);
}

TEST_CASE("verify rejects tampered certificates and foreign graphs", "[cli]") {
    const auto good = scratch("tamper_src.json");
    REQUIRE(run("solve " + data("k8bi.txt") + " --alpha 1 --seed 3 --out " + good.string()).exit_code == 0);
    auto j = nlohmann::json::parse(dsc::read_text_file(good.string()));

    auto tampered = j;
    auto& path = tampered["expander"]["matchings"][0]["forward"][0]["path"];
    const auto tail = path[0];
    path = nlohmann::json::array({tail, tail, path.back()});
    const auto bad = scratch("tampered.json");
    write_file(bad, tampered.dump(2));
    auto r = run("verify " + data("k8bi.txt") + " " + bad.string());
    CHECK(r.exit_code == 3);
    CHECK(r.out.starts_with("reject: check 2 "));

    r = run("verify " + data("k4bi.txt") + " " + good.string());
    CHECK(r.exit_code == 1);

    const auto edited = scratch("k8_edited.txt");
    std::string text = dsc::read_text_file(data("k8bi.txt"));
    text.replace(text.find("8 56"), 4, "8 57");
    write_file(edited, text + "0 1\n");
    CHECK(run("verify " + edited.string() + " " + good.string()).exit_code == 1);

    auto cut_doc = scratch("c8cut.json");
    REQUIRE(run("solve " + data("cycle8.txt") + " --alpha 1 --seed 4 --out " + cut_doc.string()).exit_code == 0);
    auto cj = nlohmann::json::parse(dsc::read_text_file(cut_doc.string()));
    cj["cut"]["expansion"] = "1/100";
    write_file(cut_doc, cj.dump(2));
    r = run("verify " + data("cycle8.txt") + " " + cut_doc.string());
    CHECK(r.exit_code == 3);
    CHECK(r.out.starts_with("reject: check 11 "));
}

TEST_CASE("flow prints value and min-cut side", "[cli]") {
    const auto r = run("flow " + data("diamond.flow"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.starts_with("value = 5\n"));
}

TEST_CASE("bench prints a table with one row per graph", "[cli]") {
    const auto r = run("bench --family complete --n 4,8 --seed 1");
    REQUIRE(r.exit_code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
    CHECK(run("bench --family nope").exit_code == 1);
    CHECK(run("bench --n 5").exit_code == 1);
}

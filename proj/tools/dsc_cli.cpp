// dsc: directed sparsest cut via the cut-matching game.
//
// Exit codes: 0 success, 1 input error, 2 inconclusive, 3 verification
// reject, 4 internal error.

#include "dsc/dsc.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_inconclusive = 2;
constexpr int exit_reject = 3;
constexpr int exit_internal = 4;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dsc::Error(dsc::Errc::parse_error, "cannot write '" + path + "'");
    out << text;
}

dsc::WalkMode parse_mode(const std::string& s) {
    if (s == "exact") return dsc::WalkMode::exact;
    if (s == "projected") return dsc::WalkMode::projected;
    throw dsc::Error(dsc::Errc::parse_error, "unknown mode '" + s + "' (expected exact or projected)");
}

std::string join(std::span<const dsc::Vertex> vs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? " " : "") << vs[i];
    return os.str();
}

struct SolveArgs {
    std::string graph_file;
    std::string alpha;
    bool auto_search = false;
    std::uint64_t seed = 0;
    std::string mode = "exact";
    std::size_t round_cap = 0;
    std::string out;
};

int cmd_solve(const SolveArgs& a) {
    if (a.auto_search == !a.alpha.empty()) {
        std::cerr << "error: give exactly one of --alpha or --auto\n";
        return exit_input;
    }
    const dsc::DiGraph g = dsc::read_graph_file(a.graph_file);
    const dsc::WalkMode mode = parse_mode(a.mode);
    if (g.num_vertices() % 2 != 0) {
        std::cerr << "error: the cut-matching game needs an even number of vertices (n=" << g.num_vertices() << ")\n";
        return exit_input;
    }
    if (g.num_vertices() < 2) {
        std::cerr << "error: need at least two vertices\n";
        return exit_input;
    }

    if (a.auto_search) {
        const dsc::SearchConfig config{mode, a.round_cap, a.seed};
        const auto approx = dsc::approximate_sparsest_cut(g, config);
        const auto doc = dsc::make_document(g, config, approx);
        write_output(a.out, dsc::serialize_document(doc));
        std::cout << "cut: expansion " << dsc::to_display(approx.best_cut.expansion) << ", side size "
                  << approx.best_cut.cut.size() << ", origin " << dsc::origin_name(approx.best_cut.origin);
        if (approx.best_lower_bound)
            std::cout << "; lower bound " << dsc::to_display(approx.best_lower_bound->implied_lower_bound) << ", ratio "
                      << dsc::to_display(*approx.ratio());
        std::cout << "; probes " << approx.probes.size() << ", max-flows " << approx.max_flow_calls << "\n";
        return exit_ok;
    }

    const dsc::Rational alpha = dsc::parse_rational(a.alpha);
    if (alpha <= 0) {
        std::cerr << "error: --alpha must be positive\n";
        return exit_input;
    }
    const dsc::GameConfig config{alpha, mode, a.round_cap, a.seed, std::nullopt};
    if (auto zero = dsc::find_zero_expansion_cut(g)) {
        dsc::ConfigEcho echo{alpha, false, mode, a.seed, config.round_cap_for(g.num_vertices())};
        write_output(a.out, dsc::serialize_document(dsc::make_zero_cut_document(g, echo, *zero)));
        std::cout << "cut: expansion 0 (graph is not strongly connected), side size " << zero->size() << "\n";
        return exit_ok;
    }
    const dsc::GameResult result = dsc::play_game(g, config);
    write_output(a.out, dsc::serialize_document(dsc::make_document(g, config, result)));
    if (result.is_cut()) {
        const auto& c = result.cut();
        std::cout << "cut: expansion " << dsc::to_display(c.expansion) << " <= alpha " << dsc::to_display(alpha)
                  << ", side size " << c.cut.size() << ", rounds " << result.trace.size() << "\n";
        return exit_ok;
    }
    if (result.is_expander()) {
        const auto& e = result.expander();
        std::cout << "expander: rounds " << e.rounds() << ", congestion bound " << dsc::to_display(e.congestion_bound)
                  << ", lower bound " << dsc::to_display(e.implied_lower_bound);
        if (e.final_potential) std::cout << ", psi " << dsc::to_display(*e.final_potential);
        if (e.heuristic) std::cout << " (heuristic: mixing not established)";
        std::cout << "\n";
        return exit_ok;
    }
    const auto& inc = std::get<dsc::Inconclusive>(result.outcome);
    std::cout << "inconclusive: rounds " << inc.rounds << ", psi " << dsc::to_display(inc.final_potential)
              << " above threshold\n";
    return exit_inconclusive;
}

int cmd_oracle(const std::string& graph_file) {
    const dsc::DiGraph g = dsc::read_graph_file(graph_file);
    const auto best = dsc::brute_force_sparsest_cut(g);
    std::cout << "OPT = " << dsc::to_display(best.expansion) << "\n";
    std::cout << "side = " << join(best.cut.side()) << "\n";
    return exit_ok;
}

int cmd_verify(const std::string& graph_file, const std::string& cert_file) {
    const dsc::DiGraph g = dsc::read_graph_file(graph_file);
    const auto doc = dsc::parse_document(dsc::read_text_file(cert_file));
    const auto result = dsc::verify_document(g, doc);
    if (!result.hash_matches) {
        std::cerr << "error: certificate was issued for a different graph (hash mismatch)\n";
        return exit_input;
    }
    if (!result.verdict.accepted()) {
        std::cout << "reject: check " << static_cast<int>(result.verdict.code) << " ("
                  << dsc::verdict_name(result.verdict.code) << "): " << result.verdict.detail << "\n";
        return exit_reject;
    }
    std::cout << "accept: " << doc.branch << " certificate verified\n";
    return exit_ok;
}

int cmd_flow(const std::string& network_file) {
    const auto net = dsc::parse_flow_network(dsc::read_text_file(network_file));
    const auto flow = dsc::max_flow(net);
    const auto cut = dsc::min_cut(net, flow);
    std::cout << "value = " << flow.value << "\n";
    std::cout << "source side =";
    for (std::size_t v = 0; v < net.num_nodes; ++v)
        if (cut.source_side[v]) std::cout << ' ' << v;
    std::cout << "\n";
    return exit_ok;
}

struct BenchArgs {
    std::string family = "complete";
    std::vector<std::size_t> sizes{8, 16, 32, 64};
    std::size_t arcs_per_vertex = 3;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::string alpha = "1";
    std::string mode = "exact";
    bool auto_search = false;
    std::size_t round_cap = 0;
};

int cmd_bench(const BenchArgs& a) {
    dsc::BenchSpec spec;
    if (a.family == "complete")
        spec.family = dsc::GraphFamily::complete;
    else if (a.family == "cycle")
        spec.family = dsc::GraphFamily::cycle;
    else if (a.family == "random")
        spec.family = dsc::GraphFamily::random;
    else {
        std::cerr << "error: unknown family '" << a.family << "'\n";
        return exit_input;
    }
    for (std::size_t n : a.sizes)
        if (n < 2 || n % 2 != 0) {
            std::cerr << "error: bench sizes must be even and >= 2\n";
            return exit_input;
        }
    spec.sizes = a.sizes;
    spec.random_arcs_per_vertex = a.arcs_per_vertex;
    spec.trials = a.trials;
    spec.seed = a.seed;
    spec.alpha = dsc::parse_rational(a.alpha);
    spec.mode = parse_mode(a.mode);
    spec.auto_search = a.auto_search;
    spec.round_cap = a.round_cap;
    dsc::write_bench_table(std::cout, dsc::run_bench(spec));
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Directed sparsest cut via the cut-matching game"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Play the game at a fixed alpha, or search over alpha");
    solve_cmd->add_option("graph", solve.graph_file, "Edge-list graph file")->required();
    auto* alpha_opt = solve_cmd->add_option("--alpha", solve.alpha, "Expansion target, as num/den or decimal");
    auto* auto_opt = solve_cmd->add_flag("--auto", solve.auto_search, "Binary search over alpha");
    alpha_opt->excludes(auto_opt);
    solve_cmd->add_option("--seed", solve.seed, "Random seed");
    solve_cmd->add_option("--mode", solve.mode, "exact | projected")->check(CLI::IsMember({"exact", "projected"}));
    solve_cmd->add_option("--round-cap", solve.round_cap, "Round cap (default ceil(10 log2(n)^2))");
    solve_cmd->add_option("--out", solve.out, "Certificate JSON output path ('-' for stdout)");

    std::string oracle_graph;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive sparsest cut (n <= 20)");
    oracle_cmd->add_option("graph", oracle_graph, "Edge-list graph file")->required();

    std::string verify_graph, verify_cert;
    auto* verify_cmd = app.add_subcommand("verify", "Re-check a certificate against a graph");
    verify_cmd->add_option("graph", verify_graph, "Edge-list graph file")->required();
    verify_cmd->add_option("certificate", verify_cert, "Certificate JSON")->required();

    std::string flow_file;
    auto* flow_cmd = app.add_subcommand("flow", "Max-flow on a capacitated network file");
    flow_cmd->add_option("network", flow_file, "Network file: 'n m', 's t', then 'tail head capacity' lines")->required();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Round and max-flow counts on generated graphs");
    bench_cmd->add_option("--family", bench.family, "complete | cycle | random");
    bench_cmd->add_option("--n", bench.sizes, "Vertex counts (even)")->delimiter(',');
    bench_cmd->add_option("--arcs-per-vertex", bench.arcs_per_vertex, "Random family: m = factor * n");
    bench_cmd->add_option("--trials", bench.trials, "Graphs per size (seeds seed, seed+1, ...)");
    bench_cmd->add_option("--seed", bench.seed, "Base seed");
    bench_cmd->add_option("--alpha", bench.alpha, "Alpha for fixed-alpha games");
    bench_cmd->add_option("--mode", bench.mode, "exact | projected");
    bench_cmd->add_flag("--auto", bench.auto_search, "Run the alpha search instead of one game");
    bench_cmd->add_option("--round-cap", bench.round_cap, "Round cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve);
        if (*oracle_cmd) return cmd_oracle(oracle_graph);
        if (*verify_cmd) return cmd_verify(verify_graph, verify_cert);
        if (*flow_cmd) return cmd_flow(flow_file);
        if (*bench_cmd) return cmd_bench(bench);
    } catch (const dsc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == dsc::Errc::internal_consistency ? exit_internal : exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}

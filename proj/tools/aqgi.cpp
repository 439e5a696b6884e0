// aqgi: adiabatic-evolution solver and compiler for graph isomorphism,
// subgraph isomorphism, and automorphism-group instances.
//
// Exit codes for the decision subcommands (gi, sgi): 0 = relation holds,
// 1 = relation does not hold, 2 = error.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "aqgi/autgroup.hpp"
#include "aqgi/chimera.hpp"
#include "aqgi/compile.hpp"
#include "aqgi/dynamics.hpp"
#include "aqgi/fixtures.hpp"
#include "aqgi/graph.hpp"
#include "aqgi/hamiltonian.hpp"

namespace {

using namespace aqgi;

Graph load_graph(const std::string& spec) {
    std::ifstream in(spec);
    if (!in) throw input_error("cannot open graph file '" + spec + "'");
    return parse_edge_list(in);
}

Graph graph_or_fixture(const std::string& path, const std::string& fixture) {
    if (!fixture.empty()) return fixtures::graph(fixture);
    if (path.empty()) throw input_error("provide a graph file or --fixture");
    return load_graph(path);
}

GIInstance pair_or_fixture(const std::string& g_path, const std::string& gp_path,
                           const std::string& fixture) {
    if (!fixture.empty()) return fixtures::pair(fixture);
    if (g_path.empty() || gp_path.empty())
        throw input_error("provide two graph files or --fixture");
    return {load_graph(g_path), load_graph(gp_path)};
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << text;
}

void maybe_write_json(const std::string& path, const nlohmann::json& j) {
    if (path.empty()) return;
    write_text(path, j.dump(2) + "\n");
}

std::string fixture_list() {
    std::string o;
    for (const auto& n : fixtures::pair_names()) o += n + " ";
    return o;
}

struct CommonFlags {
    std::string json_path;
    std::string out_path = "-";
    uint64_t seed = 1;
    int limit_qubits = 21;

    void attach(CLI::App* cmd, bool with_out = false) {
        cmd->add_option("--json", json_path, "write a JSON report to this path ('-' = stdout)");
        cmd->add_option("--seed", seed, "random seed for measurements and heuristics");
        cmd->add_option("--limit-qubits", limit_qubits, "state-vector capacity ceiling");
        if (with_out) cmd->add_option("--out", out_path, "artifact output path ('-' = stdout)");
    }
};

void warn_if_saturated(const ProblemDiagonal& hp) {
    if (hp.saturated)
        std::cerr << "warning: diagonal costs exceeded 2^53 and were saturated; "
                     "energy ordering far from the ground level is approximate\n";
}

RunReport evolve_and_report(const GroundSummary& oracle, const ProblemDiagonal& hp,
                            double total_time, double dt, uint64_t seed, double epsilon,
                            double delta, int runs) {
    EvolutionConfig cfg;
    cfg.total_time = total_time;
    cfg.dt = dt;
    cfg.seed = seed;
    if (epsilon > 0.0) return repeat_protocol(epsilon, delta, hp, cfg);

    // fixed run count without the protocol arithmetic
    RunReport report;
    report.k = runs;
    report.total_time = total_time;
    report.dt = dt > 0.0 ? dt : default_dt(hp);
    StateVector psi = evolve(uniform_superposition(hp.qubits), hp, cfg);
    report.final_ground_population = ground_population(psi, hp.ground_indices());
    double best = 0.0;
    for (int run = 0; run < runs; ++run) {
        std::mt19937_64 rng(seed + static_cast<uint64_t>(run));
        ProtocolSample s;
        s.outcome = measure(psi, rng);
        s.bits = bit_string(s.outcome, hp.qubits);
        s.decoded = to_string(decode_basis_index(s.outcome, hp.order));
        s.cost = hp.energies[s.outcome];
        if (run == 0 || s.cost < best) best = s.cost;
        report.samples.push_back(std::move(s));
    }
    report.min_cost_observed = best;
    report.matches_oracle = best == oracle.min_cost.to_double();
    return report;
}

int cmd_gi(const std::string& g_path, const std::string& gp_path, const std::string& fixture,
           const CommonFlags& flags, double evolve_time, double dt, double epsilon, double delta,
           int runs) {
    GIInstance inst = pair_or_fixture(g_path, gp_path, fixture);
    GroundSummary oracle = brute_force_ground(inst);
    const bool isomorphic = oracle.zero_ground();

    std::cout << "order " << inst.order() << ", qubits " << inst.qubits() << "\n";
    std::cout << "min cost " << oracle.min_cost.to_decimal_string() << ", degeneracy "
              << oracle.degeneracy << "\n";
    std::cout << (isomorphic ? "isomorphic: yes" : "isomorphic: no") << "\n";
    if (isomorphic) {
        std::cout << "permutations:";
        for (const auto& m : oracle.minimizers) std::cout << ' ' << to_string(m);
        std::cout << "\n";
    }

    nlohmann::json j = ground_summary_to_json(oracle);
    if (evolve_time > 0.0) {
        DiagonalOptions dopt;
        dopt.max_qubits = flags.limit_qubits;
        ProblemDiagonal hp = build_problem_diagonal(inst, dopt);
        warn_if_saturated(hp);
        RunReport report = evolve_and_report(oracle, hp, evolve_time, dt, flags.seed, epsilon,
                                             delta, runs);
        std::cout << "ground population after T=" << evolve_time << ": "
                  << report.final_ground_population << "\n";
        std::cout << "min observed cost over " << report.samples.size()
                  << " run(s): " << report.min_cost_observed
                  << (report.matches_oracle ? " (matches oracle)" : "") << "\n";
        j["evolution"] = run_report_json(report);
    }
    maybe_write_json(flags.json_path, j);
    return isomorphic ? 0 : 1;
}

int cmd_aut(const std::string& g_path, const std::string& fixture, const CommonFlags& flags) {
    Graph g = graph_or_fixture(g_path, fixture);
    GIInstance inst{g, g};
    GroundSummary oracle = brute_force_ground(inst);
    auto perms = decode_ground_strings(oracle);

    std::cout << "automorphism group order " << perms.size() << "\n";
    std::cout << "elements:";
    for (const auto& p : perms) std::cout << ' ' << perm_string(p);
    std::cout << "\n";
    ClosureCertificate closure = verify_closure(perms);
    std::cout << "group closure: " << (closure ? "verified" : closure.reason) << "\n";
    if (auto table = find_dihedral_generators(perms)) {
        const auto& [alpha, beta] = *table->generators;
        std::cout << "dihedral n=" << table->dihedral_n << " with generators alpha="
                  << perm_string(alpha) << " beta=" << perm_string(beta) << "\n";
    }
    maybe_write_json(flags.json_path, group_report_json(perms));
    return 0;
}

int cmd_sgi(const std::string& g_path, const std::string& h_path, const std::string& fixture_g,
            const std::string& fixture_h, const CommonFlags& flags) {
    Graph g = graph_or_fixture(g_path, fixture_g);
    Graph h = graph_or_fixture(h_path, fixture_h);
    SGIInstance inst{g, h};
    GroundSummary oracle = brute_force_ground(inst);
    const bool contained = oracle.zero_ground();

    std::cout << "G order " << inst.order() << ", H order " << inst.sub_order() << "\n";
    std::cout << "min cost " << oracle.min_cost.to_decimal_string() << ", degeneracy "
              << oracle.degeneracy << "\n";
    std::cout << (contained ? "contains subgraph isomorphic to H: yes"
                            : "contains subgraph isomorphic to H: no")
              << "\n";
    nlohmann::json j = ground_summary_to_json(oracle);
    if (contained) {
        const IntegerString& witness_s = oracle.minimizers.front();
        auto alpha = sgi_witness(witness_s, inst);
        std::cout << "witness permutation " << to_string(witness_s);
        if (alpha) {
            std::cout << " on vertices";
            for (int v : *alpha) std::cout << ' ' << v;
            j["witness"] = {{"permutation", to_string(witness_s)}, {"subset", *alpha}};
        }
        std::cout << "\n";
    }
    maybe_write_json(flags.json_path, j);
    return contained ? 0 : 1;
}

int cmd_oracle(const std::string& g_path, const std::string& gp_path, const std::string& fixture,
               const std::string& subgraph, const CommonFlags& flags) {
    nlohmann::json j;
    if (!subgraph.empty()) {
        Graph g = graph_or_fixture(g_path, fixture);
        SGIInstance inst{g, load_graph(subgraph)};
        j = ground_summary_to_json(brute_force_ground(inst));
    } else {
        GIInstance inst = pair_or_fixture(g_path, gp_path, fixture);
        j = ground_summary_to_json(brute_force_ground(inst));
    }
    write_text(flags.json_path.empty() ? "-" : flags.json_path, j.dump(2) + "\n");
    return 0;
}

int cmd_gapscan(const std::string& g_path, const std::string& gp_path,
                const std::string& fixture, const CommonFlags& flags, int grid) {
    GIInstance inst = pair_or_fixture(g_path, gp_path, fixture);
    DiagonalOptions dopt;
    dopt.max_qubits = flags.limit_qubits;
    ProblemDiagonal hp = build_problem_diagonal(inst, dopt);
    warn_if_saturated(hp);
    GapScan scan = min_gap_scan(hp, Schedule::linear(), grid);
    write_text(flags.out_path, gap_scan_tsv(scan));
    maybe_write_json(flags.json_path, runtime_bound_json(scan));
    std::cerr << "Delta_min " << scan.delta_min << " at s=" << scan.s_at_min << ", M "
              << scan.m_max << ", T bound " << scan.t_bound << "\n";
    return 0;
}

int cmd_evolve(const std::string& g_path, const std::string& gp_path, const std::string& fixture,
               const CommonFlags& flags, double total_time, double dt, double epsilon,
               double delta, int runs) {
    GIInstance inst = pair_or_fixture(g_path, gp_path, fixture);
    GroundSummary oracle = brute_force_ground(inst);
    DiagonalOptions dopt;
    dopt.max_qubits = flags.limit_qubits;
    ProblemDiagonal hp = build_problem_diagonal(inst, dopt);
    warn_if_saturated(hp);
    RunReport report =
        evolve_and_report(oracle, hp, total_time, dt, flags.seed, epsilon, delta, runs);
    std::cout << "T " << report.total_time << ", dt " << report.dt << ", runs "
              << report.samples.size() << "\n";
    std::cout << "ground population " << report.final_ground_population << "\n";
    std::cout << "min observed cost " << report.min_cost_observed
              << (report.matches_oracle ? " (matches oracle)" : "") << "\n";
    maybe_write_json(flags.json_path, run_report_json(report));
    return 0;
}

std::set<int> load_disabled_qubits(const std::string& path) {
    std::set<int> out;
    if (path.empty()) return out;
    std::ifstream in(path);
    if (!in) throw input_error("cannot open disabled-qubit list '" + path + "'");
    int q;
    while (in >> q) out.insert(q);
    return out;
}

int cmd_compile(const std::string& g_path, const std::string& gp_path,
                const std::string& fixture, const CommonFlags& flags,
                const std::string& qubo_path, const std::vector<int>& embed_dims,
                double chain_strength, const std::string& disabled_path) {
    GIInstance inst = pair_or_fixture(g_path, gp_path, fixture);
    CostPolynomial poly = expand_cost(inst);
    TermStats stats = term_stats(poly);
    QuadraticProgram qp = quadratize(poly.total(), poly.qubits());

    std::cout << "structured terms: T1 " << stats.structured.t1 << ", T2 " << stats.structured.t2
              << ", T3 " << stats.structured.t3 << " (total " << stats.structured.total()
              << ")\n";
    std::cout << "expanded monomials " << stats.monomials << ", max degree " << stats.max_degree
              << " (C1 " << stats.c1_max_degree << ", C2 " << stats.c2_max_degree << ", C3 "
              << stats.c3_max_degree << ")\n";
    std::cout << "quadratic program: " << qp.var_count() << " variables ("
              << qp.ancillas.size() << " ancillas), " << qp.quadratic.size()
              << " couplings\n";

    nlohmann::json j{{"T1", stats.structured.t1},
                     {"T2", stats.structured.t2},
                     {"T3", stats.structured.t3},
                     {"monomials", stats.monomials},
                     {"max_degree", stats.max_degree},
                     {"c1_max_degree", stats.c1_max_degree},
                     {"c2_max_degree", stats.c2_max_degree},
                     {"c3_max_degree", stats.c3_max_degree},
                     {"variables", qp.var_count()},
                     {"ancillas", qp.ancillas.size()}};

    if (!embed_dims.empty()) {
        if (embed_dims.size() != 3) throw input_error("--embed expects rows cols cell_half");
        ChimeraGraph hw =
            chimera(embed_dims[0], embed_dims[1], embed_dims[2], load_disabled_qubits(disabled_path));
        EmbedOptions eopt;
        eopt.seed = flags.seed;
        EmbedResult res = embed_minor(qp, hw, chain_strength, eopt);
        if (!res.found) {
            std::cout << "embedding: " << res.message << "\n";
            j["embedding"] = nullptr;
            maybe_write_json(flags.json_path, j);
            return 1;
        }
        size_t longest = 0;
        for (const auto& [var, chain] : res.embedding.chains)
            longest = std::max(longest, chain.size());
        std::cout << "embedding found on " << hw.rows() << "x" << hw.cols()
                  << " chimera, longest chain " << longest << "\n";
        j["embedding"] = embedding_report_json(res.embedding, hw);
        if (!qubo_path.empty()) write_text(qubo_path, export_qubo(qp, res.embedding, hw));
    } else if (!qubo_path.empty()) {
        write_text(qubo_path, export_qubo(qp));
    }
    maybe_write_json(flags.json_path, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adiabatic-evolution graph isomorphism toolkit"};
    app.require_subcommand(1);

    std::string g_path, gp_path, h_path, fixture, fixture_h, subgraph, qubo_path;
    CommonFlags flags;
    double evolve_time = 0.0, total_time = 10.0, dt = 0.0;
    double epsilon = 0.0, delta = 0.0, chain_strength = 2.0;
    int runs = 1, grid = 51;
    std::vector<int> embed_dims;
    std::string disabled_path;

    auto* gi = app.add_subcommand("gi", "decide whether two graphs are isomorphic");
    gi->add_option("G", g_path, "edge-list file for G");
    gi->add_option("Gprime", gp_path, "edge-list file for G'");
    gi->add_option("--fixture", fixture, "built-in instance: " + fixture_list());
    gi->add_option("--evolve", evolve_time, "also run the quantum evolution for this T");
    gi->add_option("--dt", dt, "integrator step (default from the spectral width)");
    gi->add_option("--epsilon", epsilon, "per-run failure probability for the repeat protocol");
    gi->add_option("--delta", delta, "target success probability for the repeat protocol");
    gi->add_option("--runs", runs, "measurement count when --epsilon is not given");
    flags.attach(gi);

    auto* aut = app.add_subcommand("aut", "automorphism group of a graph (G' = G)");
    aut->add_option("G", g_path, "edge-list file");
    aut->add_option("--fixture", fixture, "built-in graph (c4..c7, grid23, w7, ...)");
    flags.attach(aut);

    auto* sgi = app.add_subcommand("sgi", "decide whether G contains a subgraph isomorphic to H");
    sgi->add_option("G", g_path, "edge-list file for G");
    sgi->add_option("H", h_path, "edge-list file for H");
    sgi->add_option("--fixture-g", fixture, "built-in G");
    sgi->add_option("--fixture-h", fixture_h, "built-in H");
    flags.attach(sgi);

    auto* oracle = app.add_subcommand("oracle", "exhaustive ground summary as JSON");
    oracle->add_option("G", g_path, "edge-list file for G");
    oracle->add_option("Gprime", gp_path, "edge-list file for G'");
    oracle->add_option("--fixture", fixture, "built-in instance");
    oracle->add_option("--subgraph", subgraph, "treat as SGI with this H file");
    flags.attach(oracle);

    auto* gapscan = app.add_subcommand("gapscan", "scan the instantaneous spectral gap");
    gapscan->add_option("G", g_path, "edge-list file for G");
    gapscan->add_option("Gprime", gp_path, "edge-list file for G'");
    gapscan->add_option("--fixture", fixture, "built-in instance");
    gapscan->add_option("--grid", grid, "number of schedule points (default 51)");
    flags.attach(gapscan, true);

    auto* evolve_cmd = app.add_subcommand("evolve", "integrate the Schrodinger dynamics");
    evolve_cmd->add_option("G", g_path, "edge-list file for G");
    evolve_cmd->add_option("Gprime", gp_path, "edge-list file for G'");
    evolve_cmd->add_option("--fixture", fixture, "built-in instance");
    evolve_cmd->add_option("--T", total_time, "total evolution time (default 10)");
    evolve_cmd->add_option("--dt", dt, "integrator step");
    evolve_cmd->add_option("--epsilon", epsilon, "per-run failure probability");
    evolve_cmd->add_option("--delta", delta, "target success probability");
    evolve_cmd->add_option("--runs", runs, "measurement count when --epsilon is not given");
    flags.attach(evolve_cmd);

    auto* compile_cmd =
        app.add_subcommand("compile", "expand, quadratize, and export the cost function");
    compile_cmd->add_option("G", g_path, "edge-list file for G");
    compile_cmd->add_option("Gprime", gp_path, "edge-list file for G'");
    compile_cmd->add_option("--fixture", fixture, "built-in instance");
    compile_cmd->add_option("--qubo", qubo_path, "write the QUBO text file here");
    compile_cmd->add_option("--embed", embed_dims, "minor-embed onto 'rows cols cell_half'")
        ->expected(3);
    compile_cmd->add_option("--chain-strength", chain_strength,
                            "ferromagnetic chain coupling magnitude");
    compile_cmd->add_option("--disabled", disabled_path,
                            "file listing unusable hardware qubit ids");
    flags.attach(compile_cmd);

    try {
        app.parse(argc, argv);
        if (gi->parsed())
            return cmd_gi(g_path, gp_path, fixture, flags, evolve_time, dt, epsilon, delta, runs);
        if (aut->parsed()) return cmd_aut(g_path, fixture, flags);
        if (sgi->parsed()) return cmd_sgi(g_path, h_path, fixture, fixture_h, flags);
        if (oracle->parsed()) return cmd_oracle(g_path, gp_path, fixture, subgraph, flags);
        if (gapscan->parsed()) return cmd_gapscan(g_path, gp_path, fixture, flags, grid);
        if (evolve_cmd->parsed())
            return cmd_evolve(g_path, gp_path, fixture, flags, total_time, dt, epsilon, delta,
                              runs);
        if (compile_cmd->parsed())
            return cmd_compile(g_path, gp_path, fixture, flags, qubo_path, embed_dims,
                               chain_strength, disabled_path);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "aqgi/compile.hpp"
#include "aqgi/errors.hpp"

#include "json.hpp"

namespace aqgi {

/// Chimera hardware graph: a rows x cols grid of complete-bipartite
/// K_{half,half} unit cells. Qubits are numbered 1..rows*cols*2*half, the
/// usual annealer processor numbering; within cell (r,c), slots 0..half-1 form
/// the left partition and half..2*half-1 the right. Left slots couple
/// vertically between cells, right slots horizontally. Disabled qubits model
/// fabrication defects.
class ChimeraGraph {
public:
    ChimeraGraph(int rows, int cols, int half, std::set<int> disabled = {})
        : rows_(rows), cols_(cols), half_(half), disabled_(std::move(disabled)) {
        if (rows < 1 || cols < 1 || half < 1)
            throw input_error("chimera dimensions must be positive");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int cell_half() const { return half_; }

    int total_sites() const { return rows_ * cols_ * 2 * half_; }
    int qubit_count() const { return total_sites() - static_cast<int>(disabled_.size()); }

    int id(int row, int col, int slot) const {
        return (row * cols_ + col) * 2 * half_ + slot + 1;
    }

    bool usable(int q) const { return q >= 1 && q <= total_sites() && !disabled_.count(q); }

    std::vector<int> neighbors(int q) const {
        std::vector<int> out;
        if (!usable(q)) return out;
        const int z = q - 1;
        const int cell = z / (2 * half_);
        const int slot = z % (2 * half_);
        const int row = cell / cols_;
        const int col = cell % cols_;
        if (slot < half_) {
            for (int s = half_; s < 2 * half_; ++s) push_if_usable(out, id(row, col, s));
            if (row > 0) push_if_usable(out, id(row - 1, col, slot));
            if (row + 1 < rows_) push_if_usable(out, id(row + 1, col, slot));
        } else {
            for (int s = 0; s < half_; ++s) push_if_usable(out, id(row, col, s));
            if (col > 0) push_if_usable(out, id(row, col - 1, slot));
            if (col + 1 < cols_) push_if_usable(out, id(row, col + 1, slot));
        }
        return out;
    }

    int degree(int q) const { return static_cast<int>(neighbors(q).size()); }

    bool is_edge(int u, int v) const {
        if (!usable(u) || !usable(v)) return false;
        auto nb = neighbors(u);
        return std::find(nb.begin(), nb.end(), v) != nb.end();
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int q = 1; q <= total_sites(); ++q) {
            if (!usable(q)) continue;
            for (int nb : neighbors(q))
                if (q < nb) out.emplace_back(q, nb);
        }
        return out;
    }

private:
    void push_if_usable(std::vector<int>& out, int q) const {
        if (usable(q)) out.push_back(q);
    }

    int rows_, cols_, half_;
    std::set<int> disabled_;
};

inline ChimeraGraph chimera(int rows, int cols, int half, std::set<int> disabled = {}) {
    return ChimeraGraph(rows, cols, half, std::move(disabled));
}

/// Minor embedding: each logical variable owns a connected chain of hardware
/// qubits; chains are vertex-disjoint; every logical coupling is realized on
/// at least one hardware edge between the two chains; chain edges carry a
/// strong ferromagnetic coupling.
struct Embedding {
    std::map<int, std::vector<int>> chains;  // logical var -> sorted qubit chain
    double chain_strength = 2.0;
    // logical edge (u<v) -> the hardware edge carrying its coupling
    std::map<std::pair<int, int>, std::pair<int, int>> edge_assignment;
};

struct EmbeddingCheck {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
};

inline EmbeddingCheck verify_embedding(const Embedding& emb,
                                       const std::vector<std::pair<int, int>>& logical_edges,
                                       const ChimeraGraph& hw) {
    std::set<int> used;
    for (const auto& [var, chain] : emb.chains) {
        if (chain.empty()) return {false, "empty chain for variable " + std::to_string(var)};
        for (int q : chain) {
            if (!hw.usable(q))
                return {false, "chain of " + std::to_string(var) + " uses unusable qubit " +
                                   std::to_string(q)};
            if (!used.insert(q).second)
                return {false, "qubit " + std::to_string(q) + " appears in two chains"};
        }
        // connectivity of the induced subgraph
        std::set<int> members(chain.begin(), chain.end());
        std::set<int> seen{chain.front()};
        std::queue<int> frontier;
        frontier.push(chain.front());
        while (!frontier.empty()) {
            int q = frontier.front();
            frontier.pop();
            for (int nb : hw.neighbors(q))
                if (members.count(nb) && seen.insert(nb).second) frontier.push(nb);
        }
        if (seen.size() != members.size())
            return {false, "chain of " + std::to_string(var) + " is not connected"};
    }
    for (auto [u, v] : logical_edges) {
        auto cu = emb.chains.find(u);
        auto cv = emb.chains.find(v);
        if (cu == emb.chains.end() || cv == emb.chains.end())
            return {false, "logical edge (" + std::to_string(u) + "," + std::to_string(v) +
                               ") has an unmapped endpoint"};
        bool coupled = false;
        for (int a : cu->second) {
            for (int b : cv->second)
                if (hw.is_edge(a, b)) {
                    coupled = true;
                    break;
                }
            if (coupled) break;
        }
        if (!coupled)
            return {false, "no hardware edge between the chains of " + std::to_string(u) +
                               " and " + std::to_string(v)};
    }
    return {};
}

struct EmbedResult {
    bool found = false;
    Embedding embedding;
    std::string message;
};

struct EmbedOptions {
    uint64_t seed = 1;
    int max_restarts = 32;
};

namespace detail {

/// BFS distance over free qubits to (the free neighbors of) a chain;
/// chain-adjacent free qubits get distance 1.
inline std::vector<int> chain_distance(const ChimeraGraph& hw, const std::vector<int>& chain,
                                       const std::set<int>& used) {
    std::vector<int> dist(static_cast<size_t>(hw.total_sites()) + 1, -1);
    std::queue<int> frontier;
    for (int q : chain)
        for (int nb : hw.neighbors(q))
            if (!used.count(nb) && dist[static_cast<size_t>(nb)] < 0) {
                dist[static_cast<size_t>(nb)] = 1;
                frontier.push(nb);
            }
    while (!frontier.empty()) {
        int q = frontier.front();
        frontier.pop();
        for (int nb : hw.neighbors(q))
            if (!used.count(nb) && dist[static_cast<size_t>(nb)] < 0) {
                dist[static_cast<size_t>(nb)] = dist[static_cast<size_t>(q)] + 1;
                frontier.push(nb);
            }
    }
    return dist;
}

}  // namespace detail

/// Greedy heuristic embedding: variables in descending logical-degree order;
/// each chain grows by BFS toward the already-placed neighbor chains; seeded
/// random restarts reshuffle ties. Failure is a reported outcome (the
/// heuristic is incomplete), distinct from an input error.
inline EmbedResult embed_minor(const QuadraticProgram& qp, const ChimeraGraph& hw,
                               double chain_strength, EmbedOptions opt = {}) {
    std::set<int> vars;
    for (const auto& [i, c] : qp.linear) vars.insert(i);
    std::vector<std::pair<int, int>> logical_edges;
    std::map<int, std::vector<int>> logical_adj;
    for (const auto& [key, c] : qp.quadratic) {
        vars.insert(key.first);
        vars.insert(key.second);
        logical_edges.push_back(key);
        logical_adj[key.first].push_back(key.second);
        logical_adj[key.second].push_back(key.first);
    }
    EmbedResult result;
    if (vars.empty()) {
        result.found = true;
        result.embedding.chain_strength = -std::fabs(chain_strength);
        return result;
    }
    if (static_cast<int>(vars.size()) > hw.qubit_count()) {
        result.message = "more logical variables than usable qubits";
        return result;
    }

    std::mt19937_64 rng(opt.seed);
    for (int attempt = 0; attempt < opt.max_restarts; ++attempt) {
        std::vector<int> order(vars.begin(), vars.end());
        std::shuffle(order.begin(), order.end(), rng);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return logical_adj[a].size() > logical_adj[b].size();
        });

        Embedding emb;
        emb.chain_strength = -std::fabs(chain_strength);
        std::set<int> used;
        bool failed = false;

        for (int var : order) {
            std::vector<int> placed_neighbors;
            for (int nb : logical_adj[var])
                if (emb.chains.count(nb)) placed_neighbors.push_back(nb);

            if (placed_neighbors.empty()) {
                // any free qubit; randomize the pick across restarts
                std::vector<int> free;
                for (int q = 1; q <= hw.total_sites(); ++q)
                    if (hw.usable(q) && !used.count(q)) free.push_back(q);
                if (free.empty()) {
                    failed = true;
                    break;
                }
                const int root = free[attempt == 0 ? 0 : rng() % free.size()];
                emb.chains[var] = {root};
                used.insert(root);
                continue;
            }

            std::vector<std::vector<int>> dists;
            for (int nb : placed_neighbors)
                dists.push_back(detail::chain_distance(hw, emb.chains[nb], used));

            int best_root = -1;
            long best_cost = -1;
            for (int q = 1; q <= hw.total_sites(); ++q) {
                if (!hw.usable(q) || used.count(q)) continue;
                long cost = 0;
                bool reachable = true;
                for (const auto& d : dists) {
                    if (d[static_cast<size_t>(q)] < 0) {
                        reachable = false;
                        break;
                    }
                    cost += d[static_cast<size_t>(q)];
                }
                if (!reachable) continue;
                if (best_root < 0 || cost < best_cost) {
                    best_root = q;
                    best_cost = cost;
                }
            }
            if (best_root < 0) {
                failed = true;
                break;
            }

            std::set<int> chain{best_root};
            for (size_t c = 0; c < dists.size(); ++c) {
                // walk downhill toward neighbor chain c
                int cur = best_root;
                int d = dists[c][static_cast<size_t>(cur)];
                while (d > 1) {
                    int next = -1;
                    for (int nb : hw.neighbors(cur)) {
                        if (used.count(nb)) continue;  // merging with own chain is fine
                        if (dists[c][static_cast<size_t>(nb)] == d - 1) {
                            next = nb;
                            break;
                        }
                    }
                    if (next < 0) break;
                    chain.insert(next);
                    cur = next;
                    --d;
                }
                if (d > 1) {
                    failed = true;
                    break;
                }
            }
            if (failed) break;
            emb.chains[var] = std::vector<int>(chain.begin(), chain.end());
            used.insert(chain.begin(), chain.end());
        }
        if (failed) continue;

        // assign each logical coupling to the smallest hardware edge between
        // its chains
        for (auto [u, v] : logical_edges) {
            std::pair<int, int> pick{-1, -1};
            for (int a : emb.chains[u])
                for (int b : emb.chains[v]) {
                    if (!hw.is_edge(a, b)) continue;
                    const auto cand = detail::ordered_pair(a, b);
                    if (pick.first < 0 || cand < pick) pick = cand;
                }
            if (pick.first < 0) {
                failed = true;
                break;
            }
            emb.edge_assignment[{u, v}] = pick;
        }
        if (failed) continue;

        if (EmbeddingCheck check = verify_embedding(emb, logical_edges, hw); check) {
            result.found = true;
            result.embedding = std::move(emb);
            return result;
        }
    }
    result.message = "no embedding found within " + std::to_string(opt.max_restarts) +
                     " restarts (heuristic, not a proof of impossibility)";
    return result;
}

/// Hardware-mapped QUBO export: chain ferromagnetic couplings on every
/// induced chain edge, each logical coupling on its assigned hardware edge,
/// and logical linear weights split evenly along the chain.
inline std::string export_qubo(const QuadraticProgram& qp, const Embedding& emb,
                               const ChimeraGraph& hw) {
    std::map<int, double> lin;
    std::map<std::pair<int, int>, double> quad;

    for (const auto& [var, chain] : emb.chains) {
        auto it = qp.linear.find(var);
        if (it != qp.linear.end())
            for (int q : chain) lin[q] += it->second / static_cast<double>(chain.size());
        for (size_t a = 0; a < chain.size(); ++a)
            for (size_t b = a + 1; b < chain.size(); ++b)
                if (hw.is_edge(chain[a], chain[b]))
                    quad[detail::ordered_pair(chain[a], chain[b])] = emb.chain_strength;
    }
    for (const auto& [edge, c] : qp.quadratic) {
        auto it = emb.edge_assignment.find(edge);
        if (it == emb.edge_assignment.end())
            throw contract_error("logical coupling without an assigned hardware edge");
        quad[it->second] += c;
    }

    std::set<int> used;
    for (const auto& [q, c] : lin) used.insert(q);
    for (const auto& [e, c] : quad) {
        used.insert(e.first);
        used.insert(e.second);
    }

    std::string out = "QUBO " + std::to_string(used.size()) + " " +
                      std::to_string(lin.size() + quad.size()) + "\n";
    char line[96];
    for (const auto& [q, c] : lin) {
        std::snprintf(line, sizeof line, "%d %d %.6f\n", q, q, c);
        out += line;
    }
    for (const auto& [e, c] : quad) {
        std::snprintf(line, sizeof line, "%d %d %.6f\n", e.first, e.second, c);
        out += line;
    }
    return out;
}

inline nlohmann::json embedding_report_json(const Embedding& emb, const ChimeraGraph& hw) {
    nlohmann::json chains = nlohmann::json::object();
    std::set<int> used;
    for (const auto& [var, chain] : emb.chains) {
        chains[std::to_string(var)] = chain;
        used.insert(chain.begin(), chain.end());
    }
    nlohmann::json unused = nlohmann::json::array();
    for (int q = 1; q <= hw.total_sites(); ++q)
        if (hw.usable(q) && !used.count(q)) unused.push_back(q);
    return nlohmann::json{{"chains", chains},
                          {"chain_strength", emb.chain_strength},
                          {"unused_qubits", unused}};
}

}  // namespace aqgi

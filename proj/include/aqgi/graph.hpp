#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aqgi/errors.hpp"

namespace aqgi {

/// Simple undirected graph on vertices 0..N-1, stored as a dense symmetric
/// 0/1 adjacency matrix with zero diagonal.
class Graph {
public:
    Graph() = default;

    static Graph from_edge_list(int order, const std::vector<std::pair<int, int>>& edges) {
        if (order <= 0) throw input_error("graph order must be positive");
        Graph g;
        g.order_ = order;
        g.adj_.assign(static_cast<size_t>(order) * order, 0);
        for (auto [u, v] : edges) {
            if (u < 0 || u >= order || v < 0 || v >= order)
                throw input_error("edge endpoint out of range: (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
            if (u == v) throw input_error("self-loop at vertex " + std::to_string(u));
            g.adj_[static_cast<size_t>(u) * order + v] = 1;
            g.adj_[static_cast<size_t>(v) * order + u] = 1;
        }
        return g;
    }

    /// Builds from an explicit matrix, validating symmetry, zero diagonal and
    /// 0/1 entries. Used for the literal matrices shipped as fixtures.
    static Graph from_adjacency(const std::vector<std::vector<int>>& rows) {
        const int n = static_cast<int>(rows.size());
        if (n == 0) throw input_error("empty adjacency matrix");
        Graph g;
        g.order_ = n;
        g.adj_.assign(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw input_error("adjacency matrix is not square");
            for (int j = 0; j < n; ++j) {
                const int a = rows[i][j];
                if (a != 0 && a != 1) throw input_error("adjacency entries must be 0 or 1");
                if (i == j && a != 0) throw input_error("nonzero diagonal entry");
                if (rows[j][i] != a) throw input_error("adjacency matrix is not symmetric");
                g.adj_[static_cast<size_t>(i) * n + j] = static_cast<uint8_t>(a);
            }
        }
        return g;
    }

    int order() const { return order_; }

    bool adjacent(int u, int v) const { return adj_[static_cast<size_t>(u) * order_ + v] != 0; }

    int at(int u, int v) const { return adj_[static_cast<size_t>(u) * order_ + v]; }

    int degree(int v) const {
        int d = 0;
        for (int u = 0; u < order_; ++u) d += at(v, u);
        return d;
    }

    int edge_count() const {
        int twice = 0;
        for (uint8_t a : adj_) twice += a;
        return twice / 2;
    }

    /// Ordered pairs (u,v) with an edge, both directions. The cost evaluators
    /// iterate this instead of the full matrix.
    std::vector<std::pair<int, int>> ordered_edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < order_; ++u)
            for (int v = 0; v < order_; ++v)
                if (at(u, v)) out.emplace_back(u, v);
        return out;
    }

    bool operator==(const Graph& o) const { return order_ == o.order_ && adj_ == o.adj_; }
    bool operator!=(const Graph& o) const { return !(*this == o); }

private:
    int order_ = 0;
    std::vector<uint8_t> adj_;
};

/// Vertex degrees sorted in non-increasing order.
inline std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> d(g.order());
    for (int v = 0; v < g.order(); ++v) d[v] = g.degree(v);
    std::sort(d.begin(), d.end(), std::greater<int>());
    return d;
}

/// Coefficients of det(lambda*I - A), exact integer arithmetic via
/// Faddeev-LeVerrier. Index k holds the coefficient of lambda^k; the leading
/// coefficient (index N) is 1. Entries of A^k are bounded well inside int64
/// for the orders this library enumerates.
inline std::vector<int64_t> characteristic_polynomial(const Graph& g) {
    const int n = g.order();
    std::vector<int64_t> coeff(n + 1, 0);
    coeff[n] = 1;
    std::vector<int64_t> m(static_cast<size_t>(n) * n, 0);
    for (int k = 1; k <= n; ++k) {
        // m <- A * (m + c_{n-k+1} I)
        for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] += coeff[n - k + 1];
        std::vector<int64_t> next(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                if (g.at(i, l))
                    for (int j = 0; j < n; ++j)
                        next[static_cast<size_t>(i) * n + j] += m[static_cast<size_t>(l) * n + j];
        m.swap(next);
        int64_t trace = 0;
        for (int i = 0; i < n; ++i) trace += m[static_cast<size_t>(i) * n + i];
        coeff[n - k] = -trace / k;  // division is exact
    }
    return coeff;
}

struct SrgParams {
    int nu = 0;      // vertex count
    int k = 0;       // regular degree
    int lambda = 0;  // common neighbors of adjacent pairs
    int mu = 0;      // common neighbors of non-adjacent pairs
    bool operator==(const SrgParams&) const = default;
};

/// Strongly-regular parameters (nu,k,lambda,mu) when the graph is k-regular
/// with constant common-neighbor counts; absent otherwise. A vacuous
/// constraint (no adjacent pair, or no non-adjacent pair) is satisfied with
/// the parameter reported as 0.
inline std::optional<SrgParams> strongly_regular_params(const Graph& g) {
    const int n = g.order();
    const int k = g.degree(0);
    for (int v = 1; v < n; ++v)
        if (g.degree(v) != k) return std::nullopt;
    std::optional<int> lambda, mu;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int common = 0;
            for (int l = 0; l < n; ++l) common += g.at(i, l) & g.at(j, l);
            auto& slot = g.adjacent(i, j) ? lambda : mu;
            if (!slot)
                slot = common;
            else if (*slot != common)
                return std::nullopt;
        }
    }
    return SrgParams{n, k, lambda.value_or(0), mu.value_or(0)};
}

/// Cycle graph C_n with vertices 0..n-1 in cyclic order.
inline Graph make_cycle(int n) {
    if (n < 3) throw input_error("cycle graph needs at least 3 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph::from_edge_list(n, edges);
}

/// Wheel graph W_n: an (n-1)-cycle 0..n-2 plus the hub as the
/// highest-numbered vertex n-1.
inline Graph make_wheel(int n) {
    if (n < 4) throw input_error("wheel graph needs at least 4 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n - 1; ++i) edges.emplace_back(i, (i + 1) % (n - 1));
    for (int i = 0; i < n - 1; ++i) edges.emplace_back(i, n - 1);
    return Graph::from_edge_list(n, edges);
}

/// Grid graph with `rows` rows and `cols` columns; vertex (r,c) has id
/// c*rows + r, the labeling the G_{2,3} fixtures and tables rely on.
inline Graph make_grid(int rows, int cols) {
    if (rows < 1 || cols < 1 || rows * cols < 2) throw input_error("grid needs at least 2 vertices");
    auto vid = [rows](int r, int c) { return c * rows + r; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (r + 1 < rows) edges.emplace_back(vid(r, c), vid(r + 1, c));
            if (c + 1 < cols) edges.emplace_back(vid(r, c), vid(r, c + 1));
        }
    return Graph::from_edge_list(rows * cols, edges);
}

/// Parses the edge-list text format: first non-comment line "N <order>",
/// then one "u v" pair per line, 0-based; '#' starts a comment.
inline Graph parse_edge_list(std::istream& in) {
    std::string line;
    int order = -1;
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        if (order < 0) {
            std::string tag;
            if (!(fields >> tag)) continue;  // blank line
            int n = 0;
            if (tag != "N" || !(fields >> n) || n <= 0)
                throw input_error("line " + std::to_string(lineno) +
                                  ": expected header 'N <order>'");
            order = n;
            continue;
        }
        int u, v;
        if (!(fields >> u)) continue;
        if (!(fields >> v))
            throw input_error("line " + std::to_string(lineno) + ": expected 'u v'");
        edges.emplace_back(u, v);
    }
    if (order < 0) throw input_error("missing 'N <order>' header");
    return Graph::from_edge_list(order, edges);
}

inline Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

}  // namespace aqgi

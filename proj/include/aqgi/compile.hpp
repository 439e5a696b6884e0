#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "aqgi/cost.hpp"
#include "aqgi/polynomial.hpp"

namespace aqgi {

/// The GI cost function as multilinear polynomials over the L = N*U bits,
/// kept per part so locality can be reported separately.
struct CostPolynomial {
    int order = 0;
    int field_bits = 0;
    MultilinearPolynomial c1, c2, c3;

    int qubits() const { return order * field_bits; }

    MultilinearPolynomial total() const {
        MultilinearPolynomial t = c1;
        t += c2;
        t += c3;
        return t;
    }
};

struct ExpandOptions {
    int max_order = 5;  // full symbolic expansion is exponential in L
};

namespace detail {

inline std::pair<int, int> ordered_pair(int a, int b) {
    return a < b ? std::pair<int, int>{a, b} : std::pair<int, int>{b, a};
}

inline std::vector<int> field_vars(int field, int u) {
    std::vector<int> vars(u);
    for (int j = 0; j < u; ++j) vars[j] = field * u + j;
    return vars;
}

}  // namespace detail

/// Expands C = C1 + C2 + C3 into the exact multilinear polynomial whose value
/// at every bit assignment equals cost_gi of the decoded string.
///
/// C1 and C2 expand algebraically from the Kronecker-delta polynomials and
/// stay 2U-local. C3's |.| is handled per entry
/// (l,m): the conjugated-adjacency entry B_lm is a polynomial with 2U-local
/// terms, and for A'_lm = 1 the absolute value adds the exact zero-indicator
/// 2*prod_i (1 - [s_i=l](1 - prod_{j~i}(1 - [s_j=m]))), whose multilinear
/// expansion carries no such bound; measured locality is
/// reported by term_stats.
inline CostPolynomial expand_cost(const GIInstance& inst, ExpandOptions opt = {}) {
    const int n = inst.order();
    if (n > opt.max_order)
        throw capacity_error("symbolic expansion limited to order " +
                             std::to_string(opt.max_order));
    const int u = inst.field_bits();
    const int m_top = (1 << u) - 1;

    CostPolynomial out;
    out.order = n;
    out.field_bits = u;

    for (int i = 0; i < n; ++i)
        for (int alpha = n; alpha <= m_top; ++alpha)
            out.c1 += delta_int_poly(detail::field_vars(i, u), alpha);

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out.c2 += delta_field_pair_poly(detail::field_vars(i, u), detail::field_vars(j, u));

    // X[i][l] = indicator polynomial [s_i = l]
    std::vector<std::vector<MultilinearPolynomial>> x(n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
            x[i].push_back(delta_int_poly(detail::field_vars(i, u), l));

    for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
            MultilinearPolynomial b_lm;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (inst.g.at(i, j)) b_lm += x[i][l] * x[j][m];
            if (inst.g_prime.at(l, m) == 0) {
                out.c3 += b_lm;
                continue;
            }
            // |B - 1| = B - 1 + 2*[B = 0]
            MultilinearPolynomial zero_ind = MultilinearPolynomial::constant(1.0);
            for (int i = 0; i < n; ++i) {
                MultilinearPolynomial no_neighbor = MultilinearPolynomial::constant(1.0);
                for (int j = 0; j < n; ++j)
                    if (inst.g.at(i, j))
                        no_neighbor = no_neighbor *
                                      (MultilinearPolynomial::constant(1.0) - x[j][m]);
                zero_ind = zero_ind *
                           (MultilinearPolynomial::constant(1.0) -
                            x[i][l] * (MultilinearPolynomial::constant(1.0) - no_neighbor));
            }
            out.c3 += b_lm;
            out.c3 += MultilinearPolynomial::constant(-1.0);
            out.c3 += zero_ind * 2.0;
        }
    }
    return out;
}

/// Structured term inventory of the cost function (counts of summands before
/// any expansion): T1 = N(M-N+1), T2 = C(N,2), T3 = N^2.
struct StructuredTermCounts {
    int64_t t1 = 0, t2 = 0, t3 = 0;
    int64_t total() const { return t1 + t2 + t3; }
};

inline StructuredTermCounts structured_term_counts(int order) {
    const int m_top = (1 << bits_per_vertex(order)) - 1;
    StructuredTermCounts c;
    c.t1 = static_cast<int64_t>(order) * (m_top - order + 1);
    c.t2 = static_cast<int64_t>(order) * (order - 1) / 2;
    c.t3 = static_cast<int64_t>(order) * order;
    return c;
}

struct TermStats {
    StructuredTermCounts structured;
    size_t monomials = 0;
    int max_degree = 0;
    std::vector<size_t> degree_histogram;
    int c1_max_degree = 0, c2_max_degree = 0, c3_max_degree = 0;
};

inline TermStats term_stats(const CostPolynomial& poly) {
    TermStats st;
    st.structured = structured_term_counts(poly.order);
    MultilinearPolynomial total = poly.total();
    st.monomials = total.term_count();
    st.max_degree = total.max_degree();
    st.degree_histogram = total.degree_histogram();
    st.c1_max_degree = poly.c1.max_degree();
    st.c2_max_degree = poly.c2.max_degree();
    st.c3_max_degree = poly.c3.max_degree();
    return st;
}

/// Degree-<=2 program over original bits plus ancillas. Each ancilla is
/// defined as the product of two earlier variables and enforced by the
/// penalty mu * P(x,y;b), P = xy - 2(x+y)b + 3b.
struct QuadraticProgram {
    struct Ancilla {
        int x = 0, y = 0;  // b := x * y; y may itself be an ancilla
        double mu = 0.0;
    };

    int num_original = 0;
    std::vector<Ancilla> ancillas;  // ancilla id = num_original + position
    std::map<int, double> linear;
    std::map<std::pair<int, int>, double> quadratic;  // keys with first < second
    double offset = 0.0;

    int var_count() const { return num_original + static_cast<int>(ancillas.size()); }

    void add_linear(int i, double c) {
        if (c == 0.0) return;
        linear[i] += c;
        if (std::fabs(linear[i]) < 1e-12) linear.erase(i);
    }

    void add_quadratic(int i, int j, double c) {
        if (c == 0.0) return;
        if (i == j) {
            add_linear(i, c);  // x^2 = x
            return;
        }
        const auto key = detail::ordered_pair(i, j);
        quadratic[key] += c;
        if (std::fabs(quadratic[key]) < 1e-12) quadratic.erase(key);
    }

    void add_penalty(int x, int y, int b, double mu) {
        add_quadratic(x, y, mu);
        add_quadratic(x, b, -2.0 * mu);
        add_quadratic(y, b, -2.0 * mu);
        add_linear(b, 3.0 * mu);
    }
};

/// P(a1,a2;b) = a1 a2 - 2(a1+a2) b + 3b; zero exactly on b = a1*a2.
inline double penalty_value(int a1, int a2, int b) {
    return a1 * a2 - 2.0 * (a1 + a2) * b + 3.0 * b;
}

/// Rewrites one monomial of degree >= 3 as a quadratic fragment with an
/// explicit penalty weight: the cascade pairs the two highest-index variables
/// first and folds leftward, introducing degree-2 ancillas. Minimizing the
/// fragment over the ancillas reproduces coeff * prod(vars) for mu large
/// enough (mu > |coeff| suffices).
inline QuadraticProgram quadratize_term(uint64_t monomial, double coeff, double mu,
                                        int num_original) {
    QuadraticProgram qp;
    qp.num_original = num_original;
    std::vector<int> vars;
    for (int v = 0; v < 64; ++v)
        if (monomial & (uint64_t{1} << v)) vars.push_back(v);
    const int k = static_cast<int>(vars.size());
    if (k == 0) {
        qp.offset = coeff;
        return qp;
    }
    if (k == 1) {
        qp.add_linear(vars[0], coeff);
        return qp;
    }
    if (k == 2) {
        qp.add_quadratic(vars[0], vars[1], coeff);
        return qp;
    }
    int carry = 0;
    {  // b_{k-1} = a_{k-1} * a_k
        qp.ancillas.push_back({vars[k - 2], vars[k - 1], mu});
        carry = qp.num_original;
        qp.add_penalty(vars[k - 2], vars[k - 1], carry, mu);
    }
    for (int j = k - 3; j >= 1; --j) {  // b_j = a_j * b_{j+1}
        qp.ancillas.push_back({vars[j], carry, mu});
        const int b = qp.num_original + static_cast<int>(qp.ancillas.size()) - 1;
        qp.add_penalty(vars[j], carry, b, mu);
        carry = b;
    }
    qp.add_quadratic(vars[0], carry, coeff);
    return qp;
}

struct QuadratizeOptions {
    size_t max_ancillas = 1u << 20;
};

/// Quadratizes a full polynomial. Identical defining products share one
/// ancilla across monomials; the penalty weight per ancilla is
/// 1 + sum |coeff| over the monomials whose cascade uses it, which keeps
/// every global minimizer on the constraint manifold.
inline QuadraticProgram quadratize(const MultilinearPolynomial& poly, int num_original,
                                   QuadratizeOptions opt = {}) {
    QuadraticProgram qp;
    qp.num_original = num_original;

    std::map<std::pair<int, int>, int> shared;  // defining product -> ancilla id
    std::vector<double> touch;                  // per ancilla, accumulated |coeff|

    auto alloc = [&](int x, int y) {
        const auto key = detail::ordered_pair(x, y);
        auto it = shared.find(key);
        if (it != shared.end()) return it->second;
        if (qp.ancillas.size() >= opt.max_ancillas)
            throw capacity_error("quadratization exceeded the ancilla budget of " +
                                 std::to_string(opt.max_ancillas));
        const int id = qp.var_count();
        qp.ancillas.push_back({key.first, key.second, 0.0});
        touch.push_back(0.0);
        shared[key] = id;
        return id;
    };

    for (const auto& [monomial, coeff] : poly.sorted_terms()) {
        std::vector<int> vars;
        for (int v = 0; v < 64; ++v)
            if (monomial & (uint64_t{1} << v)) vars.push_back(v);
        const int k = static_cast<int>(vars.size());
        if (k == 0) {
            qp.offset += coeff;
        } else if (k == 1) {
            qp.add_linear(vars[0], coeff);
        } else if (k == 2) {
            qp.add_quadratic(vars[0], vars[1], coeff);
        } else {
            int carry = alloc(vars[k - 2], vars[k - 1]);
            touch[static_cast<size_t>(carry - num_original)] += std::fabs(coeff);
            for (int j = k - 3; j >= 1; --j) {
                carry = alloc(vars[j], carry);
                touch[static_cast<size_t>(carry - num_original)] += std::fabs(coeff);
            }
            qp.add_quadratic(vars[0], carry, coeff);
        }
    }

    for (size_t i = 0; i < qp.ancillas.size(); ++i) {
        qp.ancillas[i].mu = 1.0 + touch[i];
        qp.add_penalty(qp.ancillas[i].x, qp.ancillas[i].y, qp.num_original + static_cast<int>(i),
                       qp.ancillas[i].mu);
    }
    return qp;
}

/// Ancilla values forced by the defining products, in creation order.
inline std::vector<uint8_t> constrained_ancilla_values(const QuadraticProgram& qp,
                                                       uint64_t assignment) {
    std::vector<uint8_t> vals(qp.ancillas.size(), 0);
    auto value_of = [&](int var) -> int {
        if (var < qp.num_original) return (assignment >> var) & 1;
        return vals[static_cast<size_t>(var - qp.num_original)];
    };
    for (size_t i = 0; i < qp.ancillas.size(); ++i)
        vals[i] = static_cast<uint8_t>(value_of(qp.ancillas[i].x) * value_of(qp.ancillas[i].y));
    return vals;
}

inline double evaluate_qp(const QuadraticProgram& qp, uint64_t assignment,
                          const std::vector<uint8_t>& ancilla_values) {
    auto value_of = [&](int var) -> double {
        if (var < qp.num_original) return static_cast<double>((assignment >> var) & 1);
        return ancilla_values[static_cast<size_t>(var - qp.num_original)];
    };
    double v = qp.offset;
    for (const auto& [i, c] : qp.linear) v += c * value_of(i);
    for (const auto& [key, c] : qp.quadratic) v += c * value_of(key.first) * value_of(key.second);
    return v;
}

/// Exact minimum over the ancillas for fixed original bits. With originals
/// fixed, ancilla-ancilla couplings form a forest (each ancilla couples only
/// to its defining child), so a tree DP gives the exact minimum in linear
/// time regardless of the ancilla count.
inline double min_over_ancillas(const QuadraticProgram& qp, uint64_t assignment) {
    const int na = static_cast<int>(qp.ancillas.size());
    if (na == 0) {
        return evaluate_qp(qp, assignment, {});
    }
    auto orig = [&](int var) -> double { return static_cast<double>((assignment >> var) & 1); };

    double constant = qp.offset;
    std::vector<double> lin(na, 0.0);
    std::map<std::pair<int, int>, double> coupling;  // ancilla-index pairs

    for (const auto& [i, c] : qp.linear) {
        if (i < qp.num_original)
            constant += c * orig(i);
        else
            lin[i - qp.num_original] += c;
    }
    for (const auto& [key, c] : qp.quadratic) {
        const auto [i, j] = key;
        const bool ai = i >= qp.num_original, aj = j >= qp.num_original;
        if (!ai && !aj) {
            constant += c * orig(i) * orig(j);
        } else if (ai && aj) {
            coupling[detail::ordered_pair(i - qp.num_original, j - qp.num_original)] += c;
        } else {
            const int anc = ai ? i - qp.num_original : j - qp.num_original;
            const int other = ai ? j : i;
            lin[anc] += c * orig(other);
        }
    }

    std::vector<std::vector<std::pair<int, double>>> adj(na);
    for (const auto& [key, c] : coupling) {
        adj[key.first].emplace_back(key.second, c);
        adj[key.second].emplace_back(key.first, c);
    }

    // rooted tree DP over each connected component
    std::vector<int> state(na, 0);  // 0 unvisited, 1 in-progress, 2 done
    double total = constant;
    // dp values per node for value 0/1, filled bottom-up by explicit stack
    std::vector<std::array<double, 2>> dp(na);
    for (int root = 0; root < na; ++root) {
        if (state[root] != 0) continue;
        std::vector<std::tuple<int, int, bool>> stack;  // node, parent, expanded
        stack.emplace_back(root, -1, false);
        while (!stack.empty()) {
            auto [node, parent, expanded] = stack.back();
            stack.pop_back();
            if (!expanded) {
                if (state[node] == 1)
                    throw contract_error("ancilla coupling graph is not a forest");
                state[node] = 1;
                stack.emplace_back(node, parent, true);
                for (const auto& [nb, c] : adj[node])
                    if (nb != parent && state[nb] == 0) stack.emplace_back(nb, node, false);
            } else {
                dp[node] = {0.0, lin[node]};
                for (const auto& [nb, c] : adj[node]) {
                    if (nb == parent || state[nb] != 2) continue;
                    dp[node][0] += std::min(dp[nb][0], dp[nb][1]);
                    dp[node][1] += std::min(dp[nb][0], dp[nb][1] + c);
                }
                state[node] = 2;
            }
        }
        total += std::min(dp[root][0], dp[root][1]);
    }
    return total;
}

/// QUBO text format: header "QUBO <num_vars> <num_terms>", then one line per
/// term, "i i coeff" for linear and "i j coeff" (i < j) for quadratic, fixed
/// six decimals, linear lines first, ascending indices. The constant offset
/// is not representable in the format and is dropped.
inline std::string export_qubo(const QuadraticProgram& qp) {
    std::string out = "QUBO " + std::to_string(qp.var_count()) + " " +
                      std::to_string(qp.linear.size() + qp.quadratic.size()) + "\n";
    char line[96];
    for (const auto& [i, c] : qp.linear) {
        std::snprintf(line, sizeof line, "%d %d %.6f\n", i, i, c);
        out += line;
    }
    for (const auto& [key, c] : qp.quadratic) {
        std::snprintf(line, sizeof line, "%d %d %.6f\n", key.first, key.second, c);
        out += line;
    }
    return out;
}

struct ParsedQubo {
    int num_vars = 0;
    std::vector<std::tuple<int, int, double>> entries;
};

inline ParsedQubo parse_qubo(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    ParsedQubo q;
    size_t num_terms = 0;
    if (!(in >> tag >> q.num_vars >> num_terms) || tag != "QUBO")
        throw input_error("malformed QUBO header");
    int i, j;
    double c;
    while (in >> i >> j >> c) q.entries.emplace_back(i, j, c);
    if (q.entries.size() != num_terms)
        throw input_error("QUBO term count disagrees with header");
    return q;
}

inline std::string export_qubo(const ParsedQubo& q) {
    std::string out =
        "QUBO " + std::to_string(q.num_vars) + " " + std::to_string(q.entries.size()) + "\n";
    char line[96];
    for (const auto& [i, j, c] : q.entries) {
        std::snprintf(line, sizeof line, "%d %d %.6f\n", i, j, c);
        out += line;
    }
    return out;
}

}  // namespace aqgi

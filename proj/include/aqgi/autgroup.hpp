#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aqgi/cost.hpp"
#include "aqgi/encoding.hpp"
#include "aqgi/errors.hpp"

#include "json.hpp"

namespace aqgi {

/// Image sequence pi_0..pi_{N-1}; a bijection of {0..N-1}.
using Permutation = std::vector<int>;

inline void validate_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v])
            throw input_error("not a permutation");
        seen[v] = true;
    }
}

inline Permutation identity_permutation(int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

/// Composition with the rightmost factor acting first: (p*q)_i = p_{q_i}.
inline Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw input_error("permutation size mismatch");
    Permutation out(p.size());
    for (size_t i = 0; i < p.size(); ++i) out[i] = p[q[i]];
    return out;
}

inline Permutation inverse(const Permutation& p) {
    Permutation out(p.size());
    for (size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
    return out;
}

inline Permutation power(const Permutation& p, int k) {
    Permutation out = identity_permutation(static_cast<int>(p.size()));
    for (int i = 0; i < k; ++i) out = compose(p, out);
    return out;
}

inline std::string perm_string(const Permutation& p) {
    return to_string(make_integer_string(static_cast<int>(p.size()), p));
}

/// Ground strings of a zero-cost instance, as permutations. Every minimizer
/// of a zero-minimum instance is a permutation string by construction; the
/// count equals the degeneracy and, for self-instances, the order of Aut(G).
inline std::vector<Permutation> decode_ground_strings(const GroundSummary& summary) {
    if (!summary.min_cost.is_zero())
        throw contract_error("graphs not isomorphic: ground cost " +
                             summary.min_cost.to_decimal_string() + " is nonzero");
    std::vector<Permutation> out;
    out.reserve(summary.minimizers.size());
    for (const auto& s : summary.minimizers) {
        if (!is_permutation_string(s))
            throw contract_error("zero-cost minimizer is not a permutation string");
        out.push_back(s.entries);
    }
    return out;
}

struct ClosureCertificate {
    bool closed = true;
    std::string reason;
    std::optional<std::pair<Permutation, Permutation>> violating_pair;

    explicit operator bool() const { return closed; }
};

/// Checks closure under composition, presence of the identity, and presence
/// of every inverse; reports a witness on failure.
inline ClosureCertificate verify_closure(const std::vector<Permutation>& elems) {
    ClosureCertificate cert;
    if (elems.empty()) {
        cert.closed = false;
        cert.reason = "empty element set";
        return cert;
    }
    const int n = static_cast<int>(elems.front().size());
    std::set<Permutation> members(elems.begin(), elems.end());
    for (const auto& p : elems) {
        for (const auto& q : elems) {
            if (!members.count(compose(p, q))) {
                cert.closed = false;
                cert.reason = "product " + perm_string(p) + " * " + perm_string(q) + " escapes the set";
                cert.violating_pair = {p, q};
                return cert;
            }
        }
    }
    if (!members.count(identity_permutation(n))) {
        cert.closed = false;
        cert.reason = "identity element missing";
        return cert;
    }
    for (const auto& p : elems) {
        if (!members.count(inverse(p))) {
            cert.closed = false;
            cert.reason = "inverse of " + perm_string(p) + " missing";
            cert.violating_pair = {p, inverse(p)};
            return cert;
        }
    }
    return cert;
}

/// The three dihedral generator relations: alpha^n = e, beta^2 = e,
/// alpha*beta = beta*alpha^(n-1).
struct DihedralRelations {
    bool alpha_order = false;
    bool beta_order = false;
    bool braid = false;

    bool all() const { return alpha_order && beta_order && braid; }
};

inline DihedralRelations dihedral_relations(const Permutation& alpha, const Permutation& beta,
                                            int n) {
    if (alpha.size() != beta.size()) throw input_error("permutation size mismatch");
    DihedralRelations rel;
    const Permutation e = identity_permutation(static_cast<int>(alpha.size()));
    rel.alpha_order = power(alpha, n) == e;
    rel.beta_order = compose(beta, beta) == e;
    rel.braid = compose(alpha, beta) == compose(beta, power(alpha, n - 1));
    return rel;
}

inline bool check_dihedral(const Permutation& alpha, const Permutation& beta, int n) {
    return dihedral_relations(alpha, beta, n).all();
}

/// The 2n products alpha^i beta^j (0 <= i < n, j in {0,1}), labeled.
/// Duplicates collapse, in which case the table is smaller than 2n and
/// flagged.
struct GroupTable {
    std::vector<Permutation> elements;
    std::vector<std::string> labels;
    std::optional<std::pair<Permutation, Permutation>> generators;
    int dihedral_n = 0;
    bool duplicates_collapsed = false;

    size_t order() const { return elements.size(); }
};

inline GroupTable generate_from(const Permutation& alpha, const Permutation& beta, int n) {
    GroupTable table;
    table.generators = {alpha, beta};
    table.dihedral_n = n;
    std::set<Permutation> seen;
    for (int j = 0; j <= 1; ++j) {
        for (int i = 0; i < n; ++i) {
            Permutation g = compose(power(alpha, i), power(beta, j));
            std::string label = "e";
            if (i > 0 || j > 0) {
                label.clear();
                if (i == 1) label += "a";
                if (i > 1) label += "a^" + std::to_string(i);
                if (j == 1) label += "b";
            }
            if (seen.insert(g).second) {
                table.elements.push_back(std::move(g));
                table.labels.push_back(std::move(label));
            } else {
                table.duplicates_collapsed = true;
            }
        }
    }
    return table;
}

/// Element-set equality; by design stronger than abstract isomorphism and
/// exactly what table reproduction needs.
inline bool match_group(const std::vector<Permutation>& decoded, const GroupTable& table) {
    std::set<Permutation> a(decoded.begin(), decoded.end());
    std::set<Permutation> b(table.elements.begin(), table.elements.end());
    return a == b;
}

/// Searches a decoded ground set for a dihedral generator pair: the
/// lexicographically first (alpha, beta) satisfying the relations for
/// n = |set|/2 whose products regenerate the whole set.
inline std::optional<GroupTable> find_dihedral_generators(const std::vector<Permutation>& elems) {
    if (elems.size() % 2 != 0 || elems.empty()) return std::nullopt;
    const int n = static_cast<int>(elems.size() / 2);
    std::vector<Permutation> sorted(elems.begin(), elems.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& alpha : sorted) {
        for (const auto& beta : sorted) {
            if (alpha == beta) continue;
            if (!check_dihedral(alpha, beta, n)) continue;
            GroupTable table = generate_from(alpha, beta, n);
            if (table.order() == elems.size() && match_group(elems, table)) return table;
        }
    }
    return std::nullopt;
}

inline nlohmann::json group_report_json(const std::vector<Permutation>& decoded) {
    nlohmann::json j;
    j["order"] = decoded.size();
    nlohmann::json elems = nlohmann::json::array();
    for (const auto& p : decoded) elems.push_back(perm_string(p));
    j["elements"] = std::move(elems);
    j["closed"] = static_cast<bool>(verify_closure(decoded));
    if (auto table = find_dihedral_generators(decoded)) {
        const auto& [alpha, beta] = *table->generators;
        j["generators"] = {perm_string(alpha), perm_string(beta)};
        j["dihedral_n"] = table->dihedral_n;
        DihedralRelations rel = dihedral_relations(alpha, beta, table->dihedral_n);
        j["relations_checked"] = {{"alpha_order", rel.alpha_order},
                                  {"beta_order", rel.beta_order},
                                  {"braid", rel.braid}};
    } else {
        j["generators"] = nullptr;
        j["dihedral_n"] = nullptr;
    }
    return j;
}

}  // namespace aqgi

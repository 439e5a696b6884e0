#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <future>
#include <thread>
#include <utility>
#include <vector>

#include "aqgi/bigint.hpp"
#include "aqgi/encoding.hpp"
#include "aqgi/errors.hpp"
#include "aqgi/graph.hpp"

#include "json.hpp"

namespace aqgi {

/// Graph-isomorphism instance: a pair of equal-order graphs.
struct GIInstance {
    Graph g;
    Graph g_prime;

    GIInstance(Graph a, Graph b) : g(std::move(a)), g_prime(std::move(b)) {
        if (g.order() != g_prime.order())
            throw input_error("GI instance requires equal graph orders (got " +
                              std::to_string(g.order()) + " and " +
                              std::to_string(g_prime.order()) + ")");
    }

    int order() const { return g.order(); }
    int field_bits() const { return bits_per_vertex(order()); }
    int qubits() const { return order() * field_bits(); }
};

/// Subgraph-isomorphism instance: does g contain a subgraph isomorphic to h?
struct SGIInstance {
    Graph g;
    Graph h;

    SGIInstance(Graph big, Graph small) : g(std::move(big)), h(std::move(small)) {
        if (h.order() > g.order())
            throw input_error("SGI instance requires h.order <= g.order");
    }

    int order() const { return g.order(); }
    int sub_order() const { return h.order(); }
    int field_bits() const { return bits_per_vertex(order()); }
    int qubits() const { return order() * field_bits(); }
};

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<int> v;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c, 0) {}
    int& at(int i, int j) { return v[static_cast<size_t>(i) * cols + j]; }
    int at(int i, int j) const { return v[static_cast<size_t>(i) * cols + j]; }
    bool operator==(const IntMatrix&) const = default;
};

/// Out-of-range penalty: number of entries exceeding N-1. Identically zero
/// when N is a power of two (the alpha range [N, 2^U-1] is empty).
inline int64_t c1(const IntegerString& s) {
    int64_t count = 0;
    for (int e : s.entries)
        if (e > s.order - 1) ++count;
    return count;
}

/// Collision penalty: number of unordered pairs i<j with s_i = s_j.
inline int64_t c2(const IntegerString& s) {
    int64_t count = 0;
    for (size_t i = 0; i < s.entries.size(); ++i)
        for (size_t j = i + 1; j < s.entries.size(); ++j)
            if (s.entries[i] == s.entries[j]) ++count;
    return count;
}

/// sigma(s) * A * sigma(s)^T with exact integer arithmetic. Entry (l,m)
/// counts ordered edges (i,j) of g with s_i = l and s_j = m; out-of-range
/// entries contribute nothing (zero column of sigma).
inline IntMatrix conjugate_adjacency(const IntegerString& s, const Graph& g) {
    const int n = g.order();
    IntMatrix b(n, n);
    for (int i = 0; i < n; ++i) {
        if (s.entries[i] > n - 1) continue;
        for (int j = 0; j < n; ++j) {
            if (!g.at(i, j) || s.entries[j] > n - 1) continue;
            ++b.at(s.entries[i], s.entries[j]);
        }
    }
    return b;
}

namespace detail {

inline int64_t int_pow(int64_t base, int exp) {
    int64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace detail

/// Adjacency-mismatch penalty: entrywise L1 norm of sigma A sigma^T - A'.
/// The default norm_power 1 reproduces all reference energies; higher powers
/// (sum of |d|^p, kept unrooted so values stay integral) rescale the reported
/// energies without moving the zero set.
inline int64_t c3_gi(const IntegerString& s, const GIInstance& inst, int norm_power = 1) {
    if (norm_power < 1) throw input_error("norm power must be at least 1");
    IntMatrix b = conjugate_adjacency(s, inst.g);
    int64_t norm = 0;
    const int n = inst.order();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int d = b.at(i, j) - inst.g_prime.at(i, j);
            norm += detail::int_pow(d < 0 ? -d : d, norm_power);
        }
    return norm;
}

inline int64_t cost_gi(const IntegerString& s, const GIInstance& inst, int norm_power = 1) {
    return c1(s) + c2(s) + c3_gi(s, inst, norm_power);
}

/// P_alpha of the SGI construction: row i is the unit row vector with a 1 at
/// column alpha_i.
inline IntMatrix subset_projector(const std::vector<int>& alpha, int order) {
    IntMatrix p(static_cast<int>(alpha.size()), order);
    uint32_t seen = 0;
    for (size_t i = 0; i < alpha.size(); ++i) {
        const int a = alpha[i];
        if (a < 0 || a >= order) throw input_error("subset vertex out of range");
        if (seen & (1u << a)) throw input_error("subset vertices must be distinct");
        seen |= 1u << a;
        p.at(static_cast<int>(i), a) = 1;
    }
    return p;
}

/// P_alpha * (sigma A sigma^T) * P_alpha^T: the candidate subgraph adjacency
/// on the chosen vertices.
inline IntMatrix subgraph_adjacency(const IntegerString& s, const std::vector<int>& alpha,
                                    const Graph& g) {
    subset_projector(alpha, g.order());  // validates alpha
    IntMatrix at = conjugate_adjacency(s, g);
    const int n = static_cast<int>(alpha.size());
    IntMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = at.at(alpha[i], alpha[j]);
    return out;
}

namespace detail {

/// All n-subsets of {0..order-1} in lexicographic order.
inline std::vector<std::vector<int>> lex_subsets(int order, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = n - 1;
        while (i >= 0 && cur[i] == order - n + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < n; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace detail

/// Product over all (N choose n) vertex subsets (lexicographic order) of the
/// L1 mismatch between the candidate subgraph and h. Exact; short-circuits on
/// a zero factor.
inline BigUint c3_sgi(const IntegerString& s, const SGIInstance& inst, int norm_power = 1) {
    if (norm_power < 1) throw input_error("norm power must be at least 1");
    const auto subsets = detail::lex_subsets(inst.order(), inst.sub_order());
    IntMatrix at = conjugate_adjacency(s, inst.g);
    const int n = inst.sub_order();
    BigUint prod{1};
    for (const auto& alpha : subsets) {
        int64_t norm = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int d = at.at(alpha[i], alpha[j]) - inst.h.at(i, j);
                norm += detail::int_pow(d < 0 ? -d : d, norm_power);
            }
        if (norm == 0) return BigUint{0};
        prod.mul_u64(static_cast<uint64_t>(norm));
    }
    return prod;
}

inline BigUint cost_sgi(const IntegerString& s, const SGIInstance& inst, int norm_power = 1) {
    BigUint c = c3_sgi(s, inst, norm_power);
    c.add_u64(static_cast<uint64_t>(c1(s) + c2(s)));
    return c;
}

/// First subset alpha (lexicographic) whose candidate subgraph equals h, for
/// a given string; used to report SGI witnesses.
inline std::optional<std::vector<int>> sgi_witness(const IntegerString& s,
                                                   const SGIInstance& inst) {
    IntMatrix at = conjugate_adjacency(s, inst.g);
    const int n = inst.sub_order();
    for (const auto& alpha : detail::lex_subsets(inst.order(), inst.sub_order())) {
        bool equal = true;
        for (int i = 0; i < n && equal; ++i)
            for (int j = 0; j < n && equal; ++j)
                if (at.at(alpha[i], alpha[j]) != inst.h.at(i, j)) equal = false;
        if (equal) return alpha;
    }
    return std::nullopt;
}

/// Exact ground-state summary from exhaustive enumeration.
struct GroundSummary {
    int order = 0;
    int field_bits = 0;
    BigUint min_cost;
    uint64_t degeneracy = 0;
    std::vector<IntegerString> minimizers;  // sorted lexicographically by entries

    bool zero_ground() const { return min_cost.is_zero(); }
};

struct OracleOptions {
    int max_bits = 24;     // refuse enumerations beyond 2^max_bits strings
    unsigned threads = 0;  // 0 = pick automatically
    int norm_power = 1;    // exponent of the entrywise mismatch norm
};

namespace detail {

/// Allocation-free GI cost over a raw basis index; hot path of the oracle and
/// the Hamiltonian builder.
class GiEvaluator {
public:
    explicit GiEvaluator(const GIInstance& inst, int norm_power = 1)
        : n_(inst.order()),
          u_(inst.field_bits()),
          mask_((uint64_t{1} << u_) - 1),
          norm_power_(norm_power),
          edges_(inst.g.ordered_edges()) {
        aprime_.resize(static_cast<size_t>(n_) * n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) aprime_[static_cast<size_t>(i) * n_ + j] = inst.g_prime.at(i, j);
    }

    int qubits() const { return n_ * u_; }

    uint64_t operator()(uint64_t index) const {
        std::array<int, 32> s;
        for (int i = 0; i < n_; ++i) s[i] = static_cast<int>((index >> (i * u_)) & mask_);
        uint64_t cost = 0;
        for (int i = 0; i < n_; ++i)
            if (s[i] > n_ - 1) ++cost;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (s[i] == s[j]) ++cost;
        std::array<int, 1024> b;
        std::memset(b.data(), 0, sizeof(int) * static_cast<size_t>(n_) * n_);
        for (const auto& [i, j] : edges_) {
            if (s[i] > n_ - 1 || s[j] > n_ - 1) continue;
            ++b[s[i] * n_ + s[j]];
        }
        for (int i = 0; i < n_ * n_; ++i) {
            const int d = b[i] - aprime_[i];
            cost += static_cast<uint64_t>(int_pow(d < 0 ? -d : d, norm_power_));
        }
        return cost;
    }

private:
    int n_, u_;
    uint64_t mask_;
    int norm_power_ = 1;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> aprime_;
};

struct SgiValue {
    unsigned __int128 v = 0;
    bool saturated = false;

    bool less_than(const SgiValue& o) const {
        if (saturated != o.saturated) return !saturated;
        return v < o.v;  // two saturated values compare equal-ish; handled by caller
    }
    bool equals(const SgiValue& o) const { return saturated == o.saturated && v == o.v; }
};

class SgiEvaluator {
public:
    explicit SgiEvaluator(const SGIInstance& inst, int norm_power = 1)
        : n_(inst.order()),
          nh_(inst.sub_order()),
          u_(inst.field_bits()),
          mask_((uint64_t{1} << u_) - 1),
          norm_power_(norm_power),
          edges_(inst.g.ordered_edges()),
          subsets_(lex_subsets(inst.order(), inst.sub_order())) {
        h_.resize(static_cast<size_t>(nh_) * nh_);
        for (int i = 0; i < nh_; ++i)
            for (int j = 0; j < nh_; ++j) h_[static_cast<size_t>(i) * nh_ + j] = inst.h.at(i, j);
    }

    int qubits() const { return n_ * u_; }

    SgiValue operator()(uint64_t index) const {
        std::array<int, 32> s;
        for (int i = 0; i < n_; ++i) s[i] = static_cast<int>((index >> (i * u_)) & mask_);
        uint64_t base = 0;
        for (int i = 0; i < n_; ++i)
            if (s[i] > n_ - 1) ++base;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (s[i] == s[j]) ++base;
        std::array<int, 1024> at;
        std::memset(at.data(), 0, sizeof(int) * static_cast<size_t>(n_) * n_);
        for (const auto& [i, j] : edges_) {
            if (s[i] > n_ - 1 || s[j] > n_ - 1) continue;
            ++at[s[i] * n_ + s[j]];
        }
        SgiValue out;
        unsigned __int128 prod = 1;
        for (const auto& alpha : subsets_) {
            uint64_t norm = 0;
            for (int i = 0; i < nh_; ++i)
                for (int j = 0; j < nh_; ++j) {
                    const int d = at[alpha[i] * n_ + alpha[j]] - h_[static_cast<size_t>(i) * nh_ + j];
                    norm += static_cast<uint64_t>(int_pow(d < 0 ? -d : d, norm_power_));
                }
            if (norm == 0) {
                prod = 0;
                break;
            }
            const unsigned __int128 next = prod * norm;
            if (next / norm != prod) {  // overflow
                out.saturated = true;
                break;
            }
            prod = next;
        }
        if (!out.saturated) {
            const unsigned __int128 sum = prod + base;
            if (sum < prod) out.saturated = true;  // the final add wrapped
            else out.v = sum;
        }
        return out;
    }

    /// Exact value, used on the rare re-enumeration path when the fast
    /// product saturates 128 bits.
    BigUint exact(uint64_t index, const SGIInstance& inst) const {
        return cost_sgi(decode_basis_index(index, n_), inst, norm_power_);
    }

private:
    int n_, nh_, u_;
    uint64_t mask_;
    int norm_power_ = 1;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> h_;
    std::vector<std::vector<int>> subsets_;
};

inline void check_enumeration_limit(int bits, int max_bits) {
    if (bits > max_bits)
        throw capacity_error("enumeration of 2^" + std::to_string(bits) +
                             " strings exceeds the configured limit of 2^" +
                             std::to_string(max_bits));
}

inline unsigned pick_threads(uint64_t total, unsigned requested) {
    if (requested) return requested;
    if (total < (uint64_t{1} << 16)) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace detail

inline GroundSummary brute_force_ground(const GIInstance& inst, OracleOptions opt = {}) {
    detail::check_enumeration_limit(inst.qubits(), opt.max_bits);
    const detail::GiEvaluator eval(inst, opt.norm_power);
    const uint64_t total = uint64_t{1} << inst.qubits();
    const unsigned threads = detail::pick_threads(total, opt.threads);

    auto scan = [&](uint64_t begin, uint64_t end) {
        uint64_t best = UINT64_MAX;
        std::vector<uint64_t> argmin;
        for (uint64_t b = begin; b < end; ++b) {
            const uint64_t c = eval(b);
            if (c < best) {
                best = c;
                argmin.assign(1, b);
            } else if (c == best) {
                argmin.push_back(b);
            }
        }
        return std::make_pair(best, std::move(argmin));
    };

    uint64_t best = UINT64_MAX;
    std::vector<uint64_t> argmin;
    if (threads <= 1) {
        std::tie(best, argmin) = scan(0, total);
    } else {
        std::vector<std::future<std::pair<uint64_t, std::vector<uint64_t>>>> futs;
        const uint64_t chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const uint64_t lo = t * chunk;
            const uint64_t hi = std::min(total, lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, scan, lo, hi));
        }
        for (auto& f : futs) {
            auto [b, idx] = f.get();
            if (b < best) {
                best = b;
                argmin = std::move(idx);
            } else if (b == best) {
                argmin.insert(argmin.end(), idx.begin(), idx.end());
            }
        }
    }

    GroundSummary out;
    out.order = inst.order();
    out.field_bits = inst.field_bits();
    out.min_cost = BigUint{best};
    out.degeneracy = argmin.size();
    out.minimizers.reserve(argmin.size());
    for (uint64_t b : argmin) out.minimizers.push_back(decode_basis_index(b, inst.order()));
    std::sort(out.minimizers.begin(), out.minimizers.end(),
              [](const IntegerString& a, const IntegerString& b) { return a.entries < b.entries; });
    return out;
}

inline GroundSummary brute_force_ground(const SGIInstance& inst, OracleOptions opt = {}) {
    detail::check_enumeration_limit(inst.qubits(), opt.max_bits);
    const detail::SgiEvaluator eval(inst, opt.norm_power);
    const uint64_t total = uint64_t{1} << inst.qubits();
    const unsigned threads = detail::pick_threads(total, opt.threads);

    using V = detail::SgiValue;
    auto scan = [&](uint64_t begin, uint64_t end) {
        V best;
        bool any = false;
        std::vector<uint64_t> argmin;
        for (uint64_t b = begin; b < end; ++b) {
            const V c = eval(b);
            if (!any || c.less_than(best)) {
                best = c;
                any = true;
                argmin.assign(1, b);
            } else if (c.equals(best)) {
                argmin.push_back(b);
            }
        }
        return std::make_pair(best, std::move(argmin));
    };

    V best;
    bool any = false;
    std::vector<uint64_t> argmin;
    if (threads <= 1) {
        std::tie(best, argmin) = scan(0, total);
        any = true;
    } else {
        std::vector<std::future<std::pair<V, std::vector<uint64_t>>>> futs;
        const uint64_t chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const uint64_t lo = t * chunk;
            const uint64_t hi = std::min(total, lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, scan, lo, hi));
        }
        for (auto& f : futs) {
            auto [b, idx] = f.get();
            if (!any || b.less_than(best)) {
                best = b;
                any = true;
                argmin = std::move(idx);
            } else if (b.equals(best)) {
                argmin.insert(argmin.end(), idx.begin(), idx.end());
            }
        }
    }

    GroundSummary out;
    out.order = inst.order();
    out.field_bits = inst.field_bits();
    if (!best.saturated) {
        BigUint m;
        m.add_u64(static_cast<uint64_t>(best.v >> 64));
        m.mul_u64(uint64_t{1} << 32);
        m.mul_u64(uint64_t{1} << 32);
        m.add_u64(static_cast<uint64_t>(best.v));
        out.min_cost = m;
    } else {
        // The 128-bit fast path saturated at the minimum itself: re-enumerate
        // exactly. Never hit by realistic instances; correctness fallback.
        BigUint exact_best;
        bool have = false;
        argmin.clear();
        for (uint64_t b = 0; b < total; ++b) {
            BigUint c = eval.exact(b, inst);
            if (!have || c < exact_best) {
                exact_best = c;
                have = true;
                argmin.assign(1, b);
            } else if (c == exact_best) {
                argmin.push_back(b);
            }
        }
        out.min_cost = exact_best;
    }
    out.degeneracy = argmin.size();
    out.minimizers.reserve(argmin.size());
    for (uint64_t b : argmin) out.minimizers.push_back(decode_basis_index(b, inst.order()));
    std::sort(out.minimizers.begin(), out.minimizers.end(),
              [](const IntegerString& a, const IntegerString& b) { return a.entries < b.entries; });
    return out;
}

inline nlohmann::json ground_summary_to_json(const GroundSummary& s) {
    nlohmann::json j;
    if (s.min_cost.fits_u64() && s.min_cost.as_u64() <= (uint64_t{1} << 53))
        j["min_cost"] = s.min_cost.as_u64();
    else
        j["min_cost"] = s.min_cost.to_decimal_string();
    j["degeneracy"] = s.degeneracy;
    auto arr = nlohmann::json::array();
    for (const auto& m : s.minimizers) arr.push_back(to_string(m));
    j["minimizers"] = std::move(arr);
    j["is_isomorphic"] = s.zero_ground();
    return j;
}

}  // namespace aqgi

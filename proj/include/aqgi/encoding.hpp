#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aqgi/errors.hpp"

namespace aqgi {

/// Bits per vertex label: U = ceil(log2 N), at least 1.
inline int bits_per_vertex(int order) {
    int u = 0;
    while ((1 << u) < order) ++u;
    return u < 1 ? 1 : u;
}

/// The search-space point s = s_0...s_{N-1}. Each entry is a U-bit integer in
/// [0, 2^U - 1]; entries above N-1 are representable on purpose (they carry
/// the out-of-range penalty).
struct IntegerString {
    int order = 0;       // N
    int field_bits = 0;  // U
    std::vector<int> entries;

    int max_entry() const { return (1 << field_bits) - 1; }
    int qubits() const { return order * field_bits; }
    bool operator==(const IntegerString&) const = default;
};

inline IntegerString make_integer_string(int order, std::vector<int> entries) {
    IntegerString s;
    s.order = order;
    s.field_bits = bits_per_vertex(order);
    if (static_cast<int>(entries.size()) != order)
        throw input_error("integer string length must equal the graph order");
    for (int e : entries)
        if (e < 0 || e > s.max_entry())
            throw input_error("integer string entry " + std::to_string(e) + " outside [0, 2^U-1]");
    s.entries = std::move(entries);
    return s;
}

/// A permutation's bottom row becomes the integer string directly.
inline IntegerString perm_to_integer_string(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n) throw input_error("permutation image out of range");
        if (seen[p]) throw input_error("repeated permutation image " + std::to_string(p));
        seen[p] = true;
    }
    return make_integer_string(n, perm);
}

/// N little-endian U-bit fields, concatenated: global bit i*U+j is bit j of
/// entry i (weight 2^j).
inline std::vector<uint8_t> integer_string_to_bits(const IntegerString& s) {
    std::vector<uint8_t> bits(static_cast<size_t>(s.qubits()), 0);
    for (int i = 0; i < s.order; ++i)
        for (int j = 0; j < s.field_bits; ++j)
            bits[static_cast<size_t>(i) * s.field_bits + j] =
                static_cast<uint8_t>((s.entries[i] >> j) & 1);
    return bits;
}

inline IntegerString bits_to_integer_string(const std::vector<uint8_t>& bits, int order) {
    const int u = bits_per_vertex(order);
    if (static_cast<int>(bits.size()) != order * u)
        throw input_error("binary string length must be N*ceil(log2 N)");
    std::vector<int> entries(order, 0);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < u; ++j)
            if (bits[static_cast<size_t>(i) * u + j]) entries[i] |= 1 << j;
    return make_integer_string(order, std::move(entries));
}

/// Computational-basis label convention: basis index b has global bit i*U+j
/// at binary weight 2^(i*U+j), i.e. bit 0 of the index is the first bit of
/// field 0. This fixes the problem-Hamiltonian diagonal layout.
inline IntegerString decode_basis_index(uint64_t index, int order) {
    const int u = bits_per_vertex(order);
    const uint64_t mask = (uint64_t{1} << u) - 1;
    std::vector<int> entries(order);
    for (int i = 0; i < order; ++i) entries[i] = static_cast<int>((index >> (i * u)) & mask);
    return make_integer_string(order, std::move(entries));
}

inline uint64_t basis_index_of(const IntegerString& s) {
    uint64_t b = 0;
    for (int i = 0; i < s.order; ++i)
        b |= static_cast<uint64_t>(s.entries[i]) << (i * s.field_bits);
    return b;
}

inline bool is_permutation_string(const IntegerString& s) {
    uint32_t seen = 0;
    for (int e : s.entries) {
        if (e > s.order - 1) return false;
        if (seen & (1u << e)) return false;
        seen |= 1u << e;
    }
    return true;
}

/// The N x N 0/1 matrix sigma(s): column j is the unit vector e_{s_j}, or zero
/// when s_j > N-1. A permutation matrix exactly when s is a permutation
/// string.
struct LinearMap {
    int order = 0;
    std::vector<uint8_t> m;  // row-major
    bool is_permutation = false;

    int at(int i, int j) const { return m[static_cast<size_t>(i) * order + j]; }
};

inline LinearMap sigma_of(const IntegerString& s) {
    LinearMap map;
    map.order = s.order;
    map.m.assign(static_cast<size_t>(s.order) * s.order, 0);
    for (int j = 0; j < s.order; ++j)
        if (s.entries[j] <= s.order - 1)
            map.m[static_cast<size_t>(s.entries[j]) * s.order + j] = 1;
    map.is_permutation = is_permutation_string(s);
    return map;
}

/// Report convention: concatenated digits up to N=10 ("3210"), space-separated
/// beyond.
inline std::string to_string(const IntegerString& s) {
    std::string out;
    const bool spaced = s.order > 10 || s.max_entry() > 9;
    for (int i = 0; i < s.order; ++i) {
        if (spaced && i) out += ' ';
        out += std::to_string(s.entries[i]);
    }
    return out;
}

}  // namespace aqgi

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aqgi/errors.hpp"

namespace aqgi {

/// Multilinear polynomial over up to 64 bit-variables. A monomial is the
/// bitmask of its variable set, so x^2 = x is automatic (mask OR); the
/// constant term is mask 0. Coefficients stay exactly integral for every
/// expansion this library performs.
class MultilinearPolynomial {
public:
    MultilinearPolynomial() = default;

    static MultilinearPolynomial constant(double c) {
        MultilinearPolynomial p;
        p.add_term(0, c);
        return p;
    }

    static MultilinearPolynomial variable(int var) {
        MultilinearPolynomial p;
        p.add_term(uint64_t{1} << var, 1.0);
        return p;
    }

    void add_term(uint64_t monomial, double coeff) {
        if (coeff == 0.0) return;
        auto [it, inserted] = terms_.try_emplace(monomial, coeff);
        if (!inserted) {
            it->second += coeff;
            if (std::fabs(it->second) < 1e-12) terms_.erase(it);
        }
    }

    double coefficient(uint64_t monomial) const {
        auto it = terms_.find(monomial);
        return it == terms_.end() ? 0.0 : it->second;
    }

    MultilinearPolynomial& operator+=(const MultilinearPolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    MultilinearPolynomial& operator-=(const MultilinearPolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    MultilinearPolynomial& operator*=(double f) {
        if (f == 0.0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= f;
        return *this;
    }

    friend MultilinearPolynomial operator+(MultilinearPolynomial a,
                                           const MultilinearPolynomial& b) {
        a += b;
        return a;
    }

    friend MultilinearPolynomial operator-(MultilinearPolynomial a,
                                           const MultilinearPolynomial& b) {
        a -= b;
        return a;
    }

    friend MultilinearPolynomial operator*(const MultilinearPolynomial& a,
                                           const MultilinearPolynomial& b) {
        MultilinearPolynomial out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ma | mb, ca * cb);
        return out;
    }

    friend MultilinearPolynomial operator*(MultilinearPolynomial a, double f) {
        a *= f;
        return a;
    }

    /// Value at a 0/1 assignment given as a bitmask of the true variables.
    double evaluate(uint64_t assignment) const {
        double v = 0.0;
        for (const auto& [m, c] : terms_)
            if ((m & ~assignment) == 0) v += c;
        return v;
    }

    size_t term_count() const { return terms_.size(); }

    int max_degree() const {
        int deg = 0;
        for (const auto& [m, c] : terms_) deg = std::max(deg, std::popcount(m));
        return deg;
    }

    std::vector<size_t> degree_histogram() const {
        std::vector<size_t> h(static_cast<size_t>(max_degree()) + 1, 0);
        for (const auto& [m, c] : terms_) ++h[static_cast<size_t>(std::popcount(m))];
        return h;
    }

    /// Terms sorted by monomial mask; deterministic listing for exports.
    std::vector<std::pair<uint64_t, double>> sorted_terms() const {
        std::vector<std::pair<uint64_t, double>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end());
        return v;
    }

    const std::unordered_map<uint64_t, double>& terms() const { return terms_; }

private:
    std::unordered_map<uint64_t, double> terms_;
};

/// Kronecker delta of two bit variables, (a + b - 1)^2 reduced multilinearly:
/// 1 - a - b + 2ab.
inline MultilinearPolynomial delta_bit_poly(int var_a, int var_b) {
    MultilinearPolynomial p = MultilinearPolynomial::constant(1.0);
    p.add_term(uint64_t{1} << var_a, -1.0);
    p.add_term(uint64_t{1} << var_b, -1.0);
    p.add_term((uint64_t{1} << var_a) | (uint64_t{1} << var_b), 2.0);
    return p;
}

/// Delta of a bit variable against a constant bit: x for k=1, 1-x for k=0.
inline MultilinearPolynomial delta_bit_const_poly(int var, int k) {
    MultilinearPolynomial p;
    if (k) {
        p.add_term(uint64_t{1} << var, 1.0);
    } else {
        p.add_term(0, 1.0);
        p.add_term(uint64_t{1} << var, -1.0);
    }
    return p;
}

/// Delta of a U-bit field (variables field_vars[0..U-1], little-endian)
/// against the constant k: the product of per-bit deltas; evaluates to 1
/// exactly when the field equals k.
inline MultilinearPolynomial delta_int_poly(const std::vector<int>& field_vars, int k) {
    if (k < 0 || k >= (1 << field_vars.size()))
        throw input_error("delta constant outside the field range");
    MultilinearPolynomial p = MultilinearPolynomial::constant(1.0);
    for (size_t j = 0; j < field_vars.size(); ++j)
        p = p * delta_bit_const_poly(field_vars[j], (k >> j) & 1);
    return p;
}

/// Delta between two U-bit fields: product over bit positions of the
/// two-variable bit delta.
inline MultilinearPolynomial delta_field_pair_poly(const std::vector<int>& field_a,
                                                   const std::vector<int>& field_b) {
    if (field_a.size() != field_b.size()) throw input_error("field width mismatch");
    MultilinearPolynomial p = MultilinearPolynomial::constant(1.0);
    for (size_t j = 0; j < field_a.size(); ++j) p = p * delta_bit_poly(field_a[j], field_b[j]);
    return p;
}

}  // namespace aqgi

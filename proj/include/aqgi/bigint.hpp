#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace aqgi {

/// Minimal arbitrary-precision unsigned integer. Only what the SGI oracle's
/// Eq.-(49)-style products need: multiply by a machine word, add a machine
/// word, compare, and print.
class BigUint {
public:
    BigUint() : limbs_{0} {}
    BigUint(uint64_t v) : limbs_{v} {}  // NOLINT: implicit by design

    bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }

    bool fits_u64() const { return limbs_.size() == 1; }
    uint64_t as_u64() const { return limbs_[0]; }

    void mul_u64(uint64_t f) {
        if (f == 0) {
            limbs_.assign(1, 0);
            return;
        }
        unsigned __int128 carry = 0;
        for (auto& limb : limbs_) {
            unsigned __int128 prod = static_cast<unsigned __int128>(limb) * f + carry;
            limb = static_cast<uint64_t>(prod);
            carry = prod >> 64;
        }
        if (carry) limbs_.push_back(static_cast<uint64_t>(carry));
    }

    void add_u64(uint64_t v) {
        unsigned __int128 carry = v;
        for (auto& limb : limbs_) {
            if (!carry) return;
            unsigned __int128 sum = static_cast<unsigned __int128>(limb) + carry;
            limb = static_cast<uint64_t>(sum);
            carry = sum >> 64;
        }
        if (carry) limbs_.push_back(static_cast<uint64_t>(carry));
    }

    // -1 / 0 / +1
    int compare(const BigUint& o) const {
        if (limbs_.size() != o.limbs_.size())
            return limbs_.size() < o.limbs_.size() ? -1 : 1;
        for (size_t i = limbs_.size(); i-- > 0;) {
            if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
        }
        return 0;
    }

    bool operator<(const BigUint& o) const { return compare(o) < 0; }
    bool operator==(const BigUint& o) const { return compare(o) == 0; }
    bool operator!=(const BigUint& o) const { return compare(o) != 0; }

    double to_double() const {
        double v = 0;
        for (size_t i = limbs_.size(); i-- > 0;) v = v * 18446744073709551616.0 + limbs_[i];
        return v;
    }

    std::string to_decimal_string() const {
        std::vector<uint64_t> work(limbs_);
        std::string digits;
        while (!(work.size() == 1 && work[0] == 0)) {
            unsigned __int128 rem = 0;
            for (size_t i = work.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | work[i];
                work[i] = static_cast<uint64_t>(cur / 10);
                rem = cur % 10;
            }
            digits += static_cast<char>('0' + static_cast<int>(rem));
            while (work.size() > 1 && work.back() == 0) work.pop_back();
        }
        if (digits.empty()) digits = "0";
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

private:
    std::vector<uint64_t> limbs_;  // little-endian, no trailing zero limbs (except the value 0)
};

}  // namespace aqgi

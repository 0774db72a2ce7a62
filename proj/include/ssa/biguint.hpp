/* biguint.hpp -- minimal unsigned big integer (product accumulator)
 *
 * Exactly what the stabilizer-chain order product needs: start at 1,
 * multiply by machine-word factors, print in decimal.  Limbs are base 1e9.
 */

#ifndef SSA_BIGUINT_HPP
#define SSA_BIGUINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ssa {

class BigUint {
public:
    BigUint() : limbs_{0} {}
    explicit BigUint(std::uint64_t v) {
        do {
            limbs_.push_back(static_cast<std::uint32_t>(v % BASE));
            v /= BASE;
        } while (v);
    }

    BigUint& operator*=(std::uint64_t factor) {
        std::uint64_t carry = 0;
        for (std::uint32_t& limb : limbs_) {
            // factor < 2^32 in all call sites (orbit sizes), so this cannot overflow:
            // limb * factor + carry < 1e9 * 2^32 + 2^63.
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * factor + carry;
            limb = static_cast<std::uint32_t>(cur % BASE);
            carry = cur / BASE;
        }
        while (carry) {
            limbs_.push_back(static_cast<std::uint32_t>(carry % BASE));
            carry /= BASE;
        }
        if (limbs_.empty()) limbs_.push_back(0);
        return *this;
    }

    std::string to_string() const {
        std::string out = std::to_string(limbs_.back());
        for (auto it = limbs_.rbegin() + 1; it != limbs_.rend(); ++it) {
            std::string part = std::to_string(*it);
            out += std::string(9 - part.size(), '0') + part;
        }
        return out;
    }

    friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }

private:
    static constexpr std::uint64_t BASE = 1000000000;
    std::vector<std::uint32_t> limbs_;  // little-endian
};

}  // namespace ssa

#endif

#pragma once

#include <array>
#include <cstdint>

namespace edgecast::gf256 {

// GF(2^8) with the conventional Reed-Solomon primitive polynomial
// x^8 + x^4 + x^3 + x^2 + 1 (0x11d), generator alpha = 2.
inline constexpr unsigned kPrimitivePoly = 0x11d;

struct Tables {
    std::array<std::uint8_t, 512> exp{};
    std::array<int, 256> log{};

    constexpr Tables() {
        unsigned x = 1;
        for (int i = 0; i < 255; ++i) {
            exp[i] = static_cast<std::uint8_t>(x);
            exp[i + 255] = static_cast<std::uint8_t>(x);
            log[x] = i;
            x <<= 1;
            if (x & 0x100) x ^= kPrimitivePoly;
        }
        log[0] = -1;
    }
};

inline constexpr Tables kTables{};

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    return kTables.exp[kTables.log[a] + kTables.log[b]];
}

inline std::uint8_t inv(std::uint8_t a) {
    return kTables.exp[255 - kTables.log[a]];  // a != 0
}

inline std::uint8_t div(std::uint8_t a, std::uint8_t b) {
    if (a == 0) return 0;
    return kTables.exp[kTables.log[a] + 255 - kTables.log[b]];
}

}  // namespace edgecast::gf256

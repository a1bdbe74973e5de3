#pragma once

#include <array>
#include <cstdint>

namespace lldram {

// A 64-byte line as transferred over the channel: 8 chips, each
// contributing 8 bursts of 8 bits. chips[c] bit (b*8 + l) is chip c,
// burst b, lane l.
struct CacheLine {
    std::array<uint64_t, 8> chips{};

    bool operator==(const CacheLine&) const = default;
};

// Per-chip permutation of the 8 burst positions. Moving the bursts of
// different chips by different amounts spreads design-time slow bits over
// distinct ECC codewords.
struct ShuffleMap {
    std::array<std::array<uint8_t, 8>, 8> burst_of{};  // [chip][burst] -> burst

    static ShuffleMap identity();
    // map_c(b) = (b + c) mod 8
    static ShuffleMap rotation();
    ShuffleMap inverse() const;
    bool is_bijective() const;

    bool operator==(const ShuffleMap&) const = default;
};

CacheLine apply_shuffle(const ShuffleMap& map, const CacheLine& line);

// One ECC codeword per burst beat: 8 bits from each of the 8 chips.
uint64_t beat_data(const CacheLine& line, uint32_t beat);

}  // namespace lldram

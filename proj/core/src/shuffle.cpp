#include "lldram/shuffle.hpp"

#include "lldram/errors.hpp"

namespace lldram {

ShuffleMap ShuffleMap::identity() {
    ShuffleMap m;
    for (auto& chip : m.burst_of) {
        for (uint8_t b = 0; b < 8; ++b) chip[b] = b;
    }
    return m;
}

ShuffleMap ShuffleMap::rotation() {
    ShuffleMap m;
    for (uint8_t c = 0; c < 8; ++c) {
        for (uint8_t b = 0; b < 8; ++b) m.burst_of[c][b] = uint8_t((b + c) & 7);
    }
    return m;
}

bool ShuffleMap::is_bijective() const {
    for (const auto& chip : burst_of) {
        uint8_t seen = 0;
        for (uint8_t b = 0; b < 8; ++b) {
            if (chip[b] >= 8) return false;
            seen |= uint8_t(1u << chip[b]);
        }
        if (seen != 0xff) return false;
    }
    return true;
}

ShuffleMap ShuffleMap::inverse() const {
    if (!is_bijective()) throw ConfigError("shuffle map must be bijective per chip");
    ShuffleMap inv;
    for (size_t c = 0; c < 8; ++c) {
        for (uint8_t b = 0; b < 8; ++b) inv.burst_of[c][burst_of[c][b]] = b;
    }
    return inv;
}

CacheLine apply_shuffle(const ShuffleMap& map, const CacheLine& line) {
    if (!map.is_bijective()) throw ConfigError("shuffle map must be bijective per chip");
    CacheLine out;
    for (size_t c = 0; c < 8; ++c) {
        uint64_t w = line.chips[c];
        uint64_t r = 0;
        for (uint32_t b = 0; b < 8; ++b) {
            uint64_t byte = (w >> (b * 8)) & 0xffULL;
            r |= byte << (map.burst_of[c][b] * 8);
        }
        out.chips[c] = r;
    }
    return out;
}

uint64_t beat_data(const CacheLine& line, uint32_t beat) {
    uint64_t w = 0;
    for (uint32_t c = 0; c < 8; ++c) {
        w |= ((line.chips[c] >> (beat * 8)) & 0xffULL) << (c * 8);
    }
    return w;
}

}  // namespace lldram

#pragma once

#include <cstdint>

namespace lldram {

// Hamming(72,64) SECDED: seven parity bits at power-of-two positions of a
// 71-bit Hamming code plus an overall parity bit.
struct Codeword72 {
    uint64_t data = 0;
    uint8_t check = 0;  // bits 0..6: Hamming parity, bit 7: overall parity

    bool operator==(const Codeword72&) const = default;
    Codeword72 operator^(const Codeword72& o) const {
        return {data ^ o.data, uint8_t(check ^ o.check)};
    }
};

Codeword72 secded_encode(uint64_t data);

enum class DecodeStatus { kClean, kCorrected, kUncorrectable };

struct DecodeResult {
    DecodeStatus status = DecodeStatus::kClean;
    uint64_t data = 0;
    // bit index 0..71 in (data | check) order; valid when kCorrected
    int corrected_bit = -1;
};

DecodeResult secded_decode(const Codeword72& cw);

// Flip one bit of the 72-bit word; index 0..63 hits data, 64..71 check.
Codeword72 flip_bit(Codeword72 cw, int bit);

}  // namespace lldram

#include "lldram/secded.hpp"

#include <bit>
#include <array>

namespace lldram {

namespace {

// Codeword positions 1..71; powers of two hold parity, the rest hold data
// bits in ascending order. Position 0 is unused by the Hamming part; the
// overall parity covers everything.
struct Layout {
    std::array<uint8_t, 64> data_pos{};   // data bit -> position
    std::array<int8_t, 72> pos_data{};    // position -> data bit or -1
    constexpr Layout() {
        for (auto& p : pos_data) p = -1;
        int d = 0;
        for (uint8_t pos = 1; pos <= 71; ++pos) {
            if ((pos & (pos - 1)) == 0) continue;  // parity slot
            data_pos[d] = pos;
            pos_data[pos] = int8_t(d);
            ++d;
        }
    }
};

constexpr Layout kLayout;

uint8_t hamming_parities(uint64_t data) {
    // syndrome contribution of the data bits: XOR of their positions
    uint32_t acc = 0;
    while (data) {
        int b = std::countr_zero(data);
        data &= data - 1;
        acc ^= kLayout.data_pos[b];
    }
    uint8_t parity = 0;
    for (int i = 0; i < 7; ++i) {
        if (acc & (1u << i)) parity |= uint8_t(1u << i);
    }
    return parity;
}

}  // namespace

Codeword72 secded_encode(uint64_t data) {
    Codeword72 cw;
    cw.data = data;
    cw.check = hamming_parities(data);
    uint8_t overall = uint8_t((std::popcount(data) + std::popcount(uint32_t(cw.check))) & 1);
    cw.check |= uint8_t(overall << 7);
    return cw;
}

DecodeResult secded_decode(const Codeword72& cw) {
    uint32_t syndrome = hamming_parities(cw.data) ^ uint8_t(cw.check & 0x7f);
    bool parity_err =
        ((std::popcount(cw.data) + std::popcount(uint32_t(cw.check))) & 1) != 0;

    DecodeResult r;
    r.data = cw.data;
    if (syndrome == 0 && !parity_err) {
        r.status = DecodeStatus::kClean;
        return r;
    }
    if (syndrome == 0 && parity_err) {
        // the overall parity bit itself flipped
        r.status = DecodeStatus::kCorrected;
        r.corrected_bit = 71;
        return r;
    }
    if (!parity_err || syndrome > 71) {
        r.status = DecodeStatus::kUncorrectable;
        return r;
    }
    // single-bit error at position `syndrome`
    r.status = DecodeStatus::kCorrected;
    if ((syndrome & (syndrome - 1)) == 0) {
        // a Hamming parity bit; data is already intact
        int pbit = std::countr_zero(syndrome);
        r.corrected_bit = 64 + pbit;
    } else {
        int d = kLayout.pos_data[syndrome];
        r.data ^= 1ULL << d;
        r.corrected_bit = d;
    }
    return r;
}

Codeword72 flip_bit(Codeword72 cw, int bit) {
    if (bit < 64) {
        cw.data ^= 1ULL << bit;
    } else {
        cw.check ^= uint8_t(1u << (bit - 64));
    }
    return cw;
}

}  // namespace lldram

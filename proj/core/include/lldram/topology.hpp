#pragma once

#include <cstdint>

#include "lldram/timing.hpp"

namespace lldram {

// Physical organization: channel > rank > chip/bank > subarray > mat.
// A mat is a cells_per_mat_side^2 array; a subarray is one horizontal row
// of mats activated together. Data moves as 64-byte lines (burst_length x
// bus_width_bits = 512 bits), 64 bits of which come from each chip.
struct Topology {
    uint32_t channels = 1;
    uint32_t ranks_per_channel = 1;
    uint32_t chips_per_rank = 8;
    uint32_t banks_per_rank = 8;
    uint32_t subarrays_per_bank = 4;
    uint32_t rows_per_subarray = 512;
    uint32_t mats_per_subarray_row = 4;
    uint32_t cells_per_mat_side = 512;
    uint32_t columns_per_row = 32;
    uint32_t bus_width_bits = 64;
    uint32_t burst_length = 8;
    Picos clock_period_ps = kClockDdr3_1066;

    // Throws ConfigError when an invariant fails.
    void validate() const;

    uint64_t line_bytes() const { return uint64_t(bus_width_bits) * burst_length / 8; }
    uint64_t rows_per_bank() const {
        return uint64_t(subarrays_per_bank) * rows_per_subarray;
    }
    // Bitlines spanned by one chip's slice of a subarray row.
    uint64_t bitlines_per_row() const {
        return uint64_t(mats_per_subarray_row) * cells_per_mat_side;
    }
    uint64_t capacity_bytes() const;
};

}  // namespace lldram

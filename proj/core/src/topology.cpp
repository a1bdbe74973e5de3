#include "lldram/topology.hpp"

#include "lldram/errors.hpp"

namespace lldram {

void Topology::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(what);
    };
    require(channels >= 1 && ranks_per_channel >= 1 && chips_per_rank >= 1 &&
                banks_per_rank >= 1 && subarrays_per_bank >= 1 &&
                rows_per_subarray >= 1 && mats_per_subarray_row >= 1 &&
                cells_per_mat_side >= 1 && columns_per_row >= 1,
            "all topology counts must be >= 1");
    require(bus_width_bits == chips_per_rank * 8,
            "bus_width_bits must equal chips_per_rank * 8");
    require(burst_length * bus_width_bits == 512,
            "burst_length * bus_width_bits must form a 64-byte line");
    // Each column access pulls 64 bits per chip, so a chip's slice of a
    // row must hold exactly columns_per_row * 64 bitlines.
    require(bitlines_per_row() == uint64_t(columns_per_row) * 64,
            "mats_per_subarray_row * cells_per_mat_side must equal columns_per_row * 64");
    require(rows_per_subarray % cells_per_mat_side == 0 ||
                rows_per_subarray <= cells_per_mat_side,
            "rows_per_subarray must tile into whole mats");
    require(clock_period_ps > 0, "clock_period_ps must be positive");
}

uint64_t Topology::capacity_bytes() const {
    return uint64_t(channels) * ranks_per_channel * banks_per_rank *
           subarrays_per_bank * rows_per_subarray * columns_per_row * line_bytes();
}

}  // namespace lldram

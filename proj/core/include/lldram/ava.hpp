#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lldram/aldram.hpp"
#include "lldram/shuffle.hpp"
#include "lldram/variation.hpp"

namespace lldram {

// Architecturally slowest cells, reserved from data placement and used as
// the online latency test region.
struct RegionRow {
    uint32_t subarray;
    uint32_t row_internal;
    uint32_t col_begin;  // bitline range [col_begin, col_end)
    uint32_t col_end;
};

struct TestRegion {
    std::vector<RegionRow> rows;
    bool reserved = true;

    bool contains(uint32_t subarray, uint32_t row_internal, uint32_t bitline) const;
    size_t mat_row_count() const { return rows.size(); }
};

// Per mat: the row farthest from each sense-amplifier row (rows 0 and
// N-1), plus one designated row in the slowest-precharge mat.
TestRegion select_test_region(const ChipModel& chip);

struct AvaProfileResult {
    TimingParams minimal;   // minimal-sum error-free grid point over the region
    TimingParams margined;  // one clock cycle added to each reduced parameter
    bool from_grid;         // false: nothing in the grid passed, standard returned
};

// Region-only grid search; read and write tests both gate the result.
AvaProfileResult ava_profile(const ChipModel& chip, const TestRegion& region,
                             double temp_c, const TimingGrid& grid,
                             const TimingParams& standard, double refresh_ms = 64.0,
                             const IdentifyOptions& opts = {});

// Worst required row timings over the region only.
RequiredRowTimings region_worst_required(const ChipModel& chip, const TestRegion& region,
                                         OpKind op, double temp_c, double refresh_ms,
                                         const IdentifyOptions& opts = {});

struct CorrectionStats {
    uint64_t lines = 0;
    uint64_t total_errors = 0;        // failing bits
    uint64_t corrected = 0;           // bits repaired by SECDED
    uint64_t uncorrectable_bits = 0;  // bits in multi-error codewords
    uint64_t uncorrectable_codewords = 0;

    std::string to_csv_row(uint64_t seed, const CorrectionStats& shuffled) const;
};

// Samples cache lines, applies the per-cell failure oracle bit by bit
// (per-chip noise streams), forms one codeword per burst beat after the
// shuffle map, and decodes. Deterministic given the sampling seed.
CorrectionStats evaluate_correction(const ChipModel& chip, const TimingParams& applied,
                                    double temp_c, double refresh_ms,
                                    const ShuffleMap& map, uint64_t trials,
                                    uint64_t sample_seed);

}  // namespace lldram

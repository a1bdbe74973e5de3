#pragma once

#include <cstdint>

#include "lldram/address.hpp"
#include "lldram/timing.hpp"
#include "lldram/topology.hpp"

namespace lldram {

// Position of a cell inside one chip. mat_index runs along the global
// wordline; bitline_parity tells which sense-amplifier row (bottom/top)
// the cell's bitline connects to in the open-bitline layout.
struct CellCoords {
    uint32_t bank = 0;
    uint32_t subarray = 0;
    uint32_t mat_index = 0;
    uint32_t row_in_mat = 0;
    uint32_t col_in_mat = 0;
    bool odd_bitline = false;
};

// Synthetic per-cell latency/retention model. Architectural variation is
// deterministic in the coordinates; process variation is a counter-based
// hash of (seed, coordinates), so whole-chip models need no storage.
struct VariationParams {
    // intrinsic minimal row timings of the best cell (tCL/tCWL/tBL ride
    // along unchanged; they are interface constants, not cell properties)
    TimingParams base = TimingParams::create(6500, 17500, 9000, 6500, 15000, 11250, 7500);

    double kappa_bitline = 0.25;    // timing inflation at full bitline distance
    double kappa_wordline = 0.05;   // inflation at full wordline distance
    double kappa_precharge = 0.15;  // tRP inflation at the slowest mat
    Picos alpha_ps = 120;           // main precharge-signal delay per mat
    Picos beta_ps = 15;             // sub precharge-signal delay per mat
    double sigma_process = 0.04;    // relative stddev of per-cell noise
    double rw_salt_frac = 0.25;     // read/write-specific noise, fraction of sigma
    double pattern_salt_frac = 0.10;  // data-pattern-specific noise
    double iter_salt_frac = 0.05;     // per-iteration flicker
    double lambda_temp = 0.004;     // relative slowdown per degC above 55
    double retention_median_ms = 2000.0;  // at 85 degC
    double retention_sigma = 0.6;         // lognormal shape
    double write_retention_derate = 1.0;  // write-test effective retention factor
    double gamma_charge = 0.1;  // timing inflation per unit of charge-slack deficit
    double c0 = 0.25;           // charge ratio where inflation kicks in
    double vrt_probability = 0.0;  // per-cell chance of a variable-retention toggle
    double vrt_factor = 0.3;       // retention multiplier when toggled
    bool open_bitline = true;      // false: every bitline senses at the bottom row
    uint64_t seed = 1;

    void validate() const;
};

// Failure kind returned by the oracle.
enum class FailureKind { kNone, kTiming, kRetention };

enum class OpKind { kRead, kWrite };

// Extra words folded into the process-noise stream. Different data
// patterns and ops sensitize overlapping-but-distinct cell sets; chips in
// a module share the design but not the noise.
struct NoiseSalt {
    OpKind op = OpKind::kRead;
    uint32_t pattern = 0;
    uint32_t iteration = 0;
    uint32_t chip = 0;

    static NoiseSalt read() { return NoiseSalt{}; }
    static NoiseSalt write() { return NoiseSalt{OpKind::kWrite, 0, 0, 0}; }
};

// The four cell-dependent row timings, kept light for hot loops.
struct RequiredRowTimings {
    Picos trcd = 0;
    Picos tras = 0;
    Picos twr = 0;
    Picos trp = 0;

    void max_with(const RequiredRowTimings& o) {
        trcd = std::max(trcd, o.trcd);
        tras = std::max(tras, o.tras);
        twr = std::max(twr, o.twr);
        trp = std::max(trp, o.trp);
    }
};

// Normalized distance of a cell from its sense-amplifier row. Even
// bitlines sense at the bottom of the mat, odd at the top.
double bitline_distance(const CellCoords& coords, const Topology& topo,
                        bool open_bitline = true);

// min(m*alpha, (M-1)*beta + (M-1-m)*alpha): the faster of the main
// (left-to-right) and sub (around the right edge) precharge signals.
Picos precharge_arrival_delay(uint32_t mat_index, uint32_t mat_count,
                              const VariationParams& params);

class ChipModel {
public:
    // The row map is the chip's hidden external-to-internal scrambling;
    // profiling only ever addresses external rows.
    ChipModel(Topology topo, VariationParams params,
              RowMap row_map = RowMap::identity());

    const Topology& topology() const { return topo_; }
    const VariationParams& params() const { return params_; }
    const RowMap& row_map() const { return row_map_; }
    uint32_t row_internal(uint32_t row_external) const {
        return row_map_.to_internal(row_external, topo_.rows_per_subarray);
    }

    // Maps a decoded address plus a bit position in the 64-bit per-chip
    // transfer onto physical cell coordinates. Bit k of column c sits on
    // bitline k*columns_per_row + c of the subarray row; the row index
    // passes through the chip's row map.
    CellCoords cell_coords(const Address& addr, uint32_t burst_bit) const;

    // Retention at temp_c in milliseconds; halves exactly per +10 degC.
    double retention_ms(const CellCoords& coords, double temp_c,
                        const NoiseSalt& salt = NoiseSalt{}) const;

    // Minimal reliable values of the four row timings for one cell.
    RequiredRowTimings required_row_timings(const CellCoords& coords, double temp_c,
                                            double refresh_ms,
                                            const NoiseSalt& salt = NoiseSalt{}) const;

    // Spec-shaped variant returning a full timing vector.
    TimingParams required_timings(const CellCoords& coords, double temp_c,
                                  double refresh_ms,
                                  const NoiseSalt& salt = NoiseSalt{}) const;

    // Architectural component only (no process noise, no charge term).
    // Used for test-region selection, which has design-time knowledge.
    RequiredRowTimings deterministic_row_timings(const CellCoords& coords,
                                                 double temp_c) const;

    // fail(timing) if any relevant applied component is below the cell's
    // requirement (read: tRCD/tRAS/tRP, write: tRCD/tWR/tRP);
    // fail(retention) if the refresh interval exceeds the cell's
    // retention. Pure function of its inputs.
    FailureKind cell_failure(const CellCoords& coords, const TimingParams& applied,
                             double temp_c, double refresh_ms, OpKind op,
                             const NoiseSalt& salt = NoiseSalt{}) const;

    Picos max_precharge_delay() const { return max_pre_delay_; }
    uint32_t slowest_precharge_mat() const { return slowest_mat_; }

    // Hard floor below which no requirement can fall (5 ns).
    static constexpr Picos kFloorPs = 5000;

    // The (1 + eps) * g(c) multiplier shared by all four row timings;
    // exposed so grid searches can factor it out of the hot loop.
    double noise_scale(const CellCoords& coords, double temp_c, double refresh_ms,
                       const NoiseSalt& salt) const;

private:
    double process_eps(const CellCoords& coords, const NoiseSalt& salt) const;

    Topology topo_;
    VariationParams params_;
    RowMap row_map_;
    Picos max_pre_delay_ = 0;
    uint32_t slowest_mat_ = 0;
};

}  // namespace lldram

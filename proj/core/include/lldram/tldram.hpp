#pragma once

#include <vector>

#include "lldram/bank.hpp"
#include "lldram/timing.hpp"
#include "lldram/topology.hpp"

namespace lldram {

// Bitline segmentation: tier 0 (near) sits next to the sense amplifiers,
// higher tiers behind successive isolation transistors.
struct SegmentTier {
    uint32_t rows = 0;
    TimingParams timings;
};

struct SegmentConfig {
    std::vector<SegmentTier> tiers;
    uint32_t isolation_sets = 2;     // 2 per boundary in the open-bitline layout
    Picos transfer_write_ps = 4000;  // destination-cell write during a transfer

    uint32_t total_rows() const;
    uint32_t near_rows() const { return tiers.empty() ? 0 : tiers.front().rows; }
    int tier_of(uint32_t physical_row) const;
    const TimingParams& tier_timings(int tier) const { return tiers.at(tier).timings; }

    // Throws ConfigError when tier ordering or row counts are wrong.
    void validate(uint32_t rows_per_subarray, const TimingParams& base) const;
};

enum class SegmentMode {
    kTable,   // published anchor points only
    kInterp,  // piecewise-linear between anchors
};

// Two-tier segment timings for a near segment of near_rows rows out of
// rows_per_subarray. Table mode accepts the published 32- and 128-row
// splits; interp mode any 1 <= near_rows < rows_per_subarray.
SegmentConfig derive_segment_timings(uint32_t near_rows, const TimingParams& base,
                                     SegmentMode mode,
                                     uint32_t rows_per_subarray = 512);

// The published 32/224/256 three-tier case study.
SegmentConfig three_tier_config(const TimingParams& base,
                                uint32_t rows_per_subarray = 512);

// An unsegmented baseline expressed as a single tier (no isolation cost).
SegmentConfig unsegmented_config(const TimingParams& base,
                                 uint32_t rows_per_subarray = 512);

struct AreaReport {
    double isolation_overhead_frac = 0.0;  // subarray-level
    double die_overhead_frac = 0.0;
    double capacity_loss_frac = 0.0;  // open-bitline near-segment loss
    double total_overhead_frac = 0.0;
    double near_decoder_wiring_frac = 0.0;  // informational constant
};

AreaReport area_overhead(const SegmentConfig& cfg, const Topology& topo);

// Row-to-row copy over the shared bitline. The destination write overlaps
// the tail of the source activation; the bank is busy for
// max(tRAS_src, tRCD_src + write) + max(tRP_src, tRP_dst).
struct TransferSchedule {
    std::vector<Command> commands;
    Cycles occupancy = 0;  // cycles the bank stays busy from issue
    Cycles start = 0;
};

TransferSchedule intersegment_transfer(const Address& src_row, const Address& dst_row,
                                       const BankState& state, const SegmentConfig& cfg,
                                       Picos clock_ps, Cycles now);

// Abstract energy units, normalized to one wordline swing.
inline constexpr double kEnergyWordline = 1.0;
inline constexpr double kEnergyBitlineFull = 10.0;
inline constexpr double kEnergyIo = 2.0;

// ACT/PRE scale with the connected bitline fraction; accessing a tier
// behind an isolation boundary costs two extra wordline swings to drive
// the isolation transistors.
double command_energy(const Command& cmd, const SegmentConfig& cfg,
                      const Topology& topo);

}  // namespace lldram

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lldram/timing.hpp"

namespace lldram {

enum class PolicyKind { kNone, kSc, kWmc, kBbc };

enum class AccessClass { kRowBufferHit, kNearHit, kNearMiss };

// Physical row motion the controller must perform (rows are subarray-
// physical indices: [0, N) near slots, then the far rows).
struct TransferAction {
    uint32_t src_physical_row;
    uint32_t dst_physical_row;
};

struct AccessOutcome {
    AccessClass cls = AccessClass::kNearMiss;
    // row to activate for the request itself, and its tier
    uint32_t physical_row = 0;
    int tier = 0;
    // at most one dirty-eviction writeback followed by one caching fill
    std::vector<TransferAction> transfers;
};

// A queued request as seen by the wait-inducing classifier.
struct QueuedArrival {
    Cycles arrival;
    uint64_t row_uid;
};

// True when some request to a different row of the same subarray arrived
// inside [act_time, act_time + trc_cycles).
bool wait_inducing(std::span<const QueuedArrival> queue, uint64_t active_row_uid,
                   Cycles act_time, Cycles trc_cycles);

// Near-segment tag store for one bank's subarrays (inclusive caching).
// Policy metadata is an LRU stamp (SC), a wait-recency stamp (WMC) or a
// saturating 8-bit benefit counter (BBC).
class CacheState {
public:
    CacheState(PolicyKind policy, uint32_t subarrays, uint32_t near_rows,
               uint32_t far_rows);

    PolicyKind policy() const { return policy_; }
    uint32_t near_rows() const { return near_rows_; }
    uint32_t far_rows() const { return far_rows_; }

    // far_row is the data row index in [0, far_rows). `row_open` reports a
    // sense-amplifier hit. `dirty` marks the access as a write.
    AccessOutcome sc_on_access(uint32_t subarray, uint32_t far_row, bool row_open,
                               bool dirty);

    // `induced_wait` is the wait-inducing classification of this access's
    // activation window (computed at window close by the caller).
    AccessOutcome wmc_on_access(uint32_t subarray, uint32_t far_row, bool row_open,
                                bool dirty, bool induced_wait);

    // `saved_cycles` is the benefit increment for a near hit: the tRCD
    // delta plus the observed tRC delta when a queued request waited.
    AccessOutcome bbc_on_access(uint32_t subarray, uint32_t far_row, bool row_open,
                                bool dirty, Cycles saved_cycles);

    // Convenience dispatch on policy().
    AccessOutcome on_access(uint32_t subarray, uint32_t far_row, bool row_open,
                            bool dirty, bool induced_wait, Cycles saved_cycles);

    std::optional<uint32_t> lookup(uint32_t subarray, uint32_t far_row) const;
    uint32_t occupancy(uint32_t subarray) const;
    uint8_t benefit_of(uint32_t subarray, uint32_t slot) const;
    bool dirty_of(uint32_t subarray, uint32_t slot) const;

private:
    struct Slot {
        bool valid = false;
        bool dirty = false;
        uint32_t far_row = 0;
        uint64_t stamp = 0;   // LRU or wait-recency ordinal
        uint8_t benefit = 0;  // BBC
    };
    struct Subarray {
        std::vector<Slot> slots;
    };

    uint32_t physical_of_far(uint32_t far_row) const { return near_rows_ + far_row; }
    AccessOutcome fill(Subarray& sa, uint32_t far_row, bool dirty, uint32_t victim_slot,
                       bool stamp_new, bool victim_by_benefit);

    PolicyKind policy_;
    uint32_t near_rows_;
    uint32_t far_rows_;
    uint64_t clock_ = 0;  // monotone stamp source
    std::vector<Subarray> subarrays_;
};

// Row indirection for exclusive caching: every logical data row can sit
// in any physical row of its subarray; one dummy physical row per
// subarray stages the three-migration swap.
class ExclusiveMapping {
public:
    // physical rows per subarray = logical data rows + 1 dummy
    ExclusiveMapping(uint32_t subarrays, uint32_t rows_per_subarray);

    uint32_t logical_rows() const { return rows_ - 1; }
    uint32_t dummy_row() const { return rows_ - 1; }
    uint32_t physical_of(uint32_t subarray, uint32_t logical) const;
    uint32_t logical_at(uint32_t subarray, uint32_t physical) const;

    // Swaps the contents of two logical rows via the dummy row; returns
    // the three migrations in issue order.
    std::vector<TransferAction> swap(uint32_t subarray, uint32_t cached_row,
                                     uint32_t evicted_row);

private:
    uint32_t rows_;
    std::vector<std::vector<uint32_t>> phys_of_;  // [subarray][logical]
    std::vector<std::vector<uint32_t>> log_at_;   // [subarray][physical]
};

// Spec-shaped wrapper.
std::vector<TransferAction> exclusive_swap(ExclusiveMapping& map, uint32_t subarray,
                                           uint32_t c_row, uint32_t e_row);

// Profile-based page mapping: per subarray, the near_rows hottest rows
// (ties to the lower index) move to the near slots.
struct ProfileMapping {
    // [subarray][logical row] -> physical row
    std::vector<std::vector<uint32_t>> phys_of;
};

ProfileMapping build_profile_mapping(
    const std::vector<std::vector<uint64_t>>& access_counts, uint32_t near_rows);

// Controller tag/metadata storage cost.
enum class CacheScheme { kInclusiveSc, kInclusiveWmc, kInclusiveBbc, kExclusive };

struct TagStorageReport {
    uint64_t tag_bits = 0;
    uint64_t replacement_bits = 0;
    uint64_t total_bits() const { return tag_bits + replacement_bits; }
};

TagStorageReport tag_storage_bits(uint32_t near_rows, uint32_t far_rows,
                                  uint32_t subarrays, CacheScheme scheme);

}  // namespace lldram

#include "lldram/policies.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "lldram/errors.hpp"

namespace lldram {

namespace {

uint32_t ceil_log2(uint64_t n) {
    if (n <= 1) return 0;
    return uint32_t(std::bit_width(n - 1));
}

}  // namespace

bool wait_inducing(std::span<const QueuedArrival> queue, uint64_t active_row_uid,
                   Cycles act_time, Cycles trc_cycles) {
    for (const auto& q : queue) {
        if (q.row_uid == active_row_uid) continue;
        if (q.arrival >= act_time && q.arrival < act_time + trc_cycles) return true;
    }
    return false;
}

CacheState::CacheState(PolicyKind policy, uint32_t subarrays, uint32_t near_rows,
                       uint32_t far_rows)
    : policy_(policy), near_rows_(near_rows), far_rows_(far_rows) {
    if (near_rows == 0 || far_rows == 0 || subarrays == 0) {
        throw ConfigError("cache dimensions must be >= 1");
    }
    subarrays_.resize(subarrays);
    for (auto& sa : subarrays_) sa.slots.resize(near_rows);
}

std::optional<uint32_t> CacheState::lookup(uint32_t subarray, uint32_t far_row) const {
    const auto& sa = subarrays_.at(subarray);
    for (uint32_t i = 0; i < sa.slots.size(); ++i) {
        if (sa.slots[i].valid && sa.slots[i].far_row == far_row) return i;
    }
    return std::nullopt;
}

uint32_t CacheState::occupancy(uint32_t subarray) const {
    const auto& sa = subarrays_.at(subarray);
    uint32_t n = 0;
    for (const auto& s : sa.slots) n += s.valid;
    return n;
}

uint8_t CacheState::benefit_of(uint32_t subarray, uint32_t slot) const {
    return subarrays_.at(subarray).slots.at(slot).benefit;
}

bool CacheState::dirty_of(uint32_t subarray, uint32_t slot) const {
    return subarrays_.at(subarray).slots.at(slot).dirty;
}

AccessOutcome CacheState::fill(Subarray& sa, uint32_t far_row, bool dirty,
                               uint32_t victim_slot, bool stamp_new,
                               bool victim_by_benefit) {
    AccessOutcome out;
    out.cls = AccessClass::kNearMiss;
    Slot& v = sa.slots[victim_slot];
    if (v.valid && v.dirty) {
        // write the victim back to its far home before reusing the slot
        out.transfers.push_back({victim_slot, physical_of_far(v.far_row)});
    }
    if (victim_by_benefit && v.valid) {
        // decay: every eviction halves all benefits in the subarray
        for (Slot& s : sa.slots) s.benefit = uint8_t(s.benefit >> 1);
    }
    out.transfers.push_back({physical_of_far(far_row), victim_slot});
    v.valid = true;
    v.dirty = dirty;
    v.far_row = far_row;
    v.stamp = stamp_new ? ++clock_ : 0;
    v.benefit = 0;
    out.physical_row = victim_slot;
    out.tier = 0;
    return out;
}

AccessOutcome CacheState::sc_on_access(uint32_t subarray, uint32_t far_row,
                                       bool row_open, bool dirty) {
    auto& sa = subarrays_.at(subarray);
    auto slot = lookup(subarray, far_row);
    AccessOutcome out;
    if (row_open) {
        // LRU ordering remains unaffected by sense-amplifier hits
        out.cls = AccessClass::kRowBufferHit;
        out.physical_row = slot ? *slot : physical_of_far(far_row);
        out.tier = slot ? 0 : 1;
        if (slot && dirty) sa.slots[*slot].dirty = true;
        return out;
    }
    if (slot) {
        Slot& s = sa.slots[*slot];
        s.stamp = ++clock_;  // promote to MRU
        s.dirty = s.dirty || dirty;
        out.cls = AccessClass::kNearHit;
        out.physical_row = *slot;
        out.tier = 0;
        return out;
    }
    // miss: evict the LRU slot (invalid slots first)
    uint32_t victim = 0;
    uint64_t best = UINT64_MAX;
    for (uint32_t i = 0; i < sa.slots.size(); ++i) {
        if (!sa.slots[i].valid) {
            victim = i;
            best = 0;
            break;
        }
        if (sa.slots[i].stamp < best) {
            best = sa.slots[i].stamp;
            victim = i;
        }
    }
    return fill(sa, far_row, dirty, victim, /*stamp_new=*/true,
                /*victim_by_benefit=*/false);
}

AccessOutcome CacheState::wmc_on_access(uint32_t subarray, uint32_t far_row,
                                        bool row_open, bool dirty, bool induced_wait) {
    auto& sa = subarrays_.at(subarray);
    auto slot = lookup(subarray, far_row);
    AccessOutcome out;
    if (row_open) {
        out.cls = AccessClass::kRowBufferHit;
        out.physical_row = slot ? *slot : physical_of_far(far_row);
        out.tier = slot ? 0 : 1;
        if (slot && dirty) sa.slots[*slot].dirty = true;
        return out;
    }
    if (slot) {
        Slot& s = sa.slots[*slot];
        // recency advances only when the access would have made the next
        // request wait had this row been in the far segment
        if (induced_wait) s.stamp = ++clock_;
        s.dirty = s.dirty || dirty;
        out.cls = AccessClass::kNearHit;
        out.physical_row = *slot;
        out.tier = 0;
        return out;
    }
    if (!induced_wait) {
        // not wait-inducing: serve from the far segment, no caching
        out.cls = AccessClass::kNearMiss;
        out.physical_row = physical_of_far(far_row);
        out.tier = 1;
        return out;
    }
    uint32_t victim = 0;
    uint64_t best = UINT64_MAX;
    for (uint32_t i = 0; i < sa.slots.size(); ++i) {
        if (!sa.slots[i].valid) {
            victim = i;
            best = 0;
            break;
        }
        if (sa.slots[i].stamp < best) {  // least recently wait-inducing
            best = sa.slots[i].stamp;
            victim = i;
        }
    }
    return fill(sa, far_row, dirty, victim, /*stamp_new=*/true,
                /*victim_by_benefit=*/false);
}

AccessOutcome CacheState::bbc_on_access(uint32_t subarray, uint32_t far_row,
                                        bool row_open, bool dirty,
                                        Cycles saved_cycles) {
    auto& sa = subarrays_.at(subarray);
    auto slot = lookup(subarray, far_row);
    AccessOutcome out;
    if (row_open) {
        out.cls = AccessClass::kRowBufferHit;
        out.physical_row = slot ? *slot : physical_of_far(far_row);
        out.tier = slot ? 0 : 1;
        if (slot && dirty) sa.slots[*slot].dirty = true;
        return out;
    }
    if (slot) {
        Slot& s = sa.slots[*slot];
        uint64_t inc = uint64_t(std::max<Cycles>(saved_cycles, 0));
        s.benefit = uint8_t(std::min<uint64_t>(255, s.benefit + inc));
        s.dirty = s.dirty || dirty;
        out.cls = AccessClass::kNearHit;
        out.physical_row = *slot;
        out.tier = 0;
        return out;
    }
    // far access caches immediately, evicting the minimum-benefit row
    uint32_t victim = 0;
    uint32_t best = UINT32_MAX;
    for (uint32_t i = 0; i < sa.slots.size(); ++i) {
        if (!sa.slots[i].valid) {
            victim = i;
            best = 0;
            break;
        }
        if (sa.slots[i].benefit < best) {
            best = sa.slots[i].benefit;
            victim = i;
        }
    }
    return fill(sa, far_row, dirty, victim, /*stamp_new=*/false,
                /*victim_by_benefit=*/true);
}

AccessOutcome CacheState::on_access(uint32_t subarray, uint32_t far_row, bool row_open,
                                    bool dirty, bool induced_wait,
                                    Cycles saved_cycles) {
    switch (policy_) {
        case PolicyKind::kSc:
            return sc_on_access(subarray, far_row, row_open, dirty);
        case PolicyKind::kWmc:
            return wmc_on_access(subarray, far_row, row_open, dirty, induced_wait);
        case PolicyKind::kBbc:
            return bbc_on_access(subarray, far_row, row_open, dirty, saved_cycles);
        case PolicyKind::kNone:
            break;
    }
    AccessOutcome out;
    out.cls = row_open ? AccessClass::kRowBufferHit : AccessClass::kNearMiss;
    out.physical_row = physical_of_far(far_row);
    out.tier = 1;
    return out;
}

ExclusiveMapping::ExclusiveMapping(uint32_t subarrays, uint32_t rows_per_subarray)
    : rows_(rows_per_subarray) {
    if (rows_per_subarray < 2) throw ConfigError("exclusive mapping needs a dummy row");
    phys_of_.resize(subarrays);
    log_at_.resize(subarrays);
    for (uint32_t s = 0; s < subarrays; ++s) {
        phys_of_[s].resize(rows_ - 1);
        log_at_[s].assign(rows_, UINT32_MAX);
        for (uint32_t r = 0; r + 1 < rows_; ++r) {
            phys_of_[s][r] = r;
            log_at_[s][r] = r;
        }
    }
}

uint32_t ExclusiveMapping::physical_of(uint32_t subarray, uint32_t logical) const {
    return phys_of_.at(subarray).at(logical);
}

uint32_t ExclusiveMapping::logical_at(uint32_t subarray, uint32_t physical) const {
    return log_at_.at(subarray).at(physical);
}

std::vector<TransferAction> ExclusiveMapping::swap(uint32_t subarray,
                                                   uint32_t cached_row,
                                                   uint32_t evicted_row) {
    uint32_t c = physical_of(subarray, cached_row);
    uint32_t e = physical_of(subarray, evicted_row);
    uint32_t d = dummy_row();
    std::vector<TransferAction> migrations{{c, d}, {e, c}, {d, e}};
    std::swap(phys_of_[subarray][cached_row], phys_of_[subarray][evicted_row]);
    log_at_[subarray][c] = evicted_row;
    log_at_[subarray][e] = cached_row;
    return migrations;
}

std::vector<TransferAction> exclusive_swap(ExclusiveMapping& map, uint32_t subarray,
                                           uint32_t c_row, uint32_t e_row) {
    return map.swap(subarray, c_row, e_row);
}

ProfileMapping build_profile_mapping(
    const std::vector<std::vector<uint64_t>>& access_counts, uint32_t near_rows) {
    ProfileMapping m;
    m.phys_of.reserve(access_counts.size());
    for (const auto& counts : access_counts) {
        uint32_t rows = uint32_t(counts.size());
        if (near_rows >= rows) throw ConfigError("near_rows must be below the row count");
        std::vector<uint32_t> order(rows);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
            if (counts[a] != counts[b]) return counts[a] > counts[b];
            return a < b;  // ties to the lower row index
        });
        std::vector<uint32_t> phys(rows);
        // hottest rows take the near slots in rank order; the rest keep
        // ascending order in the far region
        std::vector<bool> is_near(rows, false);
        for (uint32_t i = 0; i < near_rows; ++i) {
            phys[order[i]] = i;
            is_near[order[i]] = true;
        }
        uint32_t next_far = near_rows;
        for (uint32_t r = 0; r < rows; ++r) {
            if (!is_near[r]) phys[r] = next_far++;
        }
        m.phys_of.push_back(std::move(phys));
    }
    return m;
}

TagStorageReport tag_storage_bits(uint32_t near_rows, uint32_t far_rows,
                                  uint32_t subarrays, CacheScheme scheme) {
    if (near_rows < 1 || far_rows < 1 || subarrays < 1) {
        throw ConfigError("tag storage dimensions must be >= 1");
    }
    TagStorageReport r;
    uint64_t S = subarrays, N = near_rows, F = far_rows;
    switch (scheme) {
        case CacheScheme::kInclusiveSc:
        case CacheScheme::kInclusiveWmc:
            r.tag_bits = S * N * ceil_log2(F);
            r.replacement_bits = S * N * ceil_log2(N);
            break;
        case CacheScheme::kInclusiveBbc:
            r.tag_bits = S * N * ceil_log2(F);
            r.replacement_bits = 8 * S * N;
            break;
        case CacheScheme::kExclusive:
            r.tag_bits = S * (N + F) * ceil_log2(N + F);
            break;
    }
    return r;
}

}  // namespace lldram

#include "lldram/ava.hpp"

#include <algorithm>
#include <sstream>

#include "lldram/errors.hpp"
#include "lldram/rng.hpp"
#include "lldram/secded.hpp"

namespace lldram {

bool TestRegion::contains(uint32_t subarray, uint32_t row_internal,
                          uint32_t bitline) const {
    for (const auto& r : rows) {
        if (r.subarray == subarray && r.row_internal == row_internal &&
            bitline >= r.col_begin && bitline < r.col_end) {
            return true;
        }
    }
    return false;
}

TestRegion select_test_region(const ChipModel& chip) {
    const Topology& topo = chip.topology();
    TestRegion region;
    uint32_t n = topo.cells_per_mat_side;
    uint32_t tiers = (topo.rows_per_subarray + n - 1) / n;
    for (uint32_t sa = 0; sa < topo.subarrays_per_bank; ++sa) {
        for (uint32_t tier = 0; tier < tiers; ++tier) {
            uint32_t row0 = tier * n;
            uint32_t rowN = std::min(topo.rows_per_subarray - 1, row0 + n - 1);
            for (uint32_t m = 0; m < topo.mats_per_subarray_row; ++m) {
                uint32_t c0 = m * n;
                uint32_t c1 = c0 + n;
                // farthest row for each bitline parity: odd bitlines of
                // row 0 and even bitlines of row N-1 sit a full bitline
                // away from their amplifiers
                region.rows.push_back({sa, row0, c0, c1});
                if (rowN != row0) region.rows.push_back({sa, rowN, c0, c1});
            }
            // one extra row in the slowest-precharge mat covers the tRP
            // extreme even when the noise-free profile is flat
            uint32_t slow = chip.slowest_precharge_mat();
            region.rows.push_back(
                {sa, row0 + (rowN - row0) / 2, slow * n, slow * n + n});
        }
    }
    return region;
}

RequiredRowTimings region_worst_required(const ChipModel& chip, const TestRegion& region,
                                         OpKind op, double temp_c, double refresh_ms,
                                         const IdentifyOptions& opts) {
    const Topology& topo = chip.topology();
    RequiredRowTimings worst{0, 0, 0, 0};
    bool noiseless = chip.params().sigma_process == 0.0;
    for (uint32_t bank = 0; bank < topo.banks_per_rank; ++bank) {
        for (const auto& rr : region.rows) {
            for (uint32_t bl = rr.col_begin; bl < rr.col_end; ++bl) {
                CellCoords c;
                c.bank = bank;
                c.subarray = rr.subarray;
                c.mat_index = bl / topo.cells_per_mat_side;
                c.col_in_mat = bl % topo.cells_per_mat_side;
                c.row_in_mat = rr.row_internal % topo.cells_per_mat_side;
                c.odd_bitline = (bl & 1) != 0;
                NoiseSalt salt;
                salt.op = op;
                if (noiseless) {
                    worst.max_with(chip.required_row_timings(c, temp_c, refresh_ms, salt));
                    continue;
                }
                for (uint32_t p : opts.patterns) {
                    salt.pattern = p;
                    for (uint32_t it = 0; it < opts.iterations; ++it) {
                        salt.iteration = it;
                        worst.max_with(
                            chip.required_row_timings(c, temp_c, refresh_ms, salt));
                    }
                }
            }
        }
    }
    return worst;
}

namespace {

std::optional<Picos> grid_ceil(const GridAxis& axis, Picos need) {
    if (need <= axis.lo) return axis.lo;
    if (need > axis.hi) return std::nullopt;
    Picos steps = (need - axis.lo + axis.step - 1) / axis.step;
    return axis.lo + steps * axis.step;
}

}  // namespace

AvaProfileResult ava_profile(const ChipModel& chip, const TestRegion& region,
                             double temp_c, const TimingGrid& grid,
                             const TimingParams& standard, double refresh_ms,
                             const IdentifyOptions& opts) {
    RequiredRowTimings rd =
        region_worst_required(chip, region, OpKind::kRead, temp_c, refresh_ms, opts);
    RequiredRowTimings wr =
        region_worst_required(chip, region, OpKind::kWrite, temp_c, refresh_ms, opts);
    auto trcd = grid_ceil(grid.trcd, std::max(rd.trcd, wr.trcd));
    auto tras = grid_ceil(grid.tras, rd.tras);
    auto twr = grid_ceil(grid.twr, wr.twr);
    auto trp = grid_ceil(grid.trp, std::max(rd.trp, wr.trp));

    AvaProfileResult out;
    if (!(trcd && tras && twr && trp)) {
        out.minimal = standard;
        out.margined = standard;
        out.from_grid = false;
        return out;
    }
    out.from_grid = true;
    out.minimal = standard.with_row_timings(*trcd, *tras, *trp, *twr);
    Picos clk = chip.topology().clock_period_ps;
    auto margin = [&](Picos v, Picos std_v) {
        return v < std_v ? std::min<Picos>(v + clk, std_v) : std_v;
    };
    out.margined = standard.with_row_timings(
        margin(*trcd, standard.trcd), margin(*tras, standard.tras),
        margin(*trp, standard.trp), margin(*twr, standard.twr));
    return out;
}

std::string CorrectionStats::to_csv_row(uint64_t seed,
                                        const CorrectionStats& shuffled) const {
    std::ostringstream os;
    os << seed << ',' << total_errors << ',' << corrected << ',' << shuffled.corrected;
    return os.str();
}

CorrectionStats evaluate_correction(const ChipModel& chip, const TimingParams& applied,
                                    double temp_c, double refresh_ms,
                                    const ShuffleMap& map, uint64_t trials,
                                    uint64_t sample_seed) {
    const Topology& topo = chip.topology();
    CorrectionStats stats;
    stats.lines = trials;
    Prng prng(sample_seed);
    for (uint64_t t = 0; t < trials; ++t) {
        Address a;
        a.bank = uint32_t(prng.next_below(topo.banks_per_rank));
        a.subarray = uint32_t(prng.next_below(topo.subarrays_per_bank));
        a.row_external = uint32_t(prng.next_below(topo.rows_per_subarray));
        a.column = uint32_t(prng.next_below(topo.columns_per_row));
        a.row_internal = chip.row_internal(a.row_external);

        CacheLine errors;
        bool any = false;
        for (uint32_t c = 0; c < 8; ++c) {
            uint64_t w = 0;
            for (uint32_t bit = 0; bit < 64; ++bit) {
                NoiseSalt salt;
                salt.chip = c;
                CellCoords coords = chip.cell_coords(a, bit);
                if (chip.cell_failure(coords, applied, temp_c, refresh_ms, OpKind::kRead,
                                      salt) != FailureKind::kNone) {
                    w |= 1ULL << bit;
                }
            }
            errors.chips[c] = w;
            any |= w != 0;
        }
        if (!any) continue;
        // codewords are formed per burst beat after shuffling
        CacheLine placed = apply_shuffle(map, errors);
        for (uint32_t beat = 0; beat < 8; ++beat) {
            uint64_t mask = beat_data(placed, beat);
            if (mask == 0) continue;
            int nerr = std::popcount(mask);
            stats.total_errors += uint64_t(nerr);
            Codeword72 cw = secded_encode(0);
            cw.data ^= mask;
            DecodeResult dr = secded_decode(cw);
            if (dr.status == DecodeStatus::kCorrected && dr.data == 0) {
                stats.corrected += uint64_t(nerr);
            } else {
                stats.uncorrectable_bits += uint64_t(nerr);
                stats.uncorrectable_codewords++;
            }
        }
    }
    return stats;
}

}  // namespace lldram

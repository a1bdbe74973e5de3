#pragma once

#include <cstdint>
#include <vector>

#include "lldram/errors.hpp"

namespace lldram {

using Picos = int64_t;   // durations, integer picoseconds
using Cycles = int64_t;  // controller clock cycles

inline constexpr Cycles kNever = INT64_MIN / 4;

// Ceiling conversion from picoseconds to controller cycles.
Cycles ps_to_cycles(Picos d, Picos clock_period_ps);

// DRAM timing-constraint vector. All durations in picoseconds.
// trc == tras + trp is enforced on construction.
struct TimingParams {
    Picos trcd = 0;
    Picos tras = 0;
    Picos trp = 0;
    Picos twr = 0;
    Picos trc = 0;
    Picos tcl = 0;
    Picos tcwl = 0;
    Picos tbl = 0;

    // trc is derived; throws ConfigError on non-positive inputs.
    static TimingParams create(Picos trcd, Picos tras, Picos trp, Picos twr,
                               Picos tcl, Picos tcwl, Picos tbl);
    // Validating variant: throws if trc != tras + trp.
    static TimingParams create_checked(Picos trcd, Picos tras, Picos trp, Picos twr,
                                       Picos trc, Picos tcl, Picos tcwl, Picos tbl);

    TimingParams with_row_timings(Picos trcd, Picos tras, Picos trp, Picos twr) const;

    bool operator==(const TimingParams&) const = default;
};

// Unloaded access = trcd + tcl + tbl; loaded (back-to-back row conflict)
// adds the previous access's trc.
Picos access_latency(bool loaded, const TimingParams& t);

// DDR3-1066: clock 1875 ps, 15/37.5/15/15 ns, tCL 15, tCWL 11.25, tBL 7.5.
TimingParams ddr3_1066();
// DDR3-1600: clock 1250 ps, 13.75/35/13.75/15 ns, tCL 13.75, tCWL 10, tBL 5.
TimingParams ddr3_1600();

inline constexpr Picos kClockDdr3_1066 = 1875;
inline constexpr Picos kClockDdr3_1600 = 1250;

// Search range over the four row timings, inclusive bounds, fixed step.
struct GridAxis {
    Picos lo = 0;
    Picos hi = 0;
    Picos step = 1250;
    std::vector<Picos> points() const;
};

struct TimingGrid {
    GridAxis trcd;
    GridAxis tras;
    GridAxis twr;
    GridAxis trp;
};

// tRCD 10-12.5, tRAS 20-35, tWR 5-15, tRP 10-12.5 ns, step 1.25 ns.
TimingGrid standard_grid();
// Wider search used by region-based profiling: tRCD/tRP down to 5 ns,
// tRAS down to 15 ns, tWR down to 2.5 ns.
TimingGrid extended_grid();

}  // namespace lldram

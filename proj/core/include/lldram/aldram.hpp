#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lldram/harness.hpp"
#include "lldram/timing.hpp"
#include "lldram/variation.hpp"

namespace lldram {

// Per-module, per-temperature minimal safe timing table plus the safe
// refresh intervals its identification ran at.
struct TimingTableEntry {
    double temp_c;
    TimingParams timings;
    bool from_grid;  // false: fell back to the standard timings
};

struct TimingTable {
    std::vector<TimingTableEntry> entries;  // ascending temperature
    TimingParams standard;
    double safe_refresh_read_ms = 0.0;
    double safe_refresh_write_ms = 0.0;

    // Conservative lookup: the entry for the smallest table temperature
    // >= temp_c; none when temp_c is above the hottest profiled point.
    std::optional<TimingTableEntry> lookup(double temp_c) const;

    // Structured text document, temperature-keyed sections.
    std::string serialize() const;
    static TimingTable parse(const std::string& text);

    void validate() const;
};

struct IdentifyOptions {
    std::vector<uint32_t> patterns = {0, 1, 2, 3, 4, 5, 6, 7};
    uint32_t iterations = 1;
    double sweep_cap_ms = 1024.0;
    double step_ms = 8.0;
};

// Max error-free refresh interval under standard timings at temp minus
// one sweep step. Throws ModuleRejected if the module errors at the
// standard 64 ms.
double find_safe_refresh_interval(const ChipModel& chip, double temp_c,
                                  const TimingParams& standard, OpKind op,
                                  const IdentifyOptions& opts = {});

// Worst-case required row timings (and minimum retention) over every cell
// and every (pattern, iteration) salt of the given op.
struct WorstCase {
    RequiredRowTimings required;
    double min_retention_ms;
};
WorstCase worst_required(const ChipModel& chip, OpKind op, double temp_c,
                         double refresh_ms, const IdentifyOptions& opts = {});

// For each temperature: the minimal-sum grid combination that passes both
// the read and the write test at the module's safe refresh intervals.
// Ties prefer smaller tRP, then tRCD, then tRAS.
TimingTable identify_timing_table(const ChipModel& chip, const std::vector<double>& temps,
                                  const TimingGrid& grid, const TimingParams& standard,
                                  const IdentifyOptions& opts = {});

// Observed module temperature over time; step-interpolated.
struct TemperatureTrace {
    struct Sample {
        double time_s;
        double temp_c;
    };
    std::vector<Sample> samples;

    double at(double time_s) const;
    // Warnings for |dT| > 0.1 degC per second between samples.
    std::vector<std::string> validate() const;

    std::string serialize() const;  // two-column text: seconds, degC
    static TemperatureTrace parse(const std::string& text);
};

// Applied timings per enforcement interval (default 256 ms), rounding the
// sampled temperature up to the next table point.
struct EnforcementSlice {
    double start_ms;
    double temp_c;
    TimingParams applied;
    bool from_table;  // false: above the hottest point, standard applied
};

std::vector<EnforcementSlice> enforce_timings(const TimingTable& table,
                                              const TemperatureTrace& temps,
                                              double horizon_ms,
                                              double interval_ms = 256.0);

}  // namespace lldram
